import io
import json
from importlib import resources

import jsonschema
import pytest

from albertf4.cli import run

RUNS = {
    "verify-algebra": ["verify-algebra", "--field", "Fp:5", "--samples", "3"],
    "check-aut": ["check-aut", "--field", "Q", "--torus", "2,3/5,-7,1/3", "--theta"],
    "classify": ["classify", "--field", "R", "--torus", "1,1,1,1", "--verify"],
    "representatives": ["representatives", "--field", "Qp:3"],
    "census": ["census", "--field", "Fp:3", "--exhaustive"],
    "kac": ["kac", "--order", "3"],
    "report": ["report", "--field", "R"],
}


def call(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def schema(name):
    return json.loads(resources.files("albertf4").joinpath("schemas", f"{name}.json").read_text())


@pytest.fixture(scope="module")
def outputs():
    return {name: call(argv) for name, argv in RUNS.items()}


@pytest.mark.parametrize("name", sorted(RUNS))
def test_output_matches_schema(outputs, name):
    code, out, err = outputs[name]
    assert code == 0, err
    jsonschema.Draft202012Validator(schema(name)).validate(json.loads(out))


@pytest.mark.parametrize("name", ["classify", "census", "kac", "representatives"])
def test_deterministic(outputs, name):
    assert call(RUNS[name]) == outputs[name]


def test_classify_document(outputs):
    doc = json.loads(outputs["classify"][1])
    assert doc["class_label"] == "TypeI(division, gamma=(1,1,1))"
    assert doc["pfister"] == ["-1", "-1"] and doc["fixed_dim"] == 15


def test_classify_type2():
    code, out, _ = call(["classify", "--field", "Fp:7", "--kind", "II"])
    doc = json.loads(out)
    assert code == 0 and doc["class_label"] == "TypeII" and doc["fixed_dim"] == 11
    jsonschema.validate(doc, schema("classify"))


def test_check_aut_failure_exit_code():
    code, out, _ = call(["check-aut", "--field", "Fp:101", "--u", "2,0,0,0,1,0,0,0,1"])
    doc = json.loads(out)
    assert code == 1 and doc["passed"] is False and doc["reason"] == "norm" and doc["witness"]
    jsonschema.validate(doc, schema("check-aut"))
    code, out, _ = call(["check-aut", "--field", "Q", "--scale", "2"])
    assert code == 1 and json.loads(out)["reason"] == "basepoint"


def test_check_aut_type2():
    code, out, _ = call(["check-aut", "--field", "Fp:7", "--type2"])
    assert code == 0 and json.loads(out)["presentation"] == "hermitian"


@pytest.mark.parametrize("argv", [
    ["classify", "--field", "Fp:2", "--torus", "1,1,1,1"],
    ["classify", "--field", "Q", "--torus", "1,1,1"],
    ["classify", "--field", "Q", "--torus", "1,0,1,1"],
    ["classify", "--field", "Q", "--torus", "1,x,1,1"],
    ["classify", "--field", "Q"],
    ["representatives", "--field", "Q"],
    ["census", "--field", "Q"],
    ["census", "--field", "Fp:17", "--exhaustive"],
    ["kac", "--order", "0"],
    ["check-aut", "--u", "1,0,0,0,0,0,0,0,1"],
    ["nonsense"],
])
def test_usage_errors(argv):
    code, out, err = call(argv)
    assert code == 2 and out == ""


def test_tsv_output():
    code, out, _ = call(["kac", "--order", "2", "--format", "tsv"])
    assert code == 0
    assert out.splitlines() == ["rho\ttype", "0,1,0,0,0\tA1xC3", "0,0,0,0,1\tB4"]
    code, out, _ = call(["census", "--field", "Fp:3", "--samples", "4", "--format", "tsv"])
    lines = out.splitlines()
    assert lines[0] == "torus\tclass\tfixed_dim" and len(lines) == 5


def test_census_seed_changes_sample():
    a = call(["census", "--field", "Fp:7", "--samples", "3", "--seed", "1", "--format", "tsv"])[1]
    b = call(["census", "--field", "Fp:7", "--samples", "3", "--seed", "2", "--format", "tsv"])[1]
    assert a != b


def test_report_over_closed_field():
    code, out, _ = call(["report"])
    doc = json.loads(out)
    assert code == 0 and doc["passed"]
    assert doc["derivation_dim"] == 52
    assert doc["centralizer"] == {"I": [24, 28], "II": [36, 16]}
    assert doc["class_counts"] == {"I": 1, "II": 1}
    jsonschema.validate(doc, schema("report"))


def test_report_over_q_has_infinite_count():
    code, out, _ = call(["report", "--field", "Fp:3"])
    doc = json.loads(out)
    assert code == 0 and doc["derivation_dim"] is None
    code, out, _ = call(["report", "--field", "Q"])
    doc = json.loads(out)
    assert doc["class_counts"]["I"] == "infinite" and doc["representatives"] is None
    jsonschema.validate(doc, schema("report"))
