"""Command-line front end: ``albertf4 <command> [options]``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage
errors (bad field specs, malformed scalars, unsupported fields).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from .automorphisms import (
    AlgebraMap,
    TorusElement,
    centralizer_split,
    check_automorphism,
    derivations,
    f_t,
    f_uv,
    fixed_subspace,
    theta,
    type1_involution,
    type2_involution,
)
from .classify import (
    INFINITE,
    InfiniteClassCount,
    census,
    class_count,
    classify,
    invariant_of,
    representatives,
)
from .fields import FieldError, FieldKind, FieldSpec
from .hermitian import HermitianAlgebra
from .kac import cross_check_with_classifier, enumerate as kac_enumerate
from .tits import TitsAlgebra
from .verify import verify_algebra


class UsageError(Exception):
    pass


def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except FieldError as e:
        raise UsageError(str(e)) from None


def _scalars(k: FieldSpec, text: str, count: int, what: str) -> list:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise UsageError(f"{what} needs {count} comma-separated scalars, got {len(parts)}")
    try:
        return [k(p) for p in parts]
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"malformed scalar in {what}: {e}") from None


def _torus(k: FieldSpec, text: str) -> TorusElement:
    try:
        return TorusElement(k, *_scalars(k, text, 4, "--torus"))
    except FieldError as e:
        raise UsageError(str(e)) from None


def _matrix(k: FieldSpec, text: str, what: str):
    v = _scalars(k, text, 9, what)
    return [v[0:3], v[3:6], v[6:9]]


# -- commands ---------------------------------------------------------------------


def cmd_verify_algebra(args):
    k = _field(args.field)
    checks = verify_algebra(k, samples=args.samples, seed=args.seed)
    passed = all(checks.values())
    doc = {"command": "verify-algebra", "field": str(k), "passed": passed, "checks": checks}
    rows = [["check", "passed"]] + [[name, str(ok).lower()] for name, ok in checks.items()]
    return (0 if passed else 1), doc, rows


def cmd_check_aut(args):
    k = _field(args.field)
    if args.type2:
        h = HermitianAlgebra(k)
        phi = type2_involution(h.element([1, 0, 0])).realized
        desc = "r_w, w = h(1,0,0;0,0,0)"
    else:
        alg = TitsAlgebra(k)
        if args.torus:
            if args.u or args.v:
                raise UsageError("--torus cannot be combined with --u/--v")
            t = _torus(k, args.torus)
            phi, desc = f_t(alg, t), f"f_t, t = {t}"
        elif args.u or args.v:
            u = _matrix(k, args.u, "--u") if args.u else [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
            v = _matrix(k, args.v, "--v") if args.v else [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
            try:
                phi = f_uv(alg, u, v)
            except ValueError as e:
                raise UsageError(str(e)) from None
            desc = "f_uv"
        else:
            phi, desc = AlgebraMap.identity(alg), "identity"
        if args.scale:
            scale = _scalars(k, args.scale, 1, "--scale")[0]
            ea = AlgebraMap.from_rows(alg, [[scale if i == j else 0 for j in range(27)] for i in range(27)])
            phi, desc = ea @ phi, f"{args.scale} * {desc}"
        if args.theta:
            phi, desc = theta(alg) @ phi, f"theta o {desc}"
    result = check_automorphism(phi)
    doc = {
        "command": "check-aut",
        "field": str(k),
        "map": desc,
        "presentation": phi.presentation,
    }
    doc.update(result.to_json(k))
    rows = [["map", "passed", "reason", "witness"],
            [desc, str(result.passed).lower(), result.reason or "", ",".join(doc["witness"] or [])]]
    return (0 if result.passed else 1), doc, rows


def _classify_doc(k: FieldSpec, t: TorusElement, verify: bool) -> dict:
    inv = invariant_of(t, verify=verify)
    cls = classify(t)
    dim = fixed_subspace(type1_involution(t).realized).dimension
    return {
        "field": str(k),
        "kind": "I",
        "torus": t.to_json(),
        "class_label": cls.label,
        "pfister": inv.to_json()["pfister"],
        "gamma": inv.to_json()["gamma"],
        "fixed_dim": dim,
    }


CLASS_COLUMNS = ["field", "kind", "torus", "class_label", "pfister", "gamma", "fixed_dim"]


def _class_row(doc: dict) -> list[str]:
    out = []
    for c in CLASS_COLUMNS:
        v = doc.get(c)
        out.append(",".join(v) if isinstance(v, list) else ("" if v is None else str(v)))
    return out


def cmd_classify(args):
    k = _field(args.field)
    if args.kind == "II":
        inv = type2_involution(HermitianAlgebra(k).element([1, 0, 0]))
        doc = {
            "field": str(k),
            "kind": "II",
            "torus": None,
            "class_label": "TypeII",
            "pfister": None,
            "gamma": None,
            "fixed_dim": fixed_subspace(inv.realized).dimension,
        }
    else:
        if not args.torus:
            raise UsageError("classify needs --torus u1,u2,v1,v2 for type I")
        doc = _classify_doc(k, _torus(k, args.torus), args.verify)
    doc = {"command": "classify", **doc}
    return 0, doc, [CLASS_COLUMNS, _class_row(doc)]


def cmd_representatives(args):
    k = _field(args.field)
    try:
        reps = representatives(k)
    except InfiniteClassCount as e:
        raise UsageError(str(e)) from None
    items = [_classify_doc(k, t, args.verify) for t in reps]
    doc = {"command": "representatives", "field": str(k), "count": len(items), "representatives": items}
    return 0, doc, [CLASS_COLUMNS] + [_class_row(d) for d in items]


def cmd_census(args):
    k = _field(args.field)
    if k.kind is not FieldKind.FINITE:
        raise UsageError("census runs over Fp:p")
    try:
        res = census(k, exhaustive=args.exhaustive, samples=args.samples, seed=args.seed, jobs=args.jobs)
    except ValueError as e:
        raise UsageError(str(e)) from None
    doc = {"command": "census", "seed": None if args.exhaustive else args.seed, **res.to_json()}
    rows = [["torus", "class", "fixed_dim"]] + [r.tsv(k).split("\t") for r in res.rows]
    single = len(res.histogram) == 1 and set(res.fixed_dims) == {15}
    return (0 if single else 1), doc, rows


def cmd_kac(args):
    if args.order < 1:
        raise UsageError("--order must be a positive integer")
    sols = kac_enumerate(args.order)
    items = [{"rho": list(s.rho), "type": s.to_json()["type"]} for s in sols]
    rows = [["rho", "type"]] + [[",".join(map(str, i["rho"])), i["type"]] for i in items]
    return 0, items, rows


def cmd_report(args):
    k = _field(args.field)
    counts = {}
    for kind in ("I", "II"):
        c = class_count(k, kind)
        counts[kind] = "infinite" if c is INFINITE else c
    doc = {"command": "report", "field": str(k), "class_counts": counts}
    ok = True
    try:
        doc["representatives"] = [_classify_doc(k, t, verify=True) for t in representatives(k)]
    except InfiniteClassCount:
        doc["representatives"] = None
    if k.characteristic not in (2, 3):
        t1 = type1_involution(TorusElement(k, 1, 1, 1, 1))
        t2 = type2_involution(HermitianAlgebra(k).element([1, 0, 0]))
        s1, s2 = centralizer_split(t1), centralizer_split(t2)
        doc["derivation_dim"] = derivations(TitsAlgebra(k)).dimension
        doc["centralizer"] = {"I": [s1.fixed, s1.negated], "II": [s2.fixed, s2.negated]}
    else:
        doc["derivation_dim"] = None
        doc["centralizer"] = None
    if k.kind is FieldKind.ALG_CLOSED:
        cc = cross_check_with_classifier(k)
        doc["kac"] = cc.to_json()
        ok &= cc.passed
    else:
        doc["kac"] = None
    doc["passed"] = ok
    rows = [["key", "value"]]
    for key in ("field", "derivation_dim"):
        rows.append([key, str(doc[key])])
    for kind, c in counts.items():
        rows.append([f"class_count_{kind}", str(c)])
    if doc["centralizer"]:
        for kind, (a, b) in doc["centralizer"].items():
            rows.append([f"centralizer_{kind}", f"{a},{b}"])
    for r in doc["representatives"] or []:
        rows.append(["representative", ",".join(r["torus"]) + " " + r["class_label"]])
    return (0 if ok else 1), doc, rows


# -- plumbing ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="albertf4", description="Exact computations in the split Albert algebra.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, field_default="Q"):
        sp.add_argument("--field", default=field_default, help="C, C:p, Q, R, Fp:p or Qp:p")
        sp.add_argument("--format", choices=("json", "tsv"), default="json")
        sp.add_argument("--seed", type=int, default=0)
        return sp

    sp = common(sub.add_parser("verify-algebra", help="self-check both presentations"))
    sp.add_argument("--samples", type=int, default=20)
    sp.set_defaults(run=cmd_verify_algebra)

    sp = common(sub.add_parser("check-aut", help="test whether a map is an automorphism"))
    sp.add_argument("--torus", help="u1,u2,v1,v2: the map f_t")
    sp.add_argument("--u", help="nine scalars, row major")
    sp.add_argument("--v", help="nine scalars, row major")
    sp.add_argument("--scale", help="multiply the map by a scalar")
    sp.add_argument("--theta", action="store_true", help="compose with theta afterwards")
    sp.add_argument("--type2", action="store_true", help="the Peirce reflection r_w for w = E11")
    sp.set_defaults(run=cmd_check_aut)

    sp = common(sub.add_parser("classify", help="class of theta o f_t, or of a type II involution"))
    sp.add_argument("--torus", help="u1,u2,v1,v2")
    sp.add_argument("--kind", choices=("I", "II"), default="I")
    sp.add_argument("--verify", action="store_true", help="cross-check against the fixed trace form")
    sp.set_defaults(run=cmd_classify)

    sp = common(sub.add_parser("representatives", help="one torus element per type I class"))
    sp.add_argument("--verify", action="store_true")
    sp.set_defaults(run=cmd_representatives)

    sp = common(sub.add_parser("census", help="classify torus elements over F_p"), field_default="Fp:5")
    sp.add_argument("--exhaustive", action="store_true")
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(run=cmd_census)

    sp = common(sub.add_parser("kac", help="Kac coordinates of order k"))
    sp.add_argument("--order", type=int, required=True)
    sp.set_defaults(run=cmd_kac)

    sp = common(sub.add_parser("report", help="counts, representatives and centralizers"), field_default="C")
    sp.set_defaults(run=cmd_report)
    return p


def _write(out: TextIO, doc, rows, fmt: str):
    if fmt == "tsv":
        for r in rows:
            out.write("\t".join(r) + "\n")
    else:
        out.write(json.dumps(doc, indent=2) + "\n")


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        code, doc, rows = args.run(args)
    except (UsageError, FieldError) as e:
        err.write(f"albertf4 {args.command}: error: {e}\n")
        return 2
    _write(out, doc, rows, args.format)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
