"""Self-checks of both presentations over a given field."""

from __future__ import annotations

import random

from . import linalg
from .fields import FieldSpec
from .hermitian import HermitianAlgebra, diagonal_idempotents, idempotent_lemma, is_primitive_idempotent, peirce_decompose
from .octonions import OctonionAlgebra, norm
from .tits import TitsAlgebra, associative_cubic_identities, sharped_axiom_identities


def jordan_checks(alg, x, y) -> dict[str, bool]:
    x2 = alg.mul(x, x)
    return {
        "commutative": alg.mul(x, y) == alg.mul(y, x),
        "jordan_identity": alg.mul(alg.mul(x2, y), x) == alg.mul(x2, alg.mul(y, x)),
    }


def verify_algebra(k: FieldSpec, samples: int = 20, seed: int = 0) -> dict[str, bool]:
    rng = random.Random(seed)
    checks: dict[str, bool] = {}

    o = OctonionAlgebra(k)
    comp = alt = True
    for _ in range(samples):
        a, b = o.random(rng), o.random(rng)
        comp &= norm(a * b) == norm(a) * norm(b)
        alt &= (a * a) * b == a * (a * b) and (b * a) * a == b * (a * a)
    checks["octonion_composition"] = comp
    checks["octonion_alternative"] = alt

    t = TitsAlgebra(k)
    for name, ok in sharped_axiom_identities(t).items():
        checks[f"tits_axiom_{name}"] = ok
    for name, ok in associative_cubic_identities(k).items():
        checks[f"matrix_{name}"] = ok
    h = HermitianAlgebra(k)
    for tag, alg in (("tits", t), ("hermitian", h)):
        ok = {"commutative": True, "jordan_identity": True}
        for _ in range(samples):
            for name, v in jordan_checks(alg, alg.random(rng), alg.random(rng)).items():
                ok[name] &= v
        for name, v in ok.items():
            checks[f"{tag}_{name}"] = v
        e = alg.unit
        x = alg.random(rng)
        checks[f"{tag}_unit"] = alg.mul(e, x) == x
    checks["tits_degree_three"] = all(
        t.cube_identity(x) == t.zero for x in (t.random(rng) for _ in range(samples))
    )
    w = t.primitive_idempotent()
    checks["tits_idempotent"] = t.mul(w, w) == w and t.trace(w) == 1 and w != t.zero and w != t.unit

    checks["hermitian_form_nondegenerate"] = linalg.det(h.gram_matrix(), k.one, k.zero) != 0
    checks["hermitian_idempotent_lemma"] = all(all(idempotent_lemma(w).values()) for w in diagonal_idempotents(h))
    checks["hermitian_peirce_dims"] = all(
        peirce_decompose(w).dims == (1, 1, 9, 16) for w in diagonal_idempotents(h) if is_primitive_idempotent(w)
    )
    return checks
