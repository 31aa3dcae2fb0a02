import random
from math import gcd

import pytest

from oracles import monomials_of_degree
from semicurve.curve import (
    BUCHWEITZ_GENERATORS,
    PresentationError,
    arithmetic_constants,
    jacobian,
    presentation,
    presentation_3,
    presentation_4_arithmetic,
    presentation_buchweitz,
    structure_constants_3,
)
from semicurve.linalg import rational_rank
from semicurve.poly import Ring, toric_substitute
from semicurve.regress import arithmetic_panel
from semicurve.semigroup import SemigroupError, from_generators


def generates_toric_ideal(pres, upto):
    """Degree-by-degree oracle: multiples of f span I_k = ker(x -> t^k) in every degree <= upto."""
    S, w = pres.semigroup, pres.weights
    for k in range(1, upto + 1):
        basis = monomials_of_degree(w, k)
        index = {e: i for i, e in enumerate(basis)}
        want = len(basis) - (1 if k in S else 0)
        rows = []
        for p, dp in zip(pres.f, pres.degrees):
            for m in monomials_of_degree(w, k - dp):
                vec = [0] * len(basis)
                for e, c in p.terms.items():
                    vec[index[tuple(a + b for a, b in zip(e, m))]] += c
                rows.append(vec)
        if (rational_rank(rows) if rows else 0) != want:
            return False
    return True


def random_non_ci_triples(n, seed=7):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        gens = sorted(rng.sample(range(4, 30), 3))
        if gcd(*gens) != 1:
            continue
        S = from_generators(gens)
        if S.embedding_dimension != 3 or structure_constants_3(S).complete_intersection:
            continue
        out.append(S)
    return out


@pytest.mark.parametrize("S", random_non_ci_triples(10), ids=lambda S: S.spec)
def test_embdim3_presentation(S):
    pres = presentation_3(S)
    assert len(pres.f) == 3
    assert all(toric_substitute(p).is_zero() for p in pres.f)
    assert all(v.is_zero() for v in pres.relation_residuals())
    assert generates_toric_ideal(pres, 2 * max(pres.degrees))
    jacobian(pres)


def test_example_4_9_11():
    pres = presentation_3(from_generators([4, 9, 11])).normalized()
    R = pres.ring
    ref = {R.parse(s) for s in ("x0^5 - x1*x2", "x0*x1^2 - x2^2", "-x1^3 + x0^4*x2")}
    assert {p if p in ref else -p for p in pres.f} == ref
    jac = jacobian(pres)
    assert [list(r) for r in jac.J1] == [[5, -1, -1], [1, 2, -2], [4, -3, 1]]


def test_complete_intersection_rejected():
    with pytest.raises(PresentationError):
        presentation_3(from_generators([4, 6, 9]))


def test_wrong_shape():
    with pytest.raises(SemigroupError):
        presentation_3(from_generators([5, 6, 7, 8]))
    with pytest.raises(PresentationError):
        presentation_4_arithmetic(from_generators([5, 6, 8, 9]))
    with pytest.raises(PresentationError):
        presentation(from_generators([7, 8, 9, 10, 11]))


@pytest.mark.parametrize("b", [0, 1, 2])
def test_arithmetic_presentations(b):
    for S in arithmetic_panel(b, 6):
        pres = presentation_4_arithmetic(S)
        assert pres.constants["b"] == b
        assert arithmetic_constants(S).closed_form_ok
        assert len(pres.f) == {0: 4, 1: 6, 2: 5}[b]
        assert all(v.is_zero() for v in pres.relation_residuals())
        assert generates_toric_ideal(pres, 2 * max(pres.degrees))


def test_buchweitz_presentation():
    pres = presentation_buchweitz()
    assert len(pres.f) == 32
    assert pres.degrees.count(36) == 3
    assert generates_toric_ideal(pres, 50)
    assert presentation(from_generators(BUCHWEITZ_GENERATORS)).kind == "buchweitz"


def toric_jacobian_holds(pres):
    """Each x_i df_j/dx_i maps to J(1)_{ji} t^{deg f_j} under x -> t^n."""
    t = Ring(("t",), (1,))
    J1 = jacobian(pres).J1
    for j, p in enumerate(pres.f):
        for i in range(pres.ring.nvars):
            lhs = toric_substitute(p.euler_part(i), t)
            if lhs != t.monomial((pres.degrees[j],), J1[j][i]):
                return False
    return True


def all_presentations():
    out = [presentation_3(S) for S in random_non_ci_triples(10)]
    out += [presentation_4_arithmetic(S) for b in (0, 1, 2) for S in arithmetic_panel(b, 10)]
    out.append(presentation_buchweitz())
    return out


def test_toric_jacobian_identity():
    pres_list = all_presentations()
    assert all(toric_jacobian_holds(p) for p in pres_list)


def test_euler_identity_rows():
    for pres in all_presentations():
        for row in jacobian(pres).J1:
            assert sum(w * a for w, a in zip(pres.weights, row)) == 0


def test_generation_oracle_detects_missing_generator():
    pres = presentation_3(from_generators([4, 9, 11]))
    pres.f = pres.f[:2]
    assert not generates_toric_ideal(pres, 40)


def test_structure_constants_examples():
    c = structure_constants_3(from_generators([4, 9, 11]))
    assert (c.u, c.lam, c.w, c.v, c.mu, c.z) == (3, 4, 1, 2, 1, 2)
    assert not c.complete_intersection
    assert structure_constants_3(from_generators([4, 6, 9])).complete_intersection
    with pytest.raises(SemigroupError):
        structure_constants_3(from_generators([2, 3]))


@pytest.mark.parametrize(
    "gens,v,mu,eqs",
    [
        ([6, 7, 8, 9], 2, 3, ["x1^2 - x0*x2", "x1*x2 - x0*x3", "x2^2 - x1*x3", "x3^2 - x0^3"]),
        ([7, 10, 13, 16], 3, 5, ["x1*x3^2 - x0^6"]),
        ([5, 8, 11, 14], 2, 4, ["x2*x3 - x0^5", "x3^2 - x0^4*x1"]),
    ],
)
def test_arithmetic_examples(gens, v, mu, eqs):
    pres = presentation_4_arithmetic(from_generators(gens))
    assert (pres.constants["v"], pres.constants["mu"]) == (v, mu)
    for e in eqs:
        p = pres.ring.parse(e)
        assert p in pres.f or -p in pres.f
    if gens[0] == 7:
        assert pres.constants["z"] == 2 and len(pres.f) == 6


def test_buchweitz_jacobian_rank_off_origin():
    pres = presentation_buchweitz()
    jac = jacobian(pres)
    assert len(jac.J1) == 32 and len(jac.J1[0]) == 9
    from semicurve.curve import jacobian_rank_at

    for t in (1, 2, 3):
        point = [t**n for n in pres.weights]
        assert jacobian_rank_at(pres.f, point) == 8
