"""Binomial presentations of monomial curves and their degree-0 Jacobians.

A presentation lists generators f of the toric ideal of F[S] together with a
relation matrix r (r.f = 0).  Every constructor checks its own output: each
generator is homogeneous and vanishes under x_i -> t^{n_i}, and r.f is the
zero vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import rational_rank
from .poly import Poly, Ring, canonical_sign, mat_vec, toric_substitute
from .semigroup import NumericalSemigroup, SemigroupError, apery_set, classify_sequence, from_generators


class PresentationError(ValueError):
    pass


@dataclass
class CurvePresentation:
    semigroup: NumericalSemigroup
    ring: Ring
    f: list[Poly]
    r: list[list[Poly]]
    constants: dict = field(default_factory=dict)
    kind: str = ""

    @property
    def degrees(self) -> list[int]:
        return [p.weighted_degree() for p in self.f]

    @property
    def weights(self) -> tuple[int, ...]:
        return self.ring.weights

    def check(self) -> None:
        for j, p in enumerate(self.f):
            if not p.is_homogeneous():
                raise PresentationError(f"f_{j + 1} = {p} is not homogeneous")
            if not toric_substitute(p).is_zero():
                raise PresentationError(f"f_{j + 1} = {p} does not vanish on the curve")
        for i, val in enumerate(mat_vec(self.r, self.f, self.ring)):
            if not val.is_zero():
                raise PresentationError(f"relation row {i + 1} gives {val}, not 0")

    def relation_residuals(self) -> list[Poly]:
        return mat_vec(self.r, self.f, self.ring)

    def reordered(self, order: list[int], signs: list[int]) -> "CurvePresentation":
        """Permute and re-sign generators; relation columns follow along."""
        f = [self.f[j].scale(s) for j, s in zip(order, signs)]
        r = [[row[j].scale(s) for j, s in zip(order, signs)] for row in self.r]
        out = CurvePresentation(self.semigroup, self.ring, f, r, dict(self.constants), self.kind)
        out.check()
        return out

    def normalized(self) -> "CurvePresentation":
        """Generators sorted by degree, each with its lex-largest monomial positive."""
        order = sorted(
            range(len(self.f)),
            key=lambda j: (self.f[j].weighted_degree(), tuple(-a for a in max(self.f[j].terms))),
        )
        signs = [1 if canonical_sign(self.f[j]) == self.f[j] else -1 for j in order]
        return self.reordered(order, signs)

    def as_dict(self) -> dict:
        return {
            "generators": list(self.semigroup.min_generators),
            "kind": self.kind,
            "equations": [str(p) for p in self.f],
            "degrees": self.degrees,
            "relations": [[str(x) for x in row] for row in self.r],
            "constants": self.constants,
        }


def _zero(R: Ring) -> Poly:
    return R.zero()


def _mono(R: Ring, **powers: int) -> Poly:
    exp = [0] * R.nvars
    for name, a in powers.items():
        exp[R.index(name)] += a
    return R.monomial(exp)


def _x(R: Ring, i: int, a: int = 1) -> Poly:
    return R.var(i) ** a


# -- embedding dimension three ---------------------------------------------


@dataclass(frozen=True)
class Constants3:
    u: int
    v: int
    lam: int
    mu: int
    w: int
    z: int

    @property
    def complete_intersection(self) -> bool:
        return self.z * self.w * self.mu == 0

    def as_dict(self) -> dict:
        d = dict(self.__dict__)
        d["complete_intersection"] = self.complete_intersection
        return d


def _require_embdim(S: NumericalSemigroup, k: int) -> tuple[int, ...]:
    if S.embedding_dimension != k:
        raise SemigroupError(f"wrong shape: embedding dimension {S.embedding_dimension}, expected {k}")
    return S.min_generators


def _in_monoid(x: int, a: int, b: int) -> list[tuple[int, int]]:
    """All (i, j) >= 0 with i*a + j*b = x."""
    return [(i, (x - i * a) // b) for i in range(x // a + 1) if (x - i * a) % b == 0]


def structure_constants_3(S: NumericalSemigroup) -> Constants3:
    n0, n1, n2 = _require_embdim(S, 3)
    ap = set(apery_set(S, n0))
    u = 1
    while True:
        x = u * n1
        reps = [(lam, w) for lam, w in _in_monoid(x, n0, n2) if lam >= 1]
        if reps and x not in ap:
            lam, w = min(reps, key=lambda t: t[1])
            break
        u += 1
    v = 1
    while True:
        reps = [(mu, z) for mu, z in _in_monoid(v * n2, n0, n1) if z < u]
        if reps:
            mu, z = min(reps, key=lambda t: t[1])
            break
        v += 1
    c = Constants3(u, v, lam, mu, w, z)
    if (lam + mu) * n0 != (u - z) * n1 + (v - w) * n2:
        raise AssertionError(f"structure constants inconsistent: {c}")
    return c


def presentation_3(S: NumericalSemigroup) -> CurvePresentation:
    n = _require_embdim(S, 3)
    c = structure_constants_3(S)
    if c.complete_intersection:
        raise PresentationError("complete intersection: presentation has 2 generators, out of deformation scope")
    R = Ring.weighted(n)
    x0, x1, x2 = R.gens()
    u, v, lam, mu, w, z = c.u, c.v, c.lam, c.mu, c.w, c.z
    f = [
        x1**u - x0**lam * x2**w,
        x1 ** (u - z) * x2 ** (v - w) - x0 ** (lam + mu),
        x2**v - x0**mu * x1**z,
    ]
    r = [
        [-(x2 ** (v - w)), x1**z, -(x0**lam)],
        [x0**mu, -(x2**w), x1 ** (u - z)],
    ]
    pres = CurvePresentation(S, R, f, r, c.as_dict(), "embdim3")
    pres.check()
    return pres


# -- arithmetic sequences --------------------------------------------------


@dataclass(frozen=True)
class ArithmeticConstants:
    p: int
    a: int
    b: int
    d: int
    v: int
    mu: int
    z: int
    closed_form_ok: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def arithmetic_constants(S: NumericalSemigroup) -> ArithmeticConstants:
    gens = S.min_generators
    cls = classify_sequence(S)
    if cls.kind != "arithmetic" or len(gens) < 3:
        raise PresentationError("out of scope: generators are not an arithmetic sequence")
    n0, d = gens[0], cls.d
    p = len(gens) - 2
    a, b = divmod(n0, p + 1)
    top = gens[-1]
    lower = from_generators(gens[:-1]) if len(gens) > 1 else None
    v = 1
    while v * top not in lower:
        v += 1
    # v*n_{p+1} = mu*n_0 + g_z with g_z = n_{p+1-b} (or 0 when b = 0).
    g_z = 0 if b == 0 else gens[p + 1 - b]
    z = 0 if b == 0 else p + 1 - b
    mu, rem = divmod(v * top - g_z, n0)
    if b == 0:
        expected = (a, a + d)
    else:
        expected = (a + 1, a + d)
    ok = rem == 0 and (v, mu) == expected
    return ArithmeticConstants(p, a, b, d, v, mu, z, ok)


def arithmetic_generators(S: NumericalSemigroup) -> tuple[Ring, list[Poly], ArithmeticConstants]:
    """The xi, phi, psi and theta families for any arithmetic sequence."""
    c = arithmetic_constants(S)
    if not c.closed_form_ok:
        raise PresentationError(f"closed-form constants disagree with search: {c}")
    gens = S.min_generators
    R = Ring.weighted(gens)
    x = R.gens()
    p, b, v, mu = c.p, c.b, c.v, c.mu
    out: list[Poly] = []
    for i in range(1, p + 1):
        for j in range(i, p + 1):
            if i + j <= p:
                out.append(x[i] * x[j] - x[0] * x[i + j])
            elif j <= p - 1:
                out.append(x[i] * x[j] - x[i + j - p] * x[p])
    for i in range(p):
        out.append(x[1 + i] * x[p] - x[i] * x[p + 1])
    if b >= 1:
        for j in range(p - b + 1):
            out.append(x[b + j] * x[p + 1] ** (v - 1) - x[0] ** mu * x[j])
        out.append(x[p + 1] ** v - x[0] ** mu * x[p + 1 - b])
    else:
        out.append(x[p + 1] ** v - x[0] ** mu)
    return R, out, c


def presentation_4_arithmetic(S: NumericalSemigroup) -> CurvePresentation:
    if S.embedding_dimension != 4:
        raise PresentationError("out of scope: embedding dimension must be 4")
    R, f, c = arithmetic_generators(S)
    x0, x1, x2, x3 = R.gens()
    v, mu = c.v, c.mu
    Z = R.zero()
    t = x3 ** (v - 1)
    m = x0**mu
    if c.b == 0:
        f4 = f[3]
        r = [
            [x2, -x1, x0, Z],
            [-x3, x2, -x1, Z],
            [-f4, Z, Z, f[0]],
            [Z, -f4, Z, f[1]],
            [Z, Z, -f4, f[2]],
        ]
    elif c.b == 1:
        r = [
            [x2, -x1, x0, Z, Z, Z],
            [-x3, x2, -x1, Z, Z, Z],
            [t, Z, Z, -x1, x0, Z],
            [Z, t, Z, -x2, Z, x0],
            [m, -t, Z, Z, x1, -x0],
            [Z, m, -t, -x3, x2, Z],
            [Z, Z, -t, Z, x2, -x1],
            [Z, Z, m, Z, -x3, x2],
        ]
    else:
        r = [
            [x2, -x1, x0, Z, Z],
            [-x3, x2, -x1, Z, Z],
            [Z, t, Z, -x1, x0],
            [m, Z, t, -x2, x1],
            [Z, m, Z, -x3, x2],
        ]
    pres = CurvePresentation(S, R, f, r, c.as_dict(), f"arithmetic4-b{c.b}")
    pres.check()
    return pres


# -- the Buchweitz curve ---------------------------------------------------

BUCHWEITZ_GENERATORS = (13, 14, 15, 16, 17, 18, 20, 22, 23)

BUCHWEITZ_EQUATIONS = (
    "-x1^2 + x0*x2", "-x2^2 + x1*x3", "-x1*x2 + x0*x3", "-x3^2 + x2*x4",
    "-x2*x3 + x1*x4", "-x1*x3 + x0*x4", "-x4^2 + x3*x5", "-x3*x4 + x2*x5",
    "-x2*x4 + x1*x5", "-x1*x4 + x0*x5", "-x5^2 + x3*x6", "-x4*x5 + x2*x6",
    "-x3*x5 + x1*x6", "-x2*x5 + x0*x6", "x0^2*x1 - x6^2", "-x0^2*x3 + x6*x7",
    "-x6^2 + x5*x7", "-x0^3 + x4*x7", "-x5*x6 + x3*x7", "-x4*x6 + x2*x7",
    "-x3*x6 + x1*x7", "-x2*x6 + x0*x7", "x0^2*x5 - x7^2", "-x0*x1*x5 + x7*x8",
    "-x0^2*x4 + x6*x8", "-x0^2*x2 + x5*x8", "-x5*x7 + x4*x8", "-x4*x7 + x3*x8",
    "-x3*x7 + x2*x8", "-x2*x7 + x1*x8", "-x1*x7 + x0*x8", "-x0^2*x6 + x8^2",
)


def presentation_buchweitz() -> CurvePresentation:
    """The 32 binomials of the Buchweitz curve; no relation matrix is attached."""
    S = from_generators(BUCHWEITZ_GENERATORS)
    R = Ring.weighted(BUCHWEITZ_GENERATORS)
    f = [R.parse(e) for e in BUCHWEITZ_EQUATIONS]
    pres = CurvePresentation(S, R, f, [], {}, "buchweitz")
    pres.check()
    return pres


def presentation(S: NumericalSemigroup) -> CurvePresentation:
    """Dispatch on the shape of S."""
    if S.min_generators == BUCHWEITZ_GENERATORS:
        return presentation_buchweitz()
    if S.embedding_dimension == 3:
        return presentation_3(S)
    if S.embedding_dimension == 4:
        return presentation_4_arithmetic(S)
    raise PresentationError("out of scope: no presentation available for this shape")


# -- Jacobians -------------------------------------------------------------


@dataclass
class JacobianPair:
    J0: list[list[Poly]]
    J1: list[list[int]]
    row_degrees: list[int]

    @property
    def rank(self) -> int:
        return rational_rank(self.J1)


def jacobian(pres: CurvePresentation) -> JacobianPair:
    """J_0 = (x_i df_j/dx_i) and its value at (1, ..., 1), with checks."""
    k1 = pres.ring.nvars
    J0 = [[p.euler_part(i) for i in range(k1)] for p in pres.f]
    ones = [1] * k1
    J1 = [[e.evaluate(ones) for e in row] for row in J0]
    degs = pres.degrees
    t_ring = Ring(("t",), (1,))
    for j, row in enumerate(J0):
        for i, e in enumerate(row):
            expected = t_ring.monomial((degs[j],), J1[j][i])
            if toric_substitute(e, t_ring) != expected:
                raise AssertionError(f"J0[{j}][{i}] is not t^{degs[j]} * J1 entry")
        if sum(w * a for w, a in zip(pres.weights, J1[j])) != 0:
            raise AssertionError(f"Euler identity fails on row {j}")
    pair = JacobianPair(J0, J1, degs)
    if pair.rank != k1 - 1:
        raise AssertionError(f"rank J(1) = {pair.rank}, expected {k1 - 1}")
    return pair


def jacobian_matrix(polys: list[Poly]) -> list[list[Poly]]:
    """Plain Jacobian (df_j/dx_i)."""
    return [[p.partial(i) for i in range(p.ring.nvars)] for p in polys]


def jacobian_rank_at(polys: list[Poly], point: list[int], modulus: int | None = None) -> int:
    from .linalg import rank_mod_p

    J = [[e.evaluate(point, modulus) for e in row] for row in jacobian_matrix(polys)]
    if modulus:
        return rank_mod_p(J, modulus)
    return rational_rank([[Fraction(x) for x in row] for row in J])
