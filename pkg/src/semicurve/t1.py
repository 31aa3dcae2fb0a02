"""Graded pieces of T^1 for a monomial curve.

In degree l the candidates are t^l * sum(alpha_i Delta_i) with
Delta_i = x_i d/dx_i.  Coordinates i with n_i + l in S are trivial, the Euler
vector (n_i) is trivial, and the remaining conditions are the rows of J(1)
whose degree d_j satisfies d_j + l not in S.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .curve import CurvePresentation, jacobian
from .linalg import mat_vec, nullspace_basis, primitive, rational_rank
from .poly import Poly
from .semigroup import NumericalSemigroup


@dataclass(frozen=True)
class GradedPiece:
    ell: int
    G: tuple[int, ...]
    H: tuple[int, ...]  # row indices j with d_j + l not in S
    H_degrees: tuple[int, ...]
    rho: int
    dim: int
    basis: tuple[tuple[int, ...], ...]

    def as_dict(self) -> dict:
        return {
            "ell": self.ell,
            "G": list(self.G),
            "#G": len(self.G),
            "H": sorted(set(self.H_degrees)),
            "rho": self.rho,
            "dim": self.dim,
            "basis": [list(b) for b in self.basis],
        }


def graded_sets(pres: CurvePresentation, ell: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(G_l, H_l) with H_l as row indices; degrees via pres.degrees."""
    S = pres.semigroup
    G = tuple(i for i, n in enumerate(pres.weights) if n + ell not in S)
    H = tuple(j for j, d in enumerate(pres.degrees) if d + ell not in S)
    return G, H


class T1Calculator:
    """Caches J(1) for repeated per-degree computations."""

    def __init__(self, pres: CurvePresentation):
        self.pres = pres
        self.jac = jacobian(pres)
        self.k1 = pres.ring.nvars

    def piece(self, ell: int) -> GradedPiece:
        pres, J1 = self.pres, self.jac.J1
        G, H = graded_sets(pres, ell)
        degs = pres.degrees
        rows = [[J1[j][i] for i in G] for j in H]
        # Entries of J_l outside G vanish: a variable x_i with n_i + l in S
        # cannot occur in an f_j with d_j + l outside S.
        for j in H:
            if any(J1[j][i] for i in range(self.k1) if i not in G):
                raise AssertionError(f"row {j} has support outside G at degree {ell}")
        rho = rational_rank(rows) if rows and G else 0
        dim = max(0, len(G) - 1 - rho)
        basis: list[tuple[int, ...]] = []
        if dim:
            # Kill the Euler direction by fixing the first G-coordinate to 0.
            pin = [1] + [0] * (len(G) - 1)
            sols = nullspace_basis(rows + [pin], len(G))
            for s in sols:
                full = [0] * self.k1
                for i, a in zip(G, s):
                    full[i] = a
                basis.append(primitive(full))
            if len(basis) != dim:
                raise AssertionError(f"basis size {len(basis)} != dim {dim} at degree {ell}")
        return GradedPiece(ell, G, H, tuple(degs[j] for j in H), rho, dim, tuple(basis))


def t1_dimension(pres: CurvePresentation, ell: int) -> GradedPiece:
    return T1Calculator(pres).piece(ell)


def d_prime_p(pres: CurvePresentation) -> int:
    """Smallest degree d'_p such that the rows of J(1) of degree <= d'_p have rank k."""
    J1 = jacobian(pres).J1
    order = sorted(range(len(J1)), key=lambda j: pres.degrees[j])
    k = pres.ring.nvars - 1
    for p in range(1, len(order) + 1):
        if rational_rank([J1[j] for j in order[:p]]) == k:
            return pres.degrees[order[p - 1]]
    raise AssertionError("J(1) does not have full rank")


@dataclass
class T1Table:
    pieces: list[GradedPiece]
    window: tuple[int, int]
    cutoff_general: int
    cutoff_rows: int
    checks: dict = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(p.dim for p in self.pieces)

    @property
    def negative(self) -> int:
        return sum(p.dim for p in self.pieces if p.ell < 0)

    @property
    def negatively_graded(self) -> bool:
        return all(p.dim == 0 for p in self.pieces if p.ell >= 0)

    def at(self, ell: int) -> GradedPiece:
        for p in self.pieces:
            if p.ell == ell:
                return p
        raise KeyError(ell)

    def nonzero(self) -> list[GradedPiece]:
        return [p for p in self.pieces if p.dim]

    def as_dict(self) -> dict:
        return {
            "window": list(self.window),
            "total": self.total,
            "negative": self.negative,
            "negatively_graded": self.negatively_graded,
            "pieces": [p.as_dict() for p in self.pieces if p.dim or p.G],
            "checks": self.checks,
        }


def t1_window(pres: CurvePresentation) -> tuple[int, int, int, int]:
    S = pres.semigroup
    c, n0 = S.conductor, pres.weights[0]
    lo_general = -2 * c + 2 - 2 * n0
    lo_rows = -d_prime_p(pres)
    hi = c - 2 - n0
    return max(lo_general, lo_rows), hi, lo_general, lo_rows


def t1_scan(pres: CurvePresentation) -> T1Table:
    calc = T1Calculator(pres)
    lo, hi, lo_general, lo_rows = t1_window(pres)
    pieces = [calc.piece(ell) for ell in range(lo, hi + 1)]
    table = T1Table(pieces, (lo, hi), lo_general, lo_rows)
    S = pres.semigroup
    n = pres.weights
    c = S.conductor
    # Vanishing just outside the window, verified directly.
    outside = [calc.piece(ell) for ell in (lo - 3, lo - 2, lo - 1, hi + 1, hi + 2, hi + 3)]
    table.checks["outside_window_zero"] = all(p.dim == 0 for p in outside)
    ell4 = c - 1 - n[0] - n[1]
    table.checks["positive_at_c-1-n0-n1"] = calc.piece(ell4).dim > 0
    if S.is_ordinary() or n[0] == 2:
        table.checks["window_-4g-2"] = lo_general == -4 * S.genus - 2
    table.checks["high_degree_formula"] = all(
        p.dim == max(0, len(p.G) - 1) for p in pieces if p.ell >= c - 2 * n[1]
    )
    if not all(table.checks.values()):
        raise AssertionError(f"T1 window checks failed: {table.checks}")
    return table


def _canonical_monomial(pres: CurvePresentation, degree: int) -> Poly | None:
    """Monomial of the given weighted degree, least total degree then lex smallest."""
    weights = pres.weights
    best = None
    k1 = len(weights)

    def rec(i: int, rem: int, exp: list[int]):
        nonlocal best
        if i == k1:
            if rem == 0:
                key = (sum(exp), tuple(exp))
                if best is None or key < best:
                    best = key
            return
        for a in range(rem // weights[i] + 1):
            exp.append(a)
            rec(i + 1, rem - a * weights[i], exp)
            exp.pop()

    if degree < 0:
        return None
    rec(0, degree, [])
    if best is None:
        return None
    return pres.ring.monomial(best[1])


def derivation_image(pres: CurvePresentation, ell: int, alpha: tuple[int, ...]) -> list[Poly]:
    """Image of t^l * sum(alpha_i Delta_i) on each f_j, written as monomials of degree d_j + l."""
    J1 = jacobian(pres).J1
    vals = mat_vec(J1, alpha)
    out = []
    for j, (coef, d) in enumerate(zip(vals, pres.degrees)):
        if coef == 0:
            out.append(pres.ring.zero())
            continue
        mono = _canonical_monomial(pres, d + ell)
        if mono is None:
            raise ValueError(f"inconsistent basis: entry {j} has no monomial of degree {d + ell}")
        out.append(mono.scale(int(coef)))
    return out


def _is_m2_degree(S: NumericalSemigroup, s: int) -> bool:
    """Is t^s in M^2, i.e. a sum of two nonzero members?"""
    return s in S and s > 0 and any(
        x > 0 and (s - x) > 0 and (s - x) in S for x in S.members(s)
    )


def m2_representative(pres: CurvePresentation, ell: int, alpha: tuple[int, ...]) -> tuple[int, ...] | None:
    """A vector alpha + tau, tau trivial, whose image lies in (M^2)^q, if one exists.

    Trivial directions are e_i for n_i + l in S; they change the image only
    by an element of the image of the partial derivatives.
    """
    S = pres.semigroup
    J1 = jacobian(pres).J1
    G, _ = graded_sets(pres, ell)
    k1 = pres.ring.nvars
    free = [i for i in range(k1) if i not in G]
    rows = [j for j, d in enumerate(pres.degrees) if (d + ell) in S and not _is_m2_degree(S, d + ell)]
    if not rows:
        return tuple(alpha)
    target = [-sum(J1[j][i] * alpha[i] for i in range(k1)) for j in rows]
    if not free:
        return tuple(alpha) if all(x == 0 for x in target) else None
    A = [[J1[j][i] for i in free] for j in rows]
    aug = [row + [t] for row, t in zip(A, target)]
    if rational_rank(A) != rational_rank(aug):
        return None
    # Particular solution from the reduced echelon form.
    from .linalg import rref

    red, piv = rref(aug)
    tau = [0] * len(free)
    for row, pc in zip(red, piv):
        tau[pc] = row[-1]
    full = list(alpha)
    for i, t in zip(free, tau):
        full[i] += t
    return primitive(full) if any(full) else tuple(full)


@dataclass
class M2Certificate:
    obstructed: bool
    candidates: list[tuple[int, tuple[int, ...]]]
    checked: int

    @property
    def verdict(self) -> str:
        if self.obstructed:
            return "obstructed: all first-order deformations singular at the origin"
        return "not obstructed: some first-order deformation has linear terms"

    def as_dict(self) -> dict:
        return {
            "obstructed": self.obstructed,
            "verdict": self.verdict,
            "checked": self.checked,
            "candidates": [{"ell": e, "alpha": list(a)} for e, a in self.candidates],
        }


def m2_obstruction_certificate(pres: CurvePresentation, table: T1Table | None = None) -> M2Certificate:
    """Does every T^1 basis class have a representative with image in (M^2)^q?"""
    table = table or t1_scan(pres)
    candidates = []
    checked = 0
    for piece in table.nonzero():
        for alpha in piece.basis:
            checked += 1
            if m2_representative(pres, piece.ell, alpha) is None:
                candidates.append((piece.ell, alpha))
    return M2Certificate(not candidates, candidates, checked)


def equivalent_modulo_trivial(
    pres: CurvePresentation, ell: int, a: tuple[int, ...], b: tuple[int, ...]
) -> bool:
    """Do a and b span the same line in T^1(l), i.e. modulo e_i (i not in G_l) and Euler?"""
    G, _ = graded_sets(pres, ell)
    k1 = pres.ring.nvars
    trivial = [tuple(int(i == j) for j in range(k1)) for i in range(k1) if i not in G]
    trivial.append(tuple(pres.weights))
    base = rational_rank(trivial)
    ra = rational_rank(trivial + [a])
    rb = rational_rank(trivial + [b])
    rab = rational_rank(trivial + [a, b])
    return ra == rb == rab == base + 1


def same_span_modulo_trivial(
    pres: CurvePresentation, ell: int, A: list[tuple[int, ...]], B: list[tuple[int, ...]]
) -> bool:
    G, _ = graded_sets(pres, ell)
    k1 = pres.ring.nvars
    trivial = [tuple(int(i == j) for j in range(k1)) for i in range(k1) if i not in G]
    trivial.append(tuple(pres.weights))
    base = rational_rank(trivial)
    ra = rational_rank(trivial + list(A))
    rb = rational_rank(trivial + list(B))
    rab = rational_rank(trivial + list(A) + list(B))
    return ra == rb == rab == base + len(A) == base + len(B)


def module_generator_degrees(pres: CurvePresentation, table: T1Table | None = None) -> dict[int, int]:
    """Degrees of minimal B-module generators of T^1 and how many sit in each.

    Multiplying t^l * sum(alpha_i Delta_i) by t^{n_i} keeps alpha and shifts l;
    a degree contributes generators for whatever its piece does not receive
    from lower pieces this way.
    """
    table = table or t1_scan(pres)
    by_ell = {p.ell: p for p in table.pieces}
    k1 = pres.ring.nvars
    out: dict[int, int] = {}
    for piece in table.nonzero():
        G = piece.G
        trivial = [tuple(int(i == j) for j in range(k1)) for i in range(k1) if i not in G]
        trivial.append(tuple(pres.weights))
        incoming = []
        for n in pres.weights:
            src = by_ell.get(piece.ell - n)
            if src is not None:
                incoming.extend(src.basis)
        base = rational_rank(trivial)
        received = rational_rank(trivial + incoming) - base if incoming else 0
        fresh = piece.dim - received
        if fresh > 0:
            out[piece.ell] = fresh
    return out


def semigroup_of(pres: CurvePresentation) -> NumericalSemigroup:
    return pres.semigroup
