"""Exact rank and nullspace over the rationals, and rank over small prime fields."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

Matrix = Sequence[Sequence[int | Fraction]]


def _integral_rows(m: Matrix) -> list[list[int]]:
    rows = []
    for row in m:
        den = reduce(lcm, (Fraction(x).denominator for x in row), 1)
        rows.append([int(Fraction(x) * den) for x in row])
    return rows


def bareiss_echelon(m: Matrix) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form; returns (matrix, pivot columns).

    Rational input rows are scaled to integers first, so every entry stays an
    integer and each division below is exact.
    """
    a = _integral_rows(m)
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    prev = 1
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                num = piv * a[i][j] - a[i][c] * a[r][j]
                q, rem = divmod(num, prev)
                assert rem == 0, "Bareiss division must be exact"
                a[i][j] = q
            a[i][c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return a, pivots


def rational_rank(m: Matrix) -> int:
    if not m or not len(m[0]):
        return 0
    return len(bareiss_echelon(m)[1])


def rref(m: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q (Gauss-Jordan on Fractions)."""
    a = [[Fraction(x) for x in row] for row in m]
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def primitive(vec: Sequence[int | Fraction]) -> tuple[int, ...]:
    """Scale to coprime integers with the first nonzero entry positive."""
    fr = [Fraction(x) for x in vec]
    den = reduce(lcm, (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def nullspace_basis(m: Matrix, ncols: int | None = None) -> list[tuple[int, ...]]:
    """Basis of {v : M v = 0} from the RREF free columns, as primitive vectors."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if not m:
        return [tuple(int(i == j) for i in range(ncols)) for j in range(ncols)]
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(primitive(v))
    return basis


def mat_vec(m: Matrix, v: Sequence[int | Fraction]) -> list:
    return [sum(a * b for a, b in zip(row, v)) for row in m]


def in_span(vectors: Sequence[Sequence[int | Fraction]], v: Sequence[int | Fraction]) -> bool:
    if not vectors:
        return all(x == 0 for x in v)
    return rational_rank(list(vectors)) == rational_rank(list(vectors) + [list(v)])


def rank_mod_p(m: Sequence[Sequence[int]], p: int) -> int:
    a = [[x % p for x in row] for row in m]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], p - 2, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
        if r == nrows:
            break
    return r
