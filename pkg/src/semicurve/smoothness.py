"""Exhaustive Jacobian-criterion scans of fibres over a prime field.

This is a smoke test in one characteristic, not a proof in characteristic 0.
The fibre equations are evaluated on every point of F_p^n with numpy; the
Jacobian rank is then computed exactly mod p at the points found.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .curve import jacobian_rank_at
from .deform import DeformationFamily
from .poly import Poly

MAX_POINTS = 2_100_000


class BadPrimeError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


def structure_constants(fam: DeformationFamily) -> dict[str, int]:
    """Constants the smoothness argument divides by or needs nonzero."""
    c = fam.base.constants
    if fam.name.startswith("arithmetic4"):
        v, mu = c["v"], c["mu"]
        return {"2": 2, "v": v, "mu": mu, "3v-2": 3 * v - 2}
    return {}


def check_prime(fam: DeformationFamily, p: int) -> None:
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p ** fam.nx > MAX_POINTS:
        raise ValueError(f"p^{fam.nx} = {p ** fam.nx} points is beyond the exhaustive range")
    for name, val in structure_constants(fam).items():
        if val % p == 0:
            raise BadPrimeError(f"bad prime, choose another: p divides {name} = {val}")


def _eval_on_block(poly: Poly, grids: list[np.ndarray], p: int) -> np.ndarray:
    out = np.zeros(grids[0].shape, dtype=np.int64)
    for e, c in poly.terms.items():
        term = np.full(grids[0].shape, c % p, dtype=np.int64)
        for g, a in zip(grids, e):
            if a:
                term = term * _powmod(g, a, p) % p
        out = (out + term) % p
    return out


def _powmod(g: np.ndarray, a: int, p: int) -> np.ndarray:
    # Lookup table avoids overflow: values are < p, table has p entries.
    table = np.array([pow(x, a, p) for x in range(p)], dtype=np.int64)
    return table[g]


def _points_on_block(polys: list[Poly], p: int, nx: int, x0: int) -> list[tuple[int, ...]]:
    shape = (p,) * (nx - 1)
    rest = [g.astype(np.int64) for g in np.indices(shape)] if nx > 1 else []
    grids = [np.full(shape, x0, dtype=np.int64)] + rest
    mask = np.ones(shape, dtype=bool)
    for f in polys:
        mask &= _eval_on_block(f, grids, p) == 0
        if not mask.any():
            return []
    idx = np.argwhere(mask)
    return [(x0,) + tuple(int(v) for v in row) for row in idx]


def fibre_points(polys: list[Poly], p: int, jobs: int = 1) -> list[tuple[int, ...]]:
    """All points of F_p^n where every polynomial vanishes, in lex order."""
    nx = polys[0].ring.nvars
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            blocks = list(ex.map(_points_on_block, [polys] * p, [p] * p, [nx] * p, range(p)))
    else:
        blocks = [_points_on_block(polys, p, nx, x0) for x0 in range(p)]
    return [pt for b in blocks for pt in b]


@dataclass
class ScanReport:
    family: str
    p: int
    params: dict[str, int]
    expected_rank: int
    points: int
    min_rank: int | None
    singular_points: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def smooth(self) -> bool:
        return not self.singular_points

    @property
    def verdict(self) -> str:
        if self.smooth:
            return f"no singular F_{self.p}-point on the fibre (consistent with a smooth fibre)"
        return f"{len(self.singular_points)} singular F_{self.p}-point(s) on the fibre"

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "p": self.p,
            "params": self.params,
            "expected_rank": self.expected_rank,
            "points": self.points,
            "min_rank": self.min_rank,
            "singular_points": [list(x) for x in self.singular_points],
            "verdict": self.verdict,
        }


def finite_field_smoothness_scan(
    fam: DeformationFamily, p: int, values: dict[str, int] | int, jobs: int = 1
) -> ScanReport:
    """Enumerate the fibre over F_p and compute the Jacobian rank at each point."""
    check_prime(fam, p)
    if isinstance(values, int):
        values = {name: values for name in fam.params}
    fibre = fam.fibre(values)
    k = fam.nx - 1
    pts = fibre_points(fibre, p, jobs)
    ranks = [(pt, jacobian_rank_at(fibre, list(pt), p)) for pt in pts]
    report = ScanReport(
        fam.name,
        p,
        dict(values),
        k,
        len(pts),
        min((r for _, r in ranks), default=None),
        [pt for pt, r in ranks if r < k],
    )
    return report


@dataclass
class OriginReport:
    family: str
    p: int
    on_fibre: dict[int, bool]
    rank_at_origin: dict[int, int]
    expected_rank: int = 3

    @property
    def singular_everywhere(self) -> bool:
        k = self.expected_rank
        return all(self.on_fibre.values()) and all(r < k for r in self.rank_at_origin.values())

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "p": self.p,
            "on_fibre": self.on_fibre,
            "rank_at_origin": self.rank_at_origin,
            "singular_origin_on_every_fibre": self.singular_everywhere,
        }


def origin_scan(fam: DeformationFamily, p: int) -> OriginReport:
    """Is the origin a singular point of the fibre for every nonzero parameter in F_p?"""
    if len(fam.params) != 1:
        raise ValueError("needs a one-parameter family")
    name = fam.params[0]
    origin = [0] * fam.nx
    on, ranks = {}, {}
    for val in range(1, p):
        fibre = fam.fibre({name: val})
        on[val] = all(f.evaluate(origin, p) == 0 for f in fibre)
        ranks[val] = jacobian_rank_at(fibre, origin, p)
    return OriginReport(fam.name, p, on, ranks, fam.nx - 1)
