"""Necessary conditions for a semigroup to be Weierstrass.

A violation of the gap-sumset bound proves a semigroup is not Weierstrass.
Passing it proves nothing, hence the verdict wording below.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .semigroup import NumericalSemigroup, SemigroupError, _from_gaps

OBSTRUCTED = "obstructed (non-Weierstrass)"
NO_OBSTRUCTION = "no obstruction found"


def _gap_bits(S: NumericalSemigroup) -> int:
    bits = 0
    for h in S.gaps:
        bits |= 1 << h
    return bits


def _sumset_bits(a: int, b: int) -> int:
    out = 0
    x = b
    shift = 0
    while x:
        if x & 1:
            out |= a << shift
        x >>= 1
        shift += 1
    return out


def _bits_to_set(bits: int) -> set[int]:
    out = set()
    i = 0
    while bits:
        if bits & 1:
            out.add(i)
        bits >>= 1
        i += 1
    return out


def sumset_bits(S: NumericalSemigroup, m: int) -> int:
    if m < 1:
        raise ValueError("m must be positive")
    if not S.gaps:
        raise SemigroupError("no gaps")
    base = _gap_bits(S)
    acc = base
    for _ in range(m - 1):
        acc = _sumset_bits(acc, base)
    return acc


def sumset_Hm(S: NumericalSemigroup, m: int) -> set[int]:
    """All m-fold sums of gaps, repetition allowed."""
    return _bits_to_set(sumset_bits(S, m))


@dataclass(frozen=True)
class HmRecord:
    m: int
    size: int
    bound: int
    violated: bool


@dataclass
class ObstructionReport:
    genus: int
    records: list[HmRecord] = field(default_factory=list)
    first_violation: int | None = None
    shortcut_applied: bool = False

    @property
    def verdict(self) -> str:
        return OBSTRUCTED if self.first_violation is not None else NO_OBSTRUCTION

    def as_dict(self) -> dict:
        return {
            "genus": self.genus,
            "records": [r.__dict__ for r in self.records],
            "first_violation": self.first_violation,
            "shortcut_applied": self.shortcut_applied,
            "verdict": self.verdict,
        }


def buchweitz_test(S: NumericalSemigroup, m_max: int = 2, shortcut: bool = True) -> ObstructionReport:
    """Check #H_m <= (2m-1)(g-1) for m = 2..m_max."""
    if m_max < 2:
        raise ValueError("m_max must be at least 2")
    g = S.genus
    if g < 2:
        # The bound comes from Riemann-Roch for m-canonical forms, g >= 2 only.
        raise SemigroupError("genus must be at least 2")
    report = ObstructionReport(genus=g)
    if shortcut and 2 * S.conductor < 3 * g:
        report.shortcut_applied = True
        return report
    base = _gap_bits(S)
    acc = base
    for m in range(2, m_max + 1):
        acc = _sumset_bits(acc, base)
        size = acc.bit_count()
        bound = (2 * m - 1) * (g - 1)
        rec = HmRecord(m, size, bound, size > bound)
        report.records.append(rec)
        if rec.violated and report.first_violation is None:
            report.first_violation = m
    return report


@dataclass(frozen=True)
class TorresDouble:
    semigroup: NumericalSemigroup
    source: NumericalSemigroup
    non_weierstrass: bool


def torres_double(S_prime: NumericalSemigroup, g: int) -> TorresDouble:
    """Symmetric semigroup of genus g built from 2S' and odd numbers 2g-1-2t, t not in S'."""
    gamma = S_prime.genus
    if g < 6 * gamma + 4:
        raise SemigroupError(f"hypothesis violated: need g >= {6 * gamma + 4}")
    members = {2 * s for s in S_prime.members(g)}
    # t ranges over gaps of S' and all negative integers; the latter give
    # every odd number from 2g+1 on.
    members |= {2 * g - 1 - 2 * t for t in S_prime.gaps}
    gaps = [x for x in range(1, 2 * g) if x not in members]
    S = _from_gaps(gaps)
    non_w = S_prime.genus >= 2 and buchweitz_test(S_prime, 2, shortcut=False).first_violation is not None
    return TorresDouble(S, S_prime, non_w)


@dataclass(frozen=True)
class ReduceResult:
    semigroup: NumericalSemigroup | None
    failed: str | None = None


def gamma_hyperelliptic_reduce(S: NumericalSemigroup, gamma: int) -> ReduceResult:
    """Halve the even prefix of a gamma-hyperelliptic semigroup.

    If S is Weierstrass then so is the result, so a non-Weierstrass result
    certifies that S is non-Weierstrass.
    """
    if gamma < 0:
        raise ValueError("gamma must be non-negative")
    first = [S.member_at(i) for i in range(1, gamma + 1)]
    if any(m % 2 for m in first):
        return ReduceResult(None, "condition 1: first gamma nonzero elements are not all even")
    m_gamma = first[-1] if first else 0
    if m_gamma != 4 * gamma:
        return ReduceResult(None, f"condition 2: m_gamma = {m_gamma} != {4 * gamma}")
    if 4 * gamma + 2 not in S:
        return ReduceResult(None, f"condition 3: {4 * gamma + 2} is not in S")
    if S.genus < 6 * gamma + 4:
        return ReduceResult(None, f"genus {S.genus} < {6 * gamma + 4}")
    small = {0} | {m // 2 for m in first}
    gaps = [x for x in range(1, 2 * gamma) if x not in small]
    return ReduceResult(_from_gaps(gaps))


def weight(S: NumericalSemigroup) -> int:
    """Sum of h_i - i over the gaps h_1 < ... < h_g."""
    return sum(h - i for i, h in enumerate(S.gaps, start=1))
