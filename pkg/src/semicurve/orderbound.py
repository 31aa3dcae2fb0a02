"""The nu-sequence of a numerical semigroup, s_m and the order bound.

``nu(s)`` counts ordered pairs of members summing to ``s``.  Past the
conductor region the sequence only grows, so everything here is computed on
a finite window of members and then checked for monotonicity beyond it.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .semigroup import (
    NumericalSemigroup,
    SemigroupError,
    SemigroupProfile,
    classify_sequence,
    profile,
)


def nu(S: NumericalSemigroup, s: int) -> int:
    if s not in S:
        raise SemigroupError(f"{s} is not a member")
    return sum(1 for x in S.members(s) if (s - x) in S)


def _require_partition(S: NumericalSemigroup) -> SemigroupProfile:
    if S.is_ordinary():
        raise SemigroupError("partition undefined for ordinary semigroups")
    return profile(S)


def partition_counts(S: NumericalSemigroup, s: int) -> tuple[int, int, int, int]:
    """(#A, #B, #C, #D) for the pairs of N(s)."""
    P = _require_partition(S)
    if s not in S:
        raise SemigroupError(f"{s} is not a member")
    a = b = cc = dd = 0
    for x in S.members(s):
        y = s - x
        if y not in S:
            continue
        if max(x, y) >= P.c:
            dd += 1
        elif x >= P.c_sub and y >= P.c_sub:
            b += 1
        elif x <= P.d_prime and y <= P.d_prime:
            cc += 1
        else:
            a += 1
    return a, b, cc, dd


@dataclass(frozen=True)
class DeltaProfile:
    s_i: int
    s_next: int
    alpha: int
    beta: int
    gamma: int
    delta: int
    counts_i: tuple[int, int, int, int]
    counts_next: tuple[int, int, int, int]

    @property
    def eta(self) -> int:
        return self.alpha + self.beta + self.gamma + self.delta


def delta_profile(S: NumericalSemigroup, s_i: int) -> DeltaProfile:
    ci = partition_counts(S, s_i)
    s_next = S.next_member(s_i)
    cn = partition_counts(S, s_next)
    a, b, g, d = (cn[k] - ci[k] for k in range(4))
    return DeltaProfile(s_i, s_next, a, b, g, d, ci, cn)


# (s_{i+1} - c in S, s_i - d in S, s_{i+1} - c' in S) -> (alpha, beta, delta)
SIGN_TABLE: dict[tuple[bool, bool, bool], tuple[int, int, int]] = {
    (False, True, False): (-2, 0, 0),
    (False, True, True): (0, 0, 0),
    (False, False, False): (0, 0, 0),
    (True, True, False): (-2, 0, 2),
    (False, False, True): (2, 0, 0),
    (True, False, False): (0, 0, 2),
    (True, True, True): (0, 0, 2),
    (True, False, True): (2, 0, 2),
}


def table_pattern(S: NumericalSemigroup, s_i: int) -> tuple[bool, bool, bool]:
    P = profile(S)
    s_next = S.next_member(s_i)
    return (s_next - P.c in S, s_i - P.d in S, s_next - P.c_sub in S)


@dataclass
class NuProfile:
    s_values: list[int]
    nu: list[int]
    window: int
    m_index: int | None = None
    s_m: int | None = None

    def value(self, s: int) -> int:
        return self.nu[self.s_values.index(s)]


def nu_window(S: NumericalSemigroup) -> int:
    """Upper end of the members scanned: max(2d, 2c) + e."""
    d = S.small_elements[-1] if S.small_elements else 0
    return max(2 * d, 2 * S.conductor) + S.multiplicity


def nu_sequence(S: NumericalSemigroup, upto: int) -> tuple[list[int], list[int]]:
    members = S.members(upto)
    # Ordered-pair counts by convolution of the membership indicator.
    ind = [0] * (upto + 1)
    for x in members:
        ind[x] = 1
    mem = [x for x in members]
    vals = []
    for s in members:
        vals.append(sum(ind[s - x] for x in mem if x <= s))
    return members, vals


def find_sm(S: NumericalSemigroup) -> NuProfile:
    """The last strict drop of nu, or no drop for ordinary S."""
    window = nu_window(S)
    members, vals = nu_sequence(S, window)
    prof = NuProfile(members, vals, window)
    drops = [i for i in range(len(vals) - 1) if vals[i] > vals[i + 1]]
    if S.is_ordinary():
        if drops:
            raise AssertionError(f"nu drops for ordinary semigroup {S.spec}")
        return prof
    if not drops:
        raise AssertionError(f"no drop found for non-ordinary {S.spec}")
    m = drops[-1]
    if any(vals[i] > vals[i + 1] for i in range(m + 1, len(vals) - 1)):
        raise AssertionError("nu not monotone after s_m")
    prof.m_index = m
    prof.s_m = members[m]
    return prof


def order_bound(S: NumericalSemigroup, k: int) -> int:
    """d_ORD(C_k) = min{nu(s_j) : j > k}."""
    if k < 0:
        raise ValueError("k must be non-negative")
    # Beyond 2c every step adds one, so the minimum over j > k sits before
    # max(index(2c), k + 1).
    last = max(S.index_of(2 * S.conductor) if S.conductor else 0, k + 1)
    upto = S.member_at(last)
    members, vals = nu_sequence(S, upto)
    return min(vals[k + 1:last + 1])


@dataclass(frozen=True)
class SmPrediction:
    case: str  # "1", "1*", "2a", "2b", "2c", "2c*", "2"
    exact: int | None
    lower: int | None
    upper: int | None
    hypothesis: str

    def consistent_with(self, s_m: int) -> bool:
        if self.exact is not None and s_m != self.exact:
            return False
        if self.lower is not None and s_m < self.lower:
            return False
        if self.upper is not None and s_m > self.upper:
            return False
        return True


def _interval_in(S: NumericalSemigroup, lo: int, hi: int) -> bool:
    return all(x in S for x in range(lo, hi + 1))


def predict_sm(S: NumericalSemigroup) -> SmPrediction:
    """Case analysis for the position of s_m in terms of the profile."""
    P = _require_partition(S)
    st, d, dp, cp, ell = P.s_tilde, P.d, P.d_prime, P.c_sub, P.ell
    if st < 2 * dp - d:
        if _interval_in(S, st + 2, dp):
            return SmPrediction("1*", st + d, None, 2 * dp, "s~ < 2d'-d and [s~+2, d'] in S")
        return SmPrediction("1", None, None, 2 * dp, "s~ < 2d'-d")
    if st >= dp + cp - d:
        return SmPrediction("2a", st + d, None, st + d, "s~ >= d'+c'-d")
    if st == 2 * dp - d:
        return SmPrediction("2b", st + d, None, st + d, "s~ = 2d'-d")
    if _interval_in(S, dp - ell, dp):
        lo = st + dp - ell + 1
        return SmPrediction(
            "2c*", None, lo, min(2 * dp, st + d), "2d'-d < s~ < d'+c'-d and [d'-l, d'] in S"
        )
    return SmPrediction("2c", None, None, st + d, "2d'-d < s~ < d'+c'-d")


@dataclass
class ConjectureRecord:
    generators: list[int]
    profile: dict
    s_m: int
    bound: int
    holds: bool
    certified_by: list[int] = field(default_factory=list)
    prediction: str = ""
    prediction_ok: bool = True

    def as_dict(self) -> dict:
        return asdict(self)


def check_conjecture(S: NumericalSemigroup) -> ConjectureRecord:
    """Compare brute-force s_m with c + d - e and list the known sufficient cases."""
    P = _require_partition(S)
    s_m = find_sm(S).s_m
    bound = P.c + P.d - P.e
    certs = []
    if s_m >= P.s_tilde + P.d or (s_m >= 2 * P.d_prime and P.s_tilde < P.d_prime):
        certs.append(1)
    if 2 * P.d_prime - P.d < P.s_tilde < P.d_prime + P.c_sub - P.d and _interval_in(
        S, P.d_prime - P.ell, P.d_prime
    ):
        certs.append(2)
    if P.ell in (2, 3):
        certs.append(3)
    if P.tau <= 7:
        certs.append(4)
    if P.e <= 8:
        certs.append(5)
    cls = classify_sequence(S)
    if cls.is_generalized_arithmetic:
        certs.append(6)
    if cls.kind != "none" and P.embdim <= 5:
        certs.append(7)
    pred = predict_sm(S)
    return ConjectureRecord(
        generators=list(S.min_generators),
        profile=P.as_dict(),
        s_m=s_m,
        bound=bound,
        holds=s_m >= bound,
        certified_by=certs,
        prediction=pred.case,
        prediction_ok=pred.consistent_with(s_m),
    )
