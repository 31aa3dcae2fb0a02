"""Numerical semigroups: construction, invariants, Apéry sets, genus tree."""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import gcd
from typing import Callable, Iterator, Sequence


class SemigroupError(ValueError):
    pass


@dataclass(frozen=True)
class NumericalSemigroup:
    """Co-finite submonoid of (N, +), stored by its gaps below the conductor."""

    min_generators: tuple[int, ...]
    gaps: tuple[int, ...]
    conductor: int
    small_elements: tuple[int, ...] = field(repr=False)

    def __contains__(self, x: int) -> bool:
        if x < 0:
            return False
        if x >= self.conductor:
            return True
        i = bisect.bisect_left(self.gaps, x)
        return not (i < len(self.gaps) and self.gaps[i] == x)

    def is_member(self, x: int) -> bool:
        return x in self

    @property
    def genus(self) -> int:
        return len(self.gaps)

    @property
    def multiplicity(self) -> int:
        return self.small_elements[1] if len(self.small_elements) > 1 else max(self.conductor, 1)

    @property
    def embedding_dimension(self) -> int:
        return len(self.min_generators)

    @property
    def frobenius(self) -> int:
        return self.conductor - 1

    def is_natural_numbers(self) -> bool:
        return self.conductor == 0

    def is_ordinary(self) -> bool:
        return len(self.small_elements) <= 1

    def is_symmetric(self) -> bool:
        f = self.frobenius
        return all((x in self) != (f - x in self) for x in range(f + 1))

    def members(self, upto: int) -> list[int]:
        """Members of S that are <= upto, ascending."""
        small = [s for s in self.small_elements if s <= upto]
        return small + list(range(self.conductor, upto + 1))

    def member_at(self, j: int) -> int:
        """The j-th member s_j (s_0 = 0)."""
        if j < len(self.small_elements):
            return self.small_elements[j]
        return self.conductor + (j - len(self.small_elements))

    def index_of(self, s: int) -> int:
        if s not in self:
            raise SemigroupError(f"{s} is not a member")
        if s < self.conductor:
            return self.small_elements.index(s)
        return len(self.small_elements) + (s - self.conductor)

    def next_member(self, s: int) -> int:
        x = s + 1
        while x not in self:
            x += 1
        return x

    @cached_property
    def spec(self) -> str:
        return "gen:" + ",".join(map(str, self.min_generators))

    def __str__(self) -> str:
        return format_semigroup(self)


def _from_gaps(gaps: Sequence[int]) -> NumericalSemigroup:
    gaps = tuple(sorted(set(gaps)))
    if gaps and gaps[0] <= 0:
        raise SemigroupError("gaps must be positive")
    conductor = gaps[-1] + 1 if gaps else 0
    gapset = set(gaps)
    small = tuple(x for x in range(conductor) if x not in gapset)
    if not gaps:
        return NumericalSemigroup((1,), (), 0, ())

    def member(x: int) -> bool:
        return x >= conductor or (x >= 0 and x not in gapset)

    for a in small[1:]:
        for b in small[1:]:
            if a + b < conductor and not member(a + b):
                raise SemigroupError("not a semigroup: closure fails")
    e = small[1] if len(small) > 1 else conductor
    nonzero = [s for s in small[1:]] + list(range(conductor, conductor + e + 1))
    gens = []
    for s in nonzero:
        if s >= conductor + e:
            break
        if not any(member(s - a) and s - a > 0 for a in nonzero if a < s):
            gens.append(s)
    return NumericalSemigroup(tuple(gens), gaps, conductor, small)


def from_generators(gens: Sequence[int]) -> NumericalSemigroup:
    """Semigroup generated by ``gens`` via shortest paths over residues."""
    gens = sorted(set(int(g) for g in gens))
    if not gens:
        raise SemigroupError("no generators")
    if gens[0] <= 0:
        raise SemigroupError("generators must be positive")
    if reduce(gcd, gens) != 1:
        raise SemigroupError("not co-finite: gcd of generators is not 1")
    n = gens[0]
    if n == 1:
        return _from_gaps(())
    ap = _apery_from_generators(gens)
    gaps = [x for r in range(n) for x in range(r, ap[r], n)]
    return _from_gaps(gaps)


def _apery_from_generators(gens: Sequence[int]) -> list[int]:
    n = gens[0]
    inf = float("inf")
    ap: list = [inf] * n
    ap[0] = 0
    # Dijkstra on residues mod n; edge weights are the generators.
    import heapq

    heap = [(0, 0)]
    while heap:
        d, r = heapq.heappop(heap)
        if d > ap[r]:
            continue
        for g in gens[1:]:
            nd, nr = d + g, (r + g) % n
            if nd < ap[nr]:
                ap[nr] = nd
                heapq.heappush(heap, (nd, nr))
    return [int(x) for x in ap]


def from_small_elements(elements: Sequence[int], conductor: int) -> NumericalSemigroup:
    elems = sorted(set(int(x) for x in elements))
    if 0 not in elems:
        raise SemigroupError("0 must be listed")
    if any(x < 0 or x >= conductor for x in elems):
        raise SemigroupError("all listed elements must be below the conductor")
    if conductor - 1 in elems:
        raise SemigroupError("conductor not minimal")
    es = set(elems)
    for a in elems:
        for b in elems:
            if a + b < conductor and a + b not in es:
                raise SemigroupError(f"not a semigroup: {a}+{b} missing")
    return _from_gaps([x for x in range(1, conductor) if x not in es])


def from_membership(member: Callable[[int], bool], bound: int) -> NumericalSemigroup:
    """Build from a predicate known to hold for every integer >= bound."""
    return _from_gaps([x for x in range(1, bound) if not member(x)])


def parse_semigroup(text: str) -> NumericalSemigroup:
    """Parse ``gen:4,9,11`` or ``elem:0,8,12,14,15,16;c=20``."""
    text = text.strip()
    try:
        kind, body = text.split(":", 1)
    except ValueError:
        raise SemigroupError(f"malformed semigroup spec {text!r}") from None
    kind = kind.strip().lower()
    try:
        if kind == "gen":
            return from_generators([int(x) for x in body.split(",") if x.strip()])
        if kind == "elem":
            elems, _, cpart = body.partition(";")
            key, _, val = cpart.partition("=")
            if key.strip() != "c":
                raise SemigroupError("elem spec needs ';c=<conductor>'")
            return from_small_elements([int(x) for x in elems.split(",") if x.strip()], int(val))
    except ValueError as exc:
        if isinstance(exc, SemigroupError):
            raise
        raise SemigroupError(f"malformed semigroup spec {text!r}") from exc
    raise SemigroupError(f"unknown semigroup spec kind {kind!r}")


def format_semigroup(S: NumericalSemigroup) -> str:
    elems = ", ".join(str(x) for x in S.small_elements[1:])
    head = "0" + (", " + elems if elems else "")
    if S.conductor:
        head += f", {S.conductor} ->"
    else:
        head += " ->"
    return f"S = <{head}; gaps = {{{', '.join(map(str, S.gaps))}}}"


@dataclass(frozen=True)
class SemigroupProfile:
    """Invariants near the conductor.  ``None`` marks a value that is undefined
    for ordinary semigroups."""

    e: int
    c: int
    d: int
    c_sub: int
    d_prime: int | None
    ell: int
    s_tilde: int | None
    g: int
    embdim: int
    tau: int
    is_ordinary: bool
    is_acute: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def cohen_macaulay_type(S: NumericalSemigroup) -> int:
    return len(pseudo_frobenius(S))


def pseudo_frobenius(S: NumericalSemigroup) -> list[int]:
    return [x for x in S.gaps if all(x + n in S for n in S.min_generators)]


def profile(S: NumericalSemigroup) -> SemigroupProfile:
    c = S.conductor
    g = S.genus
    e = S.multiplicity
    tau = cohen_macaulay_type(S)
    if S.is_ordinary():
        return SemigroupProfile(
            e=e, c=c, d=0, c_sub=0, d_prime=None, ell=max(c - 1, 0), s_tilde=None,
            g=g, embdim=S.embedding_dimension, tau=tau, is_ordinary=True, is_acute=True,
        )
    d = S.small_elements[-1]
    c_sub = max(s for s in S.small_elements if s <= d and (s - 1) not in S)
    d_prime = max(s for s in S.small_elements if s < c_sub)
    ell = c - 1 - d
    s_tilde = max(s for s in S.small_elements if s <= d and (s - ell) not in S)
    return SemigroupProfile(
        e=e, c=c, d=d, c_sub=c_sub, d_prime=d_prime, ell=ell, s_tilde=s_tilde, g=g,
        embdim=S.embedding_dimension, tau=tau, is_ordinary=False,
        is_acute=(c - d) <= (c_sub - d_prime),
    )


def apery_set(S: NumericalSemigroup, n: int) -> list[int]:
    """Least member in each residue class mod ``n``, indexed by residue."""
    if n <= 0 or n not in S:
        raise SemigroupError(f"{n} is not a member")
    out = []
    for r in range(n):
        x = r
        while x not in S:
            x += n
        out.append(x)
    return out


def genus_from_apery(S: NumericalSemigroup, n: int) -> int:
    ap = apery_set(S, n)
    num = sum(ap) - n * (n - 1) // 2
    assert num % n == 0
    return num // n


@dataclass(frozen=True)
class SequenceClass:
    kind: str  # "arithmetic" | "generalized-arithmetic" | "almost-arithmetic" | "none"
    a: int | None = None
    d: int | None = None
    extra: int | None = None

    @property
    def is_generalized_arithmetic(self) -> bool:
        return self.kind in ("arithmetic", "generalized-arithmetic")


def _arithmetic_step(seq: Sequence[int]) -> int | None:
    if len(seq) < 2:
        return None
    d = seq[1] - seq[0]
    if d >= 1 and all(seq[i + 1] - seq[i] == d for i in range(len(seq) - 1)):
        return d
    return None


def classify_sequence(S: NumericalSemigroup) -> SequenceClass:
    gens = S.min_generators
    if len(gens) < 2:
        return SequenceClass("none")
    d = _arithmetic_step(gens)
    if d is not None:
        return SequenceClass("arithmetic", a=1, d=d)
    m0, rest = gens[0], gens[1:]
    # m_i = a*m0 + i*d for i >= 1
    if len(rest) == 1:
        step = None
    else:
        step = _arithmetic_step(rest)
    if step is not None:
        base = rest[0] - step
        if base > 0 and base % m0 == 0:
            return SequenceClass("generalized-arithmetic", a=base // m0, d=step)
    if len(gens) >= 3:
        for j in range(len(gens)):
            others = gens[:j] + gens[j + 1:]
            dd = _arithmetic_step(others)
            if dd is not None:
                return SequenceClass("almost-arithmetic", a=1, d=dd, extra=gens[j])
    return SequenceClass("none")


def children(S: NumericalSemigroup) -> list[NumericalSemigroup]:
    """Children in the genus tree: remove a minimal generator above the Frobenius number."""
    f = S.frobenius
    return [_from_gaps(S.gaps + (x,)) for x in S.min_generators if x > f]


def enumerate_by_genus(g_max: int) -> Iterator[NumericalSemigroup]:
    """Every semigroup of genus <= g_max exactly once, breadth-first by genus."""
    if g_max < 0:
        return
    level = [_from_gaps(())]
    for g in range(g_max + 1):
        yield from level
        if g < g_max:
            level = [child for S in level for child in children(S)]


def semigroups_of_genus(g: int) -> list[NumericalSemigroup]:
    return [S for S in enumerate_by_genus(g) if S.genus == g]
