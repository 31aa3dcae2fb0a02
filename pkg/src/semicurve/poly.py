"""Sparse weighted multivariate polynomials with integer coefficients.

A :class:`Ring` fixes variable names and their weights; a :class:`Poly` is a
mapping from exponent tuples to nonzero integer coefficients.  Everything is
exact: coefficients are Python ints and no term with coefficient 0 is stored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class Ring:
    names: tuple[str, ...]
    weights: tuple[int, ...]

    def __post_init__(self):
        if len(self.names) != len(self.weights):
            raise ValueError("names and weights differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")

    @classmethod
    def weighted(cls, weights: Sequence[int], prefix: str = "x") -> "Ring":
        return cls(tuple(f"{prefix}{i}" for i in range(len(weights))), tuple(weights))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no variable {name!r} in ring") from None

    def gens(self) -> list["Poly"]:
        return [self.var(i) for i in range(self.nvars)]

    def var(self, i: int | str) -> "Poly":
        if isinstance(i, str):
            i = self.index(i)
        exp = [0] * self.nvars
        exp[i] = 1
        return Poly(self, {tuple(exp): 1})

    def const(self, c: int) -> "Poly":
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def monomial(self, exp: Sequence[int], coeff: int = 1) -> "Poly":
        exp = tuple(exp)
        if len(exp) != self.nvars:
            raise ValueError("exponent length does not match ring")
        return Poly(self, {exp: coeff} if coeff else {})

    def extend(self, names: Sequence[str], weights: Sequence[int]) -> "Ring":
        return Ring(self.names + tuple(names), self.weights + tuple(weights))

    def with_weights(self, weights: Sequence[int]) -> "Ring":
        return Ring(self.names, tuple(weights))

    def parse(self, text: str) -> "Poly":
        return parse_poly(self, text)


class Poly:
    """An element of ``ring`` stored as ``{exponent tuple: int}``."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Mapping[Exponent, int] | None = None):
        self.ring = ring
        self.terms: dict[Exponent, int] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    self.terms[tuple(e)] = c

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("incompatible rings")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: int) -> "Poly":
        return Poly(self.ring, {e: c * v for e, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- calculus and grading -------------------------------------------
    def partial(self, i: int | str) -> "Poly":
        if isinstance(i, str):
            i = self.ring.index(i)
        out: dict[Exponent, int] = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return Poly(self.ring, out)

    def euler_part(self, i: int) -> "Poly":
        """``x_i * d/dx_i``: each coefficient times the exponent of ``x_i``."""
        return Poly(self.ring, {e: c * e[i] for e, c in self.terms.items()})

    def term_degree(self, e: Exponent) -> int:
        return sum(a * w for a, w in zip(e, self.ring.weights))

    def degrees(self) -> set[int]:
        return {self.term_degree(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def weighted_degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError("polynomial is not homogeneous" if degs else "zero polynomial has no degree")
        return degs.pop()

    def total_degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def min_total_degree(self) -> int | None:
        return min((sum(e) for e in self.terms), default=None)

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, a in enumerate(e) if a}

    # -- evaluation and substitution -------------------------------------
    def evaluate(self, point: Sequence[int], modulus: int | None = None):
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, a in zip(point, e):
                if a:
                    v *= pow(x, a, modulus) if modulus else x**a
            total += v
        return total % modulus if modulus else total

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Ring map sending variable ``i`` to ``images[i]``."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        target = images[0].ring if images else self.ring
        powers: dict[tuple[int, int], Poly] = {}
        out = target.zero()
        for e, c in self.terms.items():
            term = target.const(c)
            for i, a in enumerate(e):
                if a:
                    key = (i, a)
                    if key not in powers:
                        powers[key] = images[i] ** a
                    term = term * powers[key]
            out = out + term
        return out

    def embed(self, target: Ring) -> "Poly":
        """Map into ``target`` by variable name; missing names are an error."""
        idx = [target.index(n) for n in self.ring.names]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * target.nvars
            for i, a in zip(idx, e):
                ne[i] = a
            out[tuple(ne)] = c
        return Poly(target, out)

    def coefficient_in(self, variables: Iterable[int]) -> dict[Exponent, "Poly"]:
        """Group terms by their exponents in ``variables``."""
        variables = list(variables)
        groups: dict[Exponent, dict[Exponent, int]] = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in variables)
            rest = list(e)
            for i in variables:
                rest[i] = 0
            groups.setdefault(key, {})[tuple(rest)] = c
        return {k: Poly(self.ring, v) for k, v in groups.items()}

    # -- display ----------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        return sorted(self.terms.items(), key=lambda t: (-self.term_degree(t[0]), tuple(-a for a in t[0])))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if a == 1 else f"{n}^{a}" for n, a in zip(self.ring.names, e) if a
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def is_binomial(p: Poly) -> bool:
    return len(p.terms) == 2 and sorted(p.terms.values()) == [-1, 1]


def binomial_sides(p: Poly) -> tuple[Exponent, Exponent]:
    """Return (positive monomial, negative monomial) of a pure binomial."""
    if not is_binomial(p):
        raise ValueError(f"not a pure binomial: {p}")
    pos = next(e for e, c in p.terms.items() if c == 1)
    neg = next(e for e, c in p.terms.items() if c == -1)
    return pos, neg


def canonical_sign(p: Poly) -> Poly:
    """Fix the sign so the lexicographically largest exponent has coefficient > 0."""
    if not p.terms:
        return p
    lead = max(p.terms)
    return p if p.terms[lead] > 0 else -p


def toric_substitute(p: Poly, ring_t: Ring | None = None) -> Poly:
    """Send ``x_i -> t^{weight(x_i)}``; the kernel of this map is the toric ideal."""
    ring_t = ring_t or Ring(("t",), (1,))
    out: dict[Exponent, int] = {}
    for e, c in p.terms.items():
        d = (p.term_degree(e),)
        s = out.get(d, 0) + c
        if s:
            out[d] = s
        else:
            out.pop(d, None)
    return Poly(ring_t, out)


def mat_vec(rows: Sequence[Sequence[Poly | int]], vec: Sequence[Poly], ring: Ring | None = None) -> list[Poly]:
    """Matrix of polynomials times a column vector of polynomials."""
    ring = ring or vec[0].ring
    out = []
    for row in rows:
        if len(row) != len(vec):
            raise ValueError("matrix and vector sizes differ")
        acc = ring.zero()
        for a, b in zip(row, vec):
            if isinstance(a, int):
                if a:
                    acc = acc + b.scale(a)
            elif a.terms and b.terms:
                acc = acc + a * b
        out.append(acc)
    return out


_TERM = re.compile(r"([+-]?)\s*([^+-]+)")
_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?$")


def parse_poly(ring: Ring, text: str) -> Poly:
    """Parse sums of terms like ``-2*x0^2*x1 + x6^2`` (no parentheses)."""
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ValueError("empty polynomial")
    out = ring.zero()
    pos = 0
    for m in _TERM.finditer(s):
        if m.start() != pos:
            raise ValueError(f"cannot parse {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coeff = sign
        exp = [0] * ring.nvars
        for factor in m.group(2).split("*"):
            if factor.isdigit():
                coeff *= int(factor)
                continue
            fm = _FACTOR.match(factor)
            if not fm:
                raise ValueError(f"bad factor {factor!r} in {text!r}")
            exp[ring.index(fm.group(1))] += int(fm.group(2) or 1)
        out = out + ring.monomial(exp, coeff)
    if pos != len(s):
        raise ValueError(f"cannot parse {text!r}")
    return out
