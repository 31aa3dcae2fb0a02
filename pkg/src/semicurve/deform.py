"""Explicit deformation families of monomial curves and their flatness checks.

A family is F = f + g + h over a parameter ring, where g is linear and h
quadratic in the parameters, with lifted relation matrix R = r + rho + rho'.
Flatness up to the order where the families terminate amounts to the
polynomial identities

    r.g + rho.f = 0,  rho.g + r.h + rho'.f = 0,  rho.h + rho'.g = 0,  rho'.h = 0,

all checked exactly in the combined ring of x-variables and parameters.
Parameters carry weight -deg(g), so every F_j is homogeneous of degree d_j.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .curve import (
    CurvePresentation,
    PresentationError,
    presentation_3,
    presentation_4_arithmetic,
    structure_constants_3,
)
from .poly import Poly, Ring, mat_vec, toric_substitute
from .semigroup import NumericalSemigroup


class FlatnessError(AssertionError):
    pass


@dataclass
class DeformationFamily:
    base: CurvePresentation
    ring: Ring  # x-variables followed by the parameters
    params: tuple[str, ...]
    param_weights: tuple[int, ...]
    g: list[Poly]
    h: list[Poly]
    rho: list[list[Poly]]
    rho2: list[list[Poly]]
    name: str = ""
    notes: dict = field(default_factory=dict)
    parent: "DeformationFamily | None" = None  # graded family this one restricts

    @property
    def nx(self) -> int:
        return self.base.ring.nvars

    @property
    def f(self) -> list[Poly]:
        return [p.embed(self.ring) for p in self.base.f]

    @property
    def r(self) -> list[list[Poly]]:
        return [[p.embed(self.ring) for p in row] for row in self.base.r]

    @property
    def F(self) -> list[Poly]:
        return [a + b + c for a, b, c in zip(self.f, self.g, self.h)]

    def param(self, name: str) -> Poly:
        return self.ring.var(name)

    def fibre(self, values: dict[str, int]) -> list[Poly]:
        """Equations of the fibre over a parameter point, in the x-ring."""
        R = self.base.ring
        images = list(R.gens()) + [R.const(values[p]) for p in self.params]
        return [p.substitute(images) for p in self.F]

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "generators": list(self.base.semigroup.min_generators),
            "params": dict(zip(self.params, self.param_weights)),
            "equations": [str(p) for p in self.F],
            "first_order": [str(p) for p in self.g],
            "correction": [str(p) for p in self.h],
            "rho": [[str(x) for x in row] for row in self.rho],
            "notes": self.notes,
        }


def _combined_ring(pres: CurvePresentation, params: dict[str, int]) -> Ring:
    return pres.ring.extend(list(params), list(params.values()))


def _zeros(R: Ring, rows: int, cols: int) -> list[list[Poly]]:
    return [[R.zero() for _ in range(cols)] for _ in range(rows)]


def make_family(
    pres: CurvePresentation,
    params: dict[str, int],
    columns: dict[str, list[Poly | str | int]],
    rho: list[list[Poly | str | int]] | None = None,
    h: list[Poly | str | int] | None = None,
    rho2: list[list[Poly | str | int]] | None = None,
    name: str = "",
) -> DeformationFamily:
    """Assemble a family from first-order columns, one per parameter.

    Entries may be given as strings, parsed in the combined ring.
    """
    R = _combined_ring(pres, params)
    q = len(pres.f)
    m = len(pres.r)

    def conv(x) -> Poly:
        if isinstance(x, Poly):
            return x if x.ring == R else x.embed(R)
        if isinstance(x, int):
            return R.const(x)
        return R.parse(x)

    g = [R.zero() for _ in range(q)]
    for pname, col in columns.items():
        if len(col) != q:
            raise ValueError(f"column for {pname} has length {len(col)}, expected {q}")
        U = R.var(pname)
        g = [acc + U * conv(x) for acc, x in zip(g, col)]
    hh = [conv(x) for x in h] if h is not None else [R.zero()] * q
    rr = [[conv(x) for x in row] for row in rho] if rho is not None else _zeros(R, m, q)
    rr2 = [[conv(x) for x in row] for row in rho2] if rho2 is not None else _zeros(R, m, q)
    return DeformationFamily(pres, R, tuple(params), tuple(params.values()), g, hh, rr, rr2, name)


# -- verification ----------------------------------------------------------


@dataclass
class FlatnessReport:
    residuals: dict[str, list[str]]
    homogeneous: bool
    degree_cutoff: bool
    ok: bool

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "homogeneous": self.homogeneous,
            "degree_cutoff": self.degree_cutoff,
            "residuals": self.residuals,
        }


def _add(a: list[Poly], b: list[Poly]) -> list[Poly]:
    return [x + y for x, y in zip(a, b)]


def flatness_residuals(fam: DeformationFamily) -> dict[str, list[Poly]]:
    R = fam.ring
    f, r = fam.f, fam.r
    return {
        "r.g + rho.f": _add(mat_vec(r, fam.g, R), mat_vec(fam.rho, f, R)),
        "rho.g + r.h + rho'.f": _add(
            _add(mat_vec(fam.rho, fam.g, R), mat_vec(r, fam.h, R)), mat_vec(fam.rho2, f, R)
        ),
        "rho.h + rho'.g": _add(mat_vec(fam.rho, fam.h, R), mat_vec(fam.rho2, fam.g, R)),
        "rho'.h": mat_vec(fam.rho2, fam.h, R),
    }


def _param_degree(fam: DeformationFamily, exp: tuple[int, ...]) -> int:
    return sum(a * w for a, w in zip(exp[fam.nx:], fam.param_weights))


def verify_flatness(fam: DeformationFamily, raise_on_failure: bool = True) -> FlatnessReport:
    res = flatness_residuals(fam)
    degs = fam.base.degrees
    homogeneous = all(
        all(p.term_degree(e) == d for e in p.terms) for p, d in zip(fam.F, degs)
    )
    # Parameter monomials heavier than every d_j cannot occur.
    top = max(degs)
    cutoff = all(_param_degree(fam, e) <= top for p in fam.h for e in p.terms)
    bad = {k: [(j, v) for j, v in enumerate(vals) if not v.is_zero()] for k, vals in res.items()}
    ok = homogeneous and cutoff and not any(bad.values())
    if not ok and raise_on_failure:
        for k, entries in bad.items():
            if entries:
                j, v = entries[0]
                raise FlatnessError(f"flatness identity failed: {k} entry {j + 1} = {v}")
        raise FlatnessError(
            "flatness identity failed: "
            + ("inhomogeneous equation" if not homogeneous else "parameter degree cutoff")
        )
    return FlatnessReport({k: [str(v) for v in vals] for k, vals in res.items()}, homogeneous, cutoff, ok)


# -- substitution ----------------------------------------------------------


def specialize(fam: DeformationFamily, images: dict[str, str | Poly], new_params: dict[str, int], name: str = "") -> DeformationFamily:
    """Substitute parameters by polynomials in a new set of parameters."""
    R2 = _combined_ring(fam.base, new_params)
    imgs = [R2.var(n) for n in fam.base.ring.names]
    for p in fam.params:
        x = images.get(p, R2.zero())
        imgs.append(R2.parse(x) if isinstance(x, str) else x)

    def sub(p: Poly) -> Poly:
        return p.substitute(imgs)

    return DeformationFamily(
        fam.base,
        R2,
        tuple(new_params),
        tuple(new_params.values()),
        [sub(p) for p in fam.g],
        [sub(p) for p in fam.h],
        [[sub(p) for p in row] for row in fam.rho],
        [[sub(p) for p in row] for row in fam.rho2],
        name or fam.name,
        dict(fam.notes),
    )


def same_equations(a: list[Poly], b: list[Poly]) -> bool:
    """Equal as sets of equations up to order and sign of each equation."""
    if len(a) != len(b):
        return False
    remaining = list(b)
    for p in a:
        for i, q in enumerate(remaining):
            if p == q or p == -q:
                remaining.pop(i)
                break
        else:
            return False
    return True


# -- embedding dimension three ---------------------------------------------


def build_family_3(S: NumericalSemigroup) -> DeformationFamily:
    """Six-parameter family whose quadratic correction is the 2x2 minors of rho."""
    try:
        pres = presentation_3(S)
    except PresentationError as exc:
        raise PresentationError(f"out of scope: {exc}") from None
    c = structure_constants_3(S)
    n0, n1, n2 = pres.weights
    u, v, lam, mu, w, z = c.u, c.v, c.lam, c.mu, c.w, c.z
    weights = {
        "U1": (v - w) * n2,
        "U2": mu * n0,
        "U3": z * n1,
        "U4": w * n2,
        "U5": lam * n0,
        "U6": (u - z) * n1,
    }
    a, b_, cc = f"x1^{u - z}", f"x2^{w}", f"x0^{lam}"
    d_, e_, k_ = f"x1^{z}", f"x0^{mu}", f"x2^{v - w}"
    columns = {
        "U1": [0, a, b_],
        "U2": [0, cc, d_],
        "U3": ["-" + a, 0, e_],
        "U4": ["-" + cc, 0, k_],
        "U5": ["-" + b_, "-" + e_, 0],
        # Middle entry signed as in the determinant list; the other sign breaks r.g + rho.f = 0.
        "U6": ["-" + d_, "-" + k_, 0],
    }
    rho = [["-U1", "-U3", "-U5"], ["-U2", "-U4", "-U6"]]
    h = ["U3*U6 - U4*U5", "U2*U5 - U1*U6", "U1*U4 - U2*U3"]
    # Homogeneity in verify_flatness confirms the weights.
    fam = make_family(pres, weights, columns, rho, h, name="embdim3-general")
    verify_flatness(fam)
    return fam


# -- arithmetic sequences, embedding dimension four ------------------------


def build_family_4(S: NumericalSemigroup, diagonal: bool = True) -> DeformationFamily:
    """One-parameter smoothing families for arithmetic 4-generated semigroups.

    For b = 2 the two-parameter family in U, V is built first; with
    ``diagonal`` it is restricted to the line U = V.
    """
    try:
        pres = presentation_4_arithmetic(S)
    except PresentationError as exc:
        raise PresentationError(f"out of scope: {exc}") from None
    c = pres.constants
    b, v, mu = c["b"], c["v"], c["mu"]
    n0, n1, n2, n3 = pres.weights
    if b == 0:
        rho = [[0] * 4 for _ in range(5)]
        for i in range(3):
            rho[2 + i][i] = "-U"
        fam = make_family(pres, {"U": mu * n0}, {"U": [0, 0, 0, 1]}, rho, name="arithmetic4-b0")
    elif b == 1:
        rho = [[0] * 6 for _ in range(8)]
        rho[4][0] = rho[5][1] = rho[7][2] = "-U"
        fam = make_family(
            pres, {"U": mu * n0}, {"U": [0, 0, 0, "x0", "x1", "x2"]}, rho, name="arithmetic4-b1"
        )
    elif b == 2:
        rho = [
            ["V", 0, 0, 0, 0],
            [0, "-V", 0, 0, 0],
            [0, "U", 0, 0, 0],
            [0, 0, "U", "V", 0],
            [0, 0, 0, 0, "V"],
        ]
        fam = make_family(
            pres,
            {"U": (v - 1) * n3, "V": n2},
            {"U": [0, 0, 0, "x2", "x3"], "V": ["x0", "x1", 0, f"x3^{v - 1}", 0]},
            rho,
            h=[0, 0, "-V^2", "U*V", 0],
            name="arithmetic4-b2",
        )
        verify_flatness(fam)
        if diagonal:
            # U and V have different weights, so the diagonal family is no
            # longer graded; flatness is a ring-map pullback and still holds.
            fam = _diagonal(fam)
            _verify_identities(fam)
            return fam
    else:
        raise PresentationError("out of scope: b must be 0, 1 or 2")
    verify_flatness(fam)
    return fam


def _diagonal(fam: DeformationFamily) -> DeformationFamily:
    out = specialize(fam, {"U": "U", "V": "U"}, {"U": fam.param_weights[0]}, name=fam.name + "-diagonal")
    out.notes["restricted_from"] = dict(zip(fam.params, fam.param_weights))
    out.parent = fam
    return out


def _verify_identities(fam: DeformationFamily) -> None:
    for k, vals in flatness_residuals(fam).items():
        for j, v in enumerate(vals):
            if not v.is_zero():
                raise FlatnessError(f"flatness identity failed: {k} entry {j + 1} = {v}")


def build_variant_b2(S: NumericalSemigroup) -> DeformationFamily:
    """One-parameter b = 2 family g = (0,0,0,x0,x1), flat but singular at the origin."""
    pres = presentation_4_arithmetic(S)
    c = pres.constants
    if c["b"] != 2:
        raise PresentationError("out of scope: needs b = 2")
    n0 = pres.weights[0]
    rho = [[0] * 5 for _ in range(5)]
    rho[3][0] = rho[4][1] = "-V"
    fam = make_family(
        pres, {"V": c["mu"] * n0}, {"V": [0, 0, 0, "x0", "x1"]}, rho, name="arithmetic4-b2-variant"
    )
    verify_flatness(fam)
    return fam


# -- projective closure ----------------------------------------------------


@dataclass
class ProjectiveFamily:
    family: DeformationFamily
    ring: Ring  # x_0..x_k, x_{k+1} (weight 1), parameters (weight 0)
    equations: list[Poly]

    def dehomogenize(self) -> list[Poly]:
        """Set the new variable to 1; gives back the affine equations."""
        R = self.family.ring
        k1 = self.family.nx
        imgs = [R.var(i) for i in range(k1)] + [R.const(1)] + [R.var(p) for p in self.family.params]
        return [p.substitute(imgs) for p in self.equations]

    def point_at_infinity_ok(self) -> bool:
        """(t^{n_0} : ... : t^{n_k} : 0) lies on every fibre."""
        k1 = self.family.nx
        T = Ring(("t",) + self.family.params, (1,) + (0,) * len(self.family.params))
        t = T.var("t")
        imgs = [t ** n for n in self.family.base.weights] + [T.zero()] + [T.var(p) for p in self.family.params]
        return all(p.substitute(imgs).is_zero() for p in self.equations) and k1 > 0

    def homogeneous(self) -> bool:
        degs = self.family.base.degrees
        return all(all(p.term_degree(e) == d for e in p.terms) for p, d in zip(self.equations, degs))

    def as_dict(self) -> dict:
        return {"equations": [str(p) for p in self.equations], "variables": list(self.ring.names)}


def projectivize(fam: DeformationFamily) -> ProjectiveFamily:
    """Replace each parameter U by U * x_{k+1}^{weight(U)}.

    A restricted family is closed up through its graded parent first.
    """
    if fam.parent is not None:
        top = projectivize(fam.parent)
        R = Ring(top.ring.names[: fam.nx + 1] + fam.params, top.ring.weights[: fam.nx + 1] + (0,) * len(fam.params))
        imgs = [R.var(i) for i in range(fam.nx + 1)] + [R.var(fam.params[0])] * len(fam.parent.params)
        out = ProjectiveFamily(fam, R, [p.substitute(imgs) for p in top.equations])
        if not out.point_at_infinity_ok():
            raise FlatnessError("point at infinity does not lie on the projective closure")
        return out
    k1 = fam.nx
    xs = fam.base.ring
    new = f"x{k1}"
    R = Ring(
        xs.names + (new,) + fam.params,
        xs.weights + (1,) + (0,) * len(fam.params),
    )
    xnew = R.var(new)
    imgs = [R.var(n) for n in xs.names]
    for p, w in zip(fam.params, fam.param_weights):
        imgs.append(R.var(p) * xnew**w)
    eqs = [p.substitute(imgs) for p in fam.F]
    out = ProjectiveFamily(fam, R, eqs)
    if not out.point_at_infinity_ok():
        raise FlatnessError("point at infinity does not lie on the projective closure")
    return out


# -- determinant identity for b = 1 ----------------------------------------


def _det3(m: list[list[Poly]]) -> Poly:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


@dataclass
class MinorIdentity:
    minor: Poly
    expanded_ok: bool  # minor = x3^{v-1} x0^2 + (v-1) x1 x3^{v-2} (2 x1^2 + x0 x2)
    factored_mod_f1_ok: bool  # minor - x3^{v-2} x0 (x0 x3 + 3(v-1) x1 x2) = 2(v-1) x1 x3^{v-2} f1
    on_fibre_ok: bool  # minor - (3v-2) x0^2 x3^{v-1} lies in (f1, f2) with explicit cofactors
    factored_identically: bool  # the factored form with no correction


def b1_minor_identity(fam: DeformationFamily) -> MinorIdentity:
    """The 3x3 minor (rows 1, 2, 4; columns 1..3) of the fibre Jacobian for b = 1."""
    pres = fam.base
    if fam.name != "arithmetic4-b1":
        raise PresentationError("out of scope: needs the b = 1 family")
    v = pres.constants["v"]
    R = fam.ring
    x0, x1, x2, x3 = (R.var(i) for i in range(4))
    F = fam.F
    rows = [0, 1, 3]
    cols = [1, 2, 3]
    m = [[F[j].partial(i) for i in cols] for j in rows]
    det = _det3(m)
    f1, f2 = fam.f[0], fam.f[1]
    pw = x3 ** (v - 2)
    expanded = x3 ** (v - 1) * x0**2 + pw * x1 * (x1**2 * 2 + x0 * x2).scale(v - 1)
    factored = pw * x0 * (x0 * x3 + (x1 * x2).scale(3 * (v - 1)))
    corr1 = (x1 * pw * f1).scale(2 * (v - 1))
    fibre = (x0**2 * x3 ** (v - 1)).scale(3 * v - 2)
    corr2 = (x0 * pw * f2).scale(3 * (v - 1))
    return MinorIdentity(
        det,
        det == expanded,
        det - factored == corr1,
        det - fibre == corr1 + corr2,
        det == factored,
    )


def family_vanishes_on_curve_at_zero(fam: DeformationFamily) -> bool:
    """Fibre over the origin of the parameter space is the monomial curve."""
    zero = {p: 0 for p in fam.params}
    return all(toric_substitute(p).is_zero() for p in fam.fibre(zero))
