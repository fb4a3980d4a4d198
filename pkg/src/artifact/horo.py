"""Smooth projective horospherical varieties of Picard rank one.

A variety X in this family has two closed orbits Y = G/P_Y and
Z = G/P_Z, and the blow-up of X along both is a P^1-bundle over
E = G/(P_Y cap P_Z).  Cohomology has two integral bases

* basis A: sigma'_u (cones over Schubert varieties of Y, degree l(u))
  and tau_v (Schubert varieties of Z pushed forward, degree
  l(v) + codim Z);
* basis B: tau'_v (cones over Schubert varieties of Z) and sigma_u
  (Schubert varieties of Y pushed forward),

and sigma'_u is Poincare dual to sigma_{u^vee}, tau_v to tau'_{v^vee}.
Degrees here are complex degrees; q has degree c1(X).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Iterable

from . import _linalg
from .rootsys import (
    CosetPoset,
    RootSystem,
    build_root_system,
    chevalley_coeffs,
    coset_poset,
    hat_image,
    tilde_lift,
)


class UnsupportedCase(ValueError):
    """The quantum rules needed for this variety are not available."""


class ExcessIntersection(UnsupportedCase):
    """A needed invariant lives in the excess-intersection regime."""


# ---------------------------------------------------------------------------
# varieties


@dataclass(frozen=True, eq=False)
class HoroVariety:
    case_tag: int
    params: tuple[int, ...]
    group: RootSystem
    omega_Y: int
    omega_Z: int
    dim_X: int
    c1_X: int
    codim_Y: int
    codim_Z: int
    c1_Y: int
    c1_Z: int
    dim_Y: int
    dim_Z: int
    posetY: CosetPoset
    posetZ: CosetPoset
    posetYZ: CosetPoset
    rep_names: dict = field(repr=False, default_factory=dict)
    _cache: dict = field(repr=False, default_factory=dict)

    def poset(self, side: str) -> CosetPoset:
        return self.posetY if side == "Y" else self.posetZ

    @property
    def name(self) -> str:
        if self.params:
            inner = ", ".join(f"{k}={v}" for k, v in zip(("n", "m"), self.params))
            return f"case ({self.case_tag}), {inner}"
        return f"case ({self.case_tag})"


def _case_data(case_tag: int, n: int | None, m: int | None):
    if case_tag == 1:
        if n is None or n < 3:
            raise ValueError("case (1) needs n >= 3")
        return ("B", n, n - 2, n - 1), (n,)
    if case_tag == 2:
        return ("B", 3, 0, 2), ()
    if case_tag == 3:
        if n is None or m is None or n < 2 or not 2 <= m <= n:
            raise ValueError("case (3) needs n >= 2 and 2 <= m <= n")
        return ("C", n, m - 1, m - 2), (n, m)
    if case_tag == 4:
        return ("F4", 4, 1, 2), ()
    if case_tag == 5:
        return ("G2", 2, 1, 0), ()
    raise ValueError(f"unknown case tag {case_tag}")


def numerical_invariants(case_tag: int, n: int | None = None, m: int | None = None) -> dict[str, int]:
    """Dimensions, codimensions and Fano indices from root data alone.

    Agrees with the fields of :func:`build_variety` but skips the coset
    enumeration, so it stays fast for large rank.  The index of X is
    read off the anticanonical weight of the incidence variety, which
    gives a check of c1(X) = codim Y + codim Z that does not assume it.
    """
    (lie, rank, y, z), _ = _case_data(case_tag, n, m)
    rs = build_root_system(lie, rank)
    dim_X = rs.parabolic_dimension([y, z]) + 1
    dim_Y = rs.parabolic_dimension([y])
    dim_Z = rs.parabolic_dimension([z])
    # -K of G/(P_Y cap P_Z) is the sum of the roots outside the Levi; on
    # the P^1-bundle over it the coefficients at the two removed nodes
    # add up to the index of X.
    anticanonical = rs.zero()
    for root, coeffs in zip(rs.positive_roots, rs.positive_root_coefficients):
        if coeffs[y] or coeffs[z]:
            anticanonical = anticanonical + root
    return {
        "dim_X": dim_X,
        "dim_Y": dim_Y,
        "dim_Z": dim_Z,
        "codim_Y": dim_X - dim_Y,
        "codim_Z": dim_X - dim_Z,
        "c1_X": anticanonical[y] + anticanonical[z],
        "c1_Y": rs.parabolic_c1(y),
        "c1_Z": rs.parabolic_c1(z),
    }


# Reduced words (0-based letters) fixing which representative in a
# two-element length level is written without a prime.
_UNPRIMED = {
    (1, (3,)): {"Z": [(0, 1, 2)]},
    (2, ()): {"Z": [(0, 1, 2)]},
    (3, (3, 3)): {
        "Y": [(0, 1, 2)],
        "Z": [(0, 1), (2, 0, 1), (1, 2, 0, 1), (2, 1, 2, 0, 1)],
    },
}
_PRIMED = {
    (1, (3,)): {"Y": [(0, 1), (2, 0, 1), (1, 2, 0, 1), (2, 1, 2, 0, 1)]},
}


def _name_reps(case_tag, params, side, poset: CosetPoset) -> list[str]:
    letter = "u" if side == "Y" else "v"
    unprimed = {poset.index(w) for w in _UNPRIMED.get((case_tag, params), {}).get(side, [])}
    primed = {poset.index(w) for w in _PRIMED.get((case_tag, params), {}).get(side, [])}
    names = [""] * len(poset)
    for level in poset.by_length():
        first = [i for i in level if i in unprimed] or [i for i in level if i not in primed]
        order = first[:1] + [i for i in level if i not in first[:1]]
        for k, i in enumerate(order):
            names[i] = f"{letter}{chr(39) * k}{poset.length(i)}"
    return names


def build_variety(case_tag: int, n: int | None = None, m: int | None = None) -> HoroVariety:
    (lie, rank, y, z), params = _case_data(case_tag, n, m)
    rs = build_root_system(lie, rank)
    posetY = coset_poset(rs, [y])
    posetZ = coset_poset(rs, [z])
    posetYZ = coset_poset(rs, [y, z])
    dim_X = posetYZ.max_length + 1
    dim_Y = posetY.max_length
    dim_Z = posetZ.max_length
    codim_Y = dim_X - dim_Y
    codim_Z = dim_X - dim_Z
    X = HoroVariety(
        case_tag=case_tag,
        params=params,
        group=rs,
        omega_Y=y,
        omega_Z=z,
        dim_X=dim_X,
        c1_X=numerical_invariants(case_tag, n, m)["c1_X"],
        codim_Y=codim_Y,
        codim_Z=codim_Z,
        c1_Y=rs.parabolic_c1(y),
        c1_Z=rs.parabolic_c1(z),
        dim_Y=dim_Y,
        dim_Z=dim_Z,
        posetY=posetY,
        posetZ=posetZ,
        posetYZ=posetYZ,
    )
    X.rep_names["Y"] = _name_reps(case_tag, params, "Y", posetY)
    X.rep_names["Z"] = _name_reps(case_tag, params, "Z", posetZ)
    return X


# ---------------------------------------------------------------------------
# labels and classes


@dataclass(frozen=True, order=True)
class SchubertLabel:
    side: str  # "Y" or "Z"
    primed: bool
    rep: int

    @property
    def basis_tag(self) -> str:
        return "A" if (self.side == "Y") == self.primed else "B"


def degree(X: HoroVariety, a: SchubertLabel) -> int:
    length = X.poset(a.side).length(a.rep)
    if a.primed:
        return length
    return length + (X.codim_Y if a.side == "Y" else X.codim_Z)


def label_name(X: HoroVariety, a: SchubertLabel) -> str:
    base = "sigma" if a.side == "Y" else "tau"
    return f"{base}{chr(39) if a.primed else ''}({X.rep_names[a.side][a.rep]})"


_LABEL_RE = re.compile(r"(sigma|tau)('?)\(([uv]'*\d+)\)")


def parse_label(X: HoroVariety, text: str) -> SchubertLabel:
    text = text.strip()
    if text == "1":
        return SchubertLabel("Y", True, 0)
    if text == "h":
        return SchubertLabel("Y", True, X.posetY.by_length()[1][0])
    mt = _LABEL_RE.fullmatch(text)
    if not mt:
        raise ValueError(f"cannot parse class label {text!r}")
    side = "Y" if mt.group(1) == "sigma" else "Z"
    rep = X.rep_names[side].index(mt.group(3))
    return SchubertLabel(side, bool(mt.group(2)), rep)


@dataclass(frozen=True)
class CohomologyClass:
    """Sparse integer combination of basis labels times powers of q."""

    terms: tuple[tuple[SchubertLabel, int, int], ...]  # (label, qpow, coeff)
    basis_tag: str = "A"

    @staticmethod
    def from_dict(d: dict, basis_tag: str = "A") -> "CohomologyClass":
        items = sorted(((lab, q, c) for (lab, q), c in d.items() if c), key=lambda t: (t[1], t[0]))
        return CohomologyClass(tuple(items), basis_tag)

    @staticmethod
    def basis_element(a: SchubertLabel) -> "CohomologyClass":
        return CohomologyClass(((a, 0, 1),), a.basis_tag)

    def as_dict(self) -> dict:
        return {(lab, q): c for lab, q, c in self.terms}

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        d = self.as_dict()
        for lab, q, c in other.terms:
            d[(lab, q)] = d.get((lab, q), 0) + c
        return CohomologyClass.from_dict(d, self.basis_tag)

    def __bool__(self) -> bool:
        return bool(self.terms)


def format_class(X: HoroVariety, c: CohomologyClass, short: bool = True) -> str:
    """Human-readable form, e.g. ``2 sigma'(u3) + q tau(v1) + 2 q^2``."""
    if not c.terms:
        return "0"
    pieces = []
    terms = sorted(c.terms, key=lambda t: (t[1], t[0].side != "Y", X.rep_names[t[0].side][t[0].rep]))
    for lab, q, coeff in terms:
        name = label_name(X, lab)
        if short and lab == SchubertLabel("Y", True, 0):
            name = ""
        elif short and lab.side == "Y" and lab.primed and X.posetY.length(lab.rep) == 1:
            name = "h"
        qpart = "" if q == 0 else ("q" if q == 1 else f"q^{q}")
        factors = [f for f in (qpart, name) if f]
        mag = abs(coeff)
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        body = " ".join(factors)
        if not pieces:
            pieces.append(("-" if coeff < 0 else "") + body)
        else:
            pieces.append(("- " if coeff < 0 else "+ ") + body)
    return " ".join(pieces)


_TERM_RE = re.compile(r"^(?:(\d+)\s*)?(?:(q)(?:\^(\d+))?\s*)?(.*)$")


def parse_class(X: HoroVariety, text: str) -> CohomologyClass:
    """Inverse of :func:`format_class` (signs limited to +)."""
    d: dict = {}
    text = text.strip()
    if text == "0":
        return CohomologyClass((), "A")
    for piece in text.split("+"):
        piece = piece.strip()
        mt = _TERM_RE.match(piece)
        coeff = int(mt.group(1)) if mt.group(1) else 1
        q = 0 if not mt.group(2) else int(mt.group(3) or 1)
        rest = mt.group(4).strip()
        lab = parse_label(X, rest or "1")
        d[(lab, q)] = d.get((lab, q), 0) + coeff
    return CohomologyClass.from_dict(d, "A")


# ---------------------------------------------------------------------------
# bases and duality


def cohomology_basis(X: HoroVariety, basis_tag: str = "A") -> list[SchubertLabel]:
    if basis_tag == "A":
        labels = [SchubertLabel("Y", True, i) for i in range(len(X.posetY))]
        labels += [SchubertLabel("Z", False, i) for i in range(len(X.posetZ))]
    elif basis_tag == "B":
        labels = [SchubertLabel("Z", True, i) for i in range(len(X.posetZ))]
        labels += [SchubertLabel("Y", False, i) for i in range(len(X.posetY))]
    else:
        raise ValueError(f"unknown basis tag {basis_tag!r}")
    return sorted(labels, key=lambda a: (degree(X, a), a.side != ("Y" if basis_tag == "A" else "Z"), a.rep))


def betti_numbers(X: HoroVariety) -> list[int]:
    out = [0] * (X.dim_X + 1)
    for a in cohomology_basis(X, "A"):
        out[degree(X, a)] += 1
    return out


def dual_label(X: HoroVariety, a: SchubertLabel) -> SchubertLabel:
    """The Poincare dual of a basis element, in the other basis."""
    return SchubertLabel(a.side, not a.primed, X.poset(a.side).dual(a.rep))


def poincare_pairing(X: HoroVariety, a: SchubertLabel, b: SchubertLabel) -> int:
    if a.basis_tag != "A" or b.basis_tag != "B":
        raise ValueError("pairing expects a basis-A label and a basis-B label")
    if degree(X, a) + degree(X, b) != X.dim_X:
        return 0
    return int(dual_label(X, a) == b)


def pairing_matrix(X: HoroVariety) -> list[list[int]]:
    A = cohomology_basis(X, "A")
    B = cohomology_basis(X, "B")
    return [[poincare_pairing(X, a, b) for b in B] for a in A]


# ---------------------------------------------------------------------------
# classical Chevalley formula


def _hat(X: HoroVariety, side: str, i: int) -> tuple[int, int]:
    if side == "Y":
        return hat_image(X.group, X.posetY, X.posetZ, i)
    return hat_image(X.group, X.posetZ, X.posetY, i)


def _h_on_basis_A(X: HoroVariety, a: SchubertLabel) -> dict[SchubertLabel, int]:
    out: dict[SchubertLabel, int] = {}
    if a.side == "Y":
        for t, c in chevalley_coeffs(X.group, X.posetY, a.rep).items():
            out[SchubertLabel("Y", True, t)] = c
        v, drop = _hat(X, "Y", a.rep)
        if drop == 0:
            key = SchubertLabel("Z", False, v)
            out[key] = out.get(key, 0) + 1
    else:
        for t, c in chevalley_coeffs(X.group, X.posetZ, a.rep).items():
            out[SchubertLabel("Z", False, t)] = c
    return out


def _linear(X: HoroVariety, c: CohomologyClass, rule) -> CohomologyClass:
    d: dict = {}
    for lab, q, coeff in c.terms:
        for lab2, q2, c2 in rule(lab):
            key = (lab2, q + q2)
            d[key] = d.get(key, 0) + coeff * c2
    return CohomologyClass.from_dict(d, c.basis_tag)


def classical_chevalley(X: HoroVariety, c: CohomologyClass) -> CohomologyClass:
    """Cup product with h on a class written in basis A."""
    if c.basis_tag != "A":
        raise ValueError("classical_chevalley expects a basis-A class")
    return _linear(X, c, lambda a: [(b, 0, k) for b, k in _h_on_basis_A(X, a).items()])


def classical_chevalley_B(X: HoroVariety, c: CohomologyClass) -> CohomologyClass:
    """Cup product with h in basis B, obtained from basis A by duality.

    The coefficient of b' in h . b is the coefficient of b^vee in
    h . b'^vee, by symmetry of the triple intersection.
    """
    if c.basis_tag != "B":
        raise ValueError("classical_chevalley_B expects a basis-B class")
    transpose: dict[SchubertLabel, dict[SchubertLabel, int]] = {}
    for a in cohomology_basis(X, "A"):
        for b, k in _h_on_basis_A(X, a).items():
            src = dual_label(X, b)
            transpose.setdefault(src, {})[dual_label(X, a)] = k
    return _linear(X, c, lambda b: [(t, 0, k) for t, k in transpose.get(b, {}).items()])


# ---------------------------------------------------------------------------
# degree one invariants of homogeneous spaces


def homogeneous_quantum_terms(poset: CosetPoset, a: int) -> dict[int, int]:
    """Degree-one quantum part of h * sigma_a in G/P (P maximal).

    Sum over positive roots gamma with <omega_P, gamma^vee> = 1 and
    l(floor(a s_gamma)) = l(a) + 1 - c1(G/P) of sigma_{floor(a s_gamma)}.
    """
    rs = poset.rs
    (k,) = poset.parabolic
    c1 = rs.parabolic_c1(k)
    omega = poset.defining_weight
    lam = poset.orbit[a]
    target_len = poset.length(a) + 1 - c1
    out: dict[int, int] = {}
    if target_len < 0:
        return out
    for g, root in enumerate(rs.positive_roots):
        d = rs.pair(omega, g)
        if d != 1:
            continue
        mu = lam - rs.act(poset.reps[a], root)
        t = poset.index_of_weight(mu)
        if poset.length(t) == target_len:
            out[t] = out.get(t, 0) + d
    return out


def gw1_homogeneous(poset: CosetPoset, a: int, b: int) -> int:
    """<h, sigma_a, sigma_b> in degree one on the homogeneous space."""
    rs = poset.rs
    (k,) = poset.parabolic
    if poset.length(a) + poset.length(b) + 1 != poset.max_length + rs.parabolic_c1(k):
        return 0
    return homogeneous_quantum_terms(poset, a).get(poset.dual(b), 0)


# ---------------------------------------------------------------------------
# intersection numbers of basis A with itself


def gram_matrix(X: HoroVariety) -> dict[tuple[SchubertLabel, SchubertLabel], Fraction]:
    """Integrals of products of two basis-A classes of complementary degree.

    They are pinned down by linear constraints:

    * in a degree where H^* has rank one, the basis-A and basis-B
      generators coincide, so their products are read off the pairing;
    * h is self-adjoint for the intersection form;
    * two cones over Schubert varieties of Y meet only inside Z, along
      the Schubert varieties of the images, which gives 0 when these
      are too small and the Z-pairing when they have complementary
      dimension.
    """
    if "gram" in X._cache:
        return X._cache["gram"]
    A = cohomology_basis(X, "A")
    bydeg: dict[int, list[SchubertLabel]] = {}
    for a in A:
        bydeg.setdefault(degree(X, a), []).append(a)
    B = cohomology_basis(X, "B")
    bydegB: dict[int, list[SchubertLabel]] = {}
    for b in B:
        bydegB.setdefault(degree(X, b), []).append(b)

    def key(x, y):
        return (x, y) if x <= y else (y, x)

    unknowns = sorted(
        {key(x, y) for x in A for y in A if degree(X, x) + degree(X, y) == X.dim_X}
    )
    eqs: list[dict] = []
    for d, level in bydeg.items():
        if len(level) == 1:
            (a,) = level
            (b,) = bydegB[d]
            for y in bydeg.get(X.dim_X - d, []):
                eqs.append({key(a, y): 1, None: -int(dual_label(X, y) == b)})
    h = {a: _h_on_basis_A(X, a) for a in A}
    for x in A:
        for y in A:
            if degree(X, x) + degree(X, y) != X.dim_X - 1:
                continue
            eq: dict = {}
            for z, c in h[x].items():
                eq[key(z, y)] = eq.get(key(z, y), 0) + c
            for z, c in h[y].items():
                eq[key(x, z)] = eq.get(key(x, z), 0) - c
            if any(eq.values()):
                eqs.append(eq)
    for x in A:
        for y in A:
            if x.side == y.side == "Y" and x <= y and degree(X, x) + degree(X, y) == X.dim_X:
                xh, _ = _hat(X, "Y", x.rep)
                yh, _ = _hat(X, "Y", y.rep)
                total = X.posetZ.length(xh) + X.posetZ.length(yh)
                if total > X.dim_Z:
                    eqs.append({key(x, y): 1})
                elif total == X.dim_Z:
                    eqs.append({key(x, y): 1, None: -int(X.posetZ.dual(xh) == yh)})
    try:
        sol = _linalg.solve_unique(eqs, unknowns)
    except LookupError as exc:
        free = ", ".join(f"{label_name(X, a)}.{label_name(X, b)}" for a, b in exc.args[0])
        raise UnsupportedCase(f"intersection numbers of {X.name} not determined: {free}") from None
    X._cache["gram"] = sol
    return sol


def integral(X: HoroVariety, x: SchubertLabel, y: SchubertLabel) -> Fraction:
    """Integral of the product of two basis elements (any bases)."""
    if degree(X, x) + degree(X, y) != X.dim_X:
        return Fraction(0)
    if x.basis_tag != y.basis_tag:
        a, b = (x, y) if x.basis_tag == "A" else (y, x)
        return Fraction(poincare_pairing(X, a, b))
    if x.basis_tag == "B":
        # expand both in basis A through the dual basis
        raise NotImplementedError("products of two basis-B classes are not needed")
    g = gram_matrix(X)
    return g[(x, y) if x <= y else (y, x)]


def expand_in_B(X: HoroVariety, a: SchubertLabel) -> dict[SchubertLabel, Fraction]:
    """Coordinates of a basis-A class in basis B."""
    out = {}
    for b in cohomology_basis(X, "B"):
        if degree(X, b) != degree(X, a):
            continue
        val = integral(X, a, dual_label(X, b))
        if val:
            out[b] = val
    return out


# ---------------------------------------------------------------------------
# quantum Chevalley formula


def _gw1_Y(X, a, b):
    return gw1_homogeneous(X.posetY, a, b)


def _gw1_Z(X, a, b):
    return gw1_homogeneous(X.posetZ, a, b)


def _gw_sigma_tauprime(X: HoroVariety, u: int, c: int) -> int:
    """<h, sigma_u, tau'_c> in degree one."""
    if X.c1_X - X.c1_Y + 1 - X.codim_Y != 0:
        raise UnsupportedCase(f"<h, sigma, tau'> is not determined for {X.name}")
    ch, _ = _hat(X, "Z", c)
    return _gw1_Y(X, u, ch)


def _gw_tauprime_tauprime(X: HoroVariety, c1: int, c2: int) -> int:
    lhs, rhs = X.c1_X - X.c1_Y, X.codim_Y - 2
    if lhs > rhs:
        return 0
    if lhs == rhs:
        return _gw1_Y(X, _hat(X, "Z", c1)[0], _hat(X, "Z", c2)[0])
    raise UnsupportedCase(f"<h, tau', tau'> is not determined for {X.name}")


def gw1(X: HoroVariety, a: SchubertLabel, b: SchubertLabel) -> int:
    """Three-point degree-one invariant <h, a, b> with a in A, b in B."""
    if a.basis_tag != "A" or b.basis_tag != "B":
        raise ValueError("gw1 expects a basis-A label and a basis-B label")
    if degree(X, a) + degree(X, b) != X.dim_X + X.c1_X - 1:
        return 0
    if a.side == "Y":
        if b.side == "Y":
            return 0
        if X.c1_X >= X.c1_Z:
            return 0
        if X.c1_X == X.c1_Z - 1:
            return _gw1_Z(X, _hat(X, "Y", a.rep)[0], b.rep)
        raise ExcessIntersection(f"<h, sigma', tau'> needs excess intersection on {X.name}")
    if b.side == "Y":
        ut = tilde_lift(X.group, X.posetY, X.posetYZ, b.rep)
        vt = tilde_lift(X.group, X.posetZ, X.posetYZ, a.rep)
        return int(X.posetYZ.dual(ut) == vt)
    if X.c1_X > X.c1_Z:
        return 0
    if X.c1_X == X.c1_Z:
        return _gw1_Z(X, a.rep, b.rep)
    if X.c1_X < X.c1_Z - 1:
        raise ExcessIntersection(f"<h, tau, tau'> needs excess intersection on {X.name}")
    # rewrite tau_a in basis B, where the remaining invariants are known
    total = Fraction(0)
    for e, coeff in expand_in_B(X, a).items():
        if e.side == "Y":
            total += coeff * _gw_sigma_tauprime(X, e.rep, b.rep)
        else:
            total += coeff * _gw_tauprime_tauprime(X, e.rep, b.rep)
    if total.denominator != 1:
        raise AssertionError("non-integral Gromov-Witten invariant")
    return int(total)


def point_class(X: HoroVariety) -> SchubertLabel:
    return SchubertLabel("Z", False, len(X.posetZ) - 1)


def max_q_degree(X: HoroVariety) -> int:
    return (X.dim_X + 1) // X.c1_X


def _degree_two_term(X: HoroVariety) -> int:
    """Coefficient of q^2 in h * [pt]; 0 when no conic term exists."""
    if X.case_tag == 3:
        # h is the class of the length-one partition, which does not
        # contain the staircase of size 2: no conics contribute.
        from .oddsymp import contains_staircase

        if contains_staircase((1,), 2):
            raise UnsupportedCase("unexpected staircase containment")
        return 0
    if X.dim_X == 2 * X.c1_X - 1 and X.dim_Y == 2 * X.c1_Y - 1:
        return 2
    raise UnsupportedCase(f"degree-two invariants of {X.name} are not available")


def quantum_support(X: HoroVariety) -> None:
    """Raise UnsupportedCase unless h * - is fully determined for X."""
    dmax = max_q_degree(X)
    if dmax >= 3 and X.case_tag != 3:
        raise UnsupportedCase(f"curves of degree {dmax} may contribute on {X.name}")
    if dmax == 2 and X.case_tag != 3 and X.dim_X + 1 != 2 * X.c1_X:
        raise UnsupportedCase(f"conics contribute to several products on {X.name}")
    if dmax >= 2:
        _degree_two_term(X)
    for a in cohomology_basis(X, "A"):
        for b in cohomology_basis(X, "B"):
            gw1(X, a, b)


def _quantum_rule(X: HoroVariety, a: SchubertLabel):
    out = [(b, 0, k) for b, k in _h_on_basis_A(X, a).items()]
    for b in cohomology_basis(X, "B"):
        val = gw1(X, a, b)
        if val:
            out.append((dual_label(X, b), 1, val))
    if a == point_class(X) and max_q_degree(X) >= 2:
        coeff = _degree_two_term(X)
        if coeff:
            out.append((SchubertLabel("Y", True, 0), 2, coeff))
    return out


def quantum_chevalley(X: HoroVariety, c: CohomologyClass) -> CohomologyClass:
    """Quantum product h * c for c in basis A."""
    if c.basis_tag != "A":
        raise ValueError("quantum_chevalley expects a basis-A class")
    if "qsupport" not in X._cache:
        quantum_support(X)
        X._cache["qsupport"] = True
    rules = X._cache.setdefault("qrules", {})

    def rule(a):
        if a not in rules:
            rules[a] = _quantum_rule(X, a)
        return rules[a]

    return _linear(X, c, rule)


def chevalley_table(X: HoroVariety, quantum: bool = True) -> dict[SchubertLabel, CohomologyClass]:
    op = quantum_chevalley if quantum else classical_chevalley
    return {a: op(X, CohomologyClass.basis_element(a)) for a in cohomology_basis(X, "A")}


# ---------------------------------------------------------------------------
# matrices and semisimplicity


def h_matrix(X: HoroVariety, q_value) -> list[list[Fraction]]:
    """Matrix of h * - on basis A with q specialised; column j is h * A_j."""
    q_value = Fraction(q_value)
    basis = cohomology_basis(X, "A")
    pos = {a: i for i, a in enumerate(basis)}
    table = chevalley_table(X, quantum=True)
    M = [[Fraction(0)] * len(basis) for _ in basis]
    for j, a in enumerate(basis):
        for lab, q, coeff in table[a].terms:
            M[pos[lab]][j] += coeff * q_value**q
    return M


def semisimplicity_report(X: HoroVariety, q_value=1) -> dict:
    M = h_matrix(X, q_value)
    p = _linalg.minimal_polynomial(M)
    det = _linalg.determinant(M)
    return {
        "variety": X.name,
        "q": str(Fraction(q_value)),
        "minimal_polynomial": str(p.as_expr()),
        "degree": p.degree(),
        "squarefree": _linalg.is_squarefree(p),
        "invertible": det != 0,
        "distinct_eigenvalue_count": _linalg.distinct_root_count(p),
    }


# ---------------------------------------------------------------------------
# exports


def export_hasse(X: HoroVariety, quantum: bool = False) -> dict:
    table = chevalley_table(X, quantum=quantum)
    nodes = [{"label": label_name(X, a), "degree": degree(X, a)} for a in cohomology_basis(X, "A")]
    edges = []
    for a, prod in table.items():
        for lab, q, coeff in prod.terms:
            edges.append({
                "source": label_name(X, a),
                "target": label_name(X, lab),
                "coeff": coeff,
                "qpow": q,
            })
    edges.sort(key=lambda e: (e["qpow"], e["source"], e["target"]))
    return {"variety": X.name, "quantum": quantum, "nodes": nodes, "edges": edges}


def hasse_to_dot(graph: dict) -> str:
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for node in graph["nodes"]:
        lines.append(f'  "{node["label"]}" [degree={node["degree"]}];')
    by_degree: dict[int, list[str]] = {}
    for node in graph["nodes"]:
        by_degree.setdefault(node["degree"], []).append(node["label"])
    for d in sorted(by_degree):
        same = " ".join(f'"{lab}";' for lab in by_degree[d])
        lines.append(f"  {{ rank=same; {same} }}")
    for e in graph["edges"]:
        text = ("q" if e["qpow"] == 1 else f"q^{e['qpow']}" if e["qpow"] else "")
        label = f"{e['coeff']}{text}" if e["coeff"] != 1 or not text else text
        style = ", style=dashed" if e["qpow"] else ""
        lines.append(
            f'  "{e["source"]}" -> "{e["target"]}" '
            f'[coeff={e["coeff"]}, qpow={e["qpow"]}, label="{label}"{style}];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def table_to_json(X: HoroVariety, quantum: bool = True) -> dict:
    table = chevalley_table(X, quantum=quantum)
    return {
        "case": X.case_tag,
        "params": list(X.params),
        "basis": [label_name(X, a) for a in cohomology_basis(X, "A")],
        "products": {
            label_name(X, a): [
                {"label": label_name(X, lab), "coeff": coeff, "qpow": q}
                for lab, q, coeff in prod.terms
            ]
            for a, prod in table.items()
        },
    }


def table_from_json(X: HoroVariety, doc: dict) -> dict[SchubertLabel, CohomologyClass]:
    out = {}
    for name, terms in doc["products"].items():
        d = {}
        for t in terms:
            d[(parse_label(X, t["label"]), int(t["qpow"]))] = int(t["coeff"])
        out[parse_label(X, name)] = CohomologyClass.from_dict(d, "A")
    return out


def table_to_markdown(X: HoroVariety, quantum: bool = True) -> str:
    table = chevalley_table(X, quantum=quantum)
    rows = []
    for a in cohomology_basis(X, "A"):
        lhs = format_class(X, CohomologyClass.basis_element(a)) or "1"
        rows.append((str(degree(X, a)), f"h * {lhs}", format_class(X, table[a])))
    head = ("deg", "product", "value")
    widths = [max(len(r[i]) for r in rows + [head]) for i in range(3)]
    fmt = lambda r: "| " + " | ".join(s.ljust(w) for s, w in zip(r, widths)) + " |"
    out = [f"### {X.name}", "", fmt(head), "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
    out += [fmt(r) for r in rows]
    return "\n".join(out) + "\n"


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def supported_quantum_cases() -> list[tuple[int, tuple[int, ...]]]:
    return [(1, (3,)), (2, ()), (3, (3, 3)), (5, ())]


def variety_from_key(case_tag: int, params: Iterable[int] = ()) -> HoroVariety:
    params = tuple(params)
    return build_variety(case_tag, *params)


# ---------------------------------------------------------------------------
# reference tables


def load_golden_tables(path=None) -> list[dict]:
    if path is None:
        text = resources.files("artifact.data").joinpath("golden_tables.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return json.loads(text)["cases"]


def golden_entry(case_tag: int, params: Iterable[int] = (), path=None) -> dict | None:
    params = list(params)
    for entry in load_golden_tables(path):
        if entry["case"] == case_tag and list(entry["params"]) == params:
            return entry
    return None


def golden_diff(X: HoroVariety, entry: dict) -> list[dict]:
    """Products where the engine disagrees with a reference table.

    Each mismatch records the table line, the left-hand side, the
    expected right-hand side and the engine's value.  Basis elements
    missing from the table count as mismatches too.
    """
    table = chevalley_table(X)
    out = []
    seen = set()
    for lhs, (rhs, line) in entry["products"].items():
        a = parse_label(X, lhs)
        seen.add(a)
        expected = parse_class(X, rhs)
        if expected.as_dict() != table[a].as_dict():
            out.append({"line": line, "lhs": lhs, "expected": rhs, "engine": format_class(X, table[a])})
    for a in table:
        if a not in seen:
            out.append({"line": None, "lhs": label_name(X, a), "expected": None, "engine": format_class(X, table[a])})
    out.sort(key=lambda d: (d["line"] is None, d["line"] or 0, d["lhs"]))
    return out
