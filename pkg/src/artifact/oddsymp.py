"""Odd symplectic Grassmannians IG(m, 2n+1).

Schubert classes are indexed by index sets or by k-strict partitions.
The cohomology ring, classical or quantum, is a quotient of a
polynomial ring in the special classes tau'_1, ..., tau'_{2n+1-m}
(tau'_p has degree p) and q (degree 2n+2-m).  Quotients are handled with
sympy Groebner bases in graded reverse lexicographic order with
tau'_1 < ... < tau'_{2n+1-m}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import sympy
from sympy.polys.domains import QQ

from . import _linalg


# ---------------------------------------------------------------------------
# index sets and partitions


@dataclass(frozen=True)
class IndexSet:
    m: int
    N: int
    p: tuple[int, ...]

    @property
    def parity(self) -> str:
        return "even" if self.N % 2 == 0 else "odd"

    @property
    def n(self) -> int:
        return self.N // 2

    def forbidden_sum(self) -> int:
        return forbidden_sum(self.N)


@dataclass(frozen=True)
class KStrictPartition:
    k: int
    parts: tuple[int, ...]

    def is_k_strict(self) -> bool:
        return all(
            not (a > self.k and a == b) for a, b in zip(self.parts, self.parts[1:])
        )

    def size(self) -> int:
        return sum(self.parts)


def forbidden_sum(N: int) -> int:
    """p_i + p_j may not equal this value (N+1 for even N, N+2 for odd N)."""
    return N + 1 if N % 2 == 0 else N + 2


def is_index_set(p: Sequence[int], N: int) -> bool:
    bad = forbidden_sum(N)
    return (
        all(1 <= x <= N for x in p)
        and all(a < b for a, b in zip(p, p[1:]))
        and all(a + b != bad for a in p for b in p)
    )


def enumerate_index_sets(m: int, N: int, parity: str | None = None) -> list[IndexSet]:
    if not 1 <= m <= N:
        raise ValueError("need 1 <= m <= N")
    expected = "even" if N % 2 == 0 else "odd"
    if parity is not None and parity != expected:
        raise ValueError(f"N = {N} is {expected}, not {parity}")
    bad = forbidden_sum(N)
    return [
        IndexSet(m, N, p)
        for p in combinations(range(1, N + 1), m)
        if all(a + b != bad for a in p for b in p)
    ]


def index_to_partition(ix: IndexSet) -> KStrictPartition:
    p, m, n = ix.p, ix.m, ix.n
    if len(p) != m or not is_index_set(p, ix.N):
        raise ValueError(f"{p} is not an index set for IG({m}, {ix.N})")
    if ix.parity == "even":
        top, bound = 2 * n + 1 - m, 2 * n + 1
    else:
        top, bound = 2 * n + 2 - m, 2 * n + 3
    parts = tuple(
        top - p[j] + sum(1 for i in range(j) if p[i] + p[j] > bound) for j in range(m)
    )
    return KStrictPartition(n - m, parts)


def partition_in_range(lam: Sequence[int], n: int, m: int, parity: str) -> bool:
    lam = tuple(lam)
    if len(lam) != m or any(a < b for a, b in zip(lam, lam[1:])):
        return False
    if not KStrictPartition(n - m, lam).is_k_strict():
        return False
    if parity == "even":
        return lam[-1] >= 0 and lam[0] <= 2 * n - m
    return lam[-1] >= -1 and lam[0] <= 2 * n + 1 - m and (lam[-1] != -1 or lam[0] == 2 * n + 1 - m)


def partition_to_index(lam: KStrictPartition | Sequence[int], n: int, m: int, parity: str) -> IndexSet:
    parts = tuple(lam.parts if isinstance(lam, KStrictPartition) else lam)
    if not partition_in_range(parts, n, m, parity):
        raise ValueError(f"{parts} is not an admissible partition for parity {parity}")
    top = 2 * n + 1 - m if parity == "even" else 2 * n + 2 - m
    p = tuple(
        top - parts[j] + sum(1 for i in range(j) if parts[i] + parts[j] <= 2 * (n - m) + j - i)
        for j in range(m)
    )
    N = 2 * n if parity == "even" else 2 * n + 1
    return IndexSet(m, N, p)


def enumerate_partitions(n: int, m: int, parity: str) -> list[tuple[int, ...]]:
    """All admissible k-strict partitions, straight from the definition."""
    lo = 0 if parity == "even" else -1
    hi = 2 * n - m if parity == "even" else 2 * n + 1 - m
    out = []

    def rec(prefix):
        if len(prefix) == m:
            if partition_in_range(prefix, n, m, parity):
                out.append(tuple(prefix))
            return
        cap = prefix[-1] if prefix else hi
        for x in range(cap, lo - 1, -1):
            rec(prefix + [x])

    rec([])
    return out


def contains_staircase(lam: KStrictPartition | Sequence[int], d: int) -> bool:
    """True iff lam contains the staircase (d, d-1, ..., 1)."""
    if d < 0:
        raise ValueError("d must be non-negative")
    parts = tuple(lam.parts if isinstance(lam, KStrictPartition) else lam)
    return all(i < len(parts) and parts[i] >= d - i for i in range(d))


# ---------------------------------------------------------------------------
# polynomials


Q = sympy.Symbol("q")


@lru_cache(maxsize=None)
def generators(n: int, m: int) -> tuple[sympy.Symbol, ...]:
    """tau'_1, ..., tau'_{2n+1-m} as sympy symbols."""
    return sympy.symbols(f"t1:{2 * n + 2 - m}")


def tau(p: int, n: int, m: int):
    if p == 0:
        return sympy.Integer(1)
    if p < 0 or p > 2 * n + 1 - m:
        return sympy.Integer(0)
    return generators(n, m)[p - 1]


def degree_weights(n: int, m: int) -> dict:
    w = {t: i + 1 for i, t in enumerate(generators(n, m))}
    w[Q] = 2 * n + 2 - m
    return w


@lru_cache(maxsize=None)
def d_poly(r: int, n: int, m: int):
    """det(tau'_{1+j-i}) of size r, by expansion along the first row."""
    if r < 0:
        raise ValueError("r must be non-negative")
    if r == 0:
        return sympy.Integer(1)
    total = sympy.Integer(0)
    for i in range(1, r + 1):
        total += (-1) ** (i - 1) * tau(i, n, m) * d_poly(r - i, n, m)
    return sympy.expand(total)


@lru_cache(maxsize=None)
def b_poly(r: int, n: int, m: int):
    if r < 1:
        raise ValueError("r must be positive")
    total = tau(r, n, m) ** 2
    for i in range(1, r + 1):
        total += 2 * (-1) ** i * tau(r + i, n, m) * tau(r - i, n, m)
    return sympy.expand(total)


def _check_range(n: int, m: int) -> None:
    if n < 2 or not 2 <= m <= n:
        raise ValueError("need n >= 2 and 2 <= m <= n")


def classical_ideal(n: int, m: int) -> list:
    _check_range(n, m)
    rels = [d_poly(r, n, m) for r in range(m + 1, 2 * n + 3 - m)]
    rels += [b_poly(s, n, m) for s in range(n + 2 - m, n + 1)]
    return rels


def quantum_ideal(n: int, m: int) -> list:
    """Quantum relations, each written as lhs - rhs."""
    _check_range(n, m)
    rels = [d_poly(r, n, m) for r in range(m + 1, 2 * n + 2 - m)]
    top = d_poly(2 * n + 2 - m, n, m)
    rels.append(top + Q if m % 2 else top)
    for s in range(n + 2 - m, n + 1):
        sign = (-1) ** (2 * n + 1 - m - s)
        rels.append(sympy.expand(b_poly(s, n, m) - sign * Q * tau(2 * s - 2 * n - 2 + m, n, m)))
    return rels


def is_weighted_homogeneous(f, weights: dict) -> bool:
    gens = list(weights)
    poly = sympy.Poly(f, *gens)
    degs = {sum(e * weights[g] for e, g in zip(mon, gens)) for mon in poly.monoms()}
    return len(degs) <= 1


# ---------------------------------------------------------------------------
# quotient rings


@dataclass(eq=False)
class QuotientRing:
    """QH(IG(m, 2n+1)) with q generic, specialised to a rational, or 0.

    ``q_value`` is ``None`` for the generic parameter (coefficients in
    QQ(q)); otherwise q is replaced by that rational number.
    """

    n: int
    m: int
    q_value: Fraction | None
    ideal: list
    groebner_basis: sympy.GroebnerBasis
    monomial_basis: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def gens(self) -> tuple:
        # grevlex in sympy ranks the first generator highest
        return tuple(reversed(generators(self.n, self.m)))

    def monomial(self, exps: Sequence[int]):
        return sympy.Mul(*[g**e for g, e in zip(self.gens, exps)])

    def monomial_degree(self, exps: Sequence[int]) -> int:
        N = len(self.gens)
        return sum(e * (N - i) for i, e in enumerate(exps))

    def rank(self) -> int:
        return len(self.monomial_basis)

    def normal_form(self, f):
        return groebner_normal_form(self, f)

    def coordinates(self, f) -> list:
        """Coefficients of the normal form of f on the monomial basis."""
        r = self.normal_form(f)
        pos = {e: i for i, e in enumerate(self.monomial_basis)}
        out = [sympy.Integer(0)] * len(pos)
        if r == 0:
            return out
        for mon, c in sympy.Poly(r, *self.gens).terms():
            out[pos[mon]] += c
        return out


def _standard_monomials(leading: list[tuple[int, ...]], nvars: int) -> list[tuple[int, ...]]:
    def reducible(e):
        return any(all(a <= b for a, b in zip(lm, e)) for lm in leading)

    for i in range(nvars):
        if not any(lm[i] > 0 and sum(lm) == lm[i] for lm in leading):
            raise ValueError("quotient is not finite dimensional")
    start = (0,) * nvars
    seen = {start}
    stack = [start]
    out = []
    while stack:
        e = stack.pop()
        if reducible(e):
            continue
        out.append(e)
        for i in range(nvars):
            f = e[:i] + (e[i] + 1,) + e[i + 1:]
            if f not in seen:
                seen.add(f)
                stack.append(f)
    return out


def build_ring(n: int, m: int, q_value=0) -> QuotientRing:
    """Quotient ring at a given q (0 gives the classical ring)."""
    rels = quantum_ideal(n, m)
    gens = tuple(reversed(generators(n, m)))
    if q_value is None:
        domain = QQ.frac_field(Q)
        G = sympy.groebner(rels, *gens, order="grevlex", domain=domain)
        qv = None
    else:
        qv = Fraction(q_value)
        specialised = [sympy.expand(r.subs(Q, sympy.Rational(qv.numerator, qv.denominator))) for r in rels]
        G = sympy.groebner(specialised, *gens, order="grevlex")
        rels = specialised
    leading = [sympy.Poly(g, *gens).monoms(order="grevlex")[0] for g in G.exprs]
    ring = QuotientRing(n, m, qv, rels, G)
    basis = _standard_monomials(leading, len(gens))
    basis.sort(key=lambda e: (ring.monomial_degree(e), tuple(-x for x in e)))
    ring.monomial_basis = basis
    return ring


def groebner_normal_form(ring: QuotientRing, f):
    return ring.groebner_basis.reduce(sympy.expand(f))[1]


def quotient_rank(n: int, m: int, q_value=0) -> int:
    return build_ring(n, m, q_value).rank()


def hilbert_series(n: int, m: int) -> list[int]:
    ring = build_ring(n, m, 0)
    top = max(ring.monomial_degree(e) for e in ring.monomial_basis)
    out = [0] * (top + 1)
    for e in ring.monomial_basis:
        out[ring.monomial_degree(e)] += 1
    return out


def flatness_report(n: int, m: int) -> dict:
    ranks = {
        "q=0": quotient_rank(n, m, 0),
        "q=1": quotient_rank(n, m, 1),
        "generic": quotient_rank(n, m, None),
    }
    count = len(enumerate_index_sets(m, 2 * n + 1, "odd"))
    return {
        "n": n,
        "m": m,
        "ranks": ranks,
        "index_sets": count,
        "free": len(set(ranks.values())) == 1 and ranks["q=0"] == count,
    }


def multiplication_matrix(ring: QuotientRing, f) -> list[list[Fraction]]:
    """Matrix of multiplication by f on the monomial basis (columns)."""
    if ring.q_value is None:
        raise ValueError("specialise q before building a rational matrix")
    cols = [ring.coordinates(f * ring.monomial(e)) for e in ring.monomial_basis]
    size = len(cols)
    return [[Fraction(int(cols[j][i].p), int(cols[j][i].q)) for j in range(size)] for i in range(size)]


def minpoly_tau1(n: int, m: int, q_value=1) -> sympy.Poly:
    ring = build_ring(n, m, q_value)
    return _linalg.minimal_polynomial(multiplication_matrix(ring, generators(n, m)[0]))


def presentation_json(n: int, m: int, quantum: bool = True) -> dict:
    gens = generators(n, m)
    names = {g: f"tau'{i + 1}" for i, g in enumerate(gens)}
    rel_docs = []
    if quantum:
        rows = [(d_poly(r, n, m), 0, f"d{r}") for r in range(m + 1, 2 * n + 2 - m)]
        rows.append((d_poly(2 * n + 2 - m, n, m), -Q if m % 2 else 0, f"d{2 * n + 2 - m}"))
        for s in range(n + 2 - m, n + 1):
            sign = (-1) ** (2 * n + 1 - m - s)
            rows.append((b_poly(s, n, m), sign * Q * tau(2 * s - 2 * n - 2 + m, n, m), f"b{s}"))
    else:
        rows = [(d_poly(r, n, m), 0, f"d{r}") for r in range(m + 1, 2 * n + 3 - m)]
        rows += [(b_poly(s, n, m), 0, f"b{s}") for s in range(n + 2 - m, n + 1)]
    for lhs, rhs, name in rows:
        poly = sympy.Poly(lhs, *gens)
        monos = [
            {"coeff": str(c), "exponents": {names[g]: e for g, e in zip(gens, mon) if e}}
            for mon, c in poly.terms()
        ]
        rel_docs.append({"name": name, "lhs_monomials": monos, "rhs": str(rhs).replace("t", "tau'")})
    ring = build_ring(n, m, 0)
    return {
        "n": n,
        "m": m,
        "quantum": quantum,
        "generators": [{"name": names[g], "degree": i + 1} for i, g in enumerate(gens)]
        + ([{"name": "q", "degree": 2 * n + 2 - m}] if quantum else []),
        "relations": rel_docs,
        "rank": ring.rank(),
        "hilbert": hilbert_series(n, m),
    }
