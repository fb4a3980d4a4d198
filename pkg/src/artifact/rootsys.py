"""Root systems, Weyl groups and parabolic coset posets.

Weights are integer vectors in the basis of fundamental weights, so the
pairing of a weight with a simple coroot is just a coordinate.  Coroots
are stored by their coefficients on the simple coroots.  Simple roots
are indexed from 0; index ``i`` corresponds to Bourbaki's ``i + 1``.

For G2 index 0 is the short simple root (called alpha below) and index
1 the long one (beta).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class UnsupportedRootSystem(ValueError):
    pass


@dataclass(frozen=True)
class Weight:
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> "Weight":
        return Weight(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def __getitem__(self, i: int) -> int:
        return self.coords[i]

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self) -> str:
        return f"Weight{self.coords}"


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element stored as a canonical reduced word.

    The word ``(i1, ..., ik)`` stands for ``s_{i1} s_{i2} ... s_{ik}``,
    so on a weight the last letter acts first.  Build elements through
    :meth:`RootSystem.element` to get the canonical word; two elements
    are equal exactly when they act the same way on rho.
    """

    word: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.word)

    def __repr__(self) -> str:
        if not self.word:
            return "e"
        return "".join(f"s{i + 1}" for i in self.word)


def _cartan_matrix(lie_type: str, rank: int) -> list[list[int]]:
    # entry [i][j] is <alpha_i^vee, alpha_j>
    if lie_type == "B" and rank >= 3 or lie_type == "C" and rank >= 2:
        c = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            c[i][i] = 2
        for i in range(rank - 1):
            c[i][i + 1] = c[i + 1][i] = -1
        if lie_type == "B":
            c[rank - 1][rank - 2] = -2
        else:
            c[rank - 2][rank - 1] = -2
        return c
    if lie_type == "F4" and rank == 4:
        return [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    if lie_type == "G2" and rank == 2:
        return [[2, -3], [-1, 2]]
    raise UnsupportedRootSystem(f"unsupported root system ({lie_type}, {rank})")


@dataclass(frozen=True, eq=False)
class RootSystem:
    lie_type: str
    rank: int
    cartan_matrix: tuple[tuple[int, ...], ...]
    simple_roots: tuple[Weight, ...]
    positive_roots: tuple[Weight, ...]
    positive_root_coefficients: tuple[tuple[int, ...], ...]
    positive_coroots: tuple[tuple[int, ...], ...]
    rho: Weight
    longest_element_length: int
    _root_index: dict = field(repr=False, default_factory=dict)

    # -- weights -----------------------------------------------------------

    def fundamental_weight(self, i: int) -> Weight:
        return Weight(tuple(1 if j == i else 0 for j in range(self.rank)))

    def weight(self, coords: Sequence[int]) -> Weight:
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        return Weight(tuple(coords))

    def zero(self) -> Weight:
        return Weight((0,) * self.rank)

    def pair(self, lam: Weight, k: int) -> int:
        """<lam, gamma_k^vee> for the k-th positive coroot."""
        return sum(c * x for c, x in zip(self.positive_coroots[k], lam.coords))

    def root_index(self, root: Weight) -> tuple[int, int]:
        """Return (k, sign) with root = sign * positive_roots[k]."""
        if root in self._root_index:
            return self._root_index[root], 1
        if -root in self._root_index:
            return self._root_index[-root], -1
        raise KeyError(f"{root} is not a root")

    def is_dominant(self, lam: Weight) -> bool:
        return all(c >= 0 for c in lam.coords)

    def is_regular(self, lam: Weight) -> bool:
        return all(self.pair(lam, k) != 0 for k in range(len(self.positive_roots)))

    # -- Weyl group --------------------------------------------------------

    def reflect(self, i: int, lam: Weight) -> Weight:
        return lam - lam.coords[i] * self.simple_roots[i]

    def act(self, w: WeylElement | Sequence[int], lam: Weight) -> Weight:
        word = w.word if isinstance(w, WeylElement) else tuple(w)
        for i in reversed(word):
            lam = self.reflect(i, lam)
        return lam

    def dot_action(self, w: WeylElement | Sequence[int], lam: Weight) -> Weight:
        return self.act(w, lam + self.rho) - self.rho

    def to_dominant(self, lam: Weight) -> tuple[Weight, tuple[int, ...]]:
        """Move lam into the dominant chamber by simple reflections.

        Returns the dominant weight and the word ``(i1, ..., ik)`` of the
        reflections applied in order, so ``lam = s_{i1} ... s_{ik}(mu)``.
        The number of steps is the length of the element when lam is
        regular.
        """
        applied: list[int] = []
        while True:
            for i, c in enumerate(lam.coords):
                if c < 0:
                    lam = self.reflect(i, lam)
                    applied.append(i)
                    break
            else:
                return lam, tuple(applied)

    def element_from_rho_image(self, mu: Weight) -> WeylElement:
        """The unique w with w(rho) = mu."""
        dom, word = self.to_dominant(mu)
        if dom != self.rho:
            raise ValueError(f"{mu} is not in the Weyl orbit of rho")
        return WeylElement(word)

    def element(self, word: Iterable[int]) -> WeylElement:
        word = tuple(word)
        for i in word:
            if not 0 <= i < self.rank:
                raise ValueError(f"simple reflection index {i} out of range")
        return self.element_from_rho_image(self.act(word, self.rho))

    def multiply(self, w1: WeylElement, w2: WeylElement) -> WeylElement:
        return self.element(w1.word + w2.word)

    def inverse(self, w: WeylElement) -> WeylElement:
        return self.element(tuple(reversed(w.word)))

    def longest_element(self) -> WeylElement:
        return self.element_from_rho_image(-self.rho)

    # -- parabolic data ----------------------------------------------------

    def levi_root_count(self, removed: Iterable[int]) -> int:
        removed = set(removed)
        return sum(
            1
            for coeffs in self.positive_root_coefficients
            if all(coeffs[i] == 0 for i in removed)
        )

    def parabolic_dimension(self, removed: Iterable[int]) -> int:
        """dim G/P where P is obtained by removing the given simple roots."""
        return len(self.positive_roots) - self.levi_root_count(removed)

    def parabolic_c1(self, removed_index: int) -> int:
        """Fano index of G/P for a maximal parabolic P.

        It is <2rho - 2rho_P, alpha^vee> for the removed simple root.
        """
        total = self.zero()
        for root, coeffs in zip(self.positive_roots, self.positive_root_coefficients):
            if coeffs[removed_index] != 0:
                total = total + root
        return total.coords[removed_index]


def build_root_system(lie_type: str, rank: int) -> RootSystem:
    lie_type = lie_type.upper()
    cartan = _cartan_matrix(lie_type, rank)
    # alpha_j = sum_i <alpha_i^vee, alpha_j> omega_i : column j of the matrix
    simple = tuple(Weight(tuple(cartan[i][j] for i in range(rank))) for j in range(rank))

    def reflect_pair(i, root_coeffs, coroot_coeffs):
        pr = sum(root_coeffs[j] * cartan[i][j] for j in range(rank))
        pc = sum(coroot_coeffs[j] * cartan[j][i] for j in range(rank))
        r = list(root_coeffs)
        r[i] -= pr
        c = list(coroot_coeffs)
        c[i] -= pc
        return tuple(r), tuple(c)

    start = []
    for i in range(rank):
        e = tuple(1 if j == i else 0 for j in range(rank))
        start.append((e, e))
    seen = dict(start)
    queue = deque(start)
    while queue:
        r, c = queue.popleft()
        for i in range(rank):
            r2, c2 = reflect_pair(i, r, c)
            if r2 not in seen:
                seen[r2] = c2
                queue.append((r2, c2))

    positive = sorted(
        (r for r in seen if all(x >= 0 for x in r)), key=lambda r: (sum(r), r)
    )
    roots = []
    for r in positive:
        w = Weight((0,) * rank)
        for j, x in enumerate(r):
            w = w + x * simple[j]
        roots.append(w)
    rs = RootSystem(
        lie_type=lie_type,
        rank=rank,
        cartan_matrix=tuple(tuple(row) for row in cartan),
        simple_roots=simple,
        positive_roots=tuple(roots),
        positive_root_coefficients=tuple(positive),
        positive_coroots=tuple(seen[r] for r in positive),
        rho=Weight((1,) * rank),
        longest_element_length=len(positive),
    )
    rs._root_index.update({w: k for k, w in enumerate(roots)})
    return rs


# ---------------------------------------------------------------------------
# coset posets


@dataclass(frozen=True)
class Cover:
    target: int
    root: int  # index of the positive root gamma with u' = u s_gamma


@dataclass(frozen=True, eq=False)
class CosetPoset:
    """Minimal coset representatives W^P, in codimension convention.

    The representative ``u`` labels the Schubert class of codimension
    ``l(u)``.  Representatives are stored together with their image
    ``u(omega_P)``, which determines them uniquely.
    """

    rs: RootSystem
    parabolic: frozenset
    defining_weight: Weight
    reps: tuple[WeylElement, ...]
    orbit: tuple[Weight, ...]
    covers: tuple[tuple[Cover, ...], ...]
    _index: dict = field(repr=False, default_factory=dict)

    def __len__(self) -> int:
        return len(self.reps)

    @property
    def max_length(self) -> int:
        return self.reps[-1].length

    def length(self, i: int) -> int:
        return self.reps[i].length

    def index_of_weight(self, lam: Weight) -> int:
        return self._index[lam]

    def index(self, u: WeylElement | Sequence[int]) -> int:
        word = u.word if isinstance(u, WeylElement) else tuple(u)
        return self._index[self.rs.act(word, self.defining_weight)]

    def by_length(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.max_length + 1)]
        for i, u in enumerate(self.reps):
            out[u.length].append(i)
        return out

    def length_profile(self) -> list[int]:
        return [len(level) for level in self.by_length()]

    def dual(self, i: int) -> int:
        """Index of the Poincare dual representative (w0 u, reduced)."""
        w0 = self.rs.longest_element()
        return self._index[self.rs.act(w0, self.orbit[i])]


def coset_poset(rs: RootSystem, parabolic: Iterable[int]) -> CosetPoset:
    """Enumerate W^P for P given by its removed simple roots.

    Breadth-first search on the Weyl orbit of ``omega_P``: applying s_i
    to an orbit point with positive i-th coordinate moves one step up in
    length, and the first word found is kept.
    """
    removed = frozenset(parabolic)
    if not removed or not all(0 <= i < rs.rank for i in removed):
        raise ValueError(f"invalid parabolic {sorted(removed)}")
    top = rs.zero()
    for i in removed:
        top = top + rs.fundamental_weight(i)

    words = {top: ()}
    level = [top]
    ordered = [top]
    while level:
        nxt = []
        for lam in level:
            for i in range(rs.rank):
                if lam.coords[i] > 0:
                    mu = rs.reflect(i, lam)
                    if mu not in words:
                        words[mu] = (i,) + words[lam]
                        nxt.append(mu)
        ordered.extend(nxt)
        level = nxt

    reps = tuple(rs.element(words[lam]) for lam in ordered)
    index = {lam: k for k, lam in enumerate(ordered)}

    covers = []
    for k, lam in enumerate(ordered):
        found = []
        for g in range(len(rs.positive_roots)):
            p = rs.pair(lam, g)
            if p <= 0:
                continue
            mu = lam - p * rs.positive_roots[g]
            t = index[mu]
            if reps[t].length != reps[k].length + 1:
                continue
            # right root: beta = u^{-1}(gamma)
            beta = rs.act(tuple(reversed(reps[k].word)), rs.positive_roots[g])
            b, sign = rs.root_index(beta)
            if sign < 0:
                raise AssertionError("cover root should be positive")
            found.append(Cover(target=t, root=b))
        found.sort(key=lambda c: c.target)
        covers.append(tuple(found))

    poset = CosetPoset(
        rs=rs,
        parabolic=removed,
        defining_weight=top,
        reps=reps,
        orbit=tuple(ordered),
        covers=tuple(covers),
    )
    poset._index.update(index)
    return poset


def chevalley_coeffs(
    rs: RootSystem, poset: CosetPoset, u: int, weight: Weight | None = None
) -> dict[int, int]:
    """Coefficients of h . sigma_u for the line bundle of ``weight``.

    The weight defaults to the defining weight of the poset.  Keys are
    indices of the covers u' = u s_gamma, values <weight, gamma^vee>.
    Zero coefficients (possible for a non-ample weight) are dropped.
    """
    if weight is None:
        weight = poset.defining_weight
    out = {}
    for cov in poset.covers[u]:
        c = rs.pair(weight, cov.root)
        if c:
            out[cov.target] = c
    return out


def poincare_dual_rep(poset: CosetPoset, u: int) -> int:
    return poset.dual(u)


def codim_of_closed_orbit(rs: RootSystem, own: int, other: int) -> int:
    """Codimension of G/P_own inside the horospherical variety it bounds.

    The variety has dimension dim G/(P_own cap P_other) + 1.
    """
    return rs.parabolic_dimension({own, other}) + 1 - rs.parabolic_dimension({own})


def hat_image(
    rs: RootSystem, posetY: CosetPoset, posetZ: CosetPoset, u: int
) -> tuple[int, int]:
    """Image of the Schubert class u of one closed orbit in the other.

    Returns ``(v, degree_drop)`` where v is the minimal representative of
    u modulo the other parabolic and ``degree_drop`` is
    ``l(v) - (l(u) + 1 - codim)`` with codim the codimension of the target
    closed orbit.  The pushforward term is present exactly when the drop
    is 0; a positive drop means the image is too small.
    """
    (own,) = posetY.parabolic
    (other,) = posetZ.parabolic
    v = posetZ.index_of_weight(rs.act(posetY.reps[u], posetZ.defining_weight))
    codim = codim_of_closed_orbit(rs, other, own)
    drop = posetZ.length(v) - (posetY.length(u) + 1 - codim)
    return v, drop


def tilde_lift(rs: RootSystem, poset: CosetPoset, posetE: CosetPoset, u: int) -> int:
    """Index in W^{P_Y cap P_Z} of the preimage of the Schubert class u."""
    return posetE.index_of_weight(rs.act(poset.reps[u], posetE.defining_weight))
