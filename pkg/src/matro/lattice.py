"""The geometric lattice of flats and what the polytope/nested-set code needs from it."""

from dataclasses import dataclass
from itertools import product

import numpy as np

from .bits import elements_of, fmt, is_subset, lowest
from .errors import HasLoops, NotConnected, NotSubsetOfLattice


class FlatsLattice:
    """All flats of a matroid, ordered by (rank, mask).

    Flat ids index :attr:`flats`; id 0 is the bottom, the last id is the top.
    """

    def __init__(self, matroid):
        self.matroid = matroid
        M = matroid
        bottom = M.closure(0)
        levels = [[bottom]]
        up = {bottom: set()}
        while True:
            nxt = set()
            for F in levels[-1]:
                for e in elements_of(M.ground & ~F):
                    G = M.closure(F | (1 << e))
                    up[F].add(G)
                    nxt.add(G)
            if not nxt:
                break
            for G in nxt:
                up.setdefault(G, set())
            levels.append(sorted(nxt))
        self.flats = tuple(F for level in levels for F in level)
        self.rank_of = {}
        for k, level in enumerate(levels):
            for F in level:
                self.rank_of[F] = k
        self.index = {F: i for i, F in enumerate(self.flats)}
        self.covers = tuple(tuple(sorted(self.index[G] for G in up[F])) for F in self.flats)
        self.array = np.asarray(self.flats, dtype=np.uint64)

    @property
    def bottom(self):
        return self.flats[0]

    @property
    def top(self):
        return self.flats[-1]

    @property
    def rank(self):
        return self.rank_of[self.top]

    def profile(self):
        """Number of flats of each rank 0..r."""
        counts = [0] * (self.rank + 1)
        for F in self.flats:
            counts[self.rank_of[F]] += 1
        return tuple(counts)

    def by_rank(self, k):
        return [F for F in self.flats if self.rank_of[F] == k]

    def __len__(self):
        return len(self.flats)

    def __contains__(self, mask):
        return mask in self.index

    def join(self, *masks):
        u = 0
        for m in masks:
            u |= m
        return self.matroid.closure(u)

    def meet(self, a, b):
        return a & b

    def below(self, X, strict=False):
        """Flats contained in X (the lower interval), in lattice order."""
        sel = (self.array & ~np.uint64(X)) == 0
        if strict:
            sel &= self.array != np.uint64(X)
        return [self.flats[i] for i in np.flatnonzero(sel)]

    def atoms(self):
        return self.by_rank(1)


def flats(M):
    """The (memoized) lattice of flats of M."""
    L = M.__dict__.get("_lattice")
    if L is None:
        L = M.__dict__["_lattice"] = FlatsLattice(M)
    return L


@dataclass(frozen=True)
class BuildingSet:
    lattice: FlatsLattice
    members: frozenset

    @property
    def contains_top(self):
        return self.lattice.top in self.members

    def with_top(self):
        return BuildingSet(self.lattice, self.members | {self.lattice.top})

    def sorted(self):
        L = self.lattice
        return sorted(self.members, key=lambda F: (L.rank_of[F], F))

    def __contains__(self, F):
        return F in self.members

    def __len__(self):
        return len(self.members)


def is_connected_flat(M, F):
    return F != 0 and M.restriction(F).matroid.is_connected()


def connected_flats(M):
    """G_min: nonempty flats whose restriction is connected (the top iff M is connected)."""
    if M.has_loops():
        raise HasLoops(f"matroid has loops {fmt(M.loops)}")
    L = flats(M)
    cached = M.__dict__.get("_gmin")
    if cached is None:
        cached = M.__dict__["_gmin"] = frozenset(F for F in L.flats[1:] if is_connected_flat(M, F))
    return BuildingSet(L, cached)


def maximal_building_set(M):
    L = flats(M)
    return BuildingSet(L, frozenset(L.flats[1:]))


def _require_connected(M):
    if not M.is_connected():
        blocks = ", ".join(fmt(b) for b in M.components)
        raise NotConnected(f"matroid is not connected; components {blocks}")


def is_flacet(M, F):
    if F == 0 or F == M.ground:
        return False
    return M.restriction(F).matroid.is_connected() and M.contraction(F).matroid.is_connected()


def flacets(M):
    """Flats F whose restriction and contraction are both connected (M connected)."""
    _require_connected(M)
    L = flats(M)
    return [F for F in L.flats if is_flacet(M, F)]


def polytope_dimension(M):
    return M.n - M.num_components()


@dataclass(frozen=True)
class PolytopeDescription:
    dimension: int
    rank_sum: int                 # sum x_i = r
    flacet_rows: tuple            # (flat mask, rank): sum_{i in F} x_i <= rank(F)
    nonnegativity: tuple          # (element, defines a facet?)


def polytope_facets(M):
    """Irredundant inequality description of the matroid polytope of a connected M.

    Each flacet row is certified facet-defining by the face dimension
    ``n - c(M_F) == n - 2``.  The simplex rows ``x_i >= 0`` are listed
    with a flag telling whether they define a facet.
    """
    _require_connected(M)
    rows = []
    for F in flacets(M):
        MF = M.max_weight([1 if F >> i & 1 else 0 for i in range(M.n)])
        assert polytope_dimension(MF) == M.n - 2, f"flacet {fmt(F)} is not facet-defining"
        rows.append((F, M.rank(F)))
    nonneg = []
    for i in range(M.n):
        face = M.max_weight([-1 if j == i else 0 for j in range(M.n)])
        nonneg.append((i, polytope_dimension(face) == M.n - 2))
    return PolytopeDescription(polytope_dimension(M), M.r, tuple(rows), tuple(nonneg))


def is_building_set(L, G):
    """Check the interval-product condition for every X above the bottom.

    Returns ``(True, None)`` or ``(False, X)`` for the first failing flat X in
    lattice order.
    """
    G = frozenset(G.members if isinstance(G, BuildingSet) else G)
    for F in G:
        if F not in L or F == L.bottom:
            raise NotSubsetOfLattice(f"{fmt(F)} is not a flat above the bottom")
    for X in L.flats[1:]:
        if not _factors(L, G, X):
            return False, X
    return True, None


def _factors(L, G, X):
    if X in G:
        return True
    below = [F for F in G if is_subset(F, X)]
    maxes = [F for F in below if not any(F != H and is_subset(F, H) for H in below)]
    if not maxes:
        return False
    if sum(L.rank_of[F] for F in maxes) != L.rank_of[X]:
        return False
    intervals = [L.below(F) for F in maxes]
    size = 1
    for iv in intervals:
        size *= len(iv)
    if size != len(L.below(X)):
        return False
    for ys in product(*intervals):
        Z = L.join(*ys)
        if any((Z & F) != y for F, y in zip(maxes, ys)):
            return False
    return True


def mobius(L):
    """mu(bottom, top) by the standard recursion over the lattice."""
    mu = np.zeros(len(L), dtype=np.int64)
    mu[0] = 1
    arr = L.array
    for i in range(1, len(L)):
        X = arr[i]
        sel = (arr[:i] & ~X) == 0
        mu[i] = -mu[:i][sel].sum()
    return int(mu[-1])


def components_of_flat(M, F):
    """Connected components of the restriction to F, as masks in original labels."""
    minor = M.restriction(F)
    return tuple(sorted((minor.lift(b) for b in minor.matroid.components), key=lowest))
