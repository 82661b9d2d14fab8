"""Bergman complexes of matroids and their nested set triangulations.

Conventions:

* A Bergman facet is an unordered partition of the ground set into ``r``
  blocks (tuple of masks sorted by smallest element).
* A nested set is a frozenset of flat masks *excluding* the top flat, so a
  nested facet has ``r - 1`` members and a face of dimension ``d`` has
  ``d + 1``.
* A Bergman face is identified by its face matroid ``M_w``; its dimension on
  the sphere is ``c(M_w) - 2``.
"""

from dataclasses import dataclass, field
from itertools import combinations, permutations

import numpy as np

from . import _kernels as K
from .bits import elements_of, fmt, is_subset, lowest
from .boolean import FTree, tree_from_nested
from .errors import (
    HasLoops,
    InvalidBuildingSet,
    LengthMismatch,
    NotABasis,
    NotAFacet,
    NotConnected,
    NotNested,
)
from .lattice import BuildingSet, connected_flats, flacets, flats, is_building_set, maximal_building_set
from .matroid import Matroid, integer_weights


def _require_loopless(M):
    if M.has_loops():
        raise HasLoops(f"matroid has loops {fmt(M.loops)}; its Bergman fan is empty")


def _require_connected(M):
    if not M.is_connected():
        blocks = ", ".join(fmt(b) for b in M.components)
        raise NotConnected(f"matroid is not connected; components {blocks}")


def _require_bergman_input(M):
    _require_loopless(M)
    _require_connected(M)


# ---------------------------------------------------------------- membership


def bergman_membership(M, w):
    """True iff the minimum of w over every circuit is attained at least twice."""
    _require_loopless(M)
    ints = integer_weights(w, M.n)
    for C in M.circuits:
        vals = [ints[i] for i in elements_of(C)]
        lo = min(vals)
        if vals.count(lo) < 2:
            return False
    return True


# ---------------------------------------------------------------- Algorithm 5.4


def local_building_set(M, sigma):
    """Map each element i outside the basis sigma to F_i, the part of its
    basic circuit inside sigma."""
    if sigma not in M.basis_set:
        raise NotABasis(f"{fmt(sigma)} is not a basis")
    out = {}
    for i in elements_of(M.ground & ~sigma):
        C = M.fundamental_circuit(sigma, i)
        out[i] = C & ~(1 << i)
    return out


def _permutations(r):
    return np.asarray(list(permutations(range(r))), dtype=np.int64).reshape(-1, r)


def bergman_facets(M, threads=None):
    """All Bergman facets as set partitions, sorted.

    Every basis sigma and every ordering of sigma by weight gives one
    partition: each element outside sigma joins the block of the
    weight-smallest element of its F_i.
    """
    _require_bergman_input(M)
    cached = M.__dict__.get("_bergman_facets")
    if cached is not None:
        return cached
    K.set_threads(threads)
    rows = K.local_partitions(M.array, M.n, M.r, _permutations(M.r))
    uniq = np.unique(rows, axis=0)
    facets = sorted(tuple(int(x) for x in row) for row in uniq)
    M.__dict__["_bergman_facets"] = facets
    return facets


def partition_labels(partition):
    return [[e + 1 for e in elements_of(b)] for b in partition]


def transversal_matroid(n, partition):
    """Direct sum of the rank-one matroids on the blocks."""
    bases = [0]
    for block in partition:
        bases = [b | (1 << e) for b in bases for e in elements_of(block)]
    return Matroid(n, len(partition), bases, trusted=True)


# ---------------------------------------------------------------- nestedness


def is_nested(M, building, S):
    """Nestedness of a family of flats with respect to ``building`` (a container
    of flat masks; the top is always treated as a member)."""
    top = M.ground
    S = [s for s in S if s != top]
    for k in range(2, len(S) + 1):
        for sub in combinations(S, k):
            if _antichain(sub):
                j = _join(M, sub)
                if j == top or j in building:
                    return False
    return True


def _antichain(sets):
    return not any(is_subset(a, b) or is_subset(b, a) for a, b in combinations(sets, 2))


def _join(M, sets):
    u = 0
    for s in sets:
        u |= s
    return M.closure(u)


def _can_extend(M, building, cur, x):
    """Is cur + [x] nested, given that cur is?"""
    top = M.ground
    for k in range(1, len(cur) + 1):
        for sub in combinations(cur, k):
            grp = sub + (x,)
            if not _antichain(grp):
                continue
            j = _join(M, grp)
            if j == top or j in building:
                return False
    return True


def _sort_key(M, facet):
    return sorted((M.rank(F), F) for F in facet)


def sort_nested(M, sets):
    return sorted(sets, key=lambda S: _sort_key(M, S))


def nested_sets(M, building, maximal_only=False):
    """All nested sets (top excluded) w.r.t. a building set by depth-first search."""
    members = building.members if isinstance(building, BuildingSet) else frozenset(building)
    L = flats(M)
    cand = sorted((F for F in members if F != L.top), key=lambda F: (L.rank_of[F], F))
    out = []

    def extend(start, cur):
        grew = False
        for k in range(start, len(cand)):
            if _can_extend(M, members, cur, cand[k]):
                extend(k + 1, cur + (cand[k],))
                grew = True
        if not maximal_only:
            out.append(frozenset(cur))
        elif not grew and not any(_can_extend(M, members, cur, c) for c in cand if c not in cur):
            out.append(frozenset(cur))

    extend(0, ())
    return sort_nested(M, out)


# ---------------------------------------------------------------- triangulation


@dataclass(frozen=True)
class Triangulation:
    """Nested-set triangulation of one Bergman facet."""

    partition: tuple
    pool: tuple          # connected proper flats that are unions of rank-many blocks
    simplices: tuple     # maximal nested subsets of the pool

    @property
    def subdivided(self):
        return len(self.simplices) > 1


def facet_triangulation(M, omega, check=True):
    _require_bergman_input(M)
    omega = tuple(sorted(omega, key=lowest))
    if check and omega not in set(bergman_facets(M)):
        raise NotAFacet("partition is not a facet of the Bergman complex")
    G = connected_flats(M)
    L = G.lattice
    pool = []
    for F in G.sorted():
        if F == L.top:
            continue
        inside = [b for b in omega if is_subset(b, F)]
        cover = 0
        for b in inside:
            cover |= b
        if cover == F and len(inside) == L.rank_of[F]:
            pool.append(F)
    if len(pool) == M.r - 1:
        simplices = (frozenset(pool),)
    else:
        simplices = tuple(_maximal_nested_subsets(M, G.members, pool))
    for s in simplices:
        assert len(s) == M.r - 1, "maximal nested subset of the wrong size"
    return Triangulation(omega, tuple(pool), simplices)


def _maximal_nested_subsets(M, members, pool):
    out = []

    def extend(start, cur):
        grew = False
        for k in range(start, len(pool)):
            if _can_extend(M, members, cur, pool[k]):
                grew = True
                extend(k + 1, cur + (pool[k],))
        if not grew and not any(_can_extend(M, members, cur, p) for p in pool if p not in cur):
            out.append(frozenset(cur))

    extend(0, ())
    return sort_nested(M, out)


def triangulations(M, threads=None):
    return [facet_triangulation(M, om, check=False) for om in bergman_facets(M, threads)]


def resolve_building(M, building):
    """Building set (top included) from 'min', 'max' or a collection of flats."""
    L = flats(M)
    if isinstance(building, str):
        if building == "min":
            return connected_flats(M).with_top()
        if building == "max":
            return maximal_building_set(M)
        raise ValueError(f"unknown building set {building!r}")
    members = frozenset(building.members if isinstance(building, BuildingSet) else building)
    ok, witness = is_building_set(L, members)
    if not ok:
        raise InvalidBuildingSet(f"not a building set; interval below {fmt(witness)} does not factor")
    return BuildingSet(L, members | {L.top})


def nested_facets(M, building="min", threads=None):
    """Maximal nested sets of the lattice of flats (top excluded), sorted."""
    _require_bergman_input(M)
    if building == "min":
        out = set()
        for tri in triangulations(M, threads):
            out.update(tri.simplices)
        return sort_nested(M, out)
    if building == "max":
        return maximal_chains(M)
    G = resolve_building(M, building)
    return nested_sets(M, G, maximal_only=True)


def maximal_chains(M):
    """Maximal chains in the proper part of the lattice of flats."""
    L = flats(M)
    top = L.top
    chains = []

    def walk(i, cur):
        ups = [j for j in L.covers[i] if L.flats[j] != top]
        if not ups:
            chains.append(frozenset(cur))
            return
        for j in ups:
            walk(j, cur + (L.flats[j],))

    for a in L.covers[0]:
        if L.flats[a] != top:
            walk(a, (L.flats[a],))
    return sort_nested(M, chains)


def nested_faces(facets):
    """Downward closure (nonempty faces) of a list of facets."""
    faces = set()
    for S in facets:
        S = tuple(S)
        for k in range(1, len(S) + 1):
            faces.update(frozenset(c) for c in combinations(S, k))
    return faces


def f_vector(faces, dim_of):
    counts = {}
    for f in faces:
        d = dim_of(f)
        counts[d] = counts.get(d, 0) + 1
    top = max(counts) if counts else -1
    return tuple(counts.get(d, 0) for d in range(top + 1))


def nested_f_vector(M, building="min"):
    faces = nested_faces(nested_facets(M, building))
    return f_vector(faces, lambda S: len(S) - 1)


def euler_characteristic(fv):
    """Reduced Euler characteristic -1 + sum_d (-1)^d f_d."""
    return -1 + sum((-1) ** d * f for d, f in enumerate(fv))


# ---------------------------------------------------------------- face matroids


@dataclass(frozen=True)
class TreeNode:
    """Node of T_S: the interval [lower, upper] of the lattice of flats."""

    lower: int
    upper: int
    children: tuple = ()

    @property
    def block(self):
        return self.upper & ~self.lower

    def nodes(self):
        yield self
        for c in self.children:
            yield from c.nodes()


def face_tree(M, S):
    """T_S built directly on the flats: each member's children are the maximal
    members below it, and its lower end is their join."""
    top = M.ground
    members = set(S) - {top}

    def grow(G, inside):
        maxes = sorted((H for H in inside if not any(H != X and is_subset(H, X) for X in inside)), key=lowest)
        kids = tuple(grow(H, {X for X in inside if X != H and is_subset(X, H)}) for H in maxes)
        return TreeNode(_join(M, maxes) if maxes else M.closure(0), G, kids)

    return grow(top, members)


def face_weight(M, S):
    """Sum of the indicator vectors of the flats in S (a point inside the cone of S)."""
    w = [0] * M.n
    for F in S:
        for e in elements_of(F):
            w[e] += 1
    return w


def admissible_bases(M, S):
    """Bases sigma with |sigma & G| == rank(G) for every G in S."""
    ok = np.ones(len(M.bases), dtype=bool)
    for G in S:
        ok &= np.bitwise_count(M.array & np.uint64(G)) == M.rank(G)
    return [M.bases[i] for i in np.flatnonzero(ok)]


@dataclass(frozen=True)
class FaceMatroid:
    tree: TreeNode
    matroid: Matroid
    sigma_tree: FTree = field(compare=False)


def nested_face_matroid(M, S, building="min", check=True):
    """M_S as the direct sum of the interval minors along the tree of S.

    The tree is built from a basis sigma that spans every member of S; with
    ``check`` the construction is repeated from a second admissible basis
    and compared with the maximal-weight matroid of the cone's interior point.
    """
    G = resolve_building(M, building)
    S = frozenset(S) - {M.ground}
    if not all(F in G for F in S) or not is_nested(M, G.members, S):
        raise NotNested("family of flats is not nested for this building set")
    bases = admissible_bases(M, S)
    assert bases, "nested set without an admissible basis"
    result = _face_matroid_from_basis(M, S, bases[0])
    if check:
        other = _face_matroid_from_basis(M, S, bases[-1])
        assert other.tree == result.tree and other.matroid == result.matroid
        assert result.matroid == M.max_weight(face_weight(M, S))
    return result


def _face_matroid_from_basis(M, S, sigma):
    traces = {G & sigma: G for G in S}
    ftree = tree_from_nested(set(traces) | {sigma}, set(traces) | {sigma}, top=sigma)

    def convert(node):
        upper = M.closure(node.union())
        lower = M.closure(node.below())
        return TreeNode(lower, upper, tuple(convert(c) for c in node.children))

    tree = convert(ftree)
    parts = []
    covered = 0
    for node in tree.nodes():
        D = node.block
        assert not covered & D
        covered |= D
        parts.append((D, frozenset(M.interval_bases(node.lower, node.upper))))
    assert covered == M.ground
    chosen = [b for b in M.bases if all((b & D) in allowed for D, allowed in parts)]
    return FaceMatroid(tree, Matroid(M.n, M.r, chosen, trusted=True), ftree)


def nested_partition(M, S):
    """Block partition {F_<=nu minus F_<nu} of a nested set's tree."""
    return tuple(sorted((node.block for node in face_tree(M, S).nodes()), key=lowest))


class FaceTable:
    """Face matroids M_S for many nested sets at once via their interior weights."""

    def __init__(self, M, faces):
        self.M = M
        self.faces = list(faces)
        inc = M.incidence
        self.keys = []
        self.matroids = {}
        chunk = 2048
        for start in range(0, len(self.faces), chunk):
            part = self.faces[start:start + chunk]
            W = np.asarray([face_weight(M, S) for S in part], dtype=np.int64).reshape(len(part), M.n)
            costs = W @ inc.T
            best = costs.max(axis=1, keepdims=True)
            sel = costs == best
            for row in sel:
                key = np.packbits(row).tobytes()
                self.keys.append(key)
                if key not in self.matroids:
                    self.matroids[key] = Matroid(M.n, M.r, M.array[row].tolist(), trusted=True)

    def matroid(self, i):
        return self.matroids[self.keys[i]]

    def components(self, i):
        return self.matroid(i).num_components()


# ---------------------------------------------------------------- Bergman faces


@dataclass(frozen=True)
class BergmanFace:
    matroid: Matroid
    dim: int
    blocks: tuple        # connected components of the face matroid
    vertices: tuple      # flacets whose vertex lies on this face


def bergman_faces(M, building="min"):
    """Faces of the Bergman complex, found as the distinct face matroids of the
    nested faces; sorted by (dim, vertices)."""
    _require_bergman_input(M)
    cache = M.__dict__.setdefault("_bergman_faces", {})
    if isinstance(building, str) and building in cache:
        return cache[building]
    faces = nested_faces(nested_facets(M, building))
    table = FaceTable(M, sorted(faces, key=lambda S: _sort_key(M, S)))
    fl = flacets(M)
    vert = [(F, M.max_weight([1 if F >> i & 1 else 0 for i in range(M.n)]).basis_set) for F in fl]
    out = []
    for mat in table.matroids.values():
        c = mat.num_components()
        vs = tuple(F for F, bs in vert if mat.basis_set <= bs)
        out.append(BergmanFace(mat, c - 2, mat.components, vs))
    out.sort(key=lambda f: (f.dim, [(M.rank(v), v) for v in f.vertices], f.blocks))
    if isinstance(building, str):
        cache[building] = out
    return out


def bergman_f_vector(M):
    faces = bergman_faces(M)
    counts = [0] * (M.r - 1)
    for f in faces:
        counts[f.dim] += 1
    return tuple(counts)


# ---------------------------------------------------------------- N(M) = B(M)


def equality_criterion(M):
    """Does the minimal nested set complex equal the Bergman complex?

    Returns ``(True, None)`` or ``(False, (F, G))`` where G is a connected flat,
    F a flat strictly inside it, and M[F, G] is disconnected.
    """
    _require_bergman_input(M)
    G = connected_flats(M).with_top()
    L = G.lattice
    for upper in G.sorted():
        for lower in L.below(upper, strict=True):
            if lower == L.bottom:
                continue
            if not M.interval(lower, upper).matroid.is_connected():
                return False, (lower, upper)
    return True, None


def check_weight_length(M, w):
    if len(w) != M.n:
        raise LengthMismatch(f"weight vector has {len(w)} entries, ground set has {M.n}")
