"""Building sets and nested sets in the Boolean lattice of subsets of {0..r-1}.

Families are sets of nonempty bitmasks.  The Minkowski sum of simplices
attached to a family is handled only through closed formulas: its vertex
for a given ordering of the coordinates, and the right-hand sides of its
facet inequalities.
"""

from dataclasses import dataclass
from itertools import combinations, permutations

from .bits import elements_of, fmt, full, is_subset, lowest, mask_of, popcount
from .errors import NotNested, TopMissing, ValidationError


@dataclass(frozen=True)
class BooleanFamily:
    r: int
    sets: frozenset

    def __post_init__(self):
        top = full(self.r)
        for s in self.sets:
            if s == 0 or s & ~top:
                raise ValidationError(f"family member {fmt(s)} is empty or outside 1..{self.r}")

    @classmethod
    def of(cls, r, sets):
        """Build from 1-based element lists, e.g. ``BooleanFamily.of(3, [[1, 2], [2, 3]])``."""
        return cls(r, frozenset(mask_of(e - 1 for e in s) for s in sets))

    @property
    def top(self):
        return full(self.r)

    def sorted(self):
        return sorted(self.sets, key=lambda s: (popcount(s), s))

    def __len__(self):
        return len(self.sets)

    def __contains__(self, s):
        return s in self.sets

    def __iter__(self):
        return iter(self.sorted())


def is_building_boolean(fam):
    if any(1 << i not in fam.sets for i in range(fam.r)):
        return False
    for a, b in combinations(fam.sets, 2):
        if a & b and (a | b) not in fam.sets:
            return False
    return True


def building_closure(fam):
    """Smallest building set containing ``fam``: add singletons, then saturate
    with unions of intersecting members."""
    sets = set(fam.sets) | {1 << i for i in range(fam.r)}
    frontier = list(sets)
    while frontier:
        new = []
        for a in frontier:
            for b in list(sets):
                if a & b and (a | b) not in sets:
                    sets.add(a | b)
                    new.append(a | b)
        frontier = new
    return BooleanFamily(fam.r, frozenset(sets))


def building_closure_by_components(fam):
    """Same closure, computed subset by subset: X belongs to it iff X is a
    singleton or the maximal members of ``fam`` inside X form a connected
    set system covering X.  Exponential in r; used to cross-check."""
    out = set()
    for X in range(1, full(fam.r) + 1):
        if popcount(X) == 1:
            out.add(X)
            continue
        inside = [F for F in fam.sets if is_subset(F, X)]
        maxes = [F for F in inside if not any(F != G and is_subset(F, G) for G in inside)]
        if not maxes:
            continue
        reach = maxes[0]
        grown = True
        while grown:
            grown = False
            for F in maxes:
                if F & reach and F & ~reach:
                    reach |= F
                    grown = True
        if reach == X:
            out.add(X)
    return BooleanFamily(fam.r, frozenset(out))


def _pi_min(F, rank_of):
    return min(elements_of(F), key=rank_of.__getitem__)


def delta_vertex(fam, pi):
    """Vertex of the Minkowski sum of simplices minimizing any weight ordered by ``pi``.

    ``pi`` lists the coordinates 0..r-1 from smallest to largest weight.  Each
    member contributes one unit to the coordinate of its pi-smallest element.
    """
    rank_of = {e: k for k, e in enumerate(pi)}
    v = [0] * fam.r
    for F in fam.sets:
        v[_pi_min(F, rank_of)] += 1
    return tuple(v)


def delta_facet_rhs(fam, G):
    """Right-hand side of ``sum_{i in G} x_i >= #{F in fam : F subset of G}``."""
    return sum(1 for F in fam.sets if is_subset(F, G))


def delta_facet_sets(fam):
    """Sets G indexing the irredundant inequalities (fam must contain the top)."""
    if fam.top not in fam.sets:
        raise TopMissing("family does not contain the full set")
    return [G for G in building_closure(fam).sorted() if G != fam.top]


# ---------------------------------------------------------------- nested sets


def is_nested(building, S, top=None):
    """Nestedness in a Boolean lattice: no union of >= 2 pairwise incomparable
    members of S lies in the building set.  ``building`` is any container of
    masks; ``top`` (if given) is excluded from S before testing."""
    S = [s for s in S if s != top]
    for k in range(2, len(S) + 1):
        for sub in combinations(S, k):
            if any(is_subset(a, b) or is_subset(b, a) for a, b in combinations(sub, 2)):
                continue
            u = 0
            for s in sub:
                u |= s
            if u in building:
                return False
    return True


@dataclass(frozen=True)
class FTree:
    """Rooted tree with pairwise disjoint nonempty node labels."""

    label: int
    children: tuple = ()

    def union(self):
        u = self.label
        for c in self.children:
            u |= c.union()
        return u

    def below(self):
        """Union of the labels strictly below this node."""
        u = 0
        for c in self.children:
            u |= c.union()
        return u

    def nodes(self):
        yield self
        for c in self.children:
            yield from c.nodes()

    def sets(self):
        """The family {T_{<= nu} : nu a non-root node}."""
        out = set()
        for c in self.children:
            for node in c.nodes():
                out.add(node.union())
        return frozenset(out)

    def render(self, indent=0):
        lines = ["  " * indent + fmt(self.label)]
        for c in self.children:
            lines.append(c.render(indent + 1))
        return "\n".join(lines)


def tree_from_nested(building, S, top=None):
    """The unique F-tree whose sets() equals S minus the top.

    ``building`` is a BooleanFamily (or a plain container of masks, then
    ``top`` must be given).  S must contain the top element.
    """
    if top is None:
        top = building.top
    members = building.sets if isinstance(building, BooleanFamily) else building
    S = set(S)
    if top not in S:
        raise TopMissing("nested set must contain the full set")
    if not is_nested(members, S, top=top):
        raise NotNested("family is not nested")
    return _grow(top, S - {top})


def _grow(top, S):
    maxes = [G for G in S if not any(G != H and is_subset(G, H) for H in S)]
    covered = 0
    for G in maxes:
        if G & covered:
            raise NotNested(f"maximal members overlap at {fmt(G & covered)}")
        covered |= G
    rho = top & ~covered
    if rho == 0 or covered & ~top:
        raise NotNested(f"maximal members of the family leave no root label inside {fmt(top)}")
    kids = []
    for G in sorted(maxes, key=lowest):
        kids.append(_grow(G, {H for H in S if H != G and is_subset(H, G)}))
    return FTree(rho, tuple(kids))


def maximal_nested_sets_boolean(building):
    """Maximal nested sets (top excluded) via the vertex/permutation correspondence.

    For each ordering pi of [r], G_i is the union of the members whose
    pi-smallest element is i; dropping the one equal to the top leaves r-1 sets.
    """
    r = building.r
    if building.top not in building.sets:
        raise TopMissing("building set must contain the full set")
    out = set()
    for pi in permutations(range(r)):
        rank_of = {e: k for k, e in enumerate(pi)}
        G = [0] * r
        for F in building.sets:
            G[_pi_min(F, rank_of)] |= F
        facet = frozenset(g for g in G if g != building.top)
        assert len(facet) == r - 1
        out.add(facet)
    return sorted(out, key=_facet_key)


def nested_sets_boolean(building):
    """All nested sets (top excluded) by depth-first search; exponential."""
    cand = [s for s in building.sorted() if s != building.top]
    out = []

    def extend(start, cur):
        out.append(frozenset(cur))
        for k in range(start, len(cand)):
            nxt = cur + [cand[k]]
            if is_nested(building.sets, nxt):
                extend(k + 1, nxt)

    extend(0, [])
    return out


def maximal_nested_sets_brute(building):
    faces = nested_sets_boolean(building)
    sizes = set(faces)
    maximal = [f for f in faces if not any(f < g for g in sizes if len(g) == len(f) + 1)]
    return sorted(maximal, key=_facet_key)


def _facet_key(facet):
    return sorted((popcount(s), s) for s in facet)
