import random
from itertools import permutations

import pytest

import oracles
from matro import boolean as bl
from matro.errors import NotNested, TopMissing, ValidationError

SQUARE = bl.BooleanFamily.of(4, [[1, 2], [2, 3], [3, 4], [1, 4]])

# symmetries of the square 1-2-3-4 acting on coordinates
D4 = [
    (0, 1, 2, 3), (1, 2, 3, 0), (2, 3, 0, 1), (3, 0, 1, 2),
    (3, 2, 1, 0), (0, 3, 2, 1), (1, 0, 3, 2), (2, 1, 0, 3),
]


def orbit(v):
    return {tuple(v[g[i]] for i in range(4)) for g in D4}


def vertices(fam):
    return {bl.delta_vertex(fam, pi) for pi in permutations(range(fam.r))}


def random_family(rng, r, k):
    return bl.BooleanFamily(r, frozenset(rng.randrange(1, 1 << r) for _ in range(k)))


def test_square_closure_has_thirteen_members():
    C = bl.building_closure(SQUARE)
    assert len(C) == 13
    assert bl.is_building_boolean(C)
    assert not bl.is_building_boolean(SQUARE)


def test_square_vertices_form_rhombic_dodecahedron():
    vs = vertices(SQUARE)
    assert len(vs) == 14
    assert vs == orbit((0, 1, 1, 2)) | orbit((0, 1, 2, 1)) | orbit((0, 2, 0, 2))


def test_square_closure_vertices():
    vs = vertices(bl.building_closure(SQUARE))
    reps = [(1, 2, 7, 3), (1, 3, 7, 2), (1, 4, 1, 7), (1, 7, 1, 4), (1, 2, 3, 7)]
    assert vs == set().union(*(orbit(v) for v in reps))
    assert len(vs) == 20


def test_vertices_satisfy_facet_inequalities():
    C = bl.building_closure(SQUARE)
    for v in vertices(C):
        assert sum(v) == len(C)
        for G in bl.delta_facet_sets(C):
            assert sum(v[i] for i in range(4) if G >> i & 1) >= bl.delta_facet_rhs(C, G)


@pytest.mark.parametrize("seed", range(40))
def test_closure_matches_component_characterisation(seed):
    rng = random.Random(seed)
    r = rng.randint(2, 6)
    fam = random_family(rng, r, rng.randint(1, 6))
    assert bl.building_closure(fam) == bl.building_closure_by_components(fam)


@pytest.mark.parametrize("seed", range(25))
def test_maximal_nested_sets_two_ways(seed):
    rng = random.Random(1000 + seed)
    r = rng.randint(2, 6)
    fam = random_family(rng, r, rng.randint(1, 5))
    B = bl.building_closure(bl.BooleanFamily(r, fam.sets | {(1 << r) - 1}))
    assert bl.maximal_nested_sets_boolean(B) == bl.maximal_nested_sets_brute(B)


@pytest.mark.parametrize("seed", range(25))
def test_nested_sets_match_exhaustive_search(seed):
    rng = random.Random(2000 + seed)
    r = rng.randint(2, 5)
    fam = random_family(rng, r, rng.randint(1, 3))
    B = bl.building_closure(bl.BooleanFamily(r, fam.sets | {(1 << r) - 1}))
    if len(B) > 18:
        pytest.skip("building set too large for the exhaustive oracle")
    got = set(bl.nested_sets_boolean(B))
    assert got == set(oracles.nested_sets_brute(B.sets, B.top))


def test_nested_sets_of_simplex_family():
    # the building set of all subsets gives the permutohedron: r! maximal chains
    r = 4
    B = bl.BooleanFamily(r, frozenset(range(1, 1 << r)))
    assert len(bl.maximal_nested_sets_boolean(B)) == 24


def test_tree_from_nested():
    B = bl.building_closure(bl.BooleanFamily.of(4, [[1, 2], [3, 4], [1, 2, 3, 4]]))
    S = {0b0011, 0b0001, 0b1111}
    T = bl.tree_from_nested(B, S)
    assert T.label == 0b1100
    assert T.sets() == frozenset({0b0011, 0b0001})
    (child,) = T.children
    assert child.label == 0b0010 and child.union() == 0b0011
    with pytest.raises(TopMissing):
        bl.tree_from_nested(B, {0b0011})
    with pytest.raises(NotNested):
        bl.tree_from_nested(B, {0b0011, 0b1100, 0b1111})


def test_family_validation():
    with pytest.raises(ValidationError):
        bl.BooleanFamily(2, frozenset({0b100}))
    with pytest.raises(TopMissing):
        bl.maximal_nested_sets_boolean(SQUARE)
