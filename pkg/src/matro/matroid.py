"""Matroids given by their bases, stored as sorted integer bitmasks."""

from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb, lcm
from typing import NamedTuple

import numpy as np

from . import _kernels as K
from .bits import MAX_N, elements_of, fmt, full, lowest, mask_of, popcount
from .errors import (
    BadParameters,
    DisconnectedGraph,
    EmptyBases,
    ExchangeAxiomViolated,
    GraphLoopEdge,
    GroundSetTooLarge,
    LengthMismatch,
    NotAFlat,
    NotAnAntichain,
    NotNested,
    RationalParseError,
    WrongCardinality,
    ZeroMatrix,
)


class Minor(NamedTuple):
    """A minor together with its relabeling.

    ``labels[k]`` is the original (0-based) element that became element ``k``.
    """

    matroid: "Matroid"
    labels: tuple

    @property
    def old_to_new(self):
        return {old: new for new, old in enumerate(self.labels)}

    def lift(self, mask):
        """Translate a mask over the minor's ground set back to original labels."""
        return mask_of(self.labels[e] for e in elements_of(mask))


class Matroid:
    """A matroid of rank ``r`` on ``{0, ..., n-1}``.

    Instances are immutable; two matroids compare equal iff ``n`` and the
    sorted basis list agree.  Derived data (circuits, flats, ...) is computed
    lazily and memoized on the instance.
    """

    def __init__(self, n, r, bases, *, trusted=False):
        if n > MAX_N:
            raise GroundSetTooLarge(f"ground set has {n} elements; at most {MAX_N} supported")
        bases = sorted(set(int(b) for b in bases))
        if not bases:
            raise EmptyBases("a matroid needs at least one basis")
        if not trusted:
            top = full(n)
            for b in bases:
                if b & ~top:
                    raise WrongCardinality(f"basis {fmt(b)} has elements outside 1..{n}")
                if popcount(b) != r:
                    raise WrongCardinality(f"basis {fmt(b)} has {popcount(b)} elements, expected {r}")
        self.n = n
        self.r = r
        self.bases = tuple(bases)
        self.array = np.asarray(bases, dtype=np.uint64)
        self.array.flags.writeable = False
        self._closures = {}
        if not trusted:
            self._check_exchange()

    def _check_exchange(self):
        hit = K.exchange_violation(self.array, self.n)
        if hit is not None:
            s, t, i = hit
            sigma, tau = self.bases[s], self.bases[t]
            raise ExchangeAxiomViolated(
                f"basis exchange fails for sigma={fmt(sigma)}, tau={fmt(tau)}, i={i + 1}: "
                f"no j in {fmt(tau & ~sigma)} makes sigma - i + j a basis",
                sigma=sigma, tau=tau, element=i,
            )

    # ------------------------------------------------------------ identity

    def __eq__(self, other):
        return isinstance(other, Matroid) and self.n == other.n and self.bases == other.bases

    def __hash__(self):
        return hash((self.n, self.bases))

    def __repr__(self):
        return f"Matroid(n={self.n}, r={self.r}, bases={len(self.bases)})"

    @property
    def ground(self):
        return full(self.n)

    @cached_property
    def basis_set(self):
        return frozenset(self.bases)

    @cached_property
    def incidence(self):
        """``len(bases) x n`` 0/1 matrix of basis indicator vectors."""
        shifts = np.arange(self.n, dtype=np.uint64)
        return ((self.array[:, None] >> shifts) & np.uint64(1)).astype(np.int64)

    # ------------------------------------------------------------ rank & co

    def rank(self, mask):
        return K.rank(self.array, mask)

    def closure(self, mask):
        c = self._closures.get(mask)
        if c is None:
            c = K.closure(self.array, mask, self.ground)
            self._closures[mask] = c
        return c

    def is_independent(self, mask):
        return bool(np.any((self.array & np.uint64(mask)) == np.uint64(mask)))

    def is_flat(self, mask):
        return self.closure(mask) == mask

    @cached_property
    def loops(self):
        covered = 0
        for b in self.bases:
            covered |= b
        return self.ground & ~covered

    def has_loops(self):
        return self.loops != 0

    @cached_property
    def coloops(self):
        common = self.ground
        for b in self.bases:
            common &= b
        return common

    def fundamental_circuit(self, sigma, i):
        """The unique circuit inside ``sigma + i`` (``sigma`` a basis, ``i`` outside it)."""
        c = 1 << i
        for j in elements_of(sigma):
            if (sigma & ~(1 << j)) | (1 << i) in self.basis_set:
                c |= 1 << j
        return c

    @cached_property
    def circuits(self):
        """All circuits, sorted by (size, mask).

        Every circuit is the fundamental circuit of one of its elements with
        respect to some basis avoiding that element, so sweeping all bases
        finds them all.
        """
        found = set()
        outside_all = self.ground
        for sigma in self.bases:
            for i in elements_of(outside_all & ~sigma):
                found.add(self.fundamental_circuit(sigma, i))
        return tuple(sorted(found, key=lambda c: (popcount(c), c)))

    @cached_property
    def components(self):
        """Connected components as masks, ordered by smallest element."""
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        sigma = self.bases[0]
        for i in elements_of(self.ground & ~sigma):
            c = self.fundamental_circuit(sigma, i)
            root = find(i)
            for j in elements_of(c):
                parent[find(j)] = root
        blocks = {}
        for e in range(self.n):
            blocks[find(e)] = blocks.get(find(e), 0) | (1 << e)
        return tuple(sorted(blocks.values(), key=lowest))

    def num_components(self):
        return len(self.components)

    def is_connected(self):
        return len(self.components) == 1

    # ------------------------------------------------------------ derived matroids

    def dual(self):
        top = self.ground
        return Matroid(self.n, self.n - self.r, [top & ~b for b in self.bases], trusted=True)

    def _require_flat(self, mask, what="set"):
        if not self.is_flat(mask):
            raise NotAFlat(f"{what} {fmt(mask)} is not a flat")

    def interval_bases(self, lower, upper):
        """Bases of the interval minor M[lower, upper], in original labels."""
        ru = self.rank(upper)
        rl = self.rank(lower)
        a = self.array & np.uint64(upper)
        a = a[np.bitwise_count(a) == ru]
        if lower:
            a = a[np.bitwise_count(a & np.uint64(lower)) == rl] & ~np.uint64(lower)
        return sorted(set(int(x) for x in np.unique(a)))

    def interval(self, lower, upper):
        """M[lower, upper]: contract ``lower`` inside the restriction to ``upper``."""
        self._require_flat(lower)
        self._require_flat(upper)
        if lower & ~upper:
            raise NotNested(f"{fmt(lower)} is not contained in {fmt(upper)}")
        labels = tuple(elements_of(upper & ~lower))
        return _relabeled(labels, self.interval_bases(lower, upper), self.rank(upper) - self.rank(lower))

    def restriction(self, flat):
        """M[emptyset, flat] on the elements of ``flat`` (loops included)."""
        self._require_flat(flat)
        labels = tuple(elements_of(flat))
        return _relabeled(labels, self.interval_bases(0, flat), self.rank(flat))

    def contraction(self, flat):
        self._require_flat(flat)
        return self.interval(flat, self.ground)

    def max_weight(self, w):
        """M_w: the bases of maximal total weight, as a matroid on the same ground set."""
        ints = integer_weights(w, self.n)
        top = sum(abs(x) for x in ints)
        if top < 2**62:
            c = K.costs(self.array, np.asarray(ints, dtype=np.int64))
            best = c.max()
            chosen = self.array[c == best]
            return Matroid(self.n, self.r, chosen.tolist(), trusted=True)
        costs = [sum(ints[i] for i in elements_of(b)) for b in self.bases]
        best = max(costs)
        return Matroid(self.n, self.r, [b for b, c in zip(self.bases, costs) if c == best], trusted=True)

    def subset_of_bases(self, other):
        """True if every basis of ``other`` is a basis of self."""
        return other.n == self.n and other.basis_set <= self.basis_set

    def basis_labels(self):
        return [[e + 1 for e in elements_of(b)] for b in self.bases]


def _relabeled(labels, bases, r):
    pos = {old: new for new, old in enumerate(labels)}
    out = []
    for b in bases:
        m = 0
        for e in elements_of(b):
            m |= 1 << pos[e]
        out.append(m)
    return Minor(Matroid(len(labels), r, out, trusted=True), labels)


# ---------------------------------------------------------------- rationals


def parse_rational(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise RationalParseError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    try:
        return Fraction(str(x).strip())
    except (ValueError, ZeroDivisionError):
        raise RationalParseError(f"not a rational: {x!r}") from None


def integer_weights(w, n):
    """Scale a rational weight vector to integers (same ordering of costs)."""
    w = [parse_rational(x) for x in w]
    if len(w) != n:
        raise LengthMismatch(f"weight vector has {len(w)} entries, ground set has {n}")
    d = lcm(*(x.denominator for x in w)) if w else 1
    return [int(x * d) for x in w]


# ---------------------------------------------------------------- constructors


def _check_n(n):
    if n < 0:
        raise BadParameters("ground set size must be non-negative")
    if n > MAX_N:
        raise GroundSetTooLarge(f"ground set has {n} elements; at most {MAX_N} supported")


def _sets_to_masks(sets, n, r=None):
    out = []
    for s in sets:
        labels = list(s)
        for lab in labels:
            if not 1 <= int(lab) <= n:
                raise WrongCardinality(f"element {lab} outside 1..{n}")
        m = mask_of(int(lab) - 1 for lab in labels)
        if r is not None and (popcount(m) != r or len(labels) != r):
            raise WrongCardinality(f"set {sorted(labels)} should have {r} distinct elements")
        out.append(m)
    return out


def from_bases(n, r, bases):
    """Validated matroid from a list of 1-based element collections."""
    _check_n(n)
    masks = _sets_to_masks(bases, n, r)
    if not masks:
        raise EmptyBases("a matroid needs at least one basis")
    return Matroid(n, r, masks)


def from_nonbases(n, r, nonbases):
    _check_n(n)
    if not 0 <= r <= n:
        raise BadParameters(f"rank {r} outside 0..{n}")
    bad = set(_sets_to_masks(nonbases, n, r))
    bases = [m for m in _subsets(n, r) if m not in bad]
    if not bases:
        raise EmptyBases("every r-subset is listed as a non-basis")
    return Matroid(n, r, bases)


def _subsets(n, k):
    for c in combinations(range(n), k):
        yield mask_of(c)


def from_circuits(n, circuits, verify=True):
    """Matroid whose independent sets are the sets containing no listed circuit."""
    _check_n(n)
    cs = _sets_to_masks(circuits, n)
    if any(c == 0 for c in cs):
        raise NotAnAntichain("circuits must be nonempty")
    cs = sorted(set(cs))
    for a in cs:
        for b in cs:
            if a != b and a & b == a:
                raise NotAnAntichain(f"circuit {fmt(a)} is contained in circuit {fmt(b)}")
    carr = np.asarray(cs, dtype=np.uint64)

    def independent(m):
        return carr.size == 0 or not np.any((carr & np.uint64(m)) == carr)

    # level-wise: grow independent sets by elements above their maximum
    level = [0]
    while True:
        nxt = []
        for s in level:
            start = s.bit_length()
            for e in range(start, n):
                t = s | (1 << e)
                if independent(t):
                    nxt.append(t)
        if not nxt:
            break
        level = nxt
    r = popcount(level[0])
    M = Matroid(n, r, level)
    if verify and sorted(M.circuits) != cs:
        raise ExchangeAxiomViolated(
            "the sets avoiding every listed circuit do not satisfy augmentation; "
            "the list is not the circuit family of a matroid"
        )
    return M


def from_graph(vertices, edges):
    """Graphic matroid: ground set = edges in input order, bases = spanning trees."""
    if vertices < 1:
        raise BadParameters("a graph needs at least one vertex")
    es = []
    for k, (u, v) in enumerate(edges):
        u, v = int(u), int(v)
        if not (1 <= u <= vertices and 1 <= v <= vertices):
            raise BadParameters(f"edge {k + 1} = ({u},{v}) uses a vertex outside 1..{vertices}")
        if u == v:
            raise GraphLoopEdge(f"edge {k + 1} is a loop at vertex {u}")
        es.append((u - 1, v - 1))
    m = len(es)
    _check_n(m)
    if _forest_size(vertices, es) != vertices - 1:
        raise DisconnectedGraph("graph is not connected")
    r = vertices - 1
    bases = []
    for c in combinations(range(m), r):
        if _forest_size(vertices, [es[i] for i in c]) == r:
            bases.append(mask_of(c))
    return Matroid(m, r, bases, trusted=True)


def _forest_size(nv, es):
    parent = list(range(nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    k = 0
    for u, v in es:
        a, b = find(u), find(v)
        if a != b:
            parent[a] = b
            k += 1
    return k


def row_reduce(matrix):
    """Exact reduced row echelon form; returns (rows, pivot columns)."""
    A = [[parse_rational(x) for x in row] for row in matrix]
    rows = len(A)
    cols = len(A[0]) if A else 0
    pivots = []
    pr = 0
    for c in range(cols):
        p = next((i for i in range(pr, rows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[pr], A[p] = A[p], A[pr]
        inv = 1 / A[pr][c]
        A[pr] = [x * inv for x in A[pr]]
        for i in range(rows):
            if i != pr and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[pr])]
        pivots.append(c)
        pr += 1
        if pr == rows:
            break
    return A[:pr], pivots


def matrix_rank(matrix):
    return len(row_reduce(matrix)[1]) if matrix else 0


def from_vectors(matrix):
    """Column matroid of an exact rational matrix (rows given as lists)."""
    if not matrix or not matrix[0]:
        raise ZeroMatrix("empty matrix")
    width = len(matrix[0])
    if any(len(row) != width for row in matrix):
        raise BadParameters("matrix rows have different lengths")
    _check_n(width)
    R, pivots = row_reduce(matrix)
    r = len(pivots)
    if r == 0:
        raise ZeroMatrix("matrix has rank 0")
    bases = []
    for c in combinations(range(width), r):
        sub = [[row[j] for j in c] for row in R]
        if matrix_rank(sub) == r:
            bases.append(mask_of(c))
    return Matroid(width, r, bases, trusted=True)


def uniform(r, n):
    _check_n(n)
    if not 0 < r <= n:
        raise BadParameters(f"uniform matroid needs 0 < r <= n, got r={r}, n={n}")
    if comb(n, r) > 5_000_000:
        raise BadParameters(f"U({r},{n}) has too many bases to list")
    return Matroid(n, r, list(_subsets(n, r)), trusted=True)


def free(n):
    return Matroid(n, n, [full(n)], trusted=True)


def direct_sum(m1, m2):
    shift = m1.n
    bases = [a | (b << shift) for a in m1.bases for b in m2.bases]
    return Matroid(m1.n + m2.n, m1.r + m2.r, bases, trusted=True)
