"""Hot loops over arrays of basis bitmasks.

Each kernel exists twice: a numba ``@njit`` version and a plain numpy
version with the same signature and output.  ``MATRO_DISABLE_NUMBA=1`` (or a
missing numba install) selects the numpy path for the whole process; the
benchmark in ``benchmarks/`` times both side by side.

Basis arrays are sorted ``uint64`` arrays; bit ``i`` is ground element ``i``.
"""

import os

import numpy as np

try:
    import numba
    from numba import njit, prange
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

if numba is not None and "NUMBA_THREADING_LAYER_PRIORITY" not in os.environ:
    # an old system TBB makes numba warn on first parallel launch; try OpenMP first
    numba.config.THREADING_LAYER_PRIORITY = ["omp", "tbb", "workqueue"]

DISABLED = os.environ.get("MATRO_DISABLE_NUMBA", "0").lower() not in ("", "0", "false", "no")
USE_NUMBA = numba is not None and not DISABLED

_U1 = np.uint64(1)


def as_mask_array(masks):
    return np.asarray(sorted(masks), dtype=np.uint64)


# --------------------------------------------------------------------- numpy


def _popcount_np(a):
    return np.bitwise_count(a).astype(np.int64)


def rank_np(bases, mask):
    if bases.size == 0:
        return 0
    return int(_popcount_np(bases & np.uint64(mask)).max())


def closure_np(bases, mask, full):
    m = np.uint64(mask)
    pc = _popcount_np(bases & m)
    k = pc.max()
    outside = np.bitwise_or.reduce(bases[pc == k] & ~m)
    return int(np.uint64(full) & ~outside)


def costs_np(bases, weights):
    n = weights.shape[0]
    inc = (bases[:, None] >> np.arange(n, dtype=np.uint64)) & _U1
    return inc.astype(np.int64) @ weights.astype(np.int64)


def exchange_violation_np(bases, n):
    """First (sigma index, tau index, element i) failing basis exchange, or None."""
    for s in range(bases.shape[0]):
        sigma = int(bases[s])
        rows = []
        for i in range(n):
            if not sigma >> i & 1:
                continue
            reach = _exchange_reach(bases, sigma, i, n)
            bad = ((bases & np.uint64(1 << i)) == 0) & ((bases & np.uint64(reach)) == 0)
            rows.append((i, bad))
        hits = [(int(np.argmax(bad)), i) for i, bad in rows if bad.any()]
        if hits:
            t, i = min(hits)
            return s, t, i
    return None


def _exchange_reach(bases, sigma, i, n):
    # mask of j outside sigma with sigma - i + j a basis
    js = [j for j in range(n) if not sigma >> j & 1]
    if not js:
        return 0
    c = np.asarray([(sigma & ~(1 << i)) | (1 << j) for j in js], dtype=np.uint64)
    idx = np.searchsorted(bases, c)
    idx[idx >= bases.shape[0]] = 0
    reach = 0
    for j, h in zip(js, bases[idx] == c):
        if h:
            reach |= 1 << j
    return reach


def local_masks(bases, sigma, n):
    """For a basis ``sigma`` return (outside elements, F_i masks over positions of sigma).

    Position ``k`` is the k-th smallest element of sigma.
    """
    pos = [e for e in range(n) if sigma >> e & 1]
    outside = [i for i in range(n) if not sigma >> i & 1]
    fmasks = []
    for i in outside:
        cands = np.asarray([(sigma & ~(1 << p)) | (1 << i) for p in pos], dtype=np.uint64)
        idx = np.searchsorted(bases, cands)
        idx[idx >= bases.shape[0]] = 0
        hit = bases[idx] == cands
        f = 0
        for k, h in enumerate(hit):
            if h:
                f |= 1 << k
        fmasks.append(f)
    return pos, outside, fmasks


def local_partitions_np(bases, n, r, perms):
    nb = bases.shape[0]
    P = perms.shape[0]
    out = np.zeros((nb * P, r), dtype=np.uint64)
    inv = np.argsort(perms, axis=1)  # inv[p, k] = w-rank of position k
    big = r + 1
    for b in range(nb):
        sigma = int(bases[b])
        pos, outside, fmasks = local_masks(bases, sigma, n)
        blocks = np.tile(np.asarray([1 << p for p in pos], dtype=np.uint64), (P, 1))
        for i, f in zip(outside, fmasks):
            member = np.asarray([(f >> k) & 1 for k in range(r)], dtype=bool)
            ranks = np.where(member[None, :], inv, big)
            best = ranks.argmin(axis=1)
            blocks[np.arange(P), best] |= np.uint64(1 << i)
        low = blocks & (~blocks + _U1)
        order = np.argsort(low, axis=1)
        out[b * P:(b + 1) * P] = np.take_along_axis(blocks, order, axis=1)
    return out


# --------------------------------------------------------------------- numba

if numba is not None:

    @njit(cache=True)
    def _pc64(x):
        x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
        x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
        x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
        return np.int64((x * np.uint64(0x0101010101010101)) >> np.uint64(56))

    @njit(cache=True)
    def _in_sorted(bases, v):
        idx = np.searchsorted(bases, v)
        return idx < bases.shape[0] and bases[idx] == v

    @njit(cache=True)
    def rank_nb(bases, mask):
        best = 0
        for k in range(bases.shape[0]):
            c = _pc64(bases[k] & mask)
            if c > best:
                best = c
        return best

    @njit(cache=True)
    def closure_nb(bases, mask, full):
        k = rank_nb(bases, mask)
        outside = np.uint64(0)
        for t in range(bases.shape[0]):
            b = bases[t]
            if _pc64(b & mask) == k:
                outside |= b & ~mask
        return full & ~outside

    @njit(cache=True)
    def costs_nb(bases, weights):
        n = weights.shape[0]
        out = np.zeros(bases.shape[0], dtype=np.int64)
        for t in range(bases.shape[0]):
            b = bases[t]
            s = 0
            for i in range(n):
                if (b >> np.uint64(i)) & np.uint64(1):
                    s += weights[i]
            out[t] = s
        return out

    @njit(cache=True)
    def _exchange_nb(bases, n):
        nb = bases.shape[0]
        one = np.uint64(1)
        reach = np.zeros(n, dtype=np.uint64)
        for s in range(nb):
            sigma = bases[s]
            for i in range(n):
                reach[i] = 0
                if not (sigma >> np.uint64(i)) & one:
                    continue
                for j in range(n):
                    if (sigma >> np.uint64(j)) & one:
                        continue
                    cand = (sigma & ~(one << np.uint64(i))) | (one << np.uint64(j))
                    if _in_sorted(bases, cand):
                        reach[i] |= one << np.uint64(j)
            for t in range(nb):
                tau = bases[t]
                for i in range(n):
                    bit = one << np.uint64(i)
                    if (sigma & bit) and not (tau & bit) and (reach[i] & tau) == 0:
                        return s, t, i
        return -1, -1, -1

    @njit(cache=True, parallel=True)
    def local_partitions_nb(bases, n, r, perms):
        nb = bases.shape[0]
        P = perms.shape[0]
        one = np.uint64(1)
        out = np.zeros((nb * P, r), dtype=np.uint64)
        for b in prange(nb):
            sigma = bases[b]
            pos = np.empty(r, dtype=np.int64)
            outside = np.empty(n - r, dtype=np.int64)
            fm = np.zeros(n - r, dtype=np.int64)
            k = 0
            q = 0
            for e in range(n):
                if (sigma >> np.uint64(e)) & one:
                    pos[k] = e
                    k += 1
                else:
                    outside[q] = e
                    q += 1
            for q in range(n - r):
                i = outside[q]
                f = 0
                for k in range(r):
                    cand = (sigma & ~(one << np.uint64(pos[k]))) | (one << np.uint64(i))
                    if _in_sorted(bases, cand):
                        f |= 1 << k
                fm[q] = f
            inv = np.empty(r, dtype=np.int64)
            blocks = np.empty(r, dtype=np.uint64)
            low = np.empty(r, dtype=np.uint64)
            for p in range(P):
                for t in range(r):
                    inv[perms[p, t]] = t
                for k in range(r):
                    blocks[k] = one << np.uint64(pos[k])
                for q in range(n - r):
                    best = -1
                    best_rank = r + 1
                    for k in range(r):
                        if (fm[q] >> k) & 1 and inv[k] < best_rank:
                            best_rank = inv[k]
                            best = k
                    blocks[best] |= one << np.uint64(outside[q])
                for k in range(r):
                    low[k] = blocks[k] & (~blocks[k] + one)
                # insertion sort of blocks by lowest element
                for a in range(1, r):
                    kb = blocks[a]
                    kl = low[a]
                    c = a - 1
                    while c >= 0 and low[c] > kl:
                        blocks[c + 1] = blocks[c]
                        low[c + 1] = low[c]
                        c -= 1
                    blocks[c + 1] = kb
                    low[c + 1] = kl
                row = b * P + p
                for k in range(r):
                    out[row, k] = blocks[k]
        return out


def exchange_violation_nb(bases, n):
    s, t, i = _exchange_nb(bases, n)
    if s < 0:
        return None
    return int(s), int(t), int(i)


# --------------------------------------------------------------------- dispatch


def rank(bases, mask):
    if USE_NUMBA:
        return int(rank_nb(bases, np.uint64(mask)))
    return rank_np(bases, mask)


def closure(bases, mask, full):
    if USE_NUMBA:
        return int(closure_nb(bases, np.uint64(mask), np.uint64(full)))
    return closure_np(bases, mask, full)


def costs(bases, weights):
    weights = np.ascontiguousarray(weights, dtype=np.int64)
    if USE_NUMBA:
        return costs_nb(bases, weights)
    return costs_np(bases, weights)


def exchange_violation(bases, n):
    if bases.shape[0] <= 1:
        return None
    if USE_NUMBA:
        return exchange_violation_nb(bases, n)
    return exchange_violation_np(bases, n)


def local_partitions(bases, n, r, perms):
    perms = np.ascontiguousarray(perms, dtype=np.int64)
    if USE_NUMBA:
        return local_partitions_nb(bases, n, r, perms)
    return local_partitions_np(bases, n, r, perms)


def set_threads(k):
    """Thread count for the parallel basis loop; a no-op on the numpy path."""
    if USE_NUMBA and k:
        numba.set_num_threads(max(1, min(int(k), numba.config.NUMBA_NUM_THREADS)))
