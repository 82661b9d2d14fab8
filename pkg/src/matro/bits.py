"""Subsets of a small ground set as integer bitmasks.

Bit ``i`` stands for element ``i`` (0-based).  Anything user-facing goes
through :func:`to_labels` / :func:`from_labels`, which are 1-based.
"""

MAX_N = 64


def mask_of(elements):
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def elements_of(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask):
    return mask.bit_count()


def lowest(mask):
    """Index of the lowest set bit (mask must be nonzero)."""
    return (mask & -mask).bit_length() - 1


def full(n):
    return (1 << n) - 1


def complement(mask, n):
    return full(n) & ~mask


def is_subset(a, b):
    return a & ~b == 0


def to_labels(mask):
    return [e + 1 for e in elements_of(mask)]


def from_labels(labels, n=None):
    m = 0
    for lab in labels:
        lab = int(lab)
        if lab < 1 or (n is not None and lab > n):
            raise ValueError(f"element label {lab} outside 1..{n}")
        m |= 1 << (lab - 1)
    return m


def fmt(mask):
    """Compact 1-based rendering, e.g. ``{1,3,4}``."""
    return "{" + ",".join(map(str, to_labels(mask))) + "}"


def subsets_of_size(n, k):
    """All k-subsets of range(n) as masks, in lexicographic combination order."""
    from itertools import combinations

    for c in combinations(range(n), k):
        yield mask_of(c)
