"""Explicit colorings of 2^[n] that avoid rainbow copies, and their certification."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .copies import Coloring, check_mode, find_rainbow_copy
from .errors import BadParams, NotConvex
from .families import SetFamily, full_mask, is_convex, is_subset, katona_tarjan_family, middle_layers, popcount


@dataclass(frozen=True)
class WrapInterval:
    """Cyclic interval of [n]: ``[a, b]`` if a <= b, otherwise ``[a, n] ∪ [1, b]``."""

    a: int
    b: int
    n: int

    def __post_init__(self):
        if not (1 <= self.a <= self.n and 0 <= self.b <= self.n):
            raise BadParams(f"bad interval endpoints {self.a}, {self.b} for n={self.n}")

    @classmethod
    def starting_at(cls, a, length, n):
        """The cyclic interval of ``length`` elements whose first element is ``a``."""
        if not 1 <= length <= n:
            raise BadParams("length must be in 1..n")
        return cls(a, (a + length - 2) % n + 1, n)

    @property
    def mask(self):
        if self.a <= self.b:
            return _range_mask(self.a, self.b)
        return _range_mask(self.a, self.n) | _range_mask(1, self.b)

    def __len__(self):
        return popcount(self.mask)


def _range_mask(lo, hi):
    """Mask of {lo, ..., hi} (1-based, empty when hi < lo)."""
    if hi < lo:
        return 0
    return ((1 << hi) - 1) & ~((1 << (lo - 1)) - 1)


def _coloring_from_special(n, special, rest_like=None):
    """Give each mask in ``special`` its own color; everything else shares one color.

    If ``rest_like`` is a member of ``special``, the leftover sets take its color
    instead of a fresh one.
    """
    labels = [None] * (1 << n)
    for i, m in enumerate(special):
        labels[m] = ("own", i)
    shared = labels[rest_like] if rest_like is not None else ("shared",)
    return Coloring.from_labels(n, [lab if lab is not None else shared for lab in labels])


def lowertriv_coloring(F):
    """Distinct colors on a convex family, one extra color on everything else."""
    if not is_convex(F):
        raise NotConvex("lowertriv_coloring needs a convex family")
    return _coloring_from_special(F.n, list(F))


def butterfly_coloring(n):
    if n < 2:
        raise BadParams("butterfly_coloring needs n >= 2")
    mid = n // 2
    special = [m for m in range(1 << n) if popcount(m) in (mid, mid + 1)]
    return _coloring_from_special(n, special)


def broom_chains(n, s):
    """The s-1 chains whose sets get their own colors in :func:`broom_chain_coloring`.

    Chain 1 is ``[1], ..., [s-2], [s-2] ∪ {s}, [s-2] ∪ [s, s+1], ..., [s-2] ∪ [s, n]``;
    chain j (2 <= j <= s-1) is the cyclic intervals starting at j of lengths 1..n-1.
    """
    if s < 2:
        raise BadParams("s must be at least 2")
    if n < s + 2:
        raise BadParams(f"broom chains need n >= s + 2 (got n={n}, s={s})")
    head = _range_mask(1, s - 2)
    first = [_range_mask(1, i) for i in range(1, s - 1)]
    first += [head | _range_mask(s, b) for b in range(s, n + 1)]
    chains = [first]
    for j in range(2, s):
        chains.append([WrapInterval.starting_at(j, length, n).mask for length in range(1, n)])
    for idx, chain in enumerate(chains, start=1):
        if len(chain) != n - 1 or len(set(chain)) != n - 1:
            raise AssertionError(f"chain {idx} has {len(set(chain))} distinct sets, expected {n - 1}")
    return chains


def broom_chain_coloring(n, s):
    """Coloring with (s-1)(n-1)+2 colors and no rainbow strong broom with s feet."""
    chains = broom_chains(n, s)
    top = full_mask(n)
    special = [0, top] + [m for chain in chains for m in chain]
    if len(set(special)) != len(special):
        raise AssertionError("broom chains overlap")
    return _coloring_from_special(n, special, rest_like=top)


def fork_chain_coloring(n, s):
    """Complement image of :func:`broom_chain_coloring`: no rainbow strong fork."""
    return broom_chain_coloring(n, s).complemented()


def disjoint_maximal_chains(n, count):
    """``count`` maximal chains meeting only at ∅ and [n].

    Chain t adds the elements t, t+1, ..., n, 1, ..., t-1 in that order.  Only
    interior sets (sizes 1..n-1) are returned.
    """
    if count > n:
        raise BadParams(f"at most n={n} internally disjoint chains of this shape")
    return [[WrapInterval.starting_at(t, length, n).mask for length in range(1, n)] for t in range(1, count + 1)]


def antichain_chain_coloring(n, k):
    """Coloring with 3+(k-2)(n-1) colors whose largest rainbow strong antichain has k-1 sets."""
    if k < 2:
        raise BadParams("k must be at least 2")
    if n < 2 * k:
        raise BadParams(f"need n >= 2k (got n={n}, k={k})")
    chains = disjoint_maximal_chains(n, k - 2)
    special = [0, full_mask(n)] + [m for chain in chains for m in chain]
    if len(set(special)) != len(special):
        raise AssertionError("chains are not internally disjoint")
    return _coloring_from_special(n, special)


def union_extraction(F, s, k):
    """Find s+1 sets with union short of [n] and k+1 sets outside that union.

    ``F`` must lie in a single layer j <= n-2.  Returns ``(F1, F2)`` when
    ``|F| > sn/2 + k + 1`` and None otherwise.  The union is found by
    shrinking ``M`` from [n] one element at a time while at least s+1
    members still fit inside; at the end at most ``s|M|/2`` members lie inside M.
    """
    n = F.n
    sizes = {popcount(m) for m in F}
    if len(sizes) > 1:
        raise BadParams("family must lie in one layer")
    if sizes and sizes.pop() > n - 2:
        raise BadParams("layer must be at most n - 2")
    if 2 * len(F) <= s * n + 2 * (k + 1):
        return None
    M = full_mask(n)
    inside = list(F)
    while True:
        best = None
        for x in range(n):
            if not M >> x & 1:
                continue
            count = sum(1 for m in inside if not m >> x & 1)
            if count >= s + 1 and (best is None or count > best[0]):
                best = (count, x)
        if best is None:
            break
        M &= ~(1 << best[1])
        inside = [m for m in inside if is_subset(m, M)]
    if M == full_mask(n):
        return None
    first = inside[: s + 1]
    union = 0
    for m in first:
        union |= m
    outside = [m for m in F if not is_subset(m, union)]
    if len(first) < s + 1 or len(outside) < k + 1:
        return None
    return SetFamily(n, first), SetFamily(n, outside[: k + 1])


def certify(coloring, P, mode):
    """Machine-readable rainbow check of a coloring against a poset."""
    check_mode(mode)
    witness = find_rainbow_copy(P, coloring, mode)
    return {
        "colors": coloring.color_count,
        "rainbow": None if witness is None else witness.as_hex(),
    }


def butterfly_color_count(n):
    return math.comb(n, n // 2) + math.comb(n, n // 2 + 1) + 1


def max_unrelated_intersection(coloring, special_layers):
    """Largest intersection of two unrelated, differently colored sets among ``special_layers``.

    Used as the quadratic structural check for the butterfly coloring.
    """
    masks = [m for m in range(1 << coloring.n) if popcount(m) in special_layers]
    best = 0
    for i, a in enumerate(masks):
        for b in masks[i + 1 :]:
            if coloring[a] == coloring[b] or is_subset(a, b) or is_subset(b, a):
                continue
            best = max(best, popcount(a & b))
    return best


def build(spec):
    """Coloring from an inline generator spec such as ``"butterfly:4"`` or ``"broom_chain:5:2"``."""
    name, *args = spec.split(":")
    try:
        args = [int(a) for a in args]
    except ValueError as exc:
        raise BadParams(f"bad construction spec {spec!r}") from exc
    makers = {
        "butterfly": (butterfly_coloring, 1),
        "broom_chain": (broom_chain_coloring, 2),
        "fork_chain": (fork_chain_coloring, 2),
        "antichain_chain": (antichain_chain_coloring, 2),
        "katona_tarjan": (lambda n: lowertriv_coloring(katona_tarjan_family(n)), 1),
        "middle": (lambda n, h: lowertriv_coloring(middle_layers(n, h)), 2),
    }
    if name not in makers:
        raise BadParams(f"unknown construction {name!r}; choose from {sorted(makers)}")
    fn, arity = makers[name]
    if len(args) != arity:
        raise BadParams(f"{name} takes {arity} integer argument(s)")
    return fn(*args)


CONSTRUCTION_KINDS = ("butterfly", "broom_chain", "fork_chain", "antichain_chain", "katona_tarjan", "middle")
