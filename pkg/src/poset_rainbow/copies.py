"""Weak, strong and rainbow copies of posets inside set families."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .errors import BadParams, TooLarge
from .families import SetFamily, full_mask, is_subset, popcount
from .poset import _depths, catalog, dual, hasse

MODES = ("weak", "strong")


def check_mode(mode):
    if mode not in MODES:
        raise BadParams(f"mode must be 'weak' or 'strong', got {mode!r}")
    return mode


@dataclass(frozen=True)
class CopyEmbedding:
    poset: object
    images: tuple
    mode: str

    def image(self, label):
        return self.images[self.poset.index_of(label)]

    def as_dict(self):
        return {self.poset.labels[i]: m for i, m in enumerate(self.images)}

    def as_hex(self):
        return {self.poset.labels[i]: format(m, "x") for i, m in enumerate(self.images)}

    def family(self, n):
        return SetFamily(n, self.images)


@dataclass(frozen=True)
class Coloring:
    """Total coloring of 2^[n]: ``colors[mask]`` is the color id of ``mask``."""

    n: int
    colors: tuple

    def __post_init__(self):
        colors = tuple(int(c) for c in self.colors)
        if len(colors) != 1 << self.n:
            raise BadParams(f"coloring of 2^[{self.n}] needs {1 << self.n} entries, got {len(colors)}")
        used = set(colors)
        if used != set(range(len(used))):
            raise BadParams("color ids must be exactly 0..count-1")
        object.__setattr__(self, "colors", colors)

    @classmethod
    def from_labels(cls, n, labels):
        """Build from arbitrary hashable labels, numbering colors by first occurrence."""
        ids = {}
        return cls(n, [ids.setdefault(x, len(ids)) for x in labels])

    @property
    def color_count(self):
        return max(self.colors) + 1 if self.colors else 0

    def classes(self):
        out = [[] for _ in range(self.color_count)]
        for m, c in enumerate(self.colors):
            out[c].append(m)
        return out

    def complemented(self):
        top = full_mask(self.n)
        return Coloring.from_labels(self.n, [self.colors[top ^ m] for m in range(1 << self.n)])

    def __getitem__(self, mask):
        return self.colors[mask]


def monochromatic(n):
    return Coloring(n, [0] * (1 << n))


def all_distinct(n):
    return Coloring(n, range(1 << n))


def is_valid_embedding(P, images, mode, family=None, coloring=None):
    """Direct pairwise audit of a claimed copy; shares no code with the search."""
    check_mode(mode)
    if len(images) != P.size or len(set(images)) != P.size:
        return False
    if family is not None and any(m not in family for m in images):
        return False
    if coloring is not None and len({coloring[m] for m in images}) != P.size:
        return False
    for p in range(P.size):
        for q in range(P.size):
            if p == q:
                continue
            inside = is_subset(images[p], images[q])
            if P.less(p, q) and not inside:
                return False
            if mode == "strong" and inside and not P.less(p, q):
                return False
    return True


def _search_order(P, root):
    """BFS over the Hasse diagram starting at ``root``, remaining components by index."""
    adj = hasse(P).neighbors()
    seen = [False] * P.size
    order = []
    for start in [root] + list(range(P.size)):
        if seen[start]:
            continue
        seen[start] = True
        queue = deque([start])
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in sorted(adj[x]):
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
    return order


def _size_bounds(P, n):
    below = _depths(P)
    above = _depths(dual(P))
    return [(below[i] - 1, n - (above[i] - 1)) for i in range(P.size)]


@lru_cache(maxsize=4096)
def _skeleton(P, n, root):
    order = _search_order(P, root)
    bounds = _size_bounds(P, n)
    steps = []
    for pos, p in enumerate(order):
        lows, highs, others = [], [], []
        for q in order[:pos]:
            if P.less(q, p):
                lows.append(q)
            elif P.less(p, q):
                highs.append(q)
            else:
                others.append(q)
        steps.append((p, tuple(lows), tuple(highs), tuple(others), bounds[p]))
    return tuple(steps)


def _backtrack(P, pool, n, mode, color_of=None, pinned=None):
    """First embedding found in the fixed search order, or None.

    ``pool`` is a sequence of candidate masks; ``pinned`` optionally forces
    one element onto one mask; ``color_of`` turns on the rainbow requirement.
    """
    if P.size == 0:
        return ()
    if P.size > len(pool):
        return None
    strong = mode == "strong"
    root = pinned[0] if pinned else 0
    plan = []
    for p, lows, highs, others, (lo, hi) in _skeleton(P, n, root):
        if pinned and p == pinned[0]:
            cands = [pinned[1]] if lo <= popcount(pinned[1]) <= hi else []
        else:
            cands = [m for m in pool if lo <= popcount(m) <= hi]
        if not cands:
            return None
        plan.append((p, lows, highs, others, cands))

    images = [0] * P.size
    used_masks = set()
    used_colors = set()

    def place(pos):
        if pos == len(plan):
            return True
        p, lows, highs, others, cands = plan[pos]
        for m in cands:
            if m in used_masks:
                continue
            if color_of is not None and color_of[m] in used_colors:
                continue
            ok = True
            for q in lows:
                if images[q] & ~m:
                    ok = False
                    break
            if ok:
                for q in highs:
                    if m & ~images[q]:
                        ok = False
                        break
            if ok and strong:
                for q in others:
                    iq = images[q]
                    if not (m & ~iq) or not (iq & ~m):
                        ok = False
                        break
            if not ok:
                continue
            images[p] = m
            used_masks.add(m)
            if color_of is not None:
                used_colors.add(color_of[m])
            if place(pos + 1):
                return True
            used_masks.discard(m)
            if color_of is not None:
                used_colors.discard(color_of[m])
        return False

    return tuple(images) if place(0) else None


def find_copy(P, F, mode, pinned=None):
    """Witness embedding of ``P`` into family ``F``, or None. Complete search."""
    check_mode(mode)
    images = _backtrack(P, F.members, F.n, mode, pinned=pinned)
    return None if images is None else CopyEmbedding(P, images, mode)


def is_free(posets, F, mode):
    """True when F contains no copy of any poset in ``posets`` (a poset or an iterable)."""
    if not isinstance(posets, (list, tuple, set, frozenset)):
        posets = [posets]
    return all(find_copy(P, F, mode) is None for P in posets)


def find_rainbow_copy(P, coloring, mode, family=None, pinned=None):
    """Embedding whose images carry pairwise distinct colors, or None."""
    check_mode(mode)
    pool = range(1 << coloring.n) if family is None else family.members
    images = _backtrack(P, list(pool), coloring.n, mode, color_of=coloring.colors, pinned=pinned)
    return None if images is None else CopyEmbedding(P, images, mode)


def oracle_find_copy(P, F, mode):
    """Unpruned reference search over every injection, in lexicographic order of tuples."""
    check_mode(mode)
    if P.size > 6 or len(F) > 40:
        raise TooLarge("oracle limited to |P| <= 6 and |F| <= 40")
    less = [[P.less(p, q) for q in range(P.size)] for p in range(P.size)]
    pairs = [(p, q) for p in range(P.size) for q in range(P.size) if p != q]
    for images in permutations(F.members, P.size):
        good = True
        for p, q in pairs:
            inside = images[p] & ~images[q] == 0
            if less[p][q] != inside and (less[p][q] or mode == "strong"):
                good = False
                break
        if good:
            return CopyEmbedding(P, tuple(images), mode)
    return None


def max_rainbow_antichain(coloring, mode="strong", family=None):
    """Largest k such that a rainbow copy of the k-antichain exists."""
    best = 0
    k = 1
    while k <= (1 << coloring.n):
        if find_rainbow_copy(catalog("antichain", k), coloring, mode, family) is None:
            break
        best = k
        k += 1
    return best


__all__ = [
    "CopyEmbedding",
    "Coloring",
    "MODES",
    "all_distinct",
    "check_mode",
    "find_copy",
    "find_rainbow_copy",
    "is_free",
    "is_valid_embedding",
    "max_rainbow_antichain",
    "monochromatic",
    "oracle_find_copy",
]
