"""Exact La / La* / La_con and ar / ar* values for small n.

Both searches are branch-and-bound over a fixed mask order with lex-leader
symmetry breaking under the automorphisms of the Boolean lattice (coordinate
permutations, plus complementation when the forbidden posets are self-dual).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from .copies import Coloring, _backtrack, check_mode, find_rainbow_copy, is_free
from .errors import BadParams, TooLarge
from .families import SetFamily, full_mask, middle_layer_order, popcount
from .poset import dual, is_isomorphic, p_minus


@dataclass
class SearchConfig:
    n: int
    posets: list
    mode: str = "weak"
    convex_only: bool = False
    time_limit: float | None = None
    thread_budget: int = 1
    symmetry: bool = True

    def __post_init__(self):
        check_mode(self.mode)
        if not isinstance(self.posets, (list, tuple)):
            self.posets = [self.posets]
        self.posets = list(self.posets)
        if not self.posets:
            raise BadParams("at least one poset is required")
        if self.n < 0:
            raise BadParams("n must be non-negative")
        if self.thread_budget < 1:
            raise BadParams("thread_budget must be positive")


@dataclass
class ExtremalResult:
    value: int
    witness: object
    nodes: int
    exact: bool
    elapsed: float = 0.0
    extra: dict = field(default_factory=dict)


def search_order(n):
    """Masks of 2^[n], middle layers first (see ``middle_layer_order``), then by value."""
    rank = {k: i for i, k in enumerate(middle_layer_order(n))}
    return sorted(range(1 << n), key=lambda m: (rank[popcount(m)], m))


def lattice_automorphisms(n, with_complement):
    """Mask maps of the coordinate permutations of [n], optionally composed with complementation."""
    top = full_mask(n)
    maps = []
    for perm in permutations(range(n)):
        table = []
        for m in range(1 << n):
            img = 0
            for i in range(n):
                if m >> i & 1:
                    img |= 1 << perm[i]
            table.append(img)
        maps.append(tuple(table))
        if with_complement:
            maps.append(tuple(top ^ x for x in table))
    # the identity never prunes
    ident = tuple(range(1 << n))
    return [t for t in maps if t != ident]


def _all_self_dual(posets):
    return all(any(is_isomorphic(dual(P), Q) for Q in posets) for P in posets)


class _Clock:
    def __init__(self, limit):
        self.limit = limit
        self.start = time.monotonic()
        self.expired = False

    def tick(self):
        if self.limit is not None and time.monotonic() - self.start > self.limit:
            self.expired = True
        return self.expired

    @property
    def elapsed(self):
        return time.monotonic() - self.start


def _copy_through(P, pool, n, mode, mask, color_of=None):
    """Is there a (rainbow, if colored) copy of P in ``pool`` that uses ``mask``?"""
    for e in range(P.size):
        if _backtrack(P, pool, n, mode, color_of=color_of, pinned=(e, mask)) is not None:
            return True
    return False


# ------------------------------------------------------------------- La


def la_exact(cfg):
    """Largest family in 2^[n] free of every poset in ``cfg.posets``.

    With ``cfg.convex_only`` the maximum is over convex families only.
    """
    if cfg.convex_only:
        return _la_convex(cfg)
    n, mode, posets = cfg.n, cfg.mode, cfg.posets
    order = search_order(n)
    total = len(order)
    group = lattice_automorphisms(n, _all_self_dual(posets)) if cfg.symmetry else []
    pos_of = {m: i for i, m in enumerate(order)}
    clock = _Clock(cfg.time_limit)
    chosen = []
    bits = []  # include decisions along ``order``
    best = {"value": -1, "family": None}
    nodes = 0

    def leader_ok(depth):
        # keep only decision vectors that are lexicographically maximal in their orbit
        for g in group:
            for i in range(depth):
                src = pos_of[g[order[i]]]
                if src >= depth:
                    break
                if bits[src] != bits[i]:
                    if bits[src] > bits[i]:
                        return False
                    break
        return True

    def rec(depth):
        nonlocal nodes
        nodes += 1
        if clock.tick():
            return
        if len(chosen) + total - depth <= best["value"]:
            return
        if depth == total:
            best["value"] = len(chosen)
            best["family"] = list(chosen)
            return
        m = order[depth]
        pool = chosen + [m]
        if not any(_copy_through(P, pool, n, mode, m) for P in posets):
            chosen.append(m)
            bits.append(1)
            if leader_ok(depth + 1):
                rec(depth + 1)
            bits.pop()
            chosen.pop()
        bits.append(0)
        if leader_ok(depth + 1):
            rec(depth + 1)
        bits.pop()

    rec(0)
    family = SetFamily(n, best["family"] or [])
    if best["family"] is not None and not is_free(posets, family, mode):
        raise AssertionError("La witness failed re-verification")
    return ExtremalResult(max(best["value"], 0), family, nodes, not clock.expired, clock.elapsed)


def all_copy_supports(P, n, mode):
    """Every family of 2^[n] that is itself the image of a copy of P, as a 2^n-bit integer.

    Enumerates all injections directly; independent of the backtracking search.
    """
    check_mode(mode)
    masks = range(1 << n)
    pairs = [(p, q) for p in range(P.size) for q in range(P.size) if p != q]
    less = [[P.less(p, q) for q in range(P.size)] for p in range(P.size)]
    out = set()
    for images in permutations(masks, P.size):
        good = True
        for p, q in pairs:
            inside = images[p] & ~images[q] == 0
            if less[p][q] and not inside:
                good = False
                break
            if mode == "strong" and inside and not less[p][q]:
                good = False
                break
        if good:
            support = 0
            for m in images:
                support |= 1 << m
            out.add(support)
    return out


def la_bruteforce(n, posets, mode):
    """La by checking all 2^(2^n) families at once with numpy (n <= 4)."""
    if n > 4:
        raise TooLarge("exhaustive La limited to n <= 4")
    if not isinstance(posets, (list, tuple)):
        posets = [posets]
    supports = set()
    for P in posets:
        supports |= all_copy_supports(P, n, mode)
    fams = np.arange(1 << (1 << n), dtype=np.uint32)
    free = np.ones(fams.shape, dtype=bool)
    for s in supports:
        free &= (fams & np.uint32(s)) != np.uint32(s)
    sizes = np.zeros(fams.shape, dtype=np.int64)
    for b in range(1 << n):
        sizes += (fams >> np.uint32(b)) & np.uint32(1)
    sizes[~free] = -1
    idx = int(np.argmax(sizes))
    witness = SetFamily(n, [m for m in range(1 << n) if idx >> m & 1])
    return ExtremalResult(int(sizes[idx]), witness, int(fams.size), True)


def down_sets(n):
    """All down-closed families of 2^[n] as frozensets of masks."""
    order = sorted(range(1 << n), key=lambda m: (popcount(m), m))
    out = []
    current = set()

    def rec(i):
        if i == len(order):
            out.append(frozenset(current))
            return
        m = order[i]
        rec(i + 1)
        bit_subsets = [m ^ (1 << b) for b in range(n) if m >> b & 1]
        if all(s in current for s in bit_subsets):
            current.add(m)
            rec(i + 1)
            current.discard(m)

    rec(0)
    return out


def convex_families(n):
    """All convex families of 2^[n], built as (down-set) ∩ (up-set)."""
    if n > 4:
        raise TooLarge("convex family enumeration limited to n <= 4")
    top = full_mask(n)
    downs = down_sets(n)
    ups = [frozenset(top ^ m for m in d) for d in downs]
    seen = set()
    for d in downs:
        for u in ups:
            fam = d & u
            if fam not in seen:
                seen.add(fam)
    return sorted(seen, key=lambda f: (-len(f), sorted(f)))


def _la_convex(cfg):
    clock = _Clock(cfg.time_limit)
    nodes = 0
    for fam in convex_families(cfg.n):
        nodes += 1
        F = SetFamily(cfg.n, fam)
        if is_free(cfg.posets, F, cfg.mode):
            return ExtremalResult(len(F), F, nodes, True, clock.elapsed)
        if clock.tick():
            break
    return ExtremalResult(0, SetFamily(cfg.n, []), nodes, not clock.expired, clock.elapsed)


# ------------------------------------------------------------------- ar


def ar_exact(cfg, lower_bound=0):
    """Most colors in a coloring of 2^[n] with no rainbow copy of the (single) poset.

    Colorings are explored as restricted growth strings over ``search_order(n)``.
    ``lower_bound`` seeds the incumbent (pruning only: nodes that cannot
    beat it are cut, and the returned value is ``max(search, lower_bound)``
    only if the search itself reaches it).
    """
    if len(cfg.posets) != 1:
        raise BadParams("ar_exact takes exactly one poset")
    if cfg.n > 6:
        raise TooLarge("ar search limited to n <= 6")
    (P,) = cfg.posets
    n, mode = cfg.n, cfg.mode
    order = search_order(n)
    total = len(order)
    group = lattice_automorphisms(n, is_isomorphic(P, dual(P))) if cfg.symmetry else []
    pos_of = {m: i for i, m in enumerate(order)}
    color = [None] * total  # indexed by mask
    seq = []
    clock = _Clock(cfg.time_limit)
    best = {"value": max(lower_bound - 1, 0), "coloring": None}
    nodes = 0
    assigned = []

    def leader_ok(depth):
        for g in group:
            relabel = {}
            for i in range(depth):
                src = pos_of[g[order[i]]]
                if src >= depth:
                    break
                img = relabel.setdefault(seq[src], len(relabel))
                if img != seq[i]:
                    if img < seq[i]:
                        return False
                    break
        return True

    def rec(depth, ncolors):
        nonlocal nodes
        nodes += 1
        if clock.tick():
            return
        if ncolors + total - depth <= best["value"]:
            return
        if depth == total:
            best["value"] = ncolors
            best["coloring"] = list(color)
            return
        m = order[depth]
        assigned.append(m)
        for c in [ncolors] + list(range(ncolors)):
            color[m] = c
            seq.append(c)
            if leader_ok(depth + 1) and not _copy_through(P, assigned, n, mode, m, color_of=color):
                rec(depth + 1, max(ncolors, c + 1))
            seq.pop()
        color[m] = None
        assigned.pop()

    rec(0, 0)
    if best["coloring"] is None:
        return ExtremalResult(0, None, nodes, not clock.expired and lower_bound <= 1, clock.elapsed)
    witness = Coloring.from_labels(n, best["coloring"])
    if witness.color_count != best["value"] or find_rainbow_copy(P, witness, mode) is not None:
        raise AssertionError("ar witness failed re-verification")
    return ExtremalResult(best["value"], witness, nodes, not clock.expired, clock.elapsed)


def restricted_growth_strings(length):
    """All set partitions of ``range(length)`` as restricted growth strings."""
    if length == 0:
        yield ()
        return
    a = [0] * length
    maxes = [0] * length  # maxes[i] = max(a[:i+1])

    def rec(i):
        if i == length:
            yield tuple(a)
            return
        for v in range(maxes[i - 1] + 2):
            a[i] = v
            maxes[i] = max(maxes[i - 1], v)
            yield from rec(i + 1)

    yield from rec(1)


def ar_bruteforce(n, P, mode):
    """ar / ar* by checking every set partition of 2^[n] (n <= 3: Bell(8) = 4140)."""
    if n > 3:
        raise TooLarge("exhaustive partition enumeration limited to n <= 3")
    best_value, best_col, count = 0, None, 0
    for rgs in restricted_growth_strings(1 << n):
        count += 1
        k = max(rgs) + 1
        if k <= best_value:
            continue
        col = Coloring(n, rgs)
        if find_rainbow_copy(P, col, mode) is None:
            best_value, best_col = k, col
    return ExtremalResult(best_value, best_col, count, True)


# ------------------------------------------------------------- sandwich


def _largest_or_smallest(P):
    full = (1 << P.size) - 1
    out = []
    for i in range(P.size):
        if P.above[i] | (1 << i) == full or P.below[i] | (1 << i) == full:
            out.append(i)
    return out


def check_sandwich(n, P, mode, time_limit=None):
    """Evaluate the elementary bounds relating ar to La for one poset.

    Weak mode checks ``1 + La_con(n, P-) <= ar(n, P) <= min(La(n, P), 2 + La(n, P-))``.
    Strong mode checks ``1 + La*_con(n, P-) <= ar*(n, P) <= La*(n, P)`` and,
    when P has a largest or smallest element m, ``ar*(n, P) <= 1 + La*(n, P - m)``.
    Returns a dict with every computed quantity and the list of violations.
    """
    check_mode(mode)
    minus = p_minus(P)

    def la(posets, convex=False):
        return la_exact(SearchConfig(n, posets, mode, convex_only=convex, time_limit=time_limit)).value

    out = {"n": n, "mode": mode}
    out["la_con_minus"] = la(minus, convex=True)
    out["ar"] = ar_exact(SearchConfig(n, [P], mode, time_limit=time_limit)).value
    out["la"] = la([P])
    out["la_minus"] = la(minus)
    violations = []
    if not 1 + out["la_con_minus"] <= out["ar"]:
        violations.append("1 + La_con(P-) <= ar")
    if not out["ar"] <= out["la"]:
        violations.append("ar <= La(P)")
    if mode == "weak" and not out["ar"] <= 2 + out["la_minus"]:
        violations.append("ar <= 2 + La(P-)")
    if mode == "strong":
        tops = _largest_or_smallest(P)
        if tops:
            out["la_without_extreme"] = la([P.remove(tops[0])])
            if not out["ar"] <= 1 + out["la_without_extreme"]:
                violations.append("ar* <= 1 + La*(P - m)")
    out["violations"] = violations
    return out

