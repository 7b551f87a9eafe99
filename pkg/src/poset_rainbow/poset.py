"""Finite posets stored as strict-order bitmasks, plus the named catalog.

Element ``i`` of a :class:`Poset` keeps two integers: ``above[i]`` has bit ``j``
set when ``i < j`` and ``below[i]`` has bit ``j`` set when ``j < i``.  Sizes
handled here stay well under a hundred elements, so plain Python ints are
both the dense matrix and the adjacency list.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import permutations

from .errors import (
    BadParams,
    CycleDetected,
    Disconnected,
    EmptyPoset,
    NotSaturated,
    NotTreePoset,
)


def _bits(x):
    """Yield the indices of set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class Poset:
    """A finite strict partial order on ``0..size-1``.

    Instances are immutable.  Build them with :func:`transitive_closure` or
    :func:`catalog` rather than calling the constructor directly; the
    constructor trusts that ``above`` is already transitively closed unless
    ``check=True``.
    """

    __slots__ = ("size", "above", "below", "labels")

    def __init__(self, size, above, labels=None, check=True):
        above = tuple(int(a) for a in above)
        if len(above) != size:
            raise BadParams(f"expected {size} rows, got {len(above)}")
        below = [0] * size
        for i, row in enumerate(above):
            for j in _bits(row):
                below[j] |= 1 << i
        if labels is None:
            labels = tuple(str(i) for i in range(size))
        labels = tuple(str(x) for x in labels)
        if len(labels) != size:
            raise BadParams("label count does not match size")
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "above", above)
        object.__setattr__(self, "below", tuple(below))
        object.__setattr__(self, "labels", labels)
        if check:
            self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("Poset is immutable")

    def _validate(self):
        full = (1 << self.size) - 1
        for i, row in enumerate(self.above):
            if row & ~full:
                raise BadParams("relation refers to an element out of range")
            if row >> i & 1:
                raise CycleDetected(f"element {i} is below itself")
            for j in _bits(row):
                if self.above[j] & ~row:
                    raise BadParams("relation is not transitively closed")
                if self.above[j] >> i & 1:
                    raise CycleDetected(f"{i} and {j} are mutually below each other")

    def less(self, i, j):
        return bool(self.above[i] >> j & 1)

    def comparable(self, i, j):
        return bool((self.above[i] | self.below[i]) >> j & 1)

    def relation_matrix(self):
        return [[self.less(i, j) for j in range(self.size)] for i in range(self.size)]

    def restrict(self, elements):
        """Induced subposet on ``elements`` (kept in the given order)."""
        elements = list(elements)
        index = {e: k for k, e in enumerate(elements)}
        above = []
        for e in elements:
            row = 0
            for f in _bits(self.above[e]):
                if f in index:
                    row |= 1 << index[f]
            above.append(row)
        return Poset(len(elements), above, [self.labels[e] for e in elements], check=False)

    def remove(self, element):
        return self.restrict(e for e in range(self.size) if e != element)

    def relabel(self, labels):
        return Poset(self.size, self.above, labels, check=False)

    def index_of(self, label):
        return self.labels.index(label)

    def __len__(self):
        return self.size

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.size == other.size and self.above == other.above

    def __hash__(self):
        return hash((self.size, self.above))

    def __repr__(self):
        pairs = [(self.labels[i], self.labels[j]) for i in range(self.size) for j in _bits(self.above[i])]
        return f"Poset(size={self.size}, less={pairs})"


@dataclass(frozen=True)
class HasseDiagram:
    size: int
    arcs: tuple  # (p, q) with q covering p

    def neighbors(self):
        adj = [[] for _ in range(self.size)]
        for p, q in self.arcs:
            adj[p].append(q)
            adj[q].append(p)
        return adj


def transitive_closure(pairs, size, labels=None):
    """Smallest strict order containing ``pairs``.

    Raises :class:`CycleDetected` when the pairs force ``x < x``.
    """
    reach = [0] * size
    for p, q in pairs:
        if not (0 <= p < size and 0 <= q < size):
            raise BadParams(f"pair {(p, q)} out of range for size {size}")
        reach[p] |= 1 << q
    for k in range(size):
        bit = 1 << k
        for i in range(size):
            if reach[i] & bit:
                reach[i] |= reach[k]
    for i in range(size):
        if reach[i] >> i & 1:
            raise CycleDetected(f"element {i} lies on a cycle")
    return Poset(size, reach, labels, check=False)


def hasse(P):
    arcs = []
    for p in range(P.size):
        for q in _bits(P.above[p]):
            if P.above[p] & P.below[q] == 0:
                arcs.append((p, q))
    return HasseDiagram(P.size, tuple(arcs))


def _topological_order(P):
    return sorted(range(P.size), key=lambda i: (bin(P.below[i]).count("1"), i))


def _depths(P):
    """Longest chain ending at each element (counting elements)."""
    depth = [1] * P.size
    for i in _topological_order(P):
        for j in _bits(P.below[i]):
            depth[i] = max(depth[i], depth[j] + 1)
    return depth


def height(P):
    if P.size == 0:
        return 0
    return max(_depths(P))


def extremal_elements(P):
    minimals = frozenset(i for i in range(P.size) if P.below[i] == 0)
    maximals = frozenset(i for i in range(P.size) if P.above[i] == 0)
    return minimals, maximals


def dual(P):
    return Poset(P.size, P.below, P.labels, check=False)


def _signature(P, i):
    return (bin(P.above[i]).count("1"), bin(P.below[i]).count("1"))


def find_isomorphism(P, Q):
    """Return a bijection ``phi`` (list) with ``i < j`` iff ``phi[i] < phi[j]``, or None."""
    if P.size != Q.size:
        return None
    sig_p = [_signature(P, i) for i in range(P.size)]
    sig_q = [_signature(Q, i) for i in range(Q.size)]
    if sorted(sig_p) != sorted(sig_q):
        return None
    order = sorted(range(P.size), key=lambda i: (sig_p.count(sig_p[i]), i))
    phi = [-1] * P.size
    used = [False] * Q.size

    def extend(pos):
        if pos == len(order):
            return True
        i = order[pos]
        for cand in range(Q.size):
            if used[cand] or sig_q[cand] != sig_p[i]:
                continue
            ok = True
            for prev in order[:pos]:
                if P.less(i, prev) != Q.less(cand, phi[prev]) or P.less(prev, i) != Q.less(phi[prev], cand):
                    ok = False
                    break
            if ok:
                phi[i] = cand
                used[cand] = True
                if extend(pos + 1):
                    return True
                used[cand] = False
        phi[i] = -1
        return False

    return list(phi) if extend(0) else None


def is_isomorphic(P, Q):
    return find_isomorphism(P, Q) is not None


def dedupe_isomorphic(posets):
    out = []
    for P in posets:
        if not any(is_isomorphic(P, Q) for Q in out):
            out.append(P)
    return out


def p_minus(P):
    """Posets obtained by deleting one maximal or minimal element, up to isomorphism."""
    if P.size <= 1:
        raise EmptyPoset("p_minus needs at least two elements")
    minimals, maximals = extremal_elements(P)
    return dedupe_isomorphic([P.remove(m) for m in sorted(minimals | maximals)])


def canonical_decomposition(P):
    levels = []
    remaining = (1 << P.size) - 1
    while remaining:
        level = [i for i in _bits(remaining) if P.below[i] & remaining == 0]
        levels.append(frozenset(level))
        for i in level:
            remaining &= ~(1 << i)
    return levels


def hasse_components(P):
    adj = hasse(P).neighbors()
    seen = [False] * P.size
    comps = []
    for s in range(P.size):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        comps.append(sorted(comp))
    return comps


def is_forest_poset(P):
    return len(hasse(P).arcs) == P.size - len(hasse_components(P))


def is_tree_poset(P):
    return P.size > 0 and len(hasse(P).arcs) == P.size - 1 and len(hasse_components(P)) == 1


def is_chain(P):
    return all(P.comparable(i, j) for i in range(P.size) for j in range(i + 1, P.size))


def is_antichain(P):
    return all(a == 0 for a in P.above)


def is_saturated(P, k=None):
    """True when every maximal chain of ``P`` has exactly ``k`` elements (default: height)."""
    h = height(P)
    if k is None:
        k = h
    if h != k:
        return False
    hd = hasse(P)
    lower_covers = [[] for _ in range(P.size)]
    for p, q in hd.arcs:
        lower_covers[q].append(p)
    shortest = [0] * P.size
    for i in _topological_order(P):
        shortest[i] = 1 + min((shortest[j] for j in lower_covers[i]), default=0)
    _, maximals = extremal_elements(P)
    return all(shortest[m] == k for m in maximals)


def saturate(T):
    """Embed ``T`` as a strong subposet of an ``h``-saturated poset.

    Applies the two local rules: maximal elements on level ``j`` get a chain
    of ``h - j`` new elements on top, and every Hasse arc spanning levels
    ``i < j`` is subdivided by ``j - i - 1`` new elements.  Original elements
    keep their indices and labels; new ones are appended.
    """
    if not is_forest_poset(T):
        raise NotTreePoset("Hasse diagram contains a cycle")
    h = height(T)
    level_of = {}
    for j, level in enumerate(canonical_decomposition(T), start=1):
        for e in level:
            level_of[e] = j
    labels = list(T.labels)
    covers = []

    def new_element(name):
        labels.append(name)
        return len(labels) - 1

    for p, q in hasse(T).arcs:
        gap = level_of[q] - level_of[p] - 1
        prev = p
        for r in range(1, gap + 1):
            x = new_element(f"{T.labels[p]}<{T.labels[q]}#{r}")
            covers.append((prev, x))
            prev = x
        covers.append((prev, q))
    _, maximals = extremal_elements(T)
    for q in sorted(maximals):
        prev = q
        for r in range(1, h - level_of[q] + 1):
            x = new_element(f"{T.labels[q]}^{r}")
            covers.append((prev, x))
            prev = x
    out = transitive_closure(covers, len(labels), labels)
    if not is_saturated(out, h):
        raise NotSaturated("saturation rules did not produce a saturated poset")
    return out


def _comparability_bfs(P, source):
    dist = [-1] * P.size
    dist[source] = 0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in _bits(P.above[x] | P.below[x]):
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def poset_distance(P, p, q):
    d = _comparability_bfs(P, p)[q]
    if d < 0:
        raise Disconnected(f"no comparability walk from {p} to {q}")
    return d


def _pendant_candidates(T, adj, v):
    """Ways to cut a monotone pendant path starting at leaf ``v``.

    Yields ``(u, removed)`` with the farthest ``u`` first.
    """
    (w,) = adj[v]
    upward = T.less(v, w)
    path = [v]
    cur, nxt = v, w
    out = []
    while True:
        out.append((nxt, list(path)))
        if len(adj[nxt]) != 2:
            break
        (after,) = [x for x in adj[nxt] if x != cur]
        if T.less(nxt, after) != upward:
            break
        path.append(nxt)
        cur, nxt = nxt, after
    return reversed(out)


def chain_interval_peel(T):
    """Peel pendant chain intervals off a saturated tree poset down to a chain.

    Returns ``[T, T_1, ..., T_l]`` where each step removes ``I \\ {u}`` for a
    chain interval ``I`` ending at a leaf, every poset in the list is
    ``k``-saturated, and the last one is a chain.  Leaves are tried in order
    of decreasing eccentricity in the comparability graph, lowest index
    first among ties, so the leaf of a diametral pair is preferred.
    """
    if not is_tree_poset(T):
        raise NotTreePoset("chain_interval_peel needs a tree poset")
    k = height(T)
    if not is_saturated(T, k):
        raise NotSaturated(f"poset is not {k}-saturated")
    seq = [T]
    cur = T
    while not is_chain(cur):
        adj = hasse(cur).neighbors()
        ecc = [max(_comparability_bfs(cur, v)) for v in range(cur.size)]
        leaves = sorted((v for v in range(cur.size) if len(adj[v]) == 1), key=lambda v: (-ecc[v], v))
        nxt = None
        for v in leaves:
            for _, removed in _pendant_candidates(cur, adj, v):
                drop = set(removed)
                candidate = cur.restrict(e for e in range(cur.size) if e not in drop)
                if is_tree_poset(candidate) and is_saturated(candidate, k):
                    nxt = candidate
                    break
            if nxt is not None:
                break
        if nxt is None:
            raise NotSaturated("no pendant chain interval keeps the poset saturated")
        seq.append(nxt)
        cur = nxt
    return seq


# ---------------------------------------------------------------- catalog


def _chain(k):
    return transitive_closure([(i, i + 1) for i in range(k - 1)], k, [f"c{i + 1}" for i in range(k)])


def _antichain(k):
    return Poset(k, [0] * k, [f"a{i + 1}" for i in range(k)], check=False)


def _fork(s):
    return transitive_closure([(0, i) for i in range(1, s + 1)], s + 1, ["a"] + [f"b{i}" for i in range(1, s + 1)])


def _broom(s):
    return transitive_closure([(i, s) for i in range(s)], s + 1, [f"c{i}" for i in range(1, s + 1)] + ["d"])


def _diamond():
    return transitive_closure([(0, 1), (0, 2), (1, 3), (2, 3)], 4, ["a", "b", "c", "d"])


def _crown(k):
    labels = [f"a{i}" for i in range(1, k + 1)] + [f"b{i}" for i in range(1, k + 1)]
    covers = []
    for i in range(k):
        covers.append((i, k + i))
        covers.append(((i + 1) % k, k + i))
    return transitive_closure(covers, 2 * k, labels)


def _path_poset(k):
    labels = [f"a{i}" for i in range(1, k + 1)] + [f"b{i}" for i in range(1, k)]
    covers = []
    for i in range(k - 1):
        covers.append((i, k + i))
        covers.append((i + 1, k + i))
    return transitive_closure(covers, 2 * k - 1, labels)


def _spider(k, legs):
    # element 0 is the center; leg t occupies 1 + t*k ... (t+1)*k, nearest first
    labels = ["center"]
    covers = []
    for t in range(legs):
        prev = 0
        for dist in range(1, k + 1):
            x = len(labels)
            labels.append(f"leg{t + 1}.{dist}")
            # leaves are maximal, so the element at distance dist is maximal iff k - dist is even
            if (k - dist) % 2 == 0:
                covers.append((prev, x))
            else:
                covers.append((x, prev))
            prev = x
    return transitive_closure(covers, len(labels), labels)


def _boolean(d):
    size = 1 << d
    pairs = [(a, a | (1 << i)) for a in range(size) for i in range(d) if not a >> i & 1]
    labels = ["{" + ",".join(str(i + 1) for i in range(d) if a >> i & 1) + "}" for a in range(size)]
    return transitive_closure(pairs, size, labels)


def _x_poset():
    return transitive_closure([(0, 2), (1, 2), (2, 3), (2, 4)], 5, ["a1", "a2", "c", "b1", "b2"])


CATALOG_NAMES = (
    "chain",
    "antichain",
    "fork",
    "broom",
    "diamond",
    "butterfly",
    "crown",
    "path_poset",
    "spider",
    "boolean",
    "x_poset",
)


def catalog(name, *params):
    """Named poset from the catalog.

    ``catalog("crown", 3)`` is the crown on six elements, ``catalog("spider", 2, 5)``
    is the spider with 5 legs of length 2.
    """
    params = tuple(int(p) for p in params)

    def need(count, minimum):
        if len(params) != count or any(p < minimum for p in params):
            raise BadParams(f"{name} expects {count} integer parameter(s) >= {minimum}, got {params}")

    if name == "chain":
        need(1, 1)
        return _chain(params[0])
    if name == "antichain":
        need(1, 1)
        return _antichain(params[0])
    if name == "fork":
        need(1, 1)
        return _fork(params[0])
    if name == "broom":
        need(1, 1)
        return _broom(params[0])
    if name == "diamond":
        need(0, 0)
        return _diamond()
    if name == "butterfly":
        need(0, 0)
        return _crown(2)
    if name == "crown":
        need(1, 2)
        return _crown(params[0])
    if name == "path_poset":
        need(1, 2)
        return _path_poset(params[0])
    if name == "spider":
        need(2, 1)
        return _spider(*params)
    if name == "boolean":
        need(1, 0)
        if params[0] > 6:
            raise BadParams("boolean poset limited to d <= 6")
        return _boolean(params[0])
    if name == "x_poset":
        need(0, 0)
        return _x_poset()
    raise BadParams(f"unknown catalog poset {name!r}")


_ALIASES = {"x": "x_poset", "path": "path_poset", "bowtie": "butterfly", "A": "antichain", "C": "chain"}


def parse_catalog_id(text):
    """Parse ``"crown:3"``, ``"spider:2x5"`` or ``"diamond"`` into a poset."""
    name, _, rest = text.strip().partition(":")
    name = _ALIASES.get(name, name)
    params = [p for p in rest.replace("x", ",").split(",") if p] if rest else []
    try:
        return catalog(name, *params)
    except ValueError as exc:
        if isinstance(exc, BadParams):
            raise
        raise BadParams(f"bad catalog id {text!r}") from exc


def all_catalog_ids(max_size):
    """Catalog ids (as strings) of every catalog poset with at most ``max_size`` elements.

    Isomorphic duplicates (``crown:2`` vs ``butterfly``) are kept; callers that
    need distinct posets should run :func:`dedupe_isomorphic`.
    """
    ids = []
    for k in range(1, max_size + 1):
        ids += [f"chain:{k}", f"antichain:{k}"]
    for s in range(1, max_size):
        ids += [f"fork:{s}", f"broom:{s}"]
    if max_size >= 4:
        ids += ["diamond", "butterfly", "boolean:2"]
    if max_size >= 5:
        ids.append("x_poset")
    for k in range(2, max_size // 2 + 1):
        ids.append(f"crown:{k}")
    for k in range(2, (max_size + 1) // 2 + 1):
        ids.append(f"path_poset:{k}")
    for k in range(1, max_size):
        for legs in range(1, max_size):
            if k * legs + 1 <= max_size:
                ids.append(f"spider:{k}x{legs}")
    for d in range(0, int(math.log2(max_size)) + 1):
        if f"boolean:{d}" not in ids:
            ids.append(f"boolean:{d}")
    return ids


def linear_extensions(P):
    """All linear extensions (small posets only); used by tests."""
    return [p for p in permutations(range(P.size)) if all(not P.less(p[b], p[a]) for a in range(P.size) for b in range(a + 1, P.size))]
