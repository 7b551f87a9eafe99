"""Embedding machinery for spiders, paths, crowns and marked chains.

Everything here is desk scale: the greedy steps are run literally and every
embedding they return is re-checked through :func:`copies.is_valid_embedding`,
which shares no code with the construction.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from itertools import combinations, permutations

from .copies import CopyEmbedding, is_valid_embedding
from .errors import (
    BadParams,
    BadPivot,
    Infeasible,
    NoPairFound,
    NotTreePoset,
    PreconditionViolated,
    Stuck,
    TooLarge,
)
from .families import BandSpec, SetFamily, full_mask, in_band, is_subset, popcount
from .poset import chain_interval_peel, catalog, hasse, height, is_tree_poset, saturate, transitive_closure

# ------------------------------------------------------------ inclusion bigraph

LOWER, UPPER = "lower", "upper"


@dataclass(frozen=True)
class InclusionBigraph:
    """Bipartite graph between ``lower`` and ``upper``; F ~ F1 iff F ⊆ F1 and |F| = |F1| - j.

    A mask may sit in both parts, so vertices are addressed as ``(side, mask)``.
    """

    lower: SetFamily
    upper: SetFamily
    j: int
    edges: tuple
    _adj: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        adj = {(LOWER, m): [] for m in self.lower}
        adj.update({(UPPER, m): [] for m in self.upper})
        for lo, hi in self.edges:
            adj[(LOWER, lo)].append(hi)
            adj[(UPPER, hi)].append(lo)
        object.__setattr__(self, "_adj", {v: tuple(sorted(ns)) for v, ns in adj.items()})

    @staticmethod
    def color_set(edge):
        lo, hi = edge
        return hi & ~lo

    def neighbors(self, side, mask):
        return self._adj.get((side, mask), ())

    def degree(self, side, mask):
        return len(self.neighbors(side, mask))

    def vertex_count(self):
        return len(self.lower) + len(self.upper)

    def average_degree(self):
        v = self.vertex_count()
        return 2 * len(self.edges) / v if v else 0.0

    def min_degree(self):
        return min((len(ns) for ns in self._adj.values()), default=0)


def build_bigraph(F, upper, j):
    """All inclusion edges between F and the selected upper family at level gap j."""
    if j < 0:
        raise BadParams("j must be non-negative")
    by_size = F.by_size()
    edges = []
    for hi in upper:
        for lo in by_size.get(popcount(hi) - j, ()):
            if is_subset(lo, hi):
                edges.append((lo, hi))
    return InclusionBigraph(F, upper, j, tuple(edges))


def min_degree_subgraph(B, d):
    """Repeatedly delete vertices of degree < d; what is left has minimum degree >= d or is empty."""
    if d < 1:
        raise BadParams("threshold must be at least 1")
    alive = {v: set(ns) for v, ns in ((v, B._adj[v]) for v in B._adj)}
    deg = {v: len(ns) for v, ns in alive.items()}
    queue = [v for v, k in deg.items() if k < d]
    removed = set()
    while queue:
        v = queue.pop()
        if v in removed:
            continue
        removed.add(v)
        side, mask = v
        other = UPPER if side == LOWER else LOWER
        for w in alive[v]:
            u = (other, w)
            if u in removed:
                continue
            deg[u] -= 1
            if deg[u] < d:
                queue.append(u)
    keep_lo = [m for m in B.lower if (LOWER, m) not in removed]
    keep_hi = [m for m in B.upper if (UPPER, m) not in removed]
    lo_set, hi_set = set(keep_lo), set(keep_hi)
    edges = tuple(e for e in B.edges if e[0] in lo_set and e[1] in hi_set)
    core = InclusionBigraph(SetFamily(B.lower.n, keep_lo), SetFamily(B.upper.n, keep_hi), B.j, edges)
    if B.average_degree() >= 2 * d and not edges:
        raise AssertionError("average degree >= 2d but the core came out empty")
    return core


# ----------------------------------------------------------------- spiders


@dataclass(frozen=True)
class SpiderEmbedding:
    """A spider grown in a bigraph; ``legs[t]`` lists masks nearest the center first."""

    center: int
    center_side: str
    legs: tuple
    leaf_color_sets: tuple
    used_color_bits: int
    discipline: str
    j: int
    k: int | None = None

    @property
    def leg_len(self):
        return len(self.legs[0]) if self.legs else 0

    @property
    def leaves(self):
        return tuple(leg[-1] for leg in self.legs)

    def images(self):
        """Images in the element order of ``catalog('spider', leg_len, legs)``."""
        return (self.center,) + tuple(m for leg in self.legs for m in leg)

    def poset(self):
        return catalog("spider", self.leg_len, len(self.legs))

    def as_copy(self):
        return CopyEmbedding(self.poset(), self.images(), "strong")

    def intersection(self):
        out = self.center
        for m in self.images():
            out &= m
        return out

    def edge_color_sets(self):
        """Color set of every spider edge, leg by leg from the center outwards."""
        out = []
        for leg in self.legs:
            prev = self.center
            for m in leg:
                lo, hi = (prev, m) if is_subset(prev, m) else (m, prev)
                out.append(hi & ~lo)
                prev = m
        return out


def _admissible(color, used, discipline, j, k):
    if discipline == "full":
        return color & used == 0
    # fewer than j/k of the colors may already be in use
    return popcount(color & used) * k < j


def greedy_spider(B, legs, leg_len, discipline="full", k=None, center_side=None):
    """Grow a spider with ``legs`` legs of ``leg_len`` edges whose leaves are maximal.

    ``discipline="full"`` keeps all edge color sets pairwise disjoint;
    ``"fraction"`` lets each new edge reuse fewer than j/k colors.  Centers
    are tried in mask order and each leg is extended by the first admissible
    neighbor.  Raises :class:`Stuck` (with the best partial spider) if no
    center works.
    """
    if discipline not in ("full", "fraction"):
        raise BadParams("discipline must be 'full' or 'fraction'")
    if discipline == "fraction" and not k:
        raise BadParams("fraction discipline needs k")
    if legs < 1 or leg_len < 1:
        raise BadParams("need at least one leg of positive length")
    side = UPPER if leg_len % 2 == 0 else LOWER
    if center_side is not None and center_side != side:
        raise BadParams(f"with leaves maximal and legs of length {leg_len} the center is on the {side} side")
    if not B.edges:
        raise PreconditionViolated("bigraph has no edges")
    target = catalog("spider", leg_len, legs)
    centers = B.upper if side == UPPER else B.lower
    best = None
    for center in centers:
        if B.degree(side, center) == 0:
            continue
        used_masks = {center}
        used = 0
        built, leaf_colors = [], []
        for _ in range(legs):
            leg, cur, cur_side = [], center, side
            last_color = 0
            for _ in range(leg_len):
                nxt_side = LOWER if cur_side == UPPER else UPPER
                step = None
                for w in B.neighbors(cur_side, cur):
                    if w in used_masks:
                        continue
                    color = (cur & ~w) if cur_side == UPPER else (w & ~cur)
                    if _admissible(color, used, discipline, B.j, k):
                        step = (w, color)
                        break
                if step is None:
                    break
                cur, cur_side = step[0], nxt_side
                used_masks.add(cur)
                used |= step[1]
                last_color = step[1]
                leg.append(cur)
            if len(leg) < leg_len:
                partial = {"center": center, "legs": built + [leg]}
                if best is None or _progress(partial) > _progress(best):
                    best = partial
                break
            built.append(tuple(leg))
            leaf_colors.append(last_color)
        if len(built) < legs:
            continue
        spider = SpiderEmbedding(center, side, tuple(built), tuple(leaf_colors), used, discipline, B.j, k)
        if is_valid_embedding(target, spider.images(), "strong"):
            return spider
        partial = {"center": center, "legs": built, "reason": "not a strong copy"}
        if best is None or _progress(partial) > _progress(best):
            best = partial
    raise Stuck("no center admits a full spider", partial=best)


def _progress(partial):
    return sum(len(leg) for leg in partial["legs"])


# --------------------------------------------------------- paths and crowns


def complete_p2km1(spider, F, k):
    """Close two spider legs into a strong P_{2k-1} with the non-containment property.

    Needs legs of length k-2.  Looks for leaves F^a, F^b (a < b), an element
    y of the spider intersection, and (|F^a| - j)-subsets G^a ⊆ F^a, G^b ⊆ F^b
    in F avoiding y and meeting the leaf color sets.  The first combination
    (in index order) that re-verifies is returned.
    """
    if k < 3:
        raise BadParams("k must be at least 3")
    if spider.leg_len != k - 2:
        raise BadParams(f"spider legs must have length k-2={k - 2}, got {spider.leg_len}")
    if len(spider.legs) < 2:
        raise NoPairFound("need at least two leaves", partial={"legs": len(spider.legs)})
    target = catalog("path_poset", k)
    G = spider.intersection()
    j = spider.j
    by_size = F.by_size()
    spider_sets = set(spider.images())

    def shadows(a):
        leaf, colors = spider.legs[a][-1], spider.leaf_color_sets[a]
        out = []
        for g in by_size.get(popcount(leaf) - j, ()):
            if g in spider_sets or not is_subset(g, leaf) or not g & colors:
                continue
            if spider.discipline == "fraction" and popcount(g & colors) * k > j:
                continue
            out.append(g)
        return out

    cands = [shadows(a) for a in range(len(spider.legs))]
    tried = 0
    for a, b in combinations(range(len(spider.legs)), 2):
        for y in range(F.n):
            if not G >> y & 1:
                continue
            bit = 1 << y
            for ga in cands[a]:
                if ga & bit:
                    continue
                for gb in cands[b]:
                    if gb & bit or gb == ga:
                        continue
                    tried += 1
                    path = [ga] + list(reversed(spider.legs[a])) + [spider.center] + list(spider.legs[b]) + [gb]
                    images = _path_to_poset_order(path, k)
                    if is_valid_embedding(target, images, "strong") and non_containment_ok(images, k):
                        return CopyEmbedding(target, images, "strong")
    raise NoPairFound("no leaf pair closes into a strong P_{2k-1}", partial={"combinations_tried": tried})


def _path_to_poset_order(path, k):
    # path alternates a1, b1, a2, ..., ak; catalog order is a1..ak, b1..b(k-1)
    return tuple(path[0::2]) + tuple(path[1::2])


def non_containment_ok(images, k):
    """True when no middle A_i (2 <= i <= k-1) lies inside A_1 ∪ A_k."""
    outer = images[0] | images[k - 1]
    return all(not is_subset(images[i], outer) for i in range(1, k - 1))


def crown_size_target(n):
    """Size the top set should reach so it lies above the standard band."""
    return n / 2 + 2 * math.sqrt(n * math.log(n)) if n > 1 else 0.0


def complete_crown(p, n):
    """Add B_k = [n] minus one private point of each middle A_i, closing P_{2k-1} into O_{2k}."""
    k = (p.poset.size + 1) // 2
    images = p.images
    if not non_containment_ok(images, k):
        raise PreconditionViolated("some middle A_i lies inside A_1 ∪ A_k")
    outer = images[0] | images[k - 1]
    top = full_mask(n)
    for i in range(1, k - 1):
        private = images[i] & ~outer
        top &= ~(private & -private)
    crown = catalog("crown", k)
    result = images + (top,)
    if not is_valid_embedding(crown, result, "strong"):
        raise Infeasible("B_k does not close a strong crown", partial={"top": top})
    return CopyEmbedding(crown, result, "strong")


# ------------------------------------------------------------ tree transform


def t0_transform(T, m):
    """Flip the covers below the maximal element m and hang a chain v1 < ... < v_{k-2} below m.

    Here ``k + 1`` is the height of T.  Every longest chain of T must pass
    through m.  The returned poset has height k and agrees with T off
    ``{m, v1, ...}``.
    """
    if not is_tree_poset(T):
        raise NotTreePoset("t0_transform needs a tree poset")
    if isinstance(m, str):
        m = T.index_of(m)
    if T.above[m]:
        raise BadPivot(f"{T.labels[m]} is not maximal")
    h = height(T)
    if h < 2 or height(T.remove(m)) == h:
        raise BadPivot(f"some chain of length {h} avoids {T.labels[m]}")
    k = h - 1
    arcs = []
    for p, q in hasse(T).arcs:
        arcs.append((q, p) if q == m else (p, q))
    labels = list(T.labels)
    extra = []
    for i in range(1, k - 1):
        name = f"v{i}"
        while name in labels:
            name += "'"
        labels.append(name)
        extra.append(len(labels) - 1)
    chain = extra + [m]
    arcs += list(zip(chain, chain[1:]))
    T0 = transitive_closure(arcs, len(labels), labels)
    if k < 2:
        warnings.warn(f"height-{h} tree: no chain is added and the height check is skipped", stacklevel=2)
    elif height(T0) != k:
        raise AssertionError(f"T0 has height {height(T0)}, expected {k}")
    rest = [i for i in range(T.size) if i != m]
    if T.restrict(rest) != T0.restrict(rest):
        raise AssertionError("T0 does not agree with T away from m")
    return T0


def peel_reaches_down_set(T, m):
    """Saturate ``t0_transform(T, m)``, peel it, and report whether the union of
    the down-sets of m's lower covers shows up as one of the peeled posets.
    """
    if isinstance(m, str):
        m = T.index_of(m)
    covers = [p for p, q in hasse(T).arcs if q == m]
    T0 = t0_transform(T, m)
    sat = saturate(T0)
    target = set()
    for c in covers:
        target.add(sat.labels[c])
        target.update(sat.labels[x] for x in range(sat.size) if sat.less(x, c))
    seq = chain_interval_peel(sat)
    hits = [i for i, Q in enumerate(seq) if set(Q.labels) == target]
    return {"target": sorted(target), "steps": len(seq), "reached_at": hits[0] if hits else None}


# ------------------------------------------------------------- marked chains


@dataclass(frozen=True)
class MarkedChain:
    """Maximal chain given by a permutation of [n] (0-based), plus k markers on it."""

    chain: tuple
    markers: tuple

    @property
    def sets(self):
        out, m = [0], 0
        for x in self.chain:
            m |= 1 << x
            out.append(m)
        return tuple(out)

    def depth_of(self, G):
        """1-based position of G among the markers counted from the top, or None."""
        ordered = sorted(self.markers, key=popcount, reverse=True)
        return ordered.index(G) + 1 if G in ordered else None


def marked_chains(F, k):
    """Every k-marked chain with markers in F (all n! maximal chains)."""
    n = F.n
    if n > 8:
        raise TooLarge("marked chain enumeration is limited to n <= 8")
    out = []
    for perm in permutations(range(n)):
        sets = MarkedChain(perm, ()).sets
        on = [m for m in sets if m in F]
        for Q in combinations(on, k):
            out.append(MarkedChain(perm, Q))
    return out


def l_of(L, G, d):
    return [mc for mc in L if mc.depth_of(G) == d]


@dataclass(frozen=True)
class WitnessFamily:
    sets: tuple
    side: str


def _down(G, n):
    sub = G
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & G


def _related_to_any(x, S):
    return any(is_subset(x, s) or is_subset(s, x) for s in S)


def _band_ok(mask, band):
    return band is None or in_band(mask, band)


def forbidden_down(G, S, n, band=None):
    """Proper subsets of G (in the band) that are comparable to some member of S."""
    if any(is_subset(G, s) for s in S):
        raise PreconditionViolated("a witness set contains G")
    return SetFamily(n, [x for x in _down(G, n) if x != G and _band_ok(x, band) and _related_to_any(x, S)])


def forbidden_up(G, S, n, band=None):
    """Proper supersets of G (in the band) that are comparable to some member of S."""
    if any(is_subset(s, G) for s in S):
        raise PreconditionViolated("a witness set lies inside G")
    top = full_mask(n)
    ups = (top ^ x for x in _down(top ^ G, n))
    return SetFamily(n, [x for x in ups if x != G and _band_ok(x, band) and _related_to_any(x, S)])


def _hits(mc, forbidden, scope):
    sets = mc.markers if scope == "markers" else mc.sets
    return any(m in forbidden for m in sets)


def _witness_candidates(G, pool, t, side):
    if side == LOWER:
        usable = [s for s in pool if not is_subset(G, s)]
    else:
        usable = [s for s in pool if not is_subset(s, G)]
    for size in range(1, min(t, len(usable)) + 1):
        yield from combinations(usable, size)


def is_bad(G, d, L, t, side, pool, n, band=None, scope="chain"):
    """Witness family S from ``pool`` (|S| <= t) blocking every member of L(G, d), or None.

    ``scope="chain"`` asks that the whole chain meets the forbidden
    neighborhood; ``scope="markers"`` only looks at the markers.
    """
    if side not in (LOWER, UPPER):
        raise BadParams("side must be 'lower' or 'upper'")
    if scope not in ("chain", "markers"):
        raise BadParams("scope must be 'chain' or 'markers'")
    if len(pool) > 24:
        raise TooLarge("witness pool limited to 24 sets")
    members = l_of(L, G, d)
    if not members:
        return None
    nbhd = forbidden_down if side == LOWER else forbidden_up
    for S in _witness_candidates(G, pool, t, side):
        forbidden = nbhd(G, S, n, band).as_set()
        if all(_hits(mc, forbidden, scope) for mc in members):
            return WitnessFamily(S, side)
    return None


def is_good(mc, L, t, pool, n, band=None, scope="chain"):
    """No marker G is lower- or upper-bad at any depth d where some (C, Q') in L has G at depth d."""
    k = len(mc.markers)
    for G in mc.markers:
        for d in range(1, k + 1):
            if not any(other.chain == mc.chain for other in l_of(L, G, d)):
                continue
            for side in (LOWER, UPPER):
                if is_bad(G, d, L, t, side, pool, n, band, scope) is not None:
                    return False
    return True


def extension_violations(L, t, pool, n, band=None, scope="chain"):
    """Check the extension property of good marked chains exhaustively over the pool.

    For each good (C, Q) in L, each marker G at depth d and each admissible
    witness S, some member of L(G, d) must have its chain disjoint from the
    forbidden neighborhood.  Returns the list of counterexamples.
    """
    bad = []
    for mc in L:
        if not is_good(mc, L, t, pool, n, band, scope):
            continue
        for G in mc.markers:
            d = mc.depth_of(G)
            members = l_of(L, G, d)
            for side, nbhd in ((LOWER, forbidden_down), (UPPER, forbidden_up)):
                for S in _witness_candidates(G, pool, t, side):
                    forbidden = nbhd(G, S, n, band).as_set()
                    if not any(not any(x in forbidden for x in other.sets) for other in members):
                        bad.append({"chain": mc, "G": G, "d": d, "side": side, "witness": S})
    return bad


def union_in_poset_band(sets, n, t):
    """Union of the given sets lies in the band of half-width 4t sqrt(n ln n)."""
    u = 0
    for s in sets:
        u |= s
    return in_band(u, BandSpec.for_poset(n, t))


def comparability_connected(sets):
    sets = list(sets)
    if not sets:
        return True
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j, s in enumerate(sets):
            if j not in seen and (is_subset(s, sets[i]) or is_subset(sets[i], s)):
                seen.add(j)
                stack.append(j)
    return len(seen) == len(sets)
