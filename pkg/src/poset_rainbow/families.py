"""Set families in the Boolean lattice 2^[n], represented as integer bitmasks.

Element ``i`` of the ground set [n] is bit ``i - 1`` of a mask, so ``{1}`` is
``0b1`` and ``[n]`` is ``(1 << n) - 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import BadRange, RangeViolation


def popcount(x):
    return bin(x).count("1")


def full_mask(n):
    return (1 << n) - 1


def mask_of(elements):
    """Mask of a collection of 1-based ground elements."""
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def elements_of(mask):
    """Sorted 1-based elements of ``mask``."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def is_subset(a, b):
    return a & ~b == 0


@dataclass(frozen=True)
class SetFamily:
    """A duplicate-free family of subsets of [n], kept sorted by mask value."""

    n: int
    members: tuple
    _lookup: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        top = 1 << self.n
        ms = tuple(sorted(set(int(m) for m in self.members)))
        if ms and (ms[0] < 0 or ms[-1] >= top):
            raise BadRange(f"mask out of range for n={self.n}")
        object.__setattr__(self, "members", ms)
        object.__setattr__(self, "_lookup", frozenset(ms))

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, mask):
        return mask in self._lookup

    def as_set(self):
        return self._lookup

    def by_size(self):
        groups = {}
        for m in self.members:
            groups.setdefault(popcount(m), []).append(m)
        return groups

    def union(self, other):
        return SetFamily(self.n, self.members + tuple(other))

    def minus(self, other):
        drop = set(other)
        return SetFamily(self.n, [m for m in self.members if m not in drop])

    def complemented(self):
        top = full_mask(self.n)
        return SetFamily(self.n, [top ^ m for m in self.members])


def full_family(n):
    return SetFamily(n, range(1 << n))


def layer(n, k):
    if not 0 <= k <= n:
        raise BadRange(f"layer {k} outside 0..{n}")
    return SetFamily(n, [mask_of(c) for c in combinations(range(1, n + 1), k)])


def middle_layer_order(n):
    """Layer indices by closeness to n/2: floor(n/2) first, then alternating up and down."""
    mid = n // 2
    order = [mid]
    step = 1
    while len(order) < n + 1:
        for cand in (mid + step, mid - step):
            if 0 <= cand <= n and len(order) < n + 1:
                order.append(cand)
        step += 1
    return order


def middle_layers(n, h):
    if not 1 <= h <= n + 1:
        raise BadRange(f"cannot take {h} middle layers of 2^[{n}]")
    sizes = middle_layer_order(n)[:h]
    members = []
    for k in sizes:
        members.extend(layer(n, k))
    return SetFamily(n, members)


def katona_tarjan_family(n):
    """binom([n-1], floor((n-1)/2)) together with each of those sets plus element n."""
    base = layer(n - 1, (n - 1) // 2)
    top = 1 << (n - 1)
    return SetFamily(n, list(base) + [m | top for m in base])


def down_closure(family, n):
    out = set()
    for m in family:
        sub = m
        while True:
            out.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & m
    return out


def up_closure(family, n):
    top = full_mask(n)
    return {top ^ m for m in down_closure([top ^ m for m in family], n)}


def is_convex(F):
    members = F.as_set()
    for lo in F:
        for hi in F:
            if lo == hi or not is_subset(lo, hi):
                continue
            free = hi & ~lo
            sub = free
            while sub:
                if lo | sub not in members:
                    return False
                sub = (sub - 1) & free
    return True


def lubell_mass(F):
    return sum((Fraction(1, math.comb(F.n, popcount(m))) for m in F), Fraction(0))


def lambda_below(F, G):
    """Lubell mass of the members of F inside G, measured in the |G|-cube."""
    g = popcount(G)
    return sum((Fraction(1, math.comb(g, popcount(m))) for m in F if is_subset(m, G)), Fraction(0))


def max_partition_sizes(F):
    """Number of maximal chains of 2^[n] whose largest member from F is each F.

    Returns a dict mask -> count.  Chains that meet F nowhere are not
    counted.  Uses a single pass over 2^[n] counting saturated chains from a
    set up to [n] that avoid F strictly above the start.
    """
    n = F.n
    members = F.as_set()
    top = full_mask(n)
    clear_up = [0] * (1 << n)
    clear_up[top] = 1
    for m in sorted(range(top), key=popcount, reverse=True):
        total = 0
        free = top & ~m
        while free:
            bit = free & -free
            up = m | bit
            if up not in members:
                total += clear_up[up]
            free ^= bit
        clear_up[m] = total
    return {m: math.factorial(popcount(m)) * clear_up[m] for m in F}


def lubell_weighted_average(F):
    """Max-partition weighted average of lambda_below, as an exact rational.

    Equal to ``lubell_mass(F)``; computed along an independent route.  The
    weight of F is |F|! times the number of F-avoiding routes from F up to
    [n], so each term w(F) / C(|F|, |m|) is the integer |m|! (|F|-|m|)! times
    that route count.
    """
    n = F.n
    members = F.as_set()
    weights = max_partition_sizes(F)
    fact = [math.factorial(i) for i in range(n + 1)]
    total = 0
    for top, w in weights.items():
        if not w:
            continue
        g = popcount(top)
        routes = w // fact[g]
        inner = 0
        sub = top
        while True:
            if sub in members:
                size = popcount(sub)
                inner += fact[size] * fact[g - size]
            if sub == 0:
                break
            sub = (sub - 1) & top
        total += routes * inner
    return Fraction(total, fact[n])


@dataclass(frozen=True)
class BandSpec:
    """Sizes within ``half_width`` of n/2.

    Membership is decided on integers: ``(2|F| - n)**2 <= ceil(4 * half_width**2)``.
    """

    n: int
    half_width: float
    poset_size: int | None = None

    def __post_init__(self):
        if self.half_width < 0:
            raise BadRange("half_width must be non-negative")

    @classmethod
    def standard(cls, n):
        return cls(n, 2 * math.sqrt(n * math.log(n)) if n > 1 else 0.0)

    @classmethod
    def for_poset(cls, n, poset_size):
        return cls(n, 4 * poset_size * math.sqrt(n * math.log(n)) if n > 1 else 0.0, poset_size)

    @property
    def squared_bound(self):
        # 4*hw^2 is 16 n ln n (standard) or 64 t^2 n ln n (poset band)
        return math.ceil(4 * self.half_width**2)

    def contains_size(self, size):
        return (2 * size - self.n) ** 2 <= self.squared_bound

    def size_range(self):
        return [s for s in range(self.n + 1) if self.contains_size(s)]


def in_band(mask, band):
    return band.contains_size(popcount(mask))


def restrict_to_band(F, band):
    return SetFamily(F.n, [m for m in F if in_band(m, band)])


def shadow_in_family(F, G, j):
    size = popcount(G)
    if not 0 <= j <= size:
        raise BadRange(f"j={j} outside 0..{size}")
    return SetFamily(F.n, [m for m in F if popcount(m) == size - j and is_subset(m, G)])


@dataclass(frozen=True)
class ShadowPartition:
    f1: SetFamily
    f2: SetFamily
    f3: SetFamily
    epsilon: float
    k: int
    j_of: dict

    def slice(self, part, j):
        """Members of ``f1`` or ``f2`` whose recorded j equals ``j``."""
        fam = self.f1 if part == 1 else self.f2
        return SetFamily(fam.n, [m for m in fam if self.j_of[m] == j])

    def dominant_j(self, part):
        """The j with the most members of ``f1``/``f2``, smallest j on ties."""
        fam = self.f1 if part == 1 else self.f2
        counts = {}
        for m in fam:
            counts[self.j_of[m]] = counts.get(self.j_of[m], 0) + 1
        if not counts:
            return None
        return min(counts, key=lambda j: (-counts[j], j))


def partition_f123(F, epsilon, k):
    """Split F by how dense its downward shadows inside F are.

    ``f1``: members F with some ``1 <= j <= 1000k`` and
    ``|S_j(F)| >= eps/(10000k) * C(|F|, j)``.
    ``f2``: remaining members with some ``1000k < j <= min(|F|, 4 sqrt(n ln n))``
    and ``|S_j(F)| >= C(|F|, j - 22)``.
    ``f3``: everything else.  ``j_of`` records the smallest qualifying j.
    """
    if epsilon <= 0:
        raise BadRange("epsilon must be positive")
    if k < 3:
        raise BadRange("k must be at least 3")
    n = F.n
    groups = F.by_size()
    j_cap = math.floor(4 * math.sqrt(n * math.log(n))) if n > 1 else 0

    def shadow_count(m, j):
        return sum(1 for g in groups.get(popcount(m) - j, ()) if is_subset(g, m))

    f1, f2, f3, j_of = [], [], [], {}
    for m in F:
        size = popcount(m)
        chosen = None
        for j in range(1, min(size, 1000 * k) + 1):
            # exact comparison: count * 10000k >= eps * C(size, j)
            if shadow_count(m, j) * 10000 * k >= epsilon * math.comb(size, j):
                chosen = j
                break
        if chosen is not None:
            f1.append(m)
            j_of[m] = chosen
            continue
        for j in range(1000 * k + 1, min(size, j_cap) + 1):
            if shadow_count(m, j) >= math.comb(size, j - 22):
                chosen = j
                break
        if chosen is not None:
            f2.append(m)
            j_of[m] = chosen
        else:
            f3.append(m)
    return ShadowPartition(SetFamily(n, f1), SetFamily(n, f2), SetFamily(n, f3), epsilon, k, j_of)


# ------------------------------------------------ binomial estimate numerics


def log_binomial(a, b):
    """Natural log of C(a, b) for real a >= b >= 0, via log-gamma."""
    if b < 0 or b > a:
        return -math.inf
    return math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)


def _logsumexp(values):
    values = [v for v in values if v != -math.inf]
    if not values:
        return -math.inf
    top = max(values)
    return top + math.log(sum(math.exp(v - top) for v in values))


@dataclass(frozen=True)
class Lemma10Report:
    n: float
    k: int
    j: int
    ratio_margin: float
    sum_margin: float
    single_margin: float

    @property
    def margins(self):
        return (self.ratio_margin, self.sum_margin, self.single_margin)

    @property
    def all_positive(self):
        return all(m > 0 for m in self.margins)


def check_lemma10(n, k, j):
    """Signed log-margins of the three binomial estimates (positive means the bound holds).

    1. ``C(n + 2s, j) / C(n - 2s, j) <= n**20``
    2. ``sum_{i=ceil(j/k)}^{j} C(k n^(1/3) j, i) C(n/2 + 2s, j - i) < C(n/2 - 2s, j - 22) / s``
    3. ``C(n^(2/3) + k n^(1/3) j, j) < C(n/2 - 2s, j - 22) / s``

    with ``s = sqrt(n ln n)``.  The asymptotic ``o(.)`` statements are checked
    as plain strict inequalities at the given n.
    """
    s = math.sqrt(n * math.log(n))
    if not 100 * k <= j <= 4 * s:
        raise RangeViolation(f"j={j} outside [{100 * k}, {4 * s:.1f}]")
    ratio = log_binomial(n + 2 * s, j) - log_binomial(n - 2 * s, j)
    m1 = 20 * math.log(n) - ratio
    rhs = log_binomial(n / 2 - 2 * s, j - 22) - math.log(s)
    spread = k * n ** (1 / 3) * j
    lhs2 = _logsumexp([log_binomial(spread, i) + log_binomial(n / 2 + 2 * s, j - i) for i in range(math.ceil(j / k), j + 1)])
    lhs3 = log_binomial(n ** (2 / 3) + spread, j)
    return Lemma10Report(n, k, j, m1, rhs - lhs2, rhs - lhs3)
