import itertools

import pytest
from hypothesis import given, strategies as st

from poset_rainbow.errors import BadParams, CycleDetected, EmptyPoset, NotSaturated
from poset_rainbow.poset import (
    all_catalog_ids,
    canonical_decomposition,
    catalog,
    chain_interval_peel,
    dedupe_isomorphic,
    dual,
    extremal_elements,
    hasse,
    height,
    is_isomorphic,
    is_saturated,
    is_tree_poset,
    p_minus,
    parse_catalog_id,
    poset_distance,
    saturate,
    transitive_closure,
)


def brute_height(P):
    best = 0
    for r in range(1, P.size + 1):
        for sub in itertools.combinations(range(P.size), r):
            if all(P.comparable(a, b) for a, b in itertools.combinations(sub, 2)):
                best = r
    return best


def labels_of(P, idx):
    return {P.labels[i] for i in idx}


# --- transitive closure / hasse


def test_closure_adds_transitive_pair():
    P = transitive_closure([(0, 1), (1, 2)], 3)
    assert P.less(0, 2) and not P.less(2, 0)


def test_empty_relation_is_antichain():
    P = transitive_closure([], 4)
    assert not any(P.less(i, j) for i in range(4) for j in range(4))


def test_x_poset_from_pairs():
    P = transitive_closure([(0, 2), (1, 2), (2, 3), (2, 4)], 5)
    assert is_isomorphic(P, catalog("x_poset"))


def test_cycle_rejected():
    with pytest.raises(CycleDetected):
        transitive_closure([(0, 1), (1, 0)], 2)


def test_hasse_examples():
    assert set(hasse(catalog("chain", 3)).arcs) == {(0, 1), (1, 2)}
    D = catalog("diamond")
    assert len(hasse(D).arcs) == 4
    arcs = hasse(catalog("crown", 3)).arcs
    assert len(arcs) == 6
    # antidirected: every element is only a source or only a sink
    sources = {p for p, _ in arcs}
    sinks = {q for _, q in arcs}
    assert not sources & sinks


# --- height, extremal elements, P minus


def test_height_examples():
    assert height(catalog("antichain", 5)) == 1
    assert height(catalog("chain", 4)) == 4
    assert height(catalog("butterfly")) == brute_height(catalog("butterfly")) == 2


def test_extremal_examples():
    mins, maxs = extremal_elements(catalog("chain", 3))
    assert (set(mins), set(maxs)) == ({0}, {2})
    D = catalog("diamond")
    mins, maxs = extremal_elements(D)
    assert labels_of(D, mins) == {"a"} and labels_of(D, maxs) == {"d"}
    O = catalog("crown", 3)
    mins, maxs = extremal_elements(O)
    assert len(mins) == len(maxs) == 3 and not set(mins) & set(maxs)


def test_p_minus_examples():
    v, w = catalog("fork", 2), catalog("broom", 2)
    for name in ("diamond", "butterfly"):
        got = p_minus(catalog(name))
        assert len(got) == 2
        assert any(is_isomorphic(g, v) for g in got) and any(is_isomorphic(g, w) for g in got)
    got = p_minus(catalog("antichain", 3))
    assert len(got) == 1 and is_isomorphic(got[0], catalog("antichain", 2))


def test_p_minus_of_singleton_rejected():
    with pytest.raises(EmptyPoset):
        p_minus(catalog("chain", 1))


def test_dual_examples():
    assert is_isomorphic(dual(catalog("fork", 3)), catalog("broom", 3))
    assert is_isomorphic(dual(catalog("antichain", 3)), catalog("antichain", 3))
    assert is_isomorphic(dual(catalog("diamond")), catalog("diamond"))


def test_canonical_decomposition_examples():
    assert [set(x) for x in canonical_decomposition(catalog("chain", 3))] == [{0}, {1}, {2}]
    D = catalog("diamond")
    assert [labels_of(D, x) for x in canonical_decomposition(D)] == [{"a"}, {"b", "c"}, {"d"}]
    X = catalog("x_poset")
    levels = canonical_decomposition(X)
    assert [len(x) for x in levels] == [2, 1, 2]


# --- saturation and peeling


def test_saturate_keeps_saturated_poset():
    X = catalog("x_poset")
    assert saturate(X) == X


def test_saturate_adds_element_above_isolated():
    T = transitive_closure([(0, 1)], 3, ["a", "b", "c"])
    S = saturate(T)
    assert S.size == 4 and is_saturated(S, 2)
    top = S.size - 1
    assert S.less(S.index_of("c"), top)


def test_saturate_lengthened_fork():
    # a < b1, a < b2 < b3: b1 is a maximal element on level 2 of a height-3
    # poset, so it gets one new element on top (no arc spans two levels).
    T = transitive_closure([(0, 1), (0, 2), (2, 3)], 4, ["a", "b1", "b2", "b3"])
    S = saturate(T)
    assert S.size == 5 and is_saturated(S, 3)
    new = S.size - 1
    assert S.labels[new] == "b1^1" and S.less(S.index_of("b1"), new)
    # T is a strong (induced) subposet of S
    assert S.restrict(range(4)) == T


def test_saturate_subdivides_long_arc():
    # a < b < c and d < c with d minimal: arc d->c spans levels 1 -> 3
    T = transitive_closure([(0, 1), (1, 2), (3, 2)], 4, ["a", "b", "c", "d"])
    S = saturate(T)
    assert is_saturated(S, 3) and S.size == 5
    assert S.labels[4].startswith("d<c")


@pytest.mark.parametrize("cid", ["spider:2x3", "x_poset", "fork:3", "broom:2", "path_poset:3"])
def test_saturate_is_saturated_and_strong(cid):
    T = parse_catalog_id(cid)
    S = saturate(T)
    assert is_saturated(S, height(T))
    assert S.restrict(range(T.size)) == T


def test_poset_distance_examples():
    assert poset_distance(catalog("chain", 3), 0, 2) == 1
    B = catalog("butterfly")
    a1, a2 = B.index_of("a1"), B.index_of("a2")
    assert poset_distance(B, a1, a2) == 2
    O = catalog("crown", 3)
    assert poset_distance(O, O.index_of("a1"), O.index_of("a3")) == 2


def test_peel_chain_is_trivial():
    seq = chain_interval_peel(catalog("chain", 4))
    assert len(seq) == 1


def test_peel_x_poset():
    seq = chain_interval_peel(catalog("x_poset"))
    assert len(seq) == 3
    assert is_isomorphic(seq[-1], catalog("chain", 3))
    for Q in seq:
        assert is_saturated(Q, 3) and is_tree_poset(Q)


def test_peel_three_leg_spider():
    seq = chain_interval_peel(catalog("spider", 1, 3))
    assert len(seq) == 3 and is_isomorphic(seq[-1], catalog("chain", 2))


def test_peel_rejects_unsaturated():
    with pytest.raises(NotSaturated):
        chain_interval_peel(transitive_closure([(0, 1), (1, 2), (0, 3)], 4))


# --- catalog


def test_catalog_examples():
    assert is_isomorphic(catalog("crown", 2), catalog("butterfly"))
    P5 = catalog("path_poset", 3)
    assert P5.size == 5
    a = [P5.index_of(f"a{i}") for i in (1, 2, 3)]
    b = [P5.index_of(f"b{i}") for i in (1, 2)]
    for i in range(2):
        assert P5.less(a[i], b[i]) and P5.less(a[i + 1], b[i])
    assert len(hasse(P5).arcs) == 4
    assert is_isomorphic(catalog("boolean", 2), catalog("diamond"))


def test_catalog_param_checks():
    with pytest.raises(BadParams):
        catalog("crown", 1)
    with pytest.raises(BadParams):
        catalog("nonesuch")
    with pytest.raises(BadParams):
        parse_catalog_id("crown:x")


def test_parse_catalog_aliases():
    assert parse_catalog_id("spider:2x5").size == 11
    assert is_isomorphic(parse_catalog_id("bowtie"), catalog("butterfly"))
    assert parse_catalog_id("C:3") == catalog("chain", 3)
    assert parse_catalog_id("A:2") == catalog("antichain", 2)


def test_all_catalog_ids_parse_and_respect_size():
    ids = all_catalog_ids(6)
    assert len(ids) == len(set(ids))
    for cid in ids:
        assert parse_catalog_id(cid).size <= 6
    assert len(dedupe_isomorphic([parse_catalog_id(c) for c in ids])) < len(ids)


# --- properties


@st.composite
def random_posets(draw, max_size=6):
    n = draw(st.integers(1, max_size))
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=10))
    return transitive_closure([(p, q) for p, q in pairs if p < q], n)


@given(random_posets())
def test_dual_is_involution(P):
    assert dual(dual(P)) == P


@given(random_posets())
def test_height_matches_brute_force(P):
    assert height(P) == brute_height(P)
    assert height(dual(P)) == height(P)


@given(random_posets())
def test_hasse_closure_round_trip(P):
    assert transitive_closure(hasse(P).arcs, P.size) == P


@given(random_posets())
def test_decomposition_partitions_elements(P):
    levels = canonical_decomposition(P)
    assert len(levels) == height(P)
    assert sorted(x for lv in levels for x in lv) == list(range(P.size))
    for lv in levels:
        assert not any(P.less(a, b) for a in lv for b in lv)
