import math

import pytest
from hypothesis import given, settings, strategies as st

from poset_rainbow.copies import find_rainbow_copy
from poset_rainbow.constructions import lowertriv_coloring
from poset_rainbow.errors import BadParams, TooLarge
from poset_rainbow.extremal import (
    SearchConfig,
    ar_bruteforce,
    ar_exact,
    check_sandwich,
    convex_families,
    la_bruteforce,
    la_exact,
    restricted_growth_strings,
    search_order,
)
from poset_rainbow.families import SetFamily, is_convex
from poset_rainbow.poset import all_catalog_ids, catalog, p_minus, parse_catalog_id


def la(n, posets, mode="weak", **kw):
    return la_exact(SearchConfig(n, posets, mode, **kw)).value


def test_la_examples():
    assert la(4, [catalog("antichain", 2)]) == 1
    assert la(4, [catalog("fork", 2), catalog("broom", 2)]) == 2 * math.comb(3, 1)
    assert la(3, [catalog("chain", 2)]) == 3


def test_la_witness_is_free():
    from poset_rainbow.copies import is_free

    posets = [catalog("diamond")]
    r = la_exact(SearchConfig(3, posets, "weak"))
    assert len(r.witness) == r.value and is_free(posets, r.witness, "weak")


def test_ar_examples():
    assert ar_exact(SearchConfig(3, [catalog("diamond")], "weak")).value == 1 + 2 * math.comb(2, 1)
    assert ar_exact(SearchConfig(4, [catalog("antichain", 2)], "strong")).value == 3
    assert ar_exact(SearchConfig(3, [catalog("broom", 2)], "strong")).value == 4


def test_ar_witness_is_rainbow_free():
    P = catalog("diamond")
    r = ar_exact(SearchConfig(3, [P], "weak"))
    assert r.witness.color_count == r.value
    assert find_rainbow_copy(P, r.witness, "weak") is None


def test_ar_small_broom_four():
    # exact value at n=4 is 4, one below the (s-1)(n-1)+2 construction count
    r = ar_exact(SearchConfig(4, [catalog("broom", 2)], "strong"))
    assert r.value == 4 and r.exact


def test_symmetry_does_not_change_values():
    for cid in ("diamond", "broom:2", "antichain:2"):
        P = parse_catalog_id(cid)
        for mode in ("weak", "strong"):
            a = ar_exact(SearchConfig(3, [P], mode)).value
            b = ar_exact(SearchConfig(3, [P], mode, symmetry=False)).value
            assert a == b
            assert la(3, [P], mode) == la(3, [P], mode, symmetry=False)


def test_bruteforce_counts():
    assert sum(1 for _ in restricted_growth_strings(8)) == 4140
    assert ar_bruteforce(3, catalog("broom", 2), "strong").nodes == 4140
    with pytest.raises(TooLarge):
        ar_bruteforce(4, catalog("chain", 2), "weak")


def test_search_order_is_permutation_middle_first():
    order = search_order(4)
    assert sorted(order) == list(range(16))
    assert bin(order[0]).count("1") == 2


def test_convex_families_are_convex():
    fams = convex_families(3)
    assert all(is_convex(SetFamily(3, f)) for f in fams)


def test_config_validation():
    with pytest.raises(BadParams):
        SearchConfig(3, [], "weak")
    with pytest.raises(BadParams):
        SearchConfig(3, [catalog("chain", 2)], "weak", thread_budget=0)


def test_time_limit_marks_result_inexact():
    r = ar_exact(SearchConfig(5, [catalog("broom", 2)], "strong", time_limit=0.2))
    assert not r.exact


def test_sandwich_examples():
    rep = check_sandwich(3, catalog("diamond"), "weak")
    assert rep["ar"] == 5 and not rep["violations"]
    assert not check_sandwich(3, catalog("chain", 2), "weak")["violations"]


def test_butterfly_lower_bound_at_4():
    from poset_rainbow.constructions import butterfly_coloring

    col = butterfly_coloring(4)
    assert col.color_count == math.comb(4, 2) + math.comb(4, 3) + 1
    assert find_rainbow_copy(catalog("butterfly"), col, "strong") is None


SMALL = [parse_catalog_id(c) for c in all_catalog_ids(4)]


@settings(max_examples=25)
@given(st.sampled_from(SMALL), st.sampled_from(["weak", "strong"]))
def test_la_agrees_with_exhaustive(P, mode):
    assert la(3, [P], mode) == la_bruteforce(3, [P], mode).value


@settings(max_examples=25)
@given(st.sampled_from(SMALL))
def test_strong_values_dominate_weak(P):
    # every weak-free family is strong-free
    assert la(3, [P], "strong") >= la(3, [P], "weak")
    assert ar_exact(SearchConfig(3, [P], "strong")).value >= ar_exact(SearchConfig(3, [P], "weak")).value


@settings(max_examples=20)
@given(st.sampled_from([p for p in SMALL if p.size >= 2]))
def test_lowertriv_bound(P):
    # a convex family free of every poset in P-, rainbow on its own and one
    # color for the rest, has no rainbow P; so ar >= La_con(P-) + 1
    r = la_exact(SearchConfig(3, p_minus(P), "weak", convex_only=True))
    col = lowertriv_coloring(r.witness)
    assert find_rainbow_copy(P, col, "weak") is None
    assert ar_exact(SearchConfig(3, [P], "weak")).value >= r.value + 1


@settings(max_examples=15)
@given(st.sampled_from([p for p in SMALL if p.size <= 3]))
def test_ar_agrees_with_partition_enumeration(P):
    for mode in ("weak", "strong"):
        assert ar_exact(SearchConfig(3, [P], mode)).value == ar_bruteforce(3, P, mode).value
