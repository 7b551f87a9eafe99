import pytest
from hypothesis import given, strategies as st

from poset_rainbow.copies import (
    Coloring,
    all_distinct,
    find_copy,
    find_rainbow_copy,
    is_free,
    is_valid_embedding,
    max_rainbow_antichain,
    monochromatic,
    oracle_find_copy,
)
from poset_rainbow.constructions import butterfly_coloring
from poset_rainbow.errors import BadParams
from poset_rainbow.families import SetFamily, full_family, katona_tarjan_family, layer, middle_layers
from poset_rainbow.poset import all_catalog_ids, catalog, parse_catalog_id


def test_chain_into_bottom_and_top():
    F = SetFamily(3, [0, 0b111])
    emb = find_copy(catalog("chain", 2), F, "weak")
    assert emb.images == (0, 0b111)


def test_no_strong_butterfly_in_two_middle_layers_of_4():
    # Any two 2-sets lie together in at most one 3-set, so two 3-sets cannot
    # both contain the same pair of 2-sets.
    F = middle_layers(4, 2)
    assert find_copy(catalog("butterfly"), F, "strong") is None
    assert oracle_find_copy(catalog("butterfly"), F, "strong") is None


def test_strong_butterfly_across_a_gap():
    F = SetFamily(5, list(layer(5, 1)) + list(layer(5, 3)))
    emb = find_copy(catalog("butterfly"), F, "strong")
    assert emb is not None and is_valid_embedding(catalog("butterfly"), emb.images, "strong", family=F)


def test_no_strong_antichain_in_chain():
    F = SetFamily(4, [0, 1, 3, 7, 15])
    assert find_copy(catalog("antichain", 2), F, "strong") is None


def test_is_free_examples():
    P = [catalog("fork", 2), catalog("broom", 2)]
    assert is_free(P, katona_tarjan_family(5), "weak")
    assert not is_free(catalog("chain", 2), SetFamily(3, [1, 3]), "weak")
    assert not is_free(catalog("antichain", 3), SetFamily(3, [0, 1, 3]), "weak")


def test_rainbow_examples():
    assert find_rainbow_copy(catalog("chain", 2), all_distinct(3), "weak") is not None
    for cid in ("chain:2", "antichain:2", "diamond"):
        assert find_rainbow_copy(parse_catalog_id(cid), monochromatic(3), "weak") is None
    assert find_rainbow_copy(catalog("butterfly"), butterfly_coloring(4), "strong") is None


def test_rainbow_copy_has_distinct_colors():
    col = Coloring.from_labels(3, [m.bit_count() for m in range(8)])
    emb = find_rainbow_copy(catalog("chain", 4), col, "weak")
    assert emb is not None
    assert is_valid_embedding(catalog("chain", 4), emb.images, "weak", coloring=col)


def test_oracle_examples():
    assert oracle_find_copy(catalog("diamond"), full_family(2), "weak") is not None
    O = catalog("crown", 3)
    fast = find_copy(O, full_family(3), "strong")
    slow = oracle_find_copy(O, full_family(3), "strong")
    assert (fast is None) == (slow is None)


def test_is_valid_embedding_rejects_bad_claims():
    D = catalog("diamond")
    assert is_valid_embedding(D, (0, 1, 2, 3), "strong")
    assert not is_valid_embedding(D, (0, 1, 1, 3), "weak")
    assert not is_valid_embedding(D, (0, 1, 3, 2), "weak")
    assert not is_valid_embedding(catalog("antichain", 2), (1, 3), "strong")
    assert is_valid_embedding(catalog("antichain", 2), (1, 3), "weak")


def test_bad_mode_rejected():
    with pytest.raises(BadParams):
        find_copy(catalog("chain", 2), layer(3, 1), "medium")


def test_coloring_validation():
    with pytest.raises(BadParams):
        Coloring(2, [0, 1, 2])
    with pytest.raises(BadParams):
        Coloring(1, [0, 2])


def test_max_rainbow_antichain():
    assert max_rainbow_antichain(all_distinct(3)) == 3
    assert max_rainbow_antichain(monochromatic(3)) == 1


POSETS5 = [parse_catalog_id(c) for c in all_catalog_ids(5)]


@given(st.sets(st.integers(0, 7)), st.sampled_from(POSETS5), st.sampled_from(["weak", "strong"]))
def test_agrees_with_oracle(members, P, mode):
    F = SetFamily(3, members)
    fast = find_copy(P, F, mode)
    slow = oracle_find_copy(P, F, mode)
    assert (fast is None) == (slow is None)
    if fast is not None:
        assert is_valid_embedding(P, fast.images, mode, family=F)


@given(st.sets(st.integers(0, 15), max_size=12), st.sampled_from(POSETS5))
def test_strong_implies_weak(members, P):
    F = SetFamily(4, members)
    if find_copy(P, F, "strong") is not None:
        assert find_copy(P, F, "weak") is not None


@given(st.sets(st.integers(0, 15), max_size=12), st.sampled_from(POSETS5), st.sampled_from(["weak", "strong"]))
def test_monotone_in_family(members, P, mode):
    F = SetFamily(4, members)
    G = SetFamily(4, set(members) | {0, 15})
    if find_copy(P, F, mode) is not None:
        assert find_copy(P, G, mode) is not None


@given(st.sets(st.integers(0, 15), max_size=12), st.sampled_from(POSETS5), st.sampled_from(["weak", "strong"]))
def test_complement_duality(members, P, mode):
    from poset_rainbow.poset import dual

    F = SetFamily(4, members)
    assert (find_copy(P, F, mode) is None) == (find_copy(dual(P), F.complemented(), mode) is None)
