import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import MID_SPECS, SMALL_SPECS, naive
from kemperman import (
    ContractError,
    GroupOrderError,
    GroupSet,
    NotSubgroupError,
    Subgroup,
    build_group,
    enumerate_subgroups,
    parse_group_spec,
    quotient,
)


def test_cyclic_arithmetic():
    G = build_group("Z5")
    assert G.order == 5
    assert G.add(1, 4) == 0


def test_direct_sum_arithmetic():
    G = build_group("Z2xZ4")
    assert G.order == 8
    x = G.index((1, 0))
    assert G.coords(G.add(x, x)) == (0, 0)
    assert G.coords(G.neg(G.index((1, 3)))) == (1, 1)


def test_trivial_group_from_empty_spec():
    G = build_group("")
    assert G.order == 1
    assert build_group("Z1") == G
    assert G.spec == "Z1"


@pytest.mark.parametrize("text, factors", [("Z6", (6,)), ("z2XZ4", (2, 4)), ("Z1xZ3", (3,)), ("", ())])
def test_spec_grammar(text, factors):
    assert parse_group_spec(text) == factors


@pytest.mark.parametrize("text", ["Z", "Z2+Z4", "Z 2", "Q8", "Z0"])
def test_bad_specs_rejected(text):
    with pytest.raises(ContractError):
        build_group(text)


def test_order_overflow_rejected():
    with pytest.raises(GroupOrderError):
        build_group("Z2xZ4xZ16xZ2")


def test_z6_element_ops():
    G = build_group("Z6")
    assert G.add(4, 5) == 3
    assert G.neg(2) == 4


def test_out_of_range_element():
    G = build_group("Z6")
    with pytest.raises(ContractError):
        G.add(6, 0)
    with pytest.raises(ContractError):
        G.neg(-1)


def test_mixed_radix_is_little_endian():
    G = build_group("Z2xZ4")
    assert [G.coords(i) for i in range(4)] == [(0, 0), (1, 0), (0, 1), (1, 1)]


@pytest.mark.parametrize("spec", MID_SPECS)
def test_arithmetic_matches_naive_model(spec):
    G = build_group(spec)
    N = naive(G)
    for x, y in itertools.product(range(G.order), repeat=2):
        assert G.add(x, y) == N.add(x, y)
    for x in range(G.order):
        assert G.neg(x) == N.neg(x)


@given(st.sampled_from(MID_SPECS[1:]), st.data())
def test_group_axioms(spec, data):
    G = build_group(spec)
    x, y, z = (data.draw(st.integers(0, G.order - 1)) for _ in range(3))
    assert G.add(x, y) == G.add(y, x)
    assert G.add(G.add(x, y), z) == G.add(x, G.add(y, z))
    assert G.neg(G.add(x, y)) == G.add(G.neg(x), G.neg(y))
    assert G.add(x, 0) == x


@given(st.sampled_from(MID_SPECS[1:]), st.data())
def test_translate_and_negate_bitsets(spec, data):
    G = build_group(spec)
    m = data.draw(st.integers(0, G.full))
    g = data.draw(st.integers(0, G.order - 1))
    N = naive(G)
    A = {i for i in range(G.order) if m >> i & 1}
    assert set(GroupSet(G, G.translate(m, g))) == N.shift(A, g)
    assert set(GroupSet(G, G.neg_mask(m))) == N.negset(A)


@pytest.mark.parametrize("spec, count", [("Z4", 3), ("Z2xZ2", 5), ("Z1", 1), ("Z2xZ2xZ2", 16), ("Z12", 6), ("Z2xZ6", 10)])
def test_subgroup_counts(spec, count):
    assert len(enumerate_subgroups(build_group(spec))) == count


def test_z4_subgroups_sorted():
    subs = enumerate_subgroups(build_group("Z4"))
    assert [sorted(H) for H in subs] == [[0], [0, 2], [0, 1, 2, 3]]


@pytest.mark.parametrize("spec", MID_SPECS + ["Z16", "Z2xZ8", "Z4xZ4", "Z2xZ2xZ4"])
def test_subgroups_match_independent_enumerator(spec):
    G = build_group(spec)
    N = naive(G)
    ours = [frozenset(H) for H in enumerate_subgroups(G)]
    assert len(ours) == len(set(ours))
    assert set(ours) == N.subgroups()
    for H in ours:
        assert G.order % len(H) == 0
        assert N.is_subgroup(H)
    keys = [(len(H), sum(1 << x for x in H)) for H in ours]
    assert keys == sorted(keys)


def test_quotient_z6_mod_order_two():
    G = build_group("Z6")
    q = quotient(G, Subgroup.checked(G, G.mask_of([0, 3])))
    assert q.order == 3
    assert q.is_cyclic
    assert q.generator_representatives() == [1, 2]


def test_quotient_by_trivial_subgroup():
    G = build_group("Z6")
    q = quotient(G, G.trivial())
    assert q.order == 6 and q.is_cyclic
    assert q.quotient_group.factors == (6,)


def test_quotient_klein():
    G = build_group("Z2xZ2")
    H = Subgroup.checked(G, G.mask_of([0, G.index((1, 0))]))
    q = quotient(G, H)
    assert q.order == 2


def test_quotient_rejects_non_subgroup():
    G = build_group("Z6")
    with pytest.raises(NotSubgroupError):
        quotient(G, GroupSet.of(G, [0, 1]))


@pytest.mark.parametrize("spec", ["Z8", "Z2xZ4", "Z12", "Z2xZ6", "Z16", "Z4xZ4", "Z2xZ8"])
def test_quotient_is_homomorphism_with_even_blocks(spec):
    G = build_group(spec)
    for H in enumerate_subgroups(G):
        q = quotient(G, H)
        Q = q.quotient_group
        assert Q.order * H.order == G.order
        assert sorted(bin(c).count("1") for c in q.cosets) == [H.order] * q.order
        assert sum(q.cosets) == G.full
        for x, y in itertools.product(range(G.order), repeat=2):
            assert q.phi(G.add(x, y)) == Q.add(q.phi(x), q.phi(y))


@pytest.mark.parametrize("spec", ["Z12", "Z2xZ6", "Z3xZ3"])
def test_quotient_generators_generate(spec):
    G = build_group(spec)
    for H in enumerate_subgroups(G):
        q = quotient(G, H)
        for cid in range(q.order):
            r = q.representative(cid)
            reached = {q.coset_id(G.multiple(k, r)) for k in range(q.order)}
            assert (len(reached) == q.order) == (cid in q.generators)
