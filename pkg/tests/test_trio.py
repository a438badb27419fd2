import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SMALL_SPECS, all_subsets, gs, naive
from kemperman import (
    ContractError,
    EmptySetError,
    GroupSet,
    MalformedSetError,
    Similarity,
    Subgroup,
    Trio,
    apply_similarity,
    build_group,
    canonical_form,
    deficiency_pair,
    is_maximal,
    make_trio,
    maximal_supertrios,
    parse_trio,
    purify,
    saturate,
    trio_deficiency,
)
from kemperman.errors import CosetNotSplitError, NonCriticalSubgroupError, NotCriticalError
from kemperman.kernels import kernel, popcount
from kemperman.trio import PERMS, canonical_key

Z5, Z6, Z8 = (build_group(s) for s in ("Z5", "Z6", "Z8"))


def T(G, text):
    return parse_trio(text, G)


def test_make_trio_example():
    assert make_trio(gs(Z6, {0}), gs(Z6, {0, 1})).C == gs(Z6, {1, 2, 3, 4})


def test_make_trio_wraparound_example():
    # A+B = {0,1,2,3}; -(A+B) = {0,4,3,2}; the only element left is 1
    N = naive(Z5)
    assert N.third({0, 1}, {0, 1, 2}) == {1}
    assert make_trio(gs(Z5, {0, 1}), gs(Z5, {0, 1, 2})).C == gs(Z5, {1})


def test_make_trio_full_set_gives_trivial_trio():
    t = make_trio(Z6.set(range(6)), gs(Z6, {2}))
    assert not t.C and t.is_trivial


def test_make_trio_rejects_empty():
    with pytest.raises(EmptySetError):
        make_trio(Z6.set(), gs(Z6, {0}))


def test_trio_condition_enforced():
    with pytest.raises(ContractError):
        Trio(gs(Z6, {0}), gs(Z6, {0}), gs(Z6, {0}))


@pytest.mark.parametrize("text, d", [("{0};{0,1};{1,2,3,4}", 1), ("{0};{0,1};{1,2}", -1), ("{};{};{}", -6)])
def test_deficiency_examples(text, d):
    assert trio_deficiency(T(Z6, text)) == d


@pytest.mark.parametrize("text, expected", [
    ("{0,2};{0,1,3,5};{2}", True),
    ("{0};{0,1};{1,2}", False),
    ("{0};{0,1};{1,2,3,4}", True),
])
def test_is_maximal_examples(text, expected):
    assert is_maximal(T(Z6, text)) is expected


def test_saturate_examples():
    assert saturate(T(Z6, "{0};{0,1};{1,2}")) == T(Z6, "{0};{0,1};{1,2,3,4}")
    t = T(Z8, "{0,1,5};{0,1,5};{4,1,5}")
    assert is_maximal(t) and saturate(t) == t


def test_maximal_supertrios_cover_every_pass_order():
    t = T(Z6, "{0};{};{}")
    found = maximal_supertrios(t)
    assert len(found) == len(set(found))
    assert all(is_maximal(s) and t <= s for s in found)
    assert saturate(t) in found


def test_similarity_examples():
    t = T(Z6, "{0};{0,1};{1,2,3,4}")
    swapped = apply_similarity(t, Similarity((1, 0, 2)))
    assert swapped == T(Z6, "{0,1};{0};{1,2,3,4}")
    moved = apply_similarity(t, Similarity.pair_shift(Z6, 1))
    assert moved == T(Z6, "{1};{5,0};{1,2,3,4}")
    assert trio_deficiency(moved) == trio_deficiency(t)
    assert apply_similarity(t, Similarity()) == t


def test_similarity_shifts_must_cancel():
    with pytest.raises(ContractError):
        apply_similarity(T(Z6, "{0};{0};{1}"), Similarity((0, 1, 2), (1, 0, 0)))


def test_purify_example():
    t = T(Z6, "{0,3};{0,1,3};{1,4}")
    out = purify(t, gs(Z6, {0, 3}), 1)
    assert out == T(Z6, "{0,3};{0,1,3,4};{1,4}")
    assert (trio_deficiency(t), trio_deficiency(out)) == (1, 2)


def test_purify_preconditions_are_distinct():
    t = T(Z6, "{0,3};{0,1,3};{1,4}")
    with pytest.raises(CosetNotSplitError):
        purify(t, gs(Z6, {0, 3}), 0)
    with pytest.raises(NonCriticalSubgroupError):
        purify(T(Z6, "{0,1};{0,1};{1,2,3}"), gs(Z6, {0, 2, 4}), 1)
    with pytest.raises(NotCriticalError):
        purify(T(Z6, "{0,3};{0,1};{1}"), gs(Z6, {0, 3}), 1)


def test_parse_trio_needs_three_parts():
    with pytest.raises(MalformedSetError):
        parse_trio("{0};{1}", Z6)


def test_subgroup_universe_trio():
    H = Subgroup.checked(Z6, Z6.mask_of([0, 2, 4]))
    t = Trio(gs(Z6, {0, 2}), gs(Z6, {0}), gs(Z6, {2}), H)
    assert t.order == 3 and trio_deficiency(t) == 1 and is_maximal(t)
    with pytest.raises(ContractError):
        Trio(gs(Z6, {1}), gs(Z6, {0}), gs(Z6, {2}), H)


# -- exhaustive properties ---------------------------------------------------------------


@pytest.mark.parametrize("spec", SMALL_SPECS[1:])
def test_make_trio_matches_pair_criticality(spec):
    """C is the largest third set and delta(A,B) = delta(A,B,C) for every nonempty pair."""
    G = build_group(spec)
    K = kernel(G)
    n = G.order
    cards = K.all_popcounts
    for a in range(1, 1 << n):
        S = K.sums_over_all(a)
        C = K.full & ~K.neg(S)
        assert ((K.sumset(S, C) & 1) == 0).all()
        assert (a.bit_count() + cards + popcount(C) - n == a.bit_count() + cards - popcount(S)).all()
    if n <= 6:
        N = naive(G)
        for A, B in itertools.product(all_subsets(n), repeat=2):
            if A and B:
                t = make_trio(gs(G, A), gs(G, B))
                assert set(t.C) == N.third(A, B)
                assert trio_deficiency(t) == deficiency_pair(gs(G, A), gs(G, B))


def _all_trios(G):
    K = kernel(G)
    for a in range(1 << G.order):
        S = K.sums_over_all(a)
        Cmax = (K.full & ~K.neg(S)).tolist()
        for b in range(1 << G.order):
            cm = Cmax[b] if a else G.full
            c = cm
            while True:
                yield a, b, c
                if not c:
                    break
                c = (c - 1) & cm


@pytest.mark.parametrize("spec", ["Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "Z7", "Z8", "Z2xZ4", "Z2xZ2xZ2"])
def test_saturate_exhaustive(spec):
    G = build_group(spec)
    seen = 0
    for a, b, c in _all_trios(G):
        t = Trio.from_masks(G, a, b, c)
        s = saturate(t)
        sa, sb, sc = s.masks
        assert a & ~sa == 0 and b & ~sb == 0 and c & ~sc == 0
        assert is_maximal(s)
        assert saturate(s) == s
        assert not G.sumset_mask(G.sumset_mask(sa, sb), sc) & 1
        seen += 1
    assert seen > 0


@st.composite
def trio_and_similarity(draw):
    G = build_group(draw(st.sampled_from(["Z6", "Z7", "Z8", "Z2xZ4", "Z9", "Z3xZ3", "Z10", "Z12", "Z2xZ6"])))
    a = draw(st.integers(1, G.full))
    b = draw(st.integers(1, G.full))
    t = make_trio(GroupSet(G, a), GroupSet(G, b))
    if draw(st.booleans()):
        t = saturate(t)
    perm = draw(st.sampled_from(PERMS))
    x = draw(st.integers(0, G.order - 1))
    y = draw(st.integers(0, G.order - 1))
    return t, Similarity(perm, (x, y, G.neg(G.add(x, y))))


@settings(max_examples=300)
@given(trio_and_similarity())
def test_similarity_invariance(data):
    t, s = data
    u = apply_similarity(t, s)
    assert trio_deficiency(u) == trio_deficiency(t)
    assert is_maximal(u) == is_maximal(t)
    assert (trio_deficiency(u) > 0) == (trio_deficiency(t) > 0)
    G = t.group
    back = apply_similarity(u, s.inverse(G))
    assert back == t
    assert canonical_key(u) == canonical_key(t)


@settings(max_examples=200)
@given(trio_and_similarity(), st.sampled_from(PERMS), st.integers(0, 11))
def test_similarity_composition(data, perm, g):
    t, s = data
    G = t.group
    g %= G.order
    other = Similarity(perm, (g, G.neg(g), 0))
    assert apply_similarity(apply_similarity(t, s), other) == apply_similarity(t, s.then(other, G))


@settings(max_examples=100)
@given(trio_and_similarity())
def test_canonical_form_is_least_in_orbit(data):
    t, _ = data
    G = t.group
    rep, sim = canonical_form(t)
    assert apply_similarity(t, sim) == rep
    orbit = {
        apply_similarity(t, Similarity(perm, (x, y, G.neg(G.add(x, y))))).masks
        for perm in PERMS
        for x in range(G.order)
        for y in range(G.order)
    }
    assert rep.masks == min(orbit)
