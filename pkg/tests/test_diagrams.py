from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gpcat import diagrams as dg
from gpcat.errors import CapExceeded, ParseError, TypeMismatch

from conftest import C1, C2, C3, S3
import oracles


def P(text, group=C1):
    return dg.parse_diagram(text, group)


def key_of(p):
    return oracles.gauge_orbit_key(list(p.blocks), list(p.labels), p.group.mul)


# ------------------------------------------------------------ canonical form

def test_identity_strand_gauge():
    p = dg.canonicalize(1, 1, [0, 0], [2, 2], C3)
    assert p.labels == (0, 0) and p == dg.identity(1, C3)


def test_singletons_forced_to_identity():
    p = dg.canonicalize(2, 1, [5, 7, 9], [1, 2, 1], C3)
    assert p.labels == (0, 0, 0) and p.blocks == (0, 1, 2)


def test_pictured_four_by_four_equivalence():
    # parts {1,3,4'}, {2,1'}, {3',2'}, {4}; second labelling differs by per-part factors
    part_of = [0, 1, 0, 3, 1, 2, 2, 0]
    rng = random.Random(5)
    a = [rng.randrange(6) for _ in range(8)]
    factor = {0: 3, 1: 4, 2: 1, 3: 5}
    b = [S3.mul[factor[pb]][g] for pb, g in zip(part_of, a)]
    assert a != b
    assert dg.equivalent(4, 4, part_of, a, part_of, b, S3)
    assert dg.canonicalize(4, 4, part_of, a, S3) == dg.canonicalize(4, 4, part_of, b, S3)


def test_non_minimum_vertex_change_is_not_equivalent():
    a, b = [0, 0], [0, 1]
    assert not dg.equivalent(1, 1, [0, 0], a, [0, 0], b, C2)
    assert not oracles.brute_equivalent([0, 0], a, [0, 0], b, C2.mul)


def test_canonicalize_rejects_bad_input():
    with pytest.raises(TypeMismatch):
        dg.canonicalize(1, 1, [0], [0, 0], C2)
    with pytest.raises(ValueError):
        dg.canonicalize(1, 1, [0, 0], [0, 2], C2)


raw = st.integers(0, 3).flatmap(
    lambda k: st.integers(0, 3).flatmap(
        lambda l: st.tuples(st.just(k), st.just(l),
                            st.lists(st.integers(0, 4), min_size=k + l, max_size=k + l),
                            st.lists(st.integers(0, 5), min_size=k + l, max_size=k + l))))


@settings(max_examples=200, deadline=None)
@given(raw)
def test_canonicalize_idempotent_and_matches_orbit_oracle(data):
    k, l, part_of, labels = data
    p = dg.canonicalize(k, l, part_of, labels, S3)
    assert dg.canonicalize(k, l, p.blocks, p.labels, S3) == p
    assert key_of(p) == oracles.gauge_orbit_key(part_of, labels, S3.mul)
    # parts are numbered by first (minimum) vertex
    assert list(dict.fromkeys(p.blocks)) == list(range(p.nparts))
    for part in p.parts:
        assert p.labels[part[0]] == 0


# ---------------------------------------------------------------- composition

def test_identity_compose():
    for k in range(4):
        res = dg.compose(dg.identity(k, C3), dg.identity(k, C3))
        assert res.alpha == 0 and res.diagram == dg.identity(k, C3)


def test_stacking_example_with_two_closed_components():
    p = P("4 -> 11; parts: [4 10' 6' | 2 9' 7' 8' | 3 5' | 4' 2' | 1 1' | 11' | 3']; labels:")
    q = P("11 -> 5; parts: [11 10 8 5' | 9 6 4' | 5 1 1' | 3' 2' | 7 | 4 | 3 | 2]; labels:")
    res = dg.compose(q, p)
    assert res.alpha == 2
    assert res.diagram == P("4 -> 5; parts: [1 3 1' | 4 2 5' 4' | 3' 2']; labels:")


def test_loop_value():
    res = dg.compose(dg.pin_top(C2), dg.pin_bottom(C2))
    assert res.alpha == 1 and res.diagram == dg.empty(C2)


@pytest.mark.parametrize("c", [0, 1])
def test_cap_on_two_points_is_compatible_for_both_labels(c):
    q = dg.canonicalize(2, 0, [0, 0], [0, c], C2)
    p = dg.canonicalize(0, 2, [0, 1], [0, 0], C2)
    res = dg.compose(q, p)
    assert res.alpha == 1 and res.diagram == dg.empty(C2)


def test_incompatible_labels_give_zero():
    # a bubble carrying tokens 0 and 1 closes a cycle with a label mismatch
    bubble_top = dg.compose(dg.merge(C2), dg.tensor(dg.token(0, C2), dg.token(1, C2))).diagram
    assert dg.compose(bubble_top, dg.split(C2)).is_zero


def test_compose_type_and_group_mismatch():
    with pytest.raises(TypeMismatch, match="1->0 after 1->0"):
        dg.compose(dg.pin_top(C2), dg.pin_top(C2))
    with pytest.raises(TypeMismatch, match="group"):
        dg.compose(dg.identity(1, C2), dg.identity(1, C3))


def _oracle_compose(q, p):
    out = oracles.brute_compose(q.k, q.l, list(q.blocks), list(q.labels),
                                p.k, p.l, list(p.blocks), list(p.labels), p.group.mul)
    if out is None:
        return None
    alpha, part_of, labels = out
    return alpha, oracles.gauge_orbit_key(part_of, labels, p.group.mul)


@pytest.mark.parametrize("group", [C2, C3, S3], ids=lambda g: g.name)
def test_compose_matches_representative_search(group):
    rng = random.Random(11)
    for _ in range(150):
        k, l, m = rng.randint(0, 2), rng.randint(0, 3), rng.randint(0, 2)
        p = _random(k, l, group, rng)
        q = _random(l, m, group, rng)
        res = dg.compose(q, p)
        expected = _oracle_compose(q, p)
        if expected is None:
            assert res.is_zero
        else:
            assert not res.is_zero
            assert (res.alpha, key_of(res.diagram)) == expected


def _random(k, l, group, rng):
    return dg.canonicalize(k, l, [rng.randrange(k + l) for _ in range(k + l)],
                           [rng.randrange(group.order) for _ in range(k + l)], group)


def test_compose_is_representative_independent():
    rng = random.Random(3)
    for _ in range(200):
        p = _random(2, 2, S3, rng)
        q = _random(2, 1, S3, rng)
        # re-gauge the raw data by random per-part factors before canonicalizing
        def regauge(x):
            f = [rng.randrange(6) for _ in range(x.nparts)]
            labs = [S3.mul[f[b]][g] for b, g in zip(x.blocks, x.labels)]
            return dg.canonicalize(x.k, x.l, list(x.blocks), labs, S3)
        assert dg.compose(regauge(q), regauge(p)) == dg.compose(q, p)


# --------------------------------------------------------- tensor and dual

def test_tensor_examples():
    x = dg.merge(C2)
    assert dg.tensor(x, dg.empty(C2)) == x == dg.tensor(dg.empty(C2), x)
    assert dg.tensor(dg.identity(1, C2), dg.identity(1, C2)) == dg.identity(2, C2)
    t = dg.tensor(dg.pin_bottom(C2), dg.pin_top(C2))
    assert t == P("1 -> 1; parts: [1 | 1']; labels:", C2)
    assert t in dg.enumerate_diagrams(1, 1, C2)


def test_tensor_puts_second_factor_on_the_right():
    # pin_top on the right consumes bottom vertex 1
    t = dg.tensor(dg.identity(1, C1), dg.pin_top(C1))
    assert t == P("2 -> 1; parts: [1 | 2 1']; labels:")


def test_dual_examples():
    for k in range(4):
        assert dg.dual(dg.identity(k, S3)) == dg.identity(k, S3)
    assert dg.dual(dg.merge(S3)) == dg.split(S3)
    for g in S3.elements:
        assert dg.dual(dg.token(g, S3)) == dg.token(S3.inv[g], S3)
    assert dg.dual(dg.crossing(S3)) == dg.crossing(S3)
    assert dg.dual(dg.pin_top(S3)) == dg.pin_bottom(S3)


def test_dual_reverses_tensor_order():
    rng = random.Random(2)
    for _ in range(100):
        a, b = _random(1, 2, S3, rng), _random(2, 1, S3, rng)
        assert dg.dual(dg.tensor(a, b)) == dg.tensor(dg.dual(b), dg.dual(a))


def test_flip_is_an_involution():
    rng = random.Random(4)
    for _ in range(50):
        p = _random(2, 3, S3, rng)
        assert dg.flip(dg.flip(p)) == p and dg.flip(p).dtype == dg.DiagramType(3, 2)


# --------------------------------------------------------------- generators

def test_generator_shapes():
    assert dg.token(0, S3) == dg.identity(1, S3)
    assert dg.crossing(S3) == dg.permutation([1, 0], S3)
    m = dg.merge(S3)
    assert (m.k, m.l, m.nparts, any(m.labels)) == (2, 1, 1, False)
    assert dg.generator("token", S3, 2) == dg.token(2, S3)
    assert dg.generator("identity", S3, 3) == dg.identity(3, S3)
    with pytest.raises(ValueError):
        dg.permutation([0, 0], S3)
    with pytest.raises(ValueError):
        dg.generator("cup", S3)


def test_as_permutation():
    for pi in itertools.permutations(range(3)):
        assert dg.as_permutation(dg.permutation(pi, C2)) == pi
    assert dg.as_permutation(dg.merge(C2)) is None
    assert dg.as_permutation(dg.token(1, C2)) is None


# -------------------------------------------------------------- enumeration

def test_enumeration_counts():
    assert len(dg.enumerate_diagrams(2, 2, C1)) == 15
    assert len(dg.enumerate_diagrams(1, 1, C2)) == 3
    assert len(dg.enumerate_diagrams(2, 2, C2)) == 49


def test_enumeration_order_is_growth_string_order():
    ds = dg.enumerate_diagrams(1, 2, C2)
    keys = [(p.blocks, p.labels) for p in ds]
    assert keys == sorted(keys)
    assert len(set(ds)) == len(ds)


@pytest.mark.parametrize("n", range(7))
def test_set_partitions_match_insertion_oracle(n):
    ours = list(dg.set_partitions(n))
    assert len(ours) == oracles.bell(n)
    assert len(set(ours)) == len(ours)


def test_enumeration_caps():
    with pytest.raises(CapExceeded):
        dg.enumerate_diagrams(5, 4, C1)
    with pytest.raises(CapExceeded):
        dg.enumerate_diagrams(2, 2, S3, cap=100)


# --------------------------------------------------------------- coarsening

def test_coarsening_examples():
    assert dg.coarsenings(dg.merge(C2)) == []
    singles = P("1 -> 1; parts: [1 | 1']; labels:")
    assert dg.coarsenings(singles) == [dg.identity(1, C1)]
    for k, l in [(1, 2), (2, 2), (3, 1)]:
        p = dg.canonicalize(k, l, list(range(k + l)), [0] * (k + l), C1)
        assert len(dg.coarsenings(p)) == oracles.bell(k + l) - 1


def test_coarsenings_carry_every_representative():
    # over C2 the two singletons coarsen to both labelled strands
    singles = P("1 -> 1; parts: [1 | 1']; labels:", C2)
    assert set(dg.coarsenings(singles)) == {dg.token(0, C2), dg.token(1, C2)}
    for q in dg.coarsenings(singles):
        assert dg.is_coarser_or_equal(q, singles)
    assert not dg.is_coarser_or_equal(singles, dg.token(1, C2))


def test_coarsening_relation_brute_force():
    for p in dg.enumerate_diagrams(1, 2, C2):
        above = set(dg.coarsenings(p))
        for q in dg.enumerate_diagrams(1, 2, C2):
            if q == p:
                continue
            assert (q in above) == dg.is_coarser_or_equal(q, p)


# ---------------------------------------------------------------- planarity

def test_tensor_planar():
    assert dg.is_tensor_planar(dg.identity(3, C1))
    assert not dg.is_tensor_planar(dg.crossing(C1))
    assert dg.is_tensor_planar(dg.tensor(dg.merge(C1), dg.split(C1)))


# ------------------------------------------------------------------ grammar

def test_parse_and_format():
    p = P("2 -> 1; parts: [1 2 1']; labels: 2:1", C2)
    assert str(p) == "2 -> 1; parts: [1 2 1']; labels: 2:1"
    assert P("0 -> 0; parts: []; labels:") == dg.empty(C1)
    assert P("1 -> 1; parts: [1' 1]; labels: 1:1 1':1", C2) == dg.identity(1, C2)


@pytest.mark.parametrize("text", [
    "1 -> 1; parts: [1]; labels:",
    "1 -> 1; parts: [1 1' | 1]; labels:",
    "1 -> 1; parts: [1 2']; labels:",
    "1 -> 1; parts: [1 1']; labels: 1:7",
    "1 -> 1; parts: [1 1']; labels: 1=1",
    "one -> 1; parts: [1 1']; labels:",
    "1 -> 1; parts: [1 | | 1']; labels:",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        P(text, C2)


@pytest.mark.parametrize("group", [C2, S3], ids=lambda g: g.name)
def test_round_trip_every_small_diagram(group):
    for k in range(3):
        for l in range(3 - k):
            for p in dg.enumerate_diagrams(k, l, group):
                assert dg.parse_diagram(str(p), group) == p
