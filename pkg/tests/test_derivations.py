import itertools

import pytest
from hypothesis import given, settings, strategies as st

from heaptruss.core import Endomap, heap_from_group
from heaptruss.corpus import corpus_trusses, ut2_truss
from heaptruss.derivations import (
    commutator_derivation,
    enumerate_derivations,
    heap_endomorphism_candidates,
    inner_derivation,
    is_derivation,
    pointwise_bracket,
)
from heaptruss.errors import InputError
from heaptruss.groups import cyclic_group, symmetric_group
from heaptruss.trusses import group_near_truss, zn_ring_truss

import oracles

TRUSSES = corpus_trusses()
UT2 = ut2_truss()


def test_z2_has_only_the_identity():
    der = enumerate_derivations(zn_ring_truss(2))
    assert der.members == [Endomap.identity(2)]


def test_z2_constant_zero_fails_at_first_pair():
    ok, w = is_derivation(zn_ring_truss(2), Endomap((0, 0)))
    assert not ok and w == (1, 1)
    ok, w = is_derivation(zn_ring_truss(2), Endomap((1, 0)))
    assert not ok


def test_non_morphism_has_no_witness_pair():
    ok, w = is_derivation(zn_ring_truss(3), Endomap((0, 0, 1)))
    assert not ok and w is None


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_derivations_match_brute_force(n):
    t = zn_ring_truss(n)
    got = [d.images for d in enumerate_derivations(t)]
    assert got == sorted(oracles.derivations(t.heap.table.tolist(), t.mul.table.tolist()))


def test_candidates_are_all_heap_endomorphisms():
    for n in (2, 3, 4, 5):
        P = heap_from_group(cyclic_group(n)).table.tolist()
        brute = [f for f in oracles.all_maps(n) if oracles.is_ternary_morphism(P, f)]
        got = [d.images for d in heap_endomorphism_candidates(zn_ring_truss(n))]
        assert got == sorted(brute)


def test_ut2_derivations_match_filtered_candidates():
    P, M = UT2.heap.table.tolist(), UT2.mul.table.tolist()
    n = UT2.size
    manual = []
    for d in heap_endomorphism_candidates(UT2):
        f = d.images
        if all(f[M[a][b]] == P[M[f[a]][b]][M[a][b]][M[a][f[b]]] for a in range(n) for b in range(n)):
            manual.append(d)
    assert enumerate_derivations(UT2).members == manual
    assert len(manual) > 1


@pytest.mark.parametrize("name", sorted(TRUSSES))
def test_closure_inner_and_commutators(name):
    t = TRUSSES[name]
    der = enumerate_derivations(t)
    for d1, d2, d3 in itertools.product(der.members, repeat=3):
        assert pointwise_bracket(t, d1, d2, d3) in der
    for a in range(t.size):
        assert inner_derivation(t, a) in der
    for d1, d2 in itertools.product(der.members, repeat=2):
        assert commutator_derivation(t, d1, d2) in der


def test_commutative_trusses_have_trivial_inner_derivations():
    for n in (2, 3, 4, 6):
        t = zn_ring_truss(n)
        assert all(inner_derivation(t, a) == Endomap.identity(n) for a in range(n))


def test_ut2_has_a_nontrivial_inner_derivation():
    inner = {inner_derivation(UT2, a) for a in range(UT2.size)}
    assert any(d != Endomap.identity(8) for d in inner)
    assert Endomap((0, 3, 2, 1, 6, 5, 4, 7)) in inner


def test_inputs_are_checked():
    with pytest.raises(InputError):
        enumerate_derivations(group_near_truss(symmetric_group(3)))
    with pytest.raises(InputError):
        inner_derivation(zn_ring_truss(3), 5)
    with pytest.raises(InputError):
        commutator_derivation(zn_ring_truss(2), Endomap((0, 0)), Endomap.identity(2))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_random_maps_agree_with_oracle(data):
    t = zn_ring_truss(4)
    f = tuple(data.draw(st.lists(st.integers(0, 3), min_size=4, max_size=4)))
    P, M = t.heap.table.tolist(), t.mul.table.tolist()
    expected = oracles.is_ternary_morphism(P, f) and all(
        f[M[a][b]] == P[M[f[a]][b]][M[a][b]][M[a][f[b]]] for a in range(4) for b in range(4))
    assert is_derivation(t, Endomap(f))[0] == expected
