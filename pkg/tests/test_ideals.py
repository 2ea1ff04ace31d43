import numpy as np
import pytest

from heaptruss.core import heap_from_group
from heaptruss.errors import InputError
from heaptruss.groups import cyclic_group, find_isomorphism, klein_group, symmetric_group
from heaptruss.ideals import (
    enumerate_ideals,
    enumerate_near_truss_congruences,
    ideal_closure,
    ideal_congruence_maps,
    is_jring_ideal,
    is_near_truss_ideal,
    jacobson_jring,
    jring_congruence,
    jring_from_retract,
    jring_lambda,
    validate_jring,
)
from heaptruss.subobjects import Subset, congruence_of_normal
from heaptruss.trusses import (
    find_skew_brace,
    group_near_truss,
    near_truss_from_skew_brace,
    ring_truss,
    ut2_z2_ring,
    zn_ring,
    zn_ring_truss,
)

import oracles

Z4 = zn_ring_truss(4)
NEAR_TRUSSES = {
    "z4": Z4,
    "z6": zn_ring_truss(6),
    "brace": near_truss_from_skew_brace(find_skew_brace(cyclic_group(4), klein_group())),
    "s3": group_near_truss(symmetric_group(3)),
}


def test_z4_ideal_reports():
    assert is_near_truss_ideal(Z4, Subset.of(4, [0, 2])).is_ideal
    assert is_near_truss_ideal(Z4, Subset.of(4, [1, 3])).is_ideal
    assert is_near_truss_ideal(Z4, Subset.of(4, [0])).is_ideal
    rep = is_near_truss_ideal(Z4, Subset.of(4, [0, 1]))
    assert not rep.subheap and rep.subheap_witness == (0, 1, 0)


def test_singleton_product_condition_by_hand():
    rep = is_near_truss_ideal(Z4, Subset.of(4, [1]))
    P, M = Z4.heap.table, Z4.mul.table
    by_hand = all(P[M[x, 1], M[x, 1], 1] == 1 for x in range(4))
    assert (rep.product_condition is None) == by_hand


@pytest.mark.parametrize("name", sorted(NEAR_TRUSSES))
def test_ideal_congruences_match_partition_oracle(name):
    nt = NEAR_TRUSSES[name]
    P, M = nt.heap.table.tolist(), nt.mul.table.tolist()
    got = {p.block_id for p in enumerate_near_truss_congruences(nt)}
    assert got == oracles.congruences(P, M)
    from_ideals = {congruence_of_normal(nt.heap, s).block_id for s in enumerate_ideals(nt)}
    assert from_ideals == got


@pytest.mark.parametrize("name", sorted(NEAR_TRUSSES))
def test_ideal_congruence_correspondence(name):
    nt = NEAR_TRUSSES[name]
    for e in range(nt.size):
        assert ideal_congruence_maps(nt, e).passed


def test_ideal_closure():
    assert ideal_closure(Z4, [2], 0) == Subset.of(4, [0, 2])
    assert ideal_closure(Z4, [], 1) == Subset.of(4, [1])
    assert ideal_closure(Z4, [1], 0) == Subset.full(4)
    with pytest.raises(InputError):
        ideal_closure(Z4, [], 7)


def test_ut2_ideals():
    t = ring_truss(*ut2_z2_ring())
    ideals = enumerate_ideals(t)
    assert len(ideals) == 17
    assert ideal_congruence_maps(t, 0).passed


def test_jacobson_jring():
    j = jacobson_jring(*zn_ring(4))
    rep = validate_jring(j)
    assert rep.passed and not rep.info["x0_is_0"] and rep.info["0x_is_x"]


def test_ring_is_jring():
    from heaptruss.ideals import JRing
    add, mul = zn_ring(4)
    rep = validate_jring(JRing(add, mul))
    assert rep.passed and rep.info["x0_is_0"]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_retract_jring_isomorphic_to_jacobson(n):
    j1 = jring_from_retract(zn_ring_truss(n), 1)
    j2 = jacobson_jring(*zn_ring(n))
    s = find_isomorphism([j1.add.op, j1.mul], [j2.add.op, j2.mul])
    assert s is not None
    assert s == oracles.find_bijection([j1.add.op.table.tolist(), j1.mul.table.tolist()],
                                       [j2.add.op.table.tolist(), j2.mul.table.tolist()])
    # x -> x - 1 is one isomorphism
    sigma = [(x - 1) % n for x in range(n)]
    assert np.array_equal(np.array(sigma)[j1.mul.table], j2.mul.table[np.ix_(sigma, sigma)])


def test_jring_ideals_and_lambda():
    j = jacobson_jring(*zn_ring(4))
    assert is_jring_ideal(j, Subset.of(4, [0, 2])).is_ideal
    assert not is_jring_ideal(j, Subset.of(4, [0, 1])).is_ideal
    assert str(jring_congruence(j, Subset.of(4, [0, 2]))) == "0,2|1,3"
    rep = jring_lambda(j)
    assert rep.passed
    assert [str(m) for m in rep.maps] == ["0 1 2 3", "0 2 0 2", "0 3 2 1", "0 0 0 0"]
    assert jring_lambda(j, Subset.of(4, [0, 2])).passed


def test_heap_of_jring_matches():
    j = jring_from_retract(zn_ring_truss(3), 0)
    assert heap_from_group(j.add) == zn_ring_truss(3).heap
