import itertools

import numpy as np
import pytest

from heaptruss.commutators import (
    build_huq_smith_example,
    connector_domain,
    cube_index,
    cube_near_truss,
    near_truss_commutators,
    smith_commutator_heap,
    smith_commutator_oracle,
)
from heaptruss.core import heap_from_group
from heaptruss.errors import InputError
from heaptruss.groups import cyclic_group, klein_group, symmetric_group
from heaptruss.subobjects import Partition, Subset, congruence_of_normal, enumerate_congruences
from heaptruss.trusses import validate_nt, zn_ring_truss
from heaptruss.ideals import enumerate_near_truss_congruences

import oracles

S3 = heap_from_group(symmetric_group(3))
SMALL = {
    "z2": heap_from_group(cyclic_group(2)),
    "z3": heap_from_group(cyclic_group(3)),
    "z4": heap_from_group(cyclic_group(4)),
    "klein": heap_from_group(klein_group()),
}


def test_s3_top_commutator_is_alternating_partition():
    top = Partition.one_block(6)
    c = smith_commutator_heap(S3, top, top)
    assert str(c) == "0,3,4|1,2,5"
    assert smith_commutator_oracle(S3, top, top) == c


def test_connector_domain_sizes():
    z4 = SMALL["z4"]
    half = Partition.from_blocks(4, [[0, 2], [1, 3]])
    d = connector_domain(z4, half, half)
    assert len(d) == 16 and d.passed
    a3 = Partition.from_blocks(6, [[0, 3, 4], [1, 2, 5]])
    assert len(connector_domain(S3, a3, a3)) == 54


@pytest.mark.parametrize("name", sorted(SMALL))
def test_fast_path_matches_naive_oracle(name):
    t = SMALL[name]
    P = t.table.tolist()
    congs = enumerate_congruences(t)
    for r, s in itertools.product(congs, congs):
        got = smith_commutator_heap(t, r, s)
        assert got.block_id == oracles.smith_commutator(P, list(r.block_id), list(s.block_id))


def test_abelian_heaps_have_trivial_commutators():
    for t in SMALL.values():
        top = Partition.one_block(t.size)
        assert smith_commutator_heap(t, top, top) == Partition.equality(t.size)


def test_rejects_non_congruence():
    with pytest.raises(InputError):
        smith_commutator_heap(SMALL["z4"], Partition.from_blocks(4, [[0, 1], [2, 3]]), Partition.one_block(4))


def test_near_truss_oracle_matches_naive_oracle():
    t = zn_ring_truss(4)
    P, M = t.heap.table.tolist(), t.mul.table.tolist()
    congs = enumerate_near_truss_congruences(t)
    for r, s in itertools.product(congs, congs):
        got = smith_commutator_oracle(t, r, s)
        assert got.block_id == oracles.smith_commutator(P, list(r.block_id), list(s.block_id), M)


def test_cube_indexing():
    assert cube_index(4, 1, 0, 0) == 16
    assert cube_index(4, 0, 2, 3) == 11


def test_small_cube_generators_match_oracle():
    ex = cube_near_truss(cyclic_group(2), [0, 1])
    nt = ex.near_truss
    assert validate_nt(nt).passed
    c = near_truss_commutators(nt, ex.base, ex.a, ex.b)
    ra = congruence_of_normal(nt.heap, ex.a)
    rb = congruence_of_normal(nt.heap, ex.b)
    assert smith_commutator_oracle(nt, ra, rb) == c.smith_congruence


def _cube_claims(m_group, k):
    ex = build_huq_smith_example(m_group, k)
    c = near_truss_commutators(ex.near_truss, ex.base, ex.a, ex.b)
    q = m_group.size
    z = m_group.identity
    k_line = {cube_index(q, x, z, z) for x in k}
    m_line = {cube_index(q, x, z, z) for x in range(q)}
    return ex, c, k_line, m_line


def test_cube_over_z4():
    ex, c, k_line, m_line = _cube_claims(cyclic_group(4), Subset.of(4, [0, 2]))
    assert ex.near_truss.size == 64
    assert set(c.huq_ideal) <= k_line
    assert set(c.smith_ideal) >= m_line
    assert c.smith_ideal != c.huq_ideal
    assert str(c.huq_ideal) == "0,32" and str(c.smith_ideal) == "0,16,32,48"


def test_cube_over_klein():
    _, c, k_line, m_line = _cube_claims(klein_group(), Subset.of(4, [0, 1]))
    assert set(c.huq_ideal) <= k_line and set(c.smith_ideal) >= m_line
    assert c.smith_ideal != c.huq_ideal


def test_cube_preconditions():
    with pytest.raises(InputError):
        build_huq_smith_example(cyclic_group(4), Subset.of(4, [0]))
    with pytest.raises(InputError):
        build_huq_smith_example(cyclic_group(4), Subset.of(4, [0, 1]))
    with pytest.raises(InputError):
        build_huq_smith_example(symmetric_group(3), Subset.of(6, [0]))


def test_commutator_ideals_need_ideals():
    t = zn_ring_truss(4)
    with pytest.raises(InputError):
        near_truss_commutators(t, 0, Subset.of(4, [0, 1]), Subset.full(4))
    c = near_truss_commutators(t, 0, Subset.full(4), Subset.full(4))
    assert c.huq_ideal.issubset(c.smith_ideal)
    assert np.array_equal(c.smith_congruence.labels, congruence_of_normal(t.heap, c.smith_ideal).labels)
