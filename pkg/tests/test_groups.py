import itertools

import numpy as np
import pytest

from heaptruss.errors import InputError, ResourceLimitError
from heaptruss.groups import (
    commutator_subgroup,
    cyclic_group,
    dihedral_group,
    direct_product,
    find_isomorphism,
    group_endomorphisms,
    is_isomorphism,
    is_normal_subgroup,
    klein_group,
    normal_closure,
    quaternion_group,
    subgroup_generated,
    symmetric_group,
)
from heaptruss.core import GroupView

import oracles


@pytest.mark.parametrize("g,order,abelian", [
    (cyclic_group(5), 5, True), (klein_group(), 4, True), (symmetric_group(3), 6, False),
    (dihedral_group(4), 8, False), (quaternion_group(), 8, False)])
def test_groups_valid(g, order, abelian):
    assert g.validate().passed
    assert g.size == order and g.is_abelian() == abelian


def test_from_table_rejects_non_groups():
    with pytest.raises(InputError):
        GroupView.from_table(np.zeros((2, 2), dtype=int))


def test_quaternion_has_unique_involution():
    q = quaternion_group()
    m = q.op.table
    involutions = [x for x in range(8) if x != q.identity and m[x, x] == q.identity]
    assert len(involutions) == 1


def test_subgroups_of_s3():
    s3 = symmetric_group(3)
    assert len(subgroup_generated(s3, [1])) in (2, 3)
    derived = commutator_subgroup(s3, range(6), range(6))
    assert len(derived) == 3 and is_normal_subgroup(s3, derived)
    assert normal_closure(s3, [s3.identity]) == (s3.identity,)


def _endos_oracle(g):
    m = g.op.table.tolist()
    return sorted(f for f in itertools.product(range(g.size), repeat=g.size)
                  if all(f[m[a][b]] == m[f[a]][f[b]] for a in range(g.size) for b in range(g.size)))


@pytest.mark.parametrize("g", [cyclic_group(4), klein_group(), symmetric_group(3), cyclic_group(6)])
def test_group_endomorphisms_match_brute_force(g):
    assert [f.images for f in group_endomorphisms(g)] == _endos_oracle(g)


def test_find_isomorphism_matches_oracle():
    a = direct_product(cyclic_group(2), cyclic_group(3)).op.table
    b = cyclic_group(6).op.table
    s = find_isomorphism([a], [b])
    assert s is not None and is_isomorphism(s, [a], [b])
    assert s == oracles.find_bijection([a.tolist()], [b.tolist()])
    assert find_isomorphism([klein_group().op], [cyclic_group(4).op]) is None


def test_find_isomorphism_size_cap():
    with pytest.raises(ResourceLimitError):
        find_isomorphism([cyclic_group(9).op], [cyclic_group(9).op], max_n=8)
