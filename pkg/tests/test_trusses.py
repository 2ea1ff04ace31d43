import itertools

import numpy as np
import pytest

from heaptruss.core import BinaryTable, Endomap, chain_join, chain_meet, heap_from_group, semiheap_from_join_lattice
from heaptruss.errors import InputError, ResourceLimitError
from heaptruss.groups import cyclic_group, find_isomorphism, klein_group, symmetric_group
from heaptruss.trusses import (
    NearTruss,
    SkewBrace,
    embed_in_MX,
    endomorphism_truss,
    find_skew_brace,
    group_near_truss,
    induced_near_ring,
    jacobson_mul,
    lambda_y_action,
    left_projection_semiheap,
    map_near_truss_MX,
    mu_rho_check,
    multiplication_mod,
    near_truss_from_ring_or_nearring,
    near_truss_from_skew_brace,
    ring_truss,
    ut2_z2_ring,
    validate_near_truss,
    validate_nt,
    validate_semi_near_truss,
    validate_skew_brace,
    zn_ring,
    zn_ring_truss,
)

import oracles


def _distributive(P, M, side):
    n = len(P)
    r = range(n)
    if side == "left":
        return all(M[x][P[a][b][c]] == P[M[x][a]][M[x][b]][M[x][c]] for x in r for a in r for b in r for c in r)
    return all(M[P[a][b][c]][x] == P[M[a][x]][M[b][x]][M[c][x]] for x in r for a in r for b in r for c in r)


def _ut2():
    return ring_truss(*ut2_z2_ring())


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_zn_ring_trusses(n):
    t = zn_ring_truss(n)
    rep = validate_nt(t)
    assert rep.passed and rep.kind == "truss" and rep.info["truss"]
    P, M = t.heap.table.tolist(), t.mul.table.tolist()
    assert _distributive(P, M, "left") and _distributive(P, M, "right")


def test_ut2_is_a_noncommutative_truss():
    t = _ut2()
    assert validate_nt(t).passed
    assert not t.mul.is_commutative()


def test_ring_checks():
    _, checks = near_truss_from_ring_or_nearring(*zn_ring(4))
    assert checks == {"b0_is_addition": True, "unit": 1, "b1_to_addition": True, "mul_to_jacobson": True}
    _, checks = near_truss_from_ring_or_nearring(*ut2_z2_ring())
    assert checks["unit"] == 5 and checks["mul_to_jacobson"]


def test_skew_brace_near_truss_is_left_only():
    b = find_skew_brace(cyclic_group(4), klein_group())
    assert b is not None and validate_skew_brace(b).passed
    nt = near_truss_from_skew_brace(b)
    rep = validate_nt(nt)
    assert rep.passed
    P, M = nt.heap.table.tolist(), nt.mul.table.tolist()
    assert _distributive(P, M, "left")
    assert rep.info["right_distributive"] == _distributive(P, M, "right")


def test_skew_brace_circle_is_klein():
    b = find_skew_brace(cyclic_group(4), klein_group())
    assert find_isomorphism([b.circ.op], [klein_group().op]) is not None
    # a ∘ b = a + b + 2ab on Z4
    assert b.circ.op.table.tolist() == [[(x + y + 2 * x * y) % 4 for y in range(4)] for x in range(4)]


def test_distributivity_witness():
    heap = heap_from_group(cyclic_group(3))
    mul = BinaryTable.from_function(3, lambda a, b: (a * b + 1) % 3)
    rep = validate_near_truss(heap, mul, "left")
    assert not rep.passed
    assert rep.info["left_distributive"] == _distributive(heap.table.tolist(), mul.table.tolist(), "left")


def test_retract_distributivity_agrees():
    for t in (zn_ring_truss(4), _ut2(), group_near_truss(symmetric_group(3))):
        assert validate_nt(t).info["retract_distributivity_agrees"]


def test_bad_side():
    with pytest.raises(InputError):
        NearTruss(heap_from_group(cyclic_group(2)), multiplication_mod(2), "up")


def test_semi_near_trusses():
    assert validate_semi_near_truss(left_projection_semiheap(3), multiplication_mod(3)).passed
    assert validate_semi_near_truss(semiheap_from_join_lattice(chain_join(3)), chain_meet(3)).passed


def test_jacobson_circle():
    add, mul = zn_ring(5)
    c = jacobson_mul(add, mul).table
    assert all(c[x, y] == (x + y + x * y) % 5 for x in range(5) for y in range(5))


def test_maps_on_two_points_are_left_distributive():
    # every self-map of a 2-element heap is affine, so left distributivity holds there
    rep = map_near_truss_MX(heap_from_group(cyclic_group(2))).validate()
    assert rep.passed and rep.info["left_distributive"] and rep.info["mode"] == "exhaustive"


def test_maps_on_three_points_fail_left_distributivity():
    rep = map_near_truss_MX(heap_from_group(cyclic_group(3))).validate()
    assert rep.passed and not rep.info["left_distributive"]
    f, g, h, q = (np.array(m) for m in rep.info["left_distributivity_witness"])
    P = heap_from_group(cyclic_group(3)).table
    assert not np.array_equal(q[P[f, g, h]], P[q[f], q[g], q[h]])


def test_maps_sampled_mode_is_seeded():
    mx = map_near_truss_MX(heap_from_group(cyclic_group(4)))
    a = mx.validate(samples=10, seed=3)
    b = mx.validate(samples=10, seed=3)
    assert a.info == b.info and a.info["mode"] == "sampled(10, seed=3)"
    with pytest.raises(ResourceLimitError):
        mx.validate(exhaustive=True)


@pytest.mark.parametrize("n,m", [(2, 3), (3, 3), (4, 3), (3, 2)])
def test_embedding(n, m):
    rep = embed_in_MX(zn_ring_truss(n).opposite(), m)
    assert rep.passed and rep.x_size == n * m


def test_embedding_rejects_left_near_truss():
    with pytest.raises(InputError):
        embed_in_MX(near_truss_from_skew_brace(find_skew_brace(cyclic_group(4), klein_group())))


@pytest.mark.parametrize("t", [zn_ring_truss(4), _ut2(), group_near_truss(symmetric_group(3))])
def test_lambda_action(t):
    for y in range(t.size):
        assert lambda_y_action(t, y).passed


def test_lambda_by_hand_on_z4():
    rep = lambda_y_action(zn_ring_truss(4), 0)
    assert [str(m) for m in rep.maps] == ["0 0 0 0", "0 1 2 3", "0 2 0 2", "0 3 2 1"]


def test_induced_product_at_right_zero():
    r = induced_near_ring(zn_ring_truss(4), 0)
    assert r.right_zero and r.report.passed and r.classification.passed


def test_induced_product_away_from_right_zero_is_not_associative():
    # m_1(x, z) = 1 - x + xz: m_1(m_1(0, b), c) = c but m_1(0, m_1(b, c)) = 1
    r = induced_near_ring(zn_ring_truss(4), 1)
    assert r.report.laws() == ["mul_associativity"]
    m = r.table.table
    assert m[m[0, 0], 0] != m[0, m[0, 0]]


def test_group_near_truss_is_skew_brace_at_identity():
    g = symmetric_group(3)
    r = induced_near_ring(group_near_truss(g), g.identity)
    assert r.group_identity and r.classification.passed


def _affine_count(n):
    return sum(1 for f in itertools.product(range(n), repeat=n)
               if oracles.is_ternary_morphism(oracles.group_heap(oracles.cyclic_mul(n)), f))


@pytest.mark.parametrize("g,count", [(cyclic_group(2), 4), (cyclic_group(3), 9), (cyclic_group(4), 16)])
def test_endomorphism_truss(g, count):
    e = endomorphism_truss(heap_from_group(g))
    assert len(e.maps) == count == _affine_count(g.size)
    assert e.report.passed


def test_endomorphism_truss_klein():
    e = endomorphism_truss(heap_from_group(klein_group()))
    assert len(e.maps) == 64 and e.report.passed


def test_endomorphism_truss_needs_abelian():
    with pytest.raises(InputError):
        endomorphism_truss(heap_from_group(symmetric_group(3)), max_n=6)


def test_mu_rho():
    for t in (zn_ring_truss(3), _ut2()):
        assert mu_rho_check(t).passed


def test_opposite():
    t = _ut2()
    assert t.opposite().opposite() == t
    assert validate_nt(t.opposite()).passed
    assert isinstance(SkewBrace(cyclic_group(2), cyclic_group(2)), SkewBrace)
    assert Endomap.identity(2) in lambda_y_action(zn_ring_truss(2), 0).maps
