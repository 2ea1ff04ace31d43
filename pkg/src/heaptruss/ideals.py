"""Ideals (paragons) of left near-trusses, their congruences, and J-rings.

An ideal of a left near-truss is a normal subheap ``S`` with
``[xp, xq, q]`` and ``[[p, q, x]y, xy, q]`` in ``S`` for all ``x, y`` and all
``p, q`` in ``S``.  A J-ring is a group ``(X, +, -, 0)`` with an associative
multiplication satisfying ``z(x + y) = zx - (z·0) + zy``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_MAX_N, BinaryTable, Endomap, GroupView, ValidationReport, associativity_witness, \
    first_witness, retract_group
from .errors import InputError, TheoremViolation
from .groups import is_normal_subgroup, is_subgroup
from .subobjects import (
    Partition,
    Subset,
    _is_normal_fast,
    congruence_of_normal,
    congruences_by_partition_scan,
    enumerate_congruences,
    enumerate_subheaps,
    is_congruence,
    partition_from_relation,
    subheap_witness,
)
from .trusses import NearTruss, jacobson_mul


# ---------------------------------------------------------------------------
# near-truss ideals


@dataclass(frozen=True)
class NearTrussIdealReport:
    subheap: bool
    normal: bool
    product_condition: tuple | None
    shift_condition: tuple | None
    multiplicative: bool | None
    subheap_witness: tuple | None = None

    @property
    def conditions(self) -> bool:
        return self.product_condition is None and self.shift_condition is None

    @property
    def is_ideal(self) -> bool:
        return self.subheap and self.normal and self.conditions


def _product_condition(P, M, s: Subset):
    """First ``(x, p, q)`` with ``[xp, xq, q]`` outside ``S``."""
    m = s.array
    xp = M[:, m]  # [x, p]
    vals = P[xp[:, :, None], xp[:, None, :], m[None, None, :]]
    w = first_witness(~s.mask[vals])
    return None if w is None else (w[0], int(m[w[1]]), int(m[w[2]]))


def _shift_condition(P, M, s: Subset):
    """First ``(x, y, p, q)`` with ``[[p, q, x]y, xy, q]`` outside ``S``."""
    m = s.array
    n = P.shape[0]
    for x in range(n):
        pqx = P[m[:, None], m[None, :], x]  # [p, q]
        left = M[pqx]  # [p, q, y]
        vals = P[left, M[x][None, None, :], m[None, :, None]]
        w = first_witness(~s.mask[vals])
        if w is not None:
            return (x, w[2], int(m[w[0]]), int(m[w[1]]))
    return None


def is_near_truss_ideal(nt: NearTruss, s: Subset) -> NearTrussIdealReport:
    """Both membership conditions, cross-checked against multiplicative compatibility of ``~_S``."""
    lt = nt.left_form()
    P, M = lt.heap.table, lt.mul.table
    if not len(s):
        return NearTrussIdealReport(True, False, None, None, None)
    sw = subheap_witness(lt.heap, s)
    if sw is not None:
        return NearTrussIdealReport(False, False, None, None, None, sw)
    normal = _is_normal_fast(P, s)
    pc = _product_condition(P, M, s)
    sc = _shift_condition(P, M, s)
    multiplicative = None
    if normal:
        part = congruence_of_normal(lt.heap, s, check=False)
        multiplicative = is_congruence(lt, part)
        if multiplicative != (pc is None and sc is None):
            raise TheoremViolation(f"ideal conditions and multiplicative compatibility disagree on {{{s}}}")
    return NearTrussIdealReport(True, normal, pc, sc, multiplicative)


def ideal_closure(nt: NearTruss, seed, e: int, verify_minimal: bool | None = None) -> Subset:
    """Least ideal containing ``seed`` and ``e``, by fixpoint iteration.

    Each round adds every element forced by closure under ``[-,-,-]``, by the
    normality law ``[[x, f, s], x, f]`` and by the two ideal conditions.
    Minimality is confirmed against all ideals when ``n <= 8`` (or if asked).
    """
    lt = nt.left_form()
    P, M = lt.heap.table, lt.mul.table
    n = lt.size
    if not 0 <= e < n:
        raise InputError(f"base element {e} not in carrier")
    mask = np.zeros(n, dtype=bool)
    mask[list(seed)] = True
    mask[e] = True
    xs = np.arange(n)
    while True:
        m = np.flatnonzero(mask)
        new = np.zeros(n, dtype=bool)
        new[P[np.ix_(m, m, m)].ravel()] = True
        inner = P[:, m[:, None], m[None, :]]  # [x, f, s]
        new[P[inner, xs[:, None, None], m[None, :, None]].ravel()] = True
        xp = M[:, m]
        new[P[xp[:, :, None], xp[:, None, :], m[None, None, :]].ravel()] = True
        for x in range(n):
            left = M[P[m[:, None], m[None, :], x]]
            new[P[left, M[x][None, None, :], m[None, :, None]].ravel()] = True
        if not (new & ~mask).any():
            break
        mask |= new
    result = Subset(n, tuple(int(v) for v in np.flatnonzero(mask)))
    if not is_near_truss_ideal(lt, result).is_ideal:
        raise TheoremViolation(f"ideal closure {{{result}}} is not an ideal")
    if verify_minimal or (verify_minimal is None and n <= 8):
        need = set(result.members)
        for ideal in enumerate_ideals(lt):
            if set(seed) | {e} <= set(ideal.members) and not need <= set(ideal.members):
                raise TheoremViolation(f"ideal {{{ideal}}} contains the seed but not its closure")
    return result


def enumerate_ideals(nt: NearTruss, max_n: int = DEFAULT_MAX_N) -> list[Subset]:
    lt = nt.left_form()
    return [s for s in enumerate_subheaps(lt.heap, normal_only=True, max_n=max_n)
            if is_near_truss_ideal(lt, s).is_ideal]


def enumerate_near_truss_congruences(nt: NearTruss, max_n: int = DEFAULT_MAX_N,
                                     cross_check: bool | None = None) -> list[Partition]:
    """Heap congruences that also respect multiplication, finest first."""
    lt = nt.left_form()
    parts = [p for p in enumerate_congruences(lt.heap, max_n=max_n, cross_check=False) if is_congruence(lt, p)]
    if cross_check or (cross_check is None and lt.size <= 6):
        if parts != congruences_by_partition_scan(lt, max_n=max(lt.size, 8)):
            raise TheoremViolation("near-truss congruences disagree with the partition scan")
    return parts


@dataclass
class IdealCongruenceReport:
    base: int
    ideals: list
    congruences: list
    forward: dict
    backward: dict
    surjective: bool
    mutually_inverse: bool
    order_preserving: bool

    @property
    def passed(self) -> bool:
        return self.surjective and self.mutually_inverse and self.order_preserving


def ideal_congruence_maps(nt: NearTruss, e: int, max_n: int = DEFAULT_MAX_N) -> IdealCongruenceReport:
    """``S -> ~_S`` on all ideals and ``~ -> [e]_~`` back, with the lattice checks through ``e``."""
    lt = nt.left_form()
    ideals = enumerate_ideals(lt, max_n)
    congs = enumerate_near_truss_congruences(lt, max_n)
    forward = {s: congruence_of_normal(lt.heap, s, check=False) for s in ideals}
    backward = {c: Subset(lt.size, c.block_of(e)) for c in congs}
    surjective = set(forward.values()) == set(congs)
    through = [s for s in ideals if e in s]
    inverse = all(backward[forward[s]] == s for s in through) and all(forward[backward[c]] == c for c in congs)
    order = all(a.issubset(b) == forward[a].refines(forward[b]) for a in through for b in through)
    return IdealCongruenceReport(e, ideals, congs, forward, backward, surjective, inverse, order)


# ---------------------------------------------------------------------------
# J-rings


@dataclass(frozen=True)
class JRing:
    add: GroupView
    mul: BinaryTable

    @property
    def size(self) -> int:
        return self.add.size

    @property
    def zero(self) -> int:
        return self.add.identity

    def neg(self, x: int) -> int:
        return self.add.inverse[x]


def validate_jring(j: JRing) -> ValidationReport:
    """Axioms (i)-(v); ``info`` records whether ``x·0 = 0`` and ``0·x = x`` hold."""
    rep = ValidationReport("jring")
    for law, w in j.add.validate().violations:
        rep.add(f"add_{law}", w)
    A, M = j.add.op.table, j.mul.table
    inv = j.add.inv_array
    z = j.zero
    rep.add("mul_associativity", associativity_witness(M))
    lhs = M[:, A]  # z(x + y), [z, x, y]
    zx_minus = A[M, inv[M[:, z]][:, None]]  # zx - z0, [z, x]
    rhs = A[zx_minus[:, :, None], M[:, None, :]]
    rep.add("weak_distributivity", first_witness(lhs != rhs))
    xs = np.arange(j.size)
    rep.info["x0_is_0"] = bool((M[:, z] == z).all())
    rep.info["0x_is_x"] = bool(np.array_equal(M[z], xs))
    return rep


def jring_from_retract(nt: NearTruss, e: int) -> JRing:
    lt = nt.left_form()
    return JRing(retract_group(lt.heap, e, check=False), lt.mul)


def jacobson_jring(add: GroupView, mul: BinaryTable) -> JRing:
    return JRing(add, jacobson_mul(add, mul))


@dataclass(frozen=True)
class JRingIdealReport:
    normal_subgroup: bool
    left_condition: tuple | None
    right_condition: tuple | None

    @property
    def is_ideal(self) -> bool:
        return self.normal_subgroup and self.left_condition is None and self.right_condition is None


def is_jring_ideal(j: JRing, n_sub: Subset) -> JRingIdealReport:
    """``N`` normal in ``(X, +)`` with ``xn - x·0`` and ``(x + n)y - xy`` in ``N``."""
    if not is_subgroup(j.add, n_sub.members):
        return JRingIdealReport(False, None, None)
    normal = is_normal_subgroup(j.add, n_sub.members)
    A, M = j.add.op.table, j.mul.table
    inv = j.add.inv_array
    m = n_sub.array
    mask = n_sub.mask
    left = A[M[:, m], inv[M[:, j.zero]][:, None]]  # [x, n]
    lw = first_witness(~mask[left])
    if lw is not None:
        lw = (lw[0], int(m[lw[1]]))
    xn = A[:, m]  # [x, n]
    right = A[M[xn], inv[M][:, None, :]]  # (x + n)y - xy, [x, n, y]
    rw = first_witness(~mask[right])
    if rw is not None:
        rw = (rw[0], int(m[rw[1]]), rw[2])
    return JRingIdealReport(normal, lw, rw)


def jring_congruence(j: JRing, n_sub: Subset) -> Partition:
    """``x ~ y`` iff ``x - y`` lies in ``N``."""
    A = j.add.op.table
    diff = A[:, j.add.inv_array]  # x - y
    return partition_from_relation(n_sub.mask[diff])


@dataclass
class JRingLambdaReport:
    maps: list
    endomorphism_witness: tuple | None
    semigroup_witness: tuple | None
    invariant_witness: tuple | None = None
    quotient_witness: tuple | None = None
    class_constant_witness: tuple | None = None

    @property
    def passed(self) -> bool:
        return all(w is None for w in (self.endomorphism_witness, self.semigroup_witness, self.invariant_witness,
                                       self.quotient_witness, self.class_constant_witness))


def jring_lambda(j: JRing, n_sub: Subset | None = None) -> JRingLambdaReport:
    """``λ_x(z) = -(x·0) + xz`` with its endomorphism and semigroup checks.

    When ``n_sub`` is an ideal the report also covers ``λ_x(N) ⊆ N``, that each
    ``λ_x`` respects ``~_N``, and that ``λ_x`` and ``λ_y`` agree on ``X/N``
    whenever ``x ~_N y``.
    """
    rep = validate_jring(j)
    if not rep.passed:
        law, w = rep.violations[0]
        raise InputError(f"not a J-ring: law={law} witness={w}")
    A, M = j.add.op.table, j.mul.table
    inv = j.add.inv_array
    L = A[inv[M[:, j.zero]][:, None], M]  # [x, z]
    ew = first_witness(L[:, A] != A[L[:, :, None], L[:, None, :]])
    sw = first_witness(L[M] != L[:, L])
    out = JRingLambdaReport([Endomap(tuple(int(v) for v in row)) for row in L], ew, sw)
    if n_sub is not None:
        if not is_jring_ideal(j, n_sub).is_ideal:
            raise InputError(f"{{{n_sub}}} is not a J-ring ideal")
        lab = jring_congruence(j, n_sub).labels
        out.invariant_witness = first_witness(~n_sub.mask[L[:, n_sub.array]])
        # z ~ z' implies λ_x z ~ λ_x z'
        same = lab[:, None] == lab[None, :]
        img = lab[L]
        bad = same[None, :, :] & (img[:, :, None] != img[:, None, :])
        out.quotient_witness = first_witness(bad)
        # x ~ x' implies λ_x z ~ λ_x' z
        bad = same[:, :, None] & (img[:, None, :] != img[None, :, :])
        out.class_constant_witness = first_witness(bad)
    return out
