"""Concrete finite groups and the group-theoretic helpers used on retracts.

Every constructor puts the identity at index 0.
"""

from __future__ import annotations

import itertools
from collections import deque

import numpy as np

from .core import BinaryTable, Endomap, GroupView
from .errors import ResourceLimitError


def cyclic_group(n: int) -> GroupView:
    return GroupView(BinaryTable.from_function(n, lambda a, b: (a + b) % n), 0,
                     tuple((-a) % n for a in range(n)))


def direct_product(g: GroupView, h: GroupView) -> GroupView:
    """``g × h`` with pair ``(a, b)`` at index ``a * |h| + b``."""
    ng, nh = g.size, h.size
    G, H = g.op.table, h.op.table
    table = G[:, None, :, None] * nh + H[None, :, None, :]
    inverse = tuple(g.inverse[a] * nh + h.inverse[b] for a in range(ng) for b in range(nh))
    return GroupView(BinaryTable(table.reshape(ng * nh, ng * nh)), g.identity * nh + h.identity, inverse)


def klein_group() -> GroupView:
    return direct_product(cyclic_group(2), cyclic_group(2))


def permutation_group(generators, degree: int) -> tuple[GroupView, list]:
    """Close permutations (tuples of images) under composition.

    Elements are sorted lexicographically, so the identity comes first.
    Multiplication is ``(a * b)(i) = a(b(i))``.
    """
    ident = tuple(range(degree))
    seen = {ident}
    queue = deque([ident])
    gens = [tuple(g) for g in generators]
    while queue:
        a = queue.popleft()
        for g in gens:
            c = tuple(a[i] for i in g)
            if c not in seen:
                seen.add(c)
                queue.append(c)
    perms = sorted(seen)
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = [[index[tuple(a[i] for i in b)] for b in perms] for a in perms]
    op = BinaryTable(table)
    inverse = []
    for p in perms:
        inv = [0] * degree
        for i, v in enumerate(p):
            inv[v] = i
        inverse.append(index[tuple(inv)])
    assert n == len(table)
    return GroupView(op, 0, tuple(inverse)), perms


def symmetric_group(k: int) -> GroupView:
    if k == 1:
        return cyclic_group(1)
    gens = [tuple([1, 0] + list(range(2, k))), tuple(list(range(1, k)) + [0])]
    return permutation_group(gens, k)[0]


def dihedral_group(m: int) -> GroupView:
    """Symmetries of the regular ``m``-gon, order ``2m``."""
    rot = tuple((i + 1) % m for i in range(m))
    ref = tuple((-i) % m for i in range(m))
    return permutation_group([rot, ref], m)[0]


def quaternion_group() -> GroupView:
    """``Q8`` on ``±1, ±i, ±j, ±k``; index ``2 * unit + (sign < 0)``."""
    # unit products among 1, i, j, k as (sign, unit)
    unit = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def mul(a, b):
        (ua, sa), (ub, sb) = divmod(a, 2), divmod(b, 2)
        s, u = unit[(ua, ub)]
        neg = (s < 0) ^ bool(sa) ^ bool(sb)
        return 2 * u + int(neg)

    return GroupView.from_table(BinaryTable.from_function(8, mul))


# ---------------------------------------------------------------------------
# subgroups


def subgroup_generated(g: GroupView, gens) -> tuple:
    m = g.op.table
    members = {g.identity}
    frontier = list(members)
    gens = [int(x) for x in gens]
    while frontier:
        new = []
        for a in frontier:
            for s in gens:
                for c in (int(m[a, s]), int(m[a, g.inverse[s]])):
                    if c not in members:
                        members.add(c)
                        new.append(c)
        frontier = new
    return tuple(sorted(members))


def is_subgroup(g: GroupView, members) -> bool:
    s = set(members)
    if g.identity not in s:
        return False
    m = g.op.table
    return all(int(m[a, b]) in s for a in s for b in s) and all(g.inverse[a] in s for a in s)


def is_normal_subgroup(g: GroupView, members) -> bool:
    if not is_subgroup(g, members):
        return False
    s = sorted(set(members))
    m = g.op.table
    inv = g.inv_array
    conj = m[m[:, s], inv[:, None]]  # x s x^-1
    return bool(np.isin(conj, s).all())


def normal_closure(g: GroupView, members) -> tuple:
    m = g.op.table
    current = set(subgroup_generated(g, members))
    while True:
        conj = {int(m[m[x, s], g.inverse[x]]) for x in range(g.size) for s in current}
        if conj <= current:
            return tuple(sorted(current))
        current = set(subgroup_generated(g, current | conj))


def commutator_subgroup(g: GroupView, n_sub, m_sub) -> tuple:
    """``[N, M]``: normal closure of the subgroup generated by ``n m n^-1 m^-1``."""
    m = g.op.table
    inv = g.inverse
    comms = {int(m[m[m[a, b], inv[a]], inv[b]]) for a in n_sub for b in m_sub}
    return normal_closure(g, comms)


def generating_set(g: GroupView) -> list[int]:
    gens: list[int] = []
    current = {g.identity}
    for x in range(g.size):
        if x not in current:
            gens.append(x)
            current = set(subgroup_generated(g, gens))
    return gens


def group_endomorphisms(g: GroupView) -> list[Endomap]:
    """All group endomorphisms, found by extending generator images."""
    gens = generating_set(g)
    mg = mh = g.op.table
    out = []
    for imgs in itertools.product(range(g.size), repeat=len(gens)):
        f = {g.identity: g.identity}
        queue = deque([g.identity])
        ok = True
        while queue and ok:
            a = queue.popleft()
            for s, t in zip(gens, imgs):
                c = int(mg[a, s])
                want = int(mh[f[a], t])
                if c in f:
                    if f[c] != want:
                        ok = False
                        break
                else:
                    f[c] = want
                    queue.append(c)
        if ok:
            arr = np.array([f[x] for x in range(g.size)])
            if np.array_equal(arr[mg], mh[arr[:, None], arr[None, :]]):
                out.append(Endomap(tuple(int(v) for v in arr)))
    return sorted(out)


# ---------------------------------------------------------------------------
# isomorphism search


def is_isomorphism(sigma, ops_a, ops_b) -> bool:
    s = np.asarray(sigma)
    if len(set(s.tolist())) != len(s):
        return False
    for a, b in zip(ops_a, ops_b):
        a, b = np.asarray(a), np.asarray(b)
        if a.ndim == 2:
            if not np.array_equal(s[a], b[s[:, None], s[None, :]]):
                return False
        elif not np.array_equal(s[a], b[s[:, None, None], s[None, :, None], s[None, None, :]]):
            return False
    return True


def find_isomorphism(ops_a, ops_b, max_n: int = 8) -> tuple | None:
    """Backtracking search for ``sigma`` with ``sigma(op_a(..)) = op_b(sigma(..))``.

    ``ops_a`` and ``ops_b`` are parallel lists of binary or ternary table
    arrays on carriers of equal size.  Returns the first isomorphism found in
    lexicographic order, or ``None``.
    """
    ops_a = [np.asarray(getattr(o, "table", o)) for o in ops_a]
    ops_b = [np.asarray(getattr(o, "table", o)) for o in ops_b]
    n = ops_a[0].shape[0]
    if any(o.shape[0] != n for o in ops_b):
        return None
    if n > max_n:
        raise ResourceLimitError("isomorphism search", n, max_n)
    sigma = [-1] * n
    used = [False] * n

    def consistent(k):
        s = np.array(sigma[:k + 1])
        for a, b in zip(ops_a, ops_b):
            if a.ndim == 2:
                sub = a[:k + 1, :k + 1]
                ok = sub <= k
                if not ok.any():
                    continue
                lhs = s[np.where(ok, sub, 0)]
                rhs = b[s[:, None], s[None, :]]
            else:
                sub = a[:k + 1, :k + 1, :k + 1]
                ok = sub <= k
                if not ok.any():
                    continue
                lhs = s[np.where(ok, sub, 0)]
                rhs = b[s[:, None, None], s[None, :, None], s[None, None, :]]
            if not np.array_equal(lhs[ok], rhs[ok]):
                return False
        return True

    def extend(k):
        if k == n:
            return True
        for v in range(n):
            if not used[v]:
                sigma[k] = v
                used[v] = True
                if consistent(k) and extend(k + 1):
                    return True
                used[v] = False
        sigma[k] = -1
        return False

    if extend(0):
        result = tuple(sigma)
        assert is_isomorphism(result, ops_a, ops_b)
        return result
    return None
