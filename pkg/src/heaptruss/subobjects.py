"""Subheaps, normal subheaps and congruences of finite heaps.

Subsets are sorted member tuples and partitions are canonical block-id
sequences, so both compare by plain equality.  The congruence routines accept
either a bare heap (a :class:`TernaryTable`) or any object with ``heap`` and
``mul`` attributes, in which case multiplication must be respected too.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import DEFAULT_MAX_N, TernaryTable, first_witness, retract_group
from .errors import InputError, ResourceLimitError, TheoremViolation
from .groups import is_normal_subgroup


@dataclass(frozen=True, order=True)
class Subset:
    n: int
    members: tuple

    def __post_init__(self):
        m = tuple(int(v) for v in self.members)
        if any(b <= a for a, b in zip(m, m[1:])):
            raise InputError(f"subset members must be strictly increasing: {m}")
        if m and (m[0] < 0 or m[-1] >= self.n):
            raise InputError(f"subset members must lie in 0..{self.n - 1}: {m}")
        object.__setattr__(self, "members", m)

    @classmethod
    def of(cls, n: int, items: Iterable[int]) -> "Subset":
        return cls(n, tuple(sorted(set(int(i) for i in items))))

    @classmethod
    def full(cls, n: int) -> "Subset":
        return cls(n, tuple(range(n)))

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.n, dtype=bool)
        m[list(self.members)] = True
        return m

    @property
    def array(self) -> np.ndarray:
        return np.array(self.members, dtype=np.int64)

    def __contains__(self, x) -> bool:
        return int(x) in self.members

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def issubset(self, other: "Subset") -> bool:
        return set(self.members) <= set(other.members)

    def __str__(self):
        return ",".join(map(str, self.members))


@dataclass(frozen=True)
class Partition:
    """An equivalence relation in canonical first-occurrence block-id form."""

    block_id: tuple

    def __post_init__(self):
        ids = tuple(int(v) for v in self.block_id)
        top = -1
        for b in ids:
            if b > top + 1 or b < 0:
                raise InputError(f"partition block ids are not canonical: {ids}")
            top = max(top, b)
        object.__setattr__(self, "block_id", ids)

    @classmethod
    def from_labels(cls, labels) -> "Partition":
        remap: dict = {}
        return cls(tuple(remap.setdefault(lab, len(remap)) for lab in labels))

    @classmethod
    def from_blocks(cls, n: int, blocks) -> "Partition":
        labels = [-1] * n
        for i, block in enumerate(blocks):
            for x in block:
                if not 0 <= x < n or labels[x] != -1:
                    raise InputError(f"blocks do not partition 0..{n - 1}")
                labels[x] = i
        if -1 in labels:
            raise InputError(f"blocks do not cover 0..{n - 1}")
        return cls.from_labels(labels)

    @classmethod
    def equality(cls, n: int) -> "Partition":
        return cls(tuple(range(n)))

    @classmethod
    def one_block(cls, n: int) -> "Partition":
        return cls((0,) * n)

    @property
    def size(self) -> int:
        return len(self.block_id)

    @property
    def labels(self) -> np.ndarray:
        return np.array(self.block_id, dtype=np.int64)

    @property
    def num_blocks(self) -> int:
        return max(self.block_id) + 1 if self.block_id else 0

    def blocks(self) -> list[tuple]:
        out: list[list] = [[] for _ in range(self.num_blocks)]
        for x, b in enumerate(self.block_id):
            out[b].append(x)
        return [tuple(b) for b in out]

    def block_of(self, x: int) -> tuple:
        b = self.block_id[x]
        return tuple(i for i, c in enumerate(self.block_id) if c == b)

    def related(self, x: int, y: int) -> bool:
        return self.block_id[x] == self.block_id[y]

    def relation(self) -> np.ndarray:
        lab = self.labels
        return lab[:, None] == lab[None, :]

    def refines(self, other: "Partition") -> bool:
        """True when every block of ``self`` lies inside a block of ``other``."""
        return all(len({other.block_id[x] for x in b}) == 1 for b in self.blocks())

    def meet(self, other: "Partition") -> "Partition":
        return Partition.from_labels(list(zip(self.block_id, other.block_id)))

    def join(self, other: "Partition") -> "Partition":
        parent = list(range(self.size))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for p in (self, other):
            for block in p.blocks():
                for x in block[1:]:
                    parent[find(x)] = find(block[0])
        return Partition.from_labels([find(x) for x in range(self.size)])

    def sort_key(self):
        return (-self.num_blocks, self.block_id)

    def __str__(self):
        return "|".join(",".join(map(str, b)) for b in self.blocks())


@dataclass
class PosetView:
    nodes: list
    leq: np.ndarray

    def __post_init__(self):
        le = np.asarray(self.leq, dtype=bool)
        k = len(self.nodes)
        if le.shape != (k, k):
            raise InputError("poset relation has the wrong shape")
        if not le.diagonal().all():
            raise TheoremViolation("poset relation is not reflexive")
        if (le & le.T & ~np.eye(k, dtype=bool)).any():
            raise TheoremViolation("poset relation is not antisymmetric")
        if ((le.astype(int) @ le.astype(int) > 0) & ~le).any():
            raise TheoremViolation("poset relation is not transitive")
        self.leq = le

    def is_chain(self) -> bool:
        return bool((self.leq | self.leq.T).all())


def _ops(algebra):
    if isinstance(algebra, TernaryTable):
        return algebra.table, None
    return algebra.heap.table, algebra.mul.table


def _size(algebra) -> int:
    return _ops(algebra)[0].shape[0]


# ---------------------------------------------------------------------------
# subheaps


def subheap_witness(heap: TernaryTable, s: Subset) -> tuple | None:
    """First ``(x, y, z)`` in ``S^3`` with ``[x, y, z]`` outside ``S``."""
    if not len(s):
        return None
    m = s.array
    vals = heap.table[np.ix_(m, m, m)]
    w = first_witness(~s.mask[vals])
    return None if w is None else tuple(int(m[i]) for i in w)


def is_subheap(heap: TernaryTable, s: Subset) -> bool:
    return subheap_witness(heap, s) is None


def closure(heap: TernaryTable, seed: Iterable[int]) -> Subset:
    """Smallest subheap containing ``seed``."""
    P = heap.table
    mask = np.zeros(heap.size, dtype=bool)
    mask[list(seed)] = True
    while True:
        m = np.flatnonzero(mask)
        if not len(m):
            break
        new = np.zeros_like(mask)
        new[P[np.ix_(m, m, m)].ravel()] = True
        if not (new & ~mask).any():
            break
        mask |= new
    return Subset(heap.size, tuple(int(v) for v in np.flatnonzero(mask)))


@dataclass(frozen=True)
class NormalityReport:
    """The three equivalent normality conditions plus the retract-group criterion."""

    a: bool
    b: bool
    c: bool
    subgroup_every: bool
    subgroup_some: bool

    @property
    def normal(self) -> bool:
        return self.c

    @property
    def agree(self) -> bool:
        return len({self.a, self.b, self.c, self.subgroup_every, self.subgroup_some}) == 1


def _normality_conditions(P: np.ndarray, s: Subset) -> tuple[bool, bool, bool]:
    m = s.array
    mask = s.mask
    per_base = []
    for e in m:
        left = P[:, e, :][:, m]  # [x, e, s]
        right = P[m, e, :].T  # right[x, t] = [t, e, x]
        per_base.append(bool((left[:, :, None] == right[:, None, :]).any(axis=2).all()))
    inner = P[:, m[:, None], m[None, :]]  # [x, e, s]
    outer = P[inner, np.arange(P.shape[0])[:, None, None], m[None, :, None]]  # [[x,e,s], x, e]
    return any(per_base), all(per_base), bool(mask[outer].all())


def is_normal_subheap(heap: TernaryTable, s: Subset) -> NormalityReport:
    """Evaluate every normality criterion independently; the empty set is never normal."""
    if not len(s):
        return NormalityReport(False, False, False, False, False)
    w = subheap_witness(heap, s)
    if w is not None:
        raise InputError(f"{{{s}}} is not a subheap: [{w[0]},{w[1]},{w[2]}] leaves it")
    a, b, c = _normality_conditions(heap.table, s)
    per_e = [is_normal_subgroup(retract_group(heap, e, check=False), s.members) for e in s]
    return NormalityReport(a, b, c, all(per_e), any(per_e))


def _is_normal_fast(P: np.ndarray, s: Subset) -> bool:
    m = s.array
    inner = P[:, m[:, None], m[None, :]]
    outer = P[inner, np.arange(P.shape[0])[:, None, None], m[None, :, None]]
    return bool(s.mask[outer].all())


def _subheaps_from(heap: TernaryTable, start: Subset) -> list[Subset]:
    """All subheaps containing ``start`` (itself a subheap), by one-point extensions."""
    n = heap.size
    found = {start.members: start}
    frontier = [start]
    while frontier:
        nxt = []
        for s in frontier:
            present = set(s.members)
            for x in range(n):
                if x in present:
                    continue
                t = closure(heap, s.members + (x,))
                if t.members not in found:
                    found[t.members] = t
                    nxt.append(t)
        frontier = nxt
    return sorted(found.values(), key=lambda t: t.members)


def enumerate_subheaps(heap: TernaryTable, normal_only: bool = False,
                       max_n: int = DEFAULT_MAX_N) -> list[Subset]:
    """All subheaps in lexicographic member order (normal ones only, if asked).

    The empty subheap is included unless ``normal_only``.  Enumeration grows
    subheaps by closing one extra point at a time, so it never visits all
    ``2**n`` subsets.  The full list is checked to be closed under intersection.
    """
    n = heap.size
    if n > max_n:
        raise ResourceLimitError("subheap enumeration", n, max_n)
    subs = _subheaps_from(heap, Subset(n, ()))
    keys = {s.members for s in subs}
    for s in subs:
        for t in subs:
            if tuple(sorted(set(s.members) & set(t.members))) not in keys:
                raise TheoremViolation(f"subheaps {{{s}}} and {{{t}}} meet in a non-subheap")
    if normal_only:
        subs = [s for s in subs if len(s) and _is_normal_fast(heap.table, s)]
    return subs


# ---------------------------------------------------------------------------
# congruences


def partition_from_relation(rel: np.ndarray) -> Partition:
    rel = np.asarray(rel, dtype=bool)
    n = rel.shape[0]
    if not rel.diagonal().all() or not np.array_equal(rel, rel.T):
        raise TheoremViolation("relation is not reflexive and symmetric")
    if ((rel.astype(int) @ rel.astype(int) > 0) & ~rel).any():
        raise TheoremViolation("relation is not transitive")
    return Partition.from_labels([int(np.argmax(rel[x])) for x in range(n)])


def congruence_witness(algebra, part: Partition) -> tuple | None:
    """First operation tuple whose class is not determined by its arguments' classes.

    Returns ``("ternary", x, y, z, rx, ry, rz)`` or ``("mul", x, y, rx, ry)``
    where the ``r`` entries are the class representatives compared against.
    """
    P, M = _ops(algebra)
    n = P.shape[0]
    if part.size != n:
        raise InputError(f"partition has {part.size} points, algebra has {n}")
    lab = part.labels
    rep = np.array([part.block_of(x)[0] for x in range(n)])
    got = lab[P]
    want = lab[P[rep[:, None, None], rep[None, :, None], rep[None, None, :]]]
    w = first_witness(got != want)
    if w is not None:
        return ("ternary",) + w + tuple(int(rep[i]) for i in w)
    if M is not None:
        got = lab[M]
        want = lab[M[rep[:, None], rep[None, :]]]
        w = first_witness(got != want)
        if w is not None:
            return ("mul",) + w + tuple(int(rep[i]) for i in w)
    return None


def is_congruence(algebra, part: Partition) -> bool:
    return congruence_witness(algebra, part) is None


def _require_congruence(algebra, part: Partition, name: str = "partition") -> None:
    w = congruence_witness(algebra, part)
    if w is not None:
        raise InputError(f"{name} {part} is not a congruence (witness {w})")


def sim_relation(heap: TernaryTable, s: Subset) -> np.ndarray:
    """``rel[x, y]`` iff ``[x, y, t]`` lies in ``S`` for some ``t`` in ``S``."""
    m = s.array
    return s.mask[heap.table[:, :, m]].any(axis=2)


def congruence_of_normal(heap: TernaryTable, s: Subset, check: bool = True) -> Partition:
    """The congruence ``x ~ y`` iff ``[x, y, s]`` is in ``S`` for some ``s`` in ``S``."""
    if check and not (len(s) and is_subheap(heap, s) and _is_normal_fast(heap.table, s)):
        raise InputError(f"{{{s}}} is not a normal subheap")
    part = partition_from_relation(sim_relation(heap, s))
    if check:
        if not is_congruence(heap, part):
            raise TheoremViolation(f"~_S for S={{{s}}} is not a congruence")
        for x in s:
            if part.block_of(x) != s.members:
                raise TheoremViolation(f"class of {x} modulo ~_S differs from S")
    return part


def normal_of_congruence(heap: TernaryTable, part: Partition, e: int) -> Subset:
    _require_congruence(heap, part)
    return Subset(heap.size, part.block_of(e))


def set_partitions(n: int):
    """All partitions of ``0..n-1`` as canonical label tuples (restricted growth strings)."""
    if n == 0:
        yield ()
        return
    labels = [0] * n

    def rec(i, top):
        if i == n:
            yield tuple(labels)
            return
        for b in range(top + 2):
            labels[i] = b
            yield from rec(i + 1, max(top, b))

    yield from rec(1, 0)


def congruences_by_partition_scan(algebra, max_n: int = 8) -> list[Partition]:
    """Oracle: test every set partition of the carrier."""
    n = _size(algebra)
    if n > max_n:
        raise ResourceLimitError("all-partitions congruence scan", n, max_n)
    found = [Partition(p) for p in set_partitions(n)]
    return sorted((p for p in found if is_congruence(algebra, p)), key=Partition.sort_key)


def enumerate_congruences(heap: TernaryTable, max_n: int = DEFAULT_MAX_N,
                          base: int = 0, cross_check: bool | None = None) -> list[Partition]:
    """Heap congruences, finest first, via the normal subheaps through ``base``.

    For ``n <= 6`` (or when ``cross_check`` is true) the result is compared
    against :func:`congruences_by_partition_scan`.
    """
    n = heap.size
    if n > max_n:
        raise ResourceLimitError("congruence enumeration", n, max_n)
    through = _subheaps_from(heap, Subset(n, (base,)))
    normals = [s for s in through if _is_normal_fast(heap.table, s)]
    parts = sorted({congruence_of_normal(heap, s, check=False) for s in normals}, key=Partition.sort_key)
    if len(parts) != len(normals):
        raise TheoremViolation("two normal subheaps through the base gave one congruence")
    if cross_check or (cross_check is None and n <= 6):
        if parts != congruences_by_partition_scan(heap, max_n=max(n, 8)):
            raise TheoremViolation("subheap route and partition scan found different congruences")
    return parts


def is_modular_lattice(parts: list[Partition]) -> tuple | None:
    """First ``(a, b, c)`` with ``a <= c`` violating ``a ∨ (b ∧ c) = (a ∨ b) ∧ c``."""
    keyed = set(parts)
    for a in parts:
        for b in parts:
            if a.join(b) not in keyed or a.meet(b) not in keyed:
                return ("closure", str(a), str(b))
            for c in parts:
                if a.refines(c) and a.join(b.meet(c)) != a.join(b).meet(c):
                    return (str(a), str(b), str(c))
    return None


# ---------------------------------------------------------------------------
# the preorder on normal subheaps


def _require_normal(heap, s, name):
    if not (len(s) and is_subheap(heap, s) and _is_normal_fast(heap.table, s)):
        raise InputError(f"{name} = {{{s}}} is not a normal subheap")


def normal_preorder(heap: TernaryTable, m: Subset, n_sub: Subset) -> bool:
    """``M ⪯ N``: every ``(x, y)`` linked through ``M`` is linked through ``N``."""
    _require_normal(heap, m, "M")
    _require_normal(heap, n_sub, "N")
    P = heap.table
    via_m = m.mask[P[:, :, m.array]].any(axis=2)
    via_n = n_sub.mask[P[:, :, n_sub.array]].any(axis=2)
    return bool((~via_m | via_n).all())


@dataclass
class QuotientPoset:
    poset: PosetView
    classes: list
    congruences: list
    mapping: list
    order_isomorphic: bool


def quotient_poset(heap: TernaryTable, max_n: int = DEFAULT_MAX_N) -> QuotientPoset:
    """Normal subheaps modulo mutual ``⪯``, matched class-by-class with the congruences."""
    normals = enumerate_subheaps(heap, normal_only=True, max_n=max_n)
    k = len(normals)
    pre = np.array([[normal_preorder(heap, a, b) for b in normals] for a in normals])
    classes: list[list[int]] = []
    assigned = [-1] * k
    for i in range(k):
        if assigned[i] == -1:
            assigned[i] = len(classes)
            classes.append([i])
            for j in range(i + 1, k):
                if assigned[j] == -1 and pre[i, j] and pre[j, i]:
                    assigned[j] = assigned[i]
                    classes[-1].append(j)
    reps = [c[0] for c in classes]
    leq = pre[np.ix_(reps, reps)]
    nodes = [[str(normals[j]) for j in c] for c in classes]
    poset = PosetView(nodes, leq)
    congs = enumerate_congruences(heap, max_n=max_n)
    images = [congruence_of_normal(heap, normals[r], check=False) for r in reps]
    mapping = [congs.index(p) for p in images]
    iso = sorted(mapping) == list(range(len(congs))) and all(
        bool(leq[i, j]) == images[i].refines(images[j])
        for i in range(len(reps)) for j in range(len(reps)))
    return QuotientPoset(poset, [[normals[j] for j in c] for c in classes], congs, mapping, iso)


def same_coset(heap: TernaryTable, x: int, n_sub: Subset, y: int, z: int) -> bool:
    """Whether ``y ._x N`` and ``z ._x N`` coincide in the retract group at ``x``."""
    if x not in n_sub:
        raise InputError(f"base {x} is not in N = {{{n_sub}}}")
    _require_normal(heap, n_sub, "N")
    g = retract_group(heap, x, check=False)
    m = g.op.table
    cy = set(m[y, n_sub.array].tolist())
    cz = set(m[z, n_sub.array].tolist())
    result = cy == cz
    if result != congruence_of_normal(heap, n_sub, check=False).related(y, z):
        raise TheoremViolation("coset equality disagrees with the congruence of N")
    return result
