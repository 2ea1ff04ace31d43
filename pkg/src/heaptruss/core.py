"""Operation tables over finite carriers, axiom validators and retract groups.

Elements of a carrier of size ``n`` are the indices ``0..n-1``.  A ternary
operation is stored as an ``(n, n, n)`` integer array ``P`` with
``P[x, y, z] = [x, y, z]``; binary operations are ``(n, n)`` arrays with the
left argument as row index.  All arrays are made read-only on construction.

The empty carrier is never stored: every construction path rejects ``n = 0``
with :class:`EmptyCarrierError`, because every downstream operation needs a
base element.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyCarrierError, InputError, ResourceLimitError, TheoremViolation

DEFAULT_MAX_N = 32

LEVELS = ("semiheap", "heap", "abelian_heap")


def _freeze(a) -> np.ndarray:
    arr = np.array(a, dtype=np.int64)
    arr.flags.writeable = False
    return arr


def _check_entries(arr: np.ndarray, n: int, what: str) -> None:
    if n == 0:
        raise EmptyCarrierError()
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        bad = np.argwhere((arr < 0) | (arr >= n))[0]
        raise InputError(f"{what}: entry {tuple(int(i) for i in bad)} = {int(arr[tuple(bad)])} "
                         f"is not an element index in 0..{n - 1}")


def first_witness(mask: np.ndarray, offset: tuple = ()) -> tuple | None:
    """Lexicographically first index where ``mask`` is true, or ``None``."""
    flat = mask.ravel()
    if not flat.any():
        return None
    idx = np.unravel_index(int(np.argmax(flat)), mask.shape)
    return tuple(int(i) for i in offset) + tuple(int(i) for i in idx)


class TernaryTable:
    """A ternary operation ``[-,-,-]`` on ``{0..n-1}``."""

    __slots__ = ("table",)

    def __init__(self, entries, n: int | None = None):
        arr = np.asarray(entries, dtype=np.int64)
        if n is not None:
            if arr.size != n ** 3:
                raise InputError(f"ternary table needs {n ** 3} entries, got {arr.size}")
            arr = arr.reshape(n, n, n)
        if arr.ndim != 3 or len(set(arr.shape)) != 1:
            raise InputError(f"ternary table must have shape (n, n, n), got {arr.shape}")
        _check_entries(arr, arr.shape[0], "ternary table")
        self.table = _freeze(arr)

    @classmethod
    def from_function(cls, n: int, f) -> "TernaryTable":
        if n == 0:
            raise EmptyCarrierError()
        return cls([[[f(x, y, z) for z in range(n)] for y in range(n)] for x in range(n)])

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def __call__(self, x: int, y: int, z: int) -> int:
        return int(self.table[x, y, z])

    def flat(self) -> list[int]:
        return self.table.ravel().tolist()

    def __eq__(self, other):
        return isinstance(other, TernaryTable) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.size, self.table.tobytes()))

    def __repr__(self):
        return f"TernaryTable(n={self.size})"


class BinaryTable:
    """A binary operation on ``{0..n-1}``; row index is the left argument."""

    __slots__ = ("table",)

    def __init__(self, entries, n: int | None = None):
        arr = np.asarray(entries, dtype=np.int64)
        if n is not None:
            if arr.size != n ** 2:
                raise InputError(f"binary table needs {n ** 2} entries, got {arr.size}")
            arr = arr.reshape(n, n)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InputError(f"binary table must have shape (n, n), got {arr.shape}")
        _check_entries(arr, arr.shape[0], "binary table")
        self.table = _freeze(arr)

    @classmethod
    def from_function(cls, n: int, f) -> "BinaryTable":
        if n == 0:
            raise EmptyCarrierError()
        return cls([[f(x, y) for y in range(n)] for x in range(n)])

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def __call__(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def opposite(self) -> "BinaryTable":
        return BinaryTable(self.table.T)

    def is_associative(self) -> bool:
        return associativity_witness(self.table) is None

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def flat(self) -> list[int]:
        return self.table.ravel().tolist()

    def __eq__(self, other):
        return isinstance(other, BinaryTable) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.size, self.table.tobytes()))

    def __repr__(self):
        return f"BinaryTable(n={self.size})"


def associativity_witness(m: np.ndarray) -> tuple | None:
    """First ``(x, y, z)`` with ``(xy)z != x(yz)`` for a binary table array."""
    lhs = m[m]  # lhs[x, y, z] = m[m[x, y], z]
    rhs = m[:, m]  # rhs[x, y, z] = m[x, m[y, z]]
    return first_witness(lhs != rhs)


@dataclass(frozen=True, order=True)
class Endomap:
    """A self-map of the carrier given by its image sequence."""

    images: tuple

    def __post_init__(self):
        n = len(self.images)
        if n == 0:
            raise EmptyCarrierError()
        imgs = tuple(int(i) for i in self.images)
        if any(i < 0 or i >= n for i in imgs):
            raise InputError(f"endomap image out of range 0..{n - 1}: {imgs}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n: int) -> "Endomap":
        return cls(tuple(range(n)))

    @classmethod
    def constant(cls, n: int, c: int) -> "Endomap":
        return cls((c,) * n)

    @property
    def size(self) -> int:
        return len(self.images)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.images, dtype=np.int64)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def compose(self, other: "Endomap") -> "Endomap":
        """``self ∘ other``: apply ``other`` first."""
        return Endomap(tuple(self.images[i] for i in other.images))

    def is_permutation(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def inverse(self) -> "Endomap":
        if not self.is_permutation():
            raise InputError("endomap is not a permutation")
        inv = [0] * self.size
        for x, fx in enumerate(self.images):
            inv[fx] = x
        return Endomap(tuple(inv))

    def is_idempotent(self) -> bool:
        return self.compose(self) == self

    def image(self) -> tuple:
        return tuple(sorted(set(self.images)))

    def __str__(self):
        return " ".join(map(str, self.images))


@dataclass
class ValidationReport:
    """Outcome of an axiom scan: the first witness per violated law."""

    kind: str
    violations: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, law: str, witness) -> None:
        if witness is not None:
            self.violations.append((law, tuple(witness)))

    def witness(self, law: str):
        for name, w in self.violations:
            if name == law:
                return w
        return None

    def laws(self) -> list[str]:
        return [name for name, _ in self.violations]

    def extend(self, other: "ValidationReport") -> None:
        self.violations.extend(other.violations)
        self.info.update(other.info)

    def __bool__(self):
        return self.passed

    def __str__(self):
        head = f"{self.kind} {'✓' if self.passed else '✗'}"
        lines = [head] + [f"law={law} witness=({','.join(map(str, w))})" for law, w in self.violations]
        return "\n".join(lines)


@dataclass(frozen=True)
class GroupView:
    """A group on ``{0..n-1}`` with explicit identity and inverse table."""

    op: BinaryTable
    identity: int
    inverse: tuple

    @property
    def size(self) -> int:
        return self.op.size

    def mul(self, a: int, b: int) -> int:
        return int(self.op.table[a, b])

    def inv(self, a: int) -> int:
        return self.inverse[a]

    @property
    def inv_array(self) -> np.ndarray:
        return np.array(self.inverse, dtype=np.int64)

    def is_abelian(self) -> bool:
        return self.op.is_commutative()

    def validate(self) -> ValidationReport:
        m = self.op.table
        n = self.size
        e = self.identity
        inv = self.inv_array
        rep = ValidationReport("group")
        if len(self.inverse) != n or not 0 <= e < n:
            rep.add("shape", (n, len(self.inverse)))
            return rep
        rep.add("associativity", associativity_witness(m))
        xs = np.arange(n)
        rep.add("identity", first_witness((m[e, :] != xs) | (m[:, e] != xs)))
        rep.add("inverse", first_witness((m[xs, inv] != e) | (m[inv, xs] != e)))
        return rep

    @classmethod
    def from_table(cls, op) -> "GroupView":
        """Recover identity and inverses from a Cayley table; rejects non-groups."""
        op = op if isinstance(op, BinaryTable) else BinaryTable(op)
        m = op.table
        n = op.size
        xs = np.arange(n)
        ids = [e for e in range(n) if np.array_equal(m[e], xs) and np.array_equal(m[:, e], xs)]
        if not ids:
            raise InputError("table has no two-sided identity")
        e = ids[0]
        inverse = []
        for x in range(n):
            cand = np.flatnonzero((m[x] == e) & (m[:, x] == e))
            if cand.size == 0:
                raise InputError(f"element {x} has no inverse")
            inverse.append(int(cand[0]))
        g = cls(op, e, tuple(inverse))
        rep = g.validate()
        if not rep.passed:
            raise InputError(f"not a group: {rep.violations[0]}")
        return g


# ---------------------------------------------------------------------------
# ternary validation


def _associativity_scan(P: np.ndarray) -> tuple | None:
    """First ``(x,y,z,w,u)`` with ``[[x,y,z],w,u] != [x,y,[z,w,u]]``."""
    n = P.shape[0]
    ar = np.arange(n)
    for x in range(n):
        Px = P[x]
        lhs = P[Px[:, :, None, None], ar[None, None, :, None], ar[None, None, None, :]]
        rhs = Px[ar[:, None, None, None], P[None, :, :, :]]
        w = first_witness(lhs != rhs, (x,))
        if w is not None:
            return w
    return None


def _maltsev_scans(P: np.ndarray):
    n = P.shape[0]
    ar = np.arange(n)
    left = P[ar[:, None], ar[:, None], ar[None, :]] != ar[None, :]  # [x,x,y] = y
    right = P[ar[:, None], ar[None, :], ar[None, :]] != ar[:, None]  # [x,y,y] = x
    return first_witness(left), first_witness(right)


def is_abelian_table(table: TernaryTable) -> bool:
    P = table.table
    return bool(np.array_equal(P, P.transpose(2, 1, 0)))


def validate_ternary(table: TernaryTable, level: str = "heap", max_n: int = DEFAULT_MAX_N) -> ValidationReport:
    """Exhaustively check the semiheap, heap or abelian-heap axioms.

    Associativity is checked on all ``n**5`` quintuples, so tables larger than
    ``max_n`` raise :class:`ResourceLimitError`; use :func:`certify_heap` for
    an ``O(n**3)`` heap certificate on larger carriers.
    """
    if level not in LEVELS:
        raise InputError(f"unknown validation level {level!r}")
    n = table.size
    if n > max_n:
        raise ResourceLimitError("semiheap associativity scan", n, max_n)
    P = table.table
    rep = ValidationReport(level)
    rep.add("associativity", _associativity_scan(P))
    if level in ("heap", "abelian_heap"):
        left, right = _maltsev_scans(P)
        rep.add("maltsev_left", left)
        rep.add("maltsev_right", right)
    if level == "abelian_heap":
        rep.add("commutativity", first_witness(P != P.transpose(2, 1, 0)))
    rep.info["abelian"] = is_abelian_table(table)
    return rep


def certify_heap(table: TernaryTable, base: int = 0) -> ValidationReport:
    """Heap certificate in ``O(n**3)``.

    Checks the Mal'tsev laws, that ``b_base`` is associative with inverses
    ``[base, y, base]``, and that ``[x, y, z] = x * y^-1 * z`` in that group.
    The last identity makes associativity of ``[-,-,-]`` a consequence of
    associativity in the group, so a passing certificate proves the heap axioms.
    """
    P = table.table
    n = table.size
    ar = np.arange(n)
    rep = ValidationReport("heap")
    left, right = _maltsev_scans(P)
    rep.add("maltsev_left", left)
    rep.add("maltsev_right", right)
    b = P[:, base, :]
    inv = P[base, :, base]
    rep.add("retract_associativity", associativity_witness(b))
    rep.add("retract_inverse", first_witness(b[ar, inv] != base))
    expected = b[b[:, inv][:, :, None], ar[None, None, :]]  # (x y^-1) z
    rep.add("retract_factorisation", first_witness(P != expected))
    rep.info["abelian"] = is_abelian_table(table)
    rep.info["method"] = "retract certificate"
    return rep


def check_heap(table: TernaryTable, max_n: int = DEFAULT_MAX_N) -> ValidationReport:
    """Exhaustive heap validation up to ``max_n``, certificate above it."""
    if table.size <= max_n:
        return validate_ternary(table, "heap", max_n)
    return certify_heap(table)


def _require_heap(table: TernaryTable, max_n: int = DEFAULT_MAX_N) -> None:
    rep = check_heap(table, max_n)
    if not rep.passed:
        law, w = rep.violations[0]
        raise InputError(f"not a heap: law={law} witness={w}")


def compatibility_check(table: TernaryTable, max_n: int = DEFAULT_MAX_N) -> ValidationReport:
    """Pairwise compatibility of the magmas ``(X, b_x)``.

    Scans ``(u ._x z) ._y w = u ._x (z ._y w)`` over ``(x, y, u, z, w)`` using
    the sliced magma tables, then cross-checks the verdict against the direct
    associativity scan; a disagreement raises :class:`TheoremViolation`.
    """
    n = table.size
    if n > max_n:
        raise ResourceLimitError("compatibility scan", n, max_n)
    P = table.table
    ar = np.arange(n)
    rep = ValidationReport("compatibility")
    witness = None
    for x in range(n):
        bx = P[:, x, :]
        for y in range(n):
            by = P[:, y, :]
            lhs = by[bx[:, :, None], ar[None, None, :]]
            rhs = bx[ar[:, None, None], by[None, :, :]]
            witness = first_witness(lhs != rhs, (x, y))
            if witness is not None:
                break
        if witness is not None:
            break
    rep.add("compatibility", witness)
    direct = _associativity_scan(P) is None
    rep.info["agrees_with_associativity"] = direct == rep.passed
    if direct != rep.passed:
        raise TheoremViolation("magma compatibility and ternary associativity disagree")
    return rep


# ---------------------------------------------------------------------------
# retracts, translations and constructions


def retract_group(heap: TernaryTable, e: int, check: bool = True, max_n: int = DEFAULT_MAX_N) -> GroupView:
    """The retract group ``(X, b_e)``: ``x * z = [x, e, z]``, inverse ``[e, y, e]``."""
    if not 0 <= e < heap.size:
        raise InputError(f"base element {e} not in carrier 0..{heap.size - 1}")
    if check:
        _require_heap(heap, max_n)
    P = heap.table
    return GroupView(BinaryTable(P[:, e, :]), e, tuple(int(v) for v in P[e, :, e]))


@dataclass
class TranslationReport:
    maps: list
    non_permutations: list
    closure_violations: list
    group_violations: list
    isomorphism_violations: list

    @property
    def passed(self) -> bool:
        return not (self.non_permutations or self.closure_violations
                    or self.group_violations or self.isomorphism_violations)

    @property
    def order(self) -> int:
        return len(self.maps)


def translations(heap: TernaryTable) -> TranslationReport:
    """The translation maps ``z -> [x, y, z]`` and their group structure."""
    P = heap.table
    n = heap.size
    ar = np.arange(n)
    members = sorted({tuple(int(v) for v in P[x, y]) for x in range(n) for y in range(n)})
    maps = [Endomap(m) for m in members]
    non_perm = [(x, y) for x in range(n) for y in range(n) if len(set(P[x, y].tolist())) != n]

    # tau_x^y o tau_u^v = tau_[x,y,u]^v, for all x, y, u, v
    closure = []
    index = {m: i for i, m in enumerate(members)}
    for x in range(n):
        lhs = P[x][:, P]  # lhs[y, u, v, z] = P[x, y, P[u, v, z]]
        rhs = P[P[x][:, :, None], ar[None, None, :]]  # rhs[y, u, v] -> row P[[x,y,u], v, :]
        w = first_witness((lhs != rhs).any(axis=-1), (x,))
        if w is not None:
            closure.append(w)
            break
    # composition closes inside S_X
    for a in members:
        for b in members:
            c = tuple(a[i] for i in b)
            if c not in index:
                closure.append(("composition", index[a], index[b]))
                break

    group_viol = []
    if tuple(range(n)) not in index:
        group_viol.append(("identity",))
    for x in range(n):
        for y in range(n):
            f, g = P[x, y], P[y, x]
            if not np.array_equal(f[g], ar):
                group_viol.append(("inverse", x, y))

    iso = []
    for y in range(n):
        # x -> tau_x^y is a homomorphism (X, b_y) -> (S_X, o) and a bijection onto S_X
        b = P[:, y, :]
        lhs = P[b[:, :, None], y, ar[None, None, :]]  # tau_{b_y(x, x')}(z)
        rhs = P[:, y, :][:, P[:, y, :]]  # (tau_x o tau_x')(z) = P[x, y, P[x', y, z]]
        w = first_witness((lhs != rhs).any(axis=-1))
        if w is not None:
            iso.append(("homomorphism", y) + w)
        images = {tuple(int(v) for v in P[x, y]) for x in range(n)}
        if len(images) != n or images != set(members):
            iso.append(("bijection", y))
    return TranslationReport(maps, non_perm, closure, group_viol, iso)


def heap_from_group(group: GroupView) -> TernaryTable:
    """The heap ``[x, y, z] = x y^-1 z`` of a group."""
    rep = group.validate()
    if not rep.passed:
        raise InputError(f"not a group: {rep.violations[0]}")
    m = group.op.table
    inv = group.inv_array
    n = group.size
    return TernaryTable(m[m[:, inv][:, :, None], np.arange(n)[None, None, :]])


def semiheap_from_join_lattice(join: BinaryTable) -> TernaryTable:
    """The semiheap ``[x, y, z] = x ∨ y ∨ z`` of a join-semilattice."""
    j = join.table
    n = join.size
    ar = np.arange(n)
    if associativity_witness(j) is not None:
        raise InputError("join table is not associative")
    if not join.is_commutative():
        raise InputError("join table is not commutative")
    if not np.array_equal(j[ar, ar], ar):
        raise InputError("join table is not idempotent")
    return TernaryTable(j[j[:, :, None], ar[None, None, :]])


def join_of_order(leq: Sequence[Sequence[bool]]) -> BinaryTable:
    """Join table of a finite poset given as a boolean ``leq`` matrix."""
    le = np.asarray(leq, dtype=bool)
    n = le.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            ubs = [c for c in range(n) if le[a, c] and le[b, c]]
            least = [c for c in ubs if all(le[c, d] for d in ubs)]
            if len(least) != 1:
                raise InputError(f"elements {a}, {b} have no least upper bound")
            out[a, b] = least[0]
    return BinaryTable(out)


def chain_join(k: int) -> BinaryTable:
    return BinaryTable.from_function(k, max)


def chain_meet(k: int) -> BinaryTable:
    return BinaryTable.from_function(k, min)


def diamond_join() -> BinaryTable:
    """Join of the four-element lattice ``0 < a, b < 1`` (indices 0, 1, 2, 3)."""
    leq = [[a == b or a == 0 or b == 3 for b in range(4)] for a in range(4)]
    return join_of_order(leq)


def direct_product_ternary(a: TernaryTable, b: TernaryTable) -> TernaryTable:
    """Componentwise product; pair ``(i, j)`` has index ``i * |b| + j``."""
    na, nb = a.size, b.size
    A, B = a.table, b.table
    out = A[:, None, :, None, :, None] * nb + B[None, :, None, :, None, :]
    return TernaryTable(out.reshape(na * nb, na * nb, na * nb))


def endomap_is_morphism(table: TernaryTable, f: Endomap | np.ndarray) -> bool:
    fa = f.array if isinstance(f, Endomap) else f
    P = table.table
    return bool(np.array_equal(fa[P], P[fa[:, None, None], fa[None, :, None], fa[None, None, :]]))


def all_maps(n: int, fixed: dict | None = None) -> np.ndarray:
    """Every map ``{0..n-1} -> {0..n-1}`` as rows, honouring ``fixed`` values."""
    fixed = fixed or {}
    free = [i for i in range(n) if i not in fixed]
    rows = np.array(np.meshgrid(*([np.arange(n)] * len(free)), indexing="ij")).reshape(len(free), -1).T \
        if free else np.zeros((1, 0), dtype=np.int64)
    out = np.empty((rows.shape[0], n), dtype=np.int64)
    for j, i in enumerate(free):
        out[:, i] = rows[:, j]
    for i, v in fixed.items():
        out[:, i] = v
    return out


def ternary_morphism_mask(P: np.ndarray, maps: np.ndarray, chunk: int = 4096) -> np.ndarray:
    """Which rows of ``maps`` are endomorphisms of the ternary table ``P``."""
    keep = np.zeros(maps.shape[0], dtype=bool)
    for start in range(0, maps.shape[0], chunk):
        F = maps[start:start + chunk]
        lhs = F[:, P]  # f([x,y,z])
        rhs = P[F[:, :, None, None], F[:, None, :, None], F[:, None, None, :]]
        keep[start:start + chunk] = (lhs == rhs).reshape(F.shape[0], -1).all(axis=1)
    return keep


def binary_morphism_mask(M: np.ndarray, maps: np.ndarray, chunk: int = 4096) -> np.ndarray:
    keep = np.zeros(maps.shape[0], dtype=bool)
    for start in range(0, maps.shape[0], chunk):
        F = maps[start:start + chunk]
        lhs = F[:, M]
        rhs = M[F[:, :, None], F[:, None, :]]
        keep[start:start + chunk] = (lhs == rhs).reshape(F.shape[0], -1).all(axis=1)
    return keep


def as_endomaps(rows: Iterable) -> list[Endomap]:
    return [Endomap(tuple(int(v) for v in r)) for r in rows]
