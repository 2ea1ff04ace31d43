"""Idempotent endomorphisms, inner and outer semidirect products.

A pair ``(ω, Y)`` of a congruence and a subalgebra is a semidirect
decomposition when ``Y`` meets every ``ω``-class exactly once.  The ten
equivalent conditions are each evaluated by their own literal search, so the
equivalence is tested rather than assumed.  Everything here accepts a heap
(:class:`TernaryTable`) or a :class:`NearTruss`; for the latter the
multiplication has to be respected as well.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_MAX_N,
    Endomap,
    TernaryTable,
    all_maps,
    binary_morphism_mask,
    check_heap,
    direct_product_ternary,
    retract_group,
    ternary_morphism_mask,
)
from .errors import InputError, ResourceLimitError, TheoremViolation
from .groups import group_endomorphisms, is_normal_subgroup, is_subgroup
from .ideals import enumerate_near_truss_congruences
from .subobjects import (
    Partition,
    Subset,
    _is_normal_fast,
    _ops,
    congruence_of_normal,
    enumerate_congruences,
    enumerate_subheaps,
    is_congruence,
    is_subheap,
)

BRUTE_FORCE_N = 6
SEARCH_LIMIT = 1_000_000
CONDITION_LABELS = ("a", "b", "c", "d", "e", "f", "g", "h", "i", "l")


def _size(algebra) -> int:
    return _ops(algebra)[0].shape[0]


def _morphism_mask(algebra, maps: np.ndarray) -> np.ndarray:
    P, M = _ops(algebra)
    keep = ternary_morphism_mask(P, maps)
    if M is not None and keep.any():
        keep[keep] = binary_morphism_mask(M, maps[keep])
    return keep


def _is_subalgebra(algebra, s: Subset) -> bool:
    P, M = _ops(algebra)
    heap = algebra if isinstance(algebra, TernaryTable) else algebra.heap
    if not is_subheap(heap, s):
        return False
    if M is not None:
        m = s.array
        return bool(s.mask[M[np.ix_(m, m)]].all())
    return True


def _congruences(algebra, max_n=DEFAULT_MAX_N) -> list[Partition]:
    if isinstance(algebra, TernaryTable):
        return enumerate_congruences(algebra, max_n=max_n)
    return enumerate_near_truss_congruences(algebra, max_n=max_n)


def _subalgebras(algebra, max_n=DEFAULT_MAX_N) -> list[Subset]:
    heap = algebra if isinstance(algebra, TernaryTable) else algebra.heap
    return [s for s in enumerate_subheaps(heap, max_n=max_n) if len(s) and _is_subalgebra(algebra, s)]


def kernel_of(f: Endomap) -> Partition:
    return Partition.from_labels(f.images)


@dataclass(frozen=True)
class Idempotent:
    map: Endomap
    kernel: Partition
    image: Subset

    @classmethod
    def of(cls, f: Endomap) -> "Idempotent":
        return cls(f, kernel_of(f), Subset.of(f.size, f.images))


@dataclass(frozen=True)
class SemidirectDecomposition:
    """``ω ⋊ Y`` with its idempotent ``f``: ``f(x)`` is the point of ``Y`` in ``[x]_ω``."""

    omega: Partition
    section: Subset
    idempotent: Endomap

    def __post_init__(self):
        f = self.idempotent
        for x in range(f.size):
            meet = [y for y in self.section if self.omega.related(x, y)]
            if meet != [f(x)]:
                raise InputError(f"section does not meet the class of {x} in exactly f({x})")
        if not f.is_idempotent() or kernel_of(f) != self.omega or f.image() != self.section.members:
            raise InputError("idempotent does not match (omega, section)")

    @classmethod
    def from_pair(cls, omega: Partition, section: Subset) -> "SemidirectDecomposition":
        images = []
        for x in range(omega.size):
            meet = [y for y in section if omega.related(x, y)]
            if len(meet) != 1:
                raise InputError(f"Y meets the class of {x} in {len(meet)} points")
            images.append(meet[0])
        return cls(omega, section, Endomap(tuple(images)))

    @classmethod
    def from_idempotent(cls, f: Endomap) -> "SemidirectDecomposition":
        return cls(kernel_of(f), Subset.of(f.size, f.images), f)


def _idempotent_rows(F: np.ndarray) -> np.ndarray:
    return (np.take_along_axis(F, F, axis=1) == F).all(axis=1)


def enumerate_idempotents(algebra, max_n: int = DEFAULT_MAX_N, brute_force_n: int = BRUTE_FORCE_N) -> list[Idempotent]:
    """All idempotent endomorphisms, sorted by image sequence.

    Up to ``brute_force_n`` every self-map is tried; above it the maps are
    built from the (congruence, transversal subalgebra) pairs.
    """
    n = _size(algebra)
    if n > max_n:
        raise ResourceLimitError("idempotent enumeration", n, max_n)
    if n <= brute_force_n:
        F = all_maps(n)
        F = F[_idempotent_rows(F)]
        F = F[_morphism_mask(algebra, F)]
        maps = [Endomap(tuple(int(v) for v in r)) for r in F]
    else:
        maps = [SemidirectDecomposition.from_pair(w, y).idempotent for w, y in decomposition_pairs(algebra, max_n)]
    return [Idempotent.of(f) for f in sorted(maps)]


def decomposition_pairs(algebra, max_n: int = DEFAULT_MAX_N) -> list[tuple[Partition, Subset]]:
    """Pairs ``(ω, Y)`` with ``Y`` a subalgebra meeting every ``ω``-class once."""
    subs = _subalgebras(algebra, max_n)
    out = []
    for w in _congruences(algebra, max_n):
        lab = w.labels
        k = w.num_blocks
        for y in subs:
            if len(y) == k and len(set(lab[y.array].tolist())) == k:
                out.append((w, y))
    return out


# ---------------------------------------------------------------------------
# the ten conditions


@dataclass
class SemidirectConditions:
    values: dict
    # (l) without asking the endomorphism to land in Y; reported, not part of the vector
    l_any_codomain: bool | None = None

    @property
    def agree(self) -> bool:
        return len(set(self.values.values())) == 1

    @property
    def holds(self) -> bool:
        return all(self.values.values())

    def vector(self) -> list:
        return [self.values[k] for k in CONDITION_LABELS]


def _validate_pair(algebra, y: Subset, omega: Partition) -> None:
    n = _size(algebra)
    if y.n != n or omega.size != n:
        raise InputError("Y and omega must live on the carrier of the algebra")
    if not len(y):
        raise InputError("Y must be non-empty")
    kind = "subheap" if isinstance(algebra, TernaryTable) else "subnear-truss"
    if not _is_subalgebra(algebra, y):
        raise InputError(f"Y = {{{y}}} is not a {kind}")
    if not is_congruence(algebra, omega):
        raise InputError(f"omega = {omega} is not a congruence of the algebra")


def _section_maps(y: Subset, omega: Partition, limit: int = SEARCH_LIMIT) -> np.ndarray:
    """Every map constant on ``ω``-classes with values in ``Y``."""
    k = omega.num_blocks
    if len(y) ** k > limit:
        raise ResourceLimitError("section map search", len(y) ** k, limit)
    choices = np.array(list(itertools.product(y.members, repeat=k)), dtype=np.int64).reshape(-1, k)
    return choices[:, omega.labels]


def _kernel_rows(F: np.ndarray, omega: Partition) -> np.ndarray:
    same = omega.relation()
    return np.array([np.array_equal(r[:, None] == r[None, :], same) for r in F], dtype=bool)


def _cond_b(algebra, y, omega) -> bool:
    F = _section_maps(y, omega)
    F = F[_kernel_rows(F, omega) & _idempotent_rows(F)]
    F = F[[set(r.tolist()) == set(y.members) for r in F]] if len(F) else F
    return bool(len(F) and _morphism_mask(algebra, F).any())


def _cond_cd(algebra, y, omega) -> dict:
    """Per base ``e`` in ``Y``: an idempotent retract endomorphism with image ``Y`` and kernel ``[e]_ω``."""
    P, M = _ops(algebra)
    heap = algebra if isinstance(algebra, TernaryTable) else algebra.heap
    out = {}
    for e in y:
        g = retract_group(heap, e, check=False)
        cls = set(omega.block_of(e))
        found = False
        for f in group_endomorphisms(g):
            if not f.is_idempotent() or set(f.images) != set(y.members):
                continue
            if {x for x in range(f.size) if f(x) == e} != cls:
                continue
            if M is not None:
                fa = f.array
                if not np.array_equal(fa[M], M[fa[:, None], fa[None, :]]):
                    continue
            found = True
            break
        out[e] = found
    return out


def _cond_ef(algebra, y, omega) -> dict:
    heap = algebra if isinstance(algebra, TernaryTable) else algebra.heap
    n = heap.size
    out = {}
    for e in y:
        g = retract_group(heap, e, check=False)
        nsub = omega.block_of(e)
        ok = is_subgroup(g, y.members) and is_normal_subgroup(g, nsub)
        if ok:
            ok = set(y.members) & set(nsub) == {e}
            prods = {int(g.op.table[a, b]) for a in nsub for b in y}
            ok = ok and len(prods) == n
        out[e] = bool(ok)
    return out


def _unique_factorisation(P, y: Subset, omega: Partition, order: str) -> bool:
    n = P.shape[0]
    ym = y.array
    for c in y:
        cls = np.array(omega.block_of(c))
        if order == "g":
            vals = P[cls[:, None], c, ym[None, :]]  # a = [b, c, d]
        else:
            vals = P[ym[None, :], c, cls[:, None]]  # a = [d, c, b]
        if not (np.bincount(vals.ravel(), minlength=n) == 1).all():
            return False
    return True


def _cond_i(algebra, y, omega) -> bool:
    P, M = _ops(algebra)
    lab = omega.labels
    if sorted(lab[y.array].tolist()) != list(range(omega.num_blocks)):
        return False
    reps = np.array([b[0] for b in omega.blocks()])
    ym = y.array
    QP = lab[P[reps[:, None, None], reps[None, :, None], reps[None, None, :]]]
    ly = lab[ym]
    if not np.array_equal(lab[P[np.ix_(ym, ym, ym)]], QP[ly[:, None, None], ly[None, :, None], ly[None, None, :]]):
        return False
    if M is not None:
        QM = lab[M[reps[:, None], reps[None, :]]]
        if not np.array_equal(lab[M[np.ix_(ym, ym)]], QM[ly[:, None], ly[None, :]]):
            return False
    return True


def _cond_l(algebra, y, omega, into_y: bool = True, limit: int = SEARCH_LIMIT) -> bool:
    # into_y: the endomorphism must take values in Y, as the map built from (i) does
    n = _size(algebra)
    targets = list(y) if into_y else list(range(n))
    values: list = [None] * omega.num_blocks
    for v in y:
        b = omega.block_id[v]
        if values[b] is not None:
            return False
        values[b] = v
    free = [b for b, v in enumerate(values) if v is None]
    if len(targets) ** len(free) > limit:
        raise ResourceLimitError("extension search", len(targets) ** len(free), limit)
    rows = []
    for choice in itertools.product(targets, repeat=len(free)):
        vals = list(values)
        for b, v in zip(free, choice):
            vals[b] = v
        if len(set(vals)) == len(vals):
            rows.append([vals[b] for b in omega.block_id])
    if not rows:
        return False
    return bool(_morphism_mask(algebra, np.array(rows, dtype=np.int64)).any())


def check_semidirect_conditions(algebra, y: Subset, omega: Partition, strict: bool = True) -> SemidirectConditions:
    """Evaluate conditions (a)-(i) and (l) independently; ``strict`` asserts agreement."""
    _validate_pair(algebra, y, omega)
    P, _ = _ops(algebra)
    lab = omega.labels
    values = {"a": all(sum(1 for v in y if lab[v] == lab[x]) == 1 for x in range(omega.size))}
    values["b"] = _cond_b(algebra, y, omega)
    cd = _cond_cd(algebra, y, omega)
    values["c"] = all(cd.values())
    values["d"] = any(cd.values())
    ef = _cond_ef(algebra, y, omega)
    values["e"] = all(ef.values())
    values["f"] = any(ef.values())
    values["g"] = _unique_factorisation(P, y, omega, "g")
    values["h"] = _unique_factorisation(P, y, omega, "h")
    values["i"] = _cond_i(algebra, y, omega)
    values["l"] = _cond_l(algebra, y, omega)
    out = SemidirectConditions(values, _cond_l(algebra, y, omega, into_y=False))
    if strict and not out.agree:
        raise TheoremViolation(f"semidirect conditions disagree for Y={{{y}}}, omega={omega}: {values}")
    return out


@dataclass
class CorrespondenceReport:
    idempotents: list
    pairs: list
    forward: dict
    backward: dict
    bijective: bool
    method: str


def decomposition_correspondence(algebra, max_n: int = DEFAULT_MAX_N) -> CorrespondenceReport:
    """Match idempotents ``f`` with pairs ``(ker f, f(X))`` and back."""
    n = _size(algebra)
    idem = enumerate_idempotents(algebra, max_n)
    pairs = decomposition_pairs(algebra, max_n)
    forward = {i.map: (i.kernel, i.image) for i in idem}
    backward = {p: SemidirectDecomposition.from_pair(*p).idempotent for p in pairs}
    bijective = (len(idem) == len(pairs) and set(forward.values()) == set(pairs)
                 and all(backward[forward[f]] == f for f in forward))
    method = "all maps" if n <= BRUTE_FORCE_N else "congruence and transversal pairs"
    return CorrespondenceReport(idem, pairs, forward, backward, bijective, method)


# ---------------------------------------------------------------------------
# actions


@dataclass(frozen=True)
class ActionTable:
    """One map ``α_y`` of ``K`` per element of ``Y``, in local indices.

    ``k_members`` and ``y_members`` name the carrier elements when ``K`` and
    ``Y`` sit inside a larger heap; ``base`` is the local index of ``y0``.
    """

    base: int
    maps: tuple
    k_members: tuple = ()
    y_members: tuple = ()

    @property
    def k_size(self) -> int:
        return self.maps[0].size

    @property
    def y_size(self) -> int:
        return len(self.maps)

    def array(self) -> np.ndarray:
        return np.array([m.images for m in self.maps], dtype=np.int64)


def restrict(heap: TernaryTable, s: Subset) -> TernaryTable:
    """The subheap on ``s`` relabelled by position."""
    if not is_subheap(heap, s):
        raise InputError(f"{{{s}}} is not a subheap")
    pos = np.full(heap.size, -1)
    pos[s.array] = np.arange(len(s))
    return TernaryTable(pos[heap.table[np.ix_(s.array, s.array, s.array)]])


def validate_action(k_heap: TernaryTable, y_heap: TernaryTable, action: ActionTable) -> list:
    """Violations of: each ``α_y`` a heap automorphism, ``α`` a heap morphism, ``α_{y0}`` the identity."""
    out = []
    if action.y_size != y_heap.size or action.k_size != k_heap.size:
        return [("shape", (action.y_size, action.k_size))]
    K, Y = k_heap.table, y_heap.table
    A = action.array()
    for y, a in enumerate(A):
        if len(set(a.tolist())) != len(a) or not np.array_equal(a[K], K[a[:, None, None], a[None, :, None], a[None, None, :]]):
            out.append(("automorphism", (y,)))
    if out:
        return out
    inv = np.argsort(A, axis=1)
    # α_[y1,y2,y3] = α_y1 ∘ α_y2^-1 ∘ α_y3
    ny = A.shape[0]
    lhs = A[Y]
    mid = inv[np.arange(ny)[None, :, None, None], A[None, None, :, :]]
    rhs = A[np.arange(ny)[:, None, None, None], mid]
    bad = (lhs != rhs).any(axis=-1)
    if bad.any():
        out.append(("action_morphism", tuple(int(i) for i in np.argwhere(bad)[0])))
    if not np.array_equal(A[action.base], np.arange(k_heap.size)):
        out.append(("base_identity", (action.base,)))
    return out


def conjugation_action(heap: TernaryTable, decomposition: SemidirectDecomposition, e: int) -> ActionTable:
    """``α_y(k) = [y, e, [k, y, e]]`` on ``K = [e]_ω`` for ``y`` in ``Y``.

    Each map is checked against the group conjugation ``y k y^-1`` in
    ``(X, b_e)`` and against ``[[y, e, k], e, [e, y, e]]``.
    """
    y_sub = decomposition.section
    if e not in y_sub:
        raise InputError(f"base {e} is not in Y = {{{y_sub}}}")
    P = heap.table
    k_members = decomposition.omega.block_of(e)
    k_arr = np.array(k_members)
    pos = {k: i for i, k in enumerate(k_members)}
    g = retract_group(heap, e, check=False)
    G, inv = g.op.table, g.inv_array
    maps = []
    for y in y_sub:
        vals = P[y, e, P[k_arr, y, e]]
        conj = G[G[y, k_arr], inv[y]]
        other = P[P[y, e, k_arr], e, P[e, y, e]]
        if not (np.array_equal(vals, conj) and np.array_equal(vals, other)):
            raise TheoremViolation(f"conjugation forms disagree at y={y}")
        if any(int(v) not in pos for v in vals):
            raise TheoremViolation(f"α_{y} leaves the class of {e}")
        maps.append(Endomap(tuple(pos[int(v)] for v in vals)))
    action = ActionTable(y_sub.members.index(e), tuple(maps), tuple(k_members), y_sub.members)
    problems = validate_action(restrict(heap, Subset(heap.size, tuple(k_members))), restrict(heap, y_sub), action)
    if problems:
        raise TheoremViolation(f"conjugation action fails: {problems[0]}")
    return action


@dataclass
class OuterSemidirect:
    table: TernaryTable
    heap_valid: bool
    k_copy_normal: bool
    k_copy_isomorphic: bool
    sections_ok: bool
    conditions_hold: bool
    k0: int
    recovered_matches_translate: bool
    recovered_equals_action: bool

    @property
    def passed(self) -> bool:
        return (self.heap_valid and self.k_copy_normal and self.k_copy_isomorphic and self.sections_ok
                and self.conditions_hold and self.recovered_matches_translate)


def outer_semidirect_table(k_heap: TernaryTable, y_heap: TernaryTable, action: ActionTable) -> TernaryTable:
    """``[(k1,y1),(k2,y2),(k3,y3)] = ([k1, α_w(k2), α_w(k3)], [y1,y2,y3])`` with ``w = [y1,y2,y0]``.

    Pair ``(k, y)`` has index ``k * |Y| + y``.
    """
    problems = validate_action(k_heap, y_heap, action)
    if problems:
        law, w = problems[0]
        raise InputError(f"invalid action: law={law} witness={w}")
    K, Y = k_heap.table, y_heap.table
    A = action.array()
    ny = y_heap.size
    n = k_heap.size * ny
    idx = np.arange(n)
    ks, ys = idx // ny, idx % ny
    w = Y[ys[:, None], ys[None, :], action.base]  # [i1, i2]
    a2 = A[w, ks[None, :]]  # α_w(k2)
    a3 = A[w[:, :, None], ks[None, None, :]]  # α_w(k3)
    kpart = K[ks[:, None, None], a2[:, :, None], a3]
    ypart = Y[ys[:, None, None], ys[None, :, None], ys[None, None, :]]
    return TernaryTable(kpart * ny + ypart)


def outer_semidirect(k_heap: TernaryTable, y_heap: TernaryTable, action: ActionTable) -> OuterSemidirect:
    """Build the outer product and check its structural claims.

    The decomposition check uses ``ω`` = same ``Y``-coordinate and the section
    ``{k0} × Y``, where ``k0`` is the first point fixed by every ``α_y`` (or
    ``0``).  The recovered conjugation action equals ``[k0, α_y(k0), α_y(k)]``,
    which is ``α_y`` itself when ``k0`` is a common fixed point.
    """
    T = outer_semidirect_table(k_heap, y_heap, action)
    nk, ny = k_heap.size, y_heap.size
    n = nk * ny
    K = k_heap.table
    A = action.array()
    y0 = action.base
    heap_valid = check_heap(T).passed
    kcopy = Subset(n, tuple(k * ny + y0 for k in range(nk)))
    k_normal = heap_valid and is_subheap(T, kcopy) and _is_normal_fast(T.table, kcopy)
    k_iso = k_normal and restrict(T, kcopy) == k_heap
    sections_ok = True
    for k in range(nk):
        sec = Subset(n, tuple(k * ny + y for y in range(ny)))
        f = np.array([k * ny + (i % ny) for i in range(n)])
        if not (is_subheap(T, sec) and restrict(T, sec) == y_heap
                and ternary_morphism_mask(T.table, f[None, :])[0] and np.array_equal(f[f], f)):
            sections_ok = False
    fixed = [k for k in range(nk) if (A[:, k] == k).all()]
    k0 = fixed[0] if fixed else 0
    conditions = recovered = exact = False
    if heap_valid:
        omega = Partition.from_labels([i % ny for i in range(n)])
        section = Subset(n, tuple(k0 * ny + y for y in range(ny)))
        conditions = check_semidirect_conditions(T, section, omega).holds
        if conditions:
            dec = SemidirectDecomposition.from_pair(omega, section)
            rec = conjugation_action(T, dec, k0 * ny + y0).array()
            expected = K[k0, A[:, k0][:, None], A]
            recovered = bool(np.array_equal(rec, expected))
            exact = bool(np.array_equal(rec, A))
    return OuterSemidirect(T, heap_valid, k_normal, k_iso, sections_ok, conditions, k0, recovered, exact)


# ---------------------------------------------------------------------------
# direct products


@dataclass
class DirectProductConditions:
    values: dict

    @property
    def agree(self) -> bool:
        return len(set(self.values.values())) == 1

    @property
    def holds(self) -> bool:
        return all(self.values.values())


def direct_product_conditions(heap: TernaryTable, decomposition: SemidirectDecomposition, e: int,
                              strict: bool = True) -> DirectProductConditions:
    """Conditions (a)-(e) for ``ω ⋊ Y`` to be a direct product, evaluated independently.

    When all hold the Smith commutator of ``~_Y`` and ``ω`` is checked to be
    the equality relation.
    """
    from .commutators import smith_commutator_heap

    y_sub = decomposition.section
    if e not in y_sub:
        raise InputError(f"base {e} is not in Y = {{{y_sub}}}")
    P = heap.table
    n = heap.size
    k_sub = Subset(n, decomposition.omega.block_of(e))
    values = {"a": _is_normal_fast(P, y_sub)}
    kt, yt = restrict(heap, k_sub), restrict(heap, y_sub)
    prod = direct_product_ternary(kt, yt)
    ka, ya = k_sub.array, y_sub.array
    phi = P[ka[:, None], e, ya[None, :]].ravel()  # (k, y) -> [k, e, y]
    values["b"] = bool(len(set(phi.tolist())) == n and np.array_equal(
        phi[prod.table], P[phi[:, None, None], phi[None, :, None], phi[None, None, :]]))
    values["c"] = bool(np.array_equal(P[ya[:, None], e, ka[None, :]], P[ka[None, :], e, ya[:, None]]))
    values["d"] = any(i.image == k_sub and {x for x in range(n) if i.map(x) == e} == set(y_sub.members)
                      for i in enumerate_idempotents(heap))
    action = conjugation_action(heap, decomposition, e)
    values["e"] = all(m == Endomap.identity(m.size) for m in action.maps)
    out = DirectProductConditions(values)
    if strict and not out.agree:
        raise TheoremViolation(f"direct-product conditions disagree: {values}")
    if out.holds and values["a"]:
        sim_y = congruence_of_normal(heap, y_sub, check=False)
        if smith_commutator_heap(heap, sim_y, decomposition.omega, e) != Partition.equality(n):
            raise TheoremViolation("commutator of ~_Y and omega is not the equality relation")
    return out
