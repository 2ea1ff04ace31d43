"""Smith commutators of heap congruences and Smith/Huq ideals of left near-trusses.

For heaps the commutator of two congruences is computed in a retract group
as the normal closure of ``n m n^-1 m^-1`` and cross-checked by an oracle that
searches the congruence lattice for the least ``T`` making the connector
``(x, y, z) -> [x, y, z]`` a morphism into ``X/T``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_MAX_N, BinaryTable, GroupView, TernaryTable, first_witness, retract_group
from .errors import InputError, ResourceLimitError, TheoremViolation
from .groups import commutator_subgroup, is_subgroup
from .ideals import enumerate_near_truss_congruences, ideal_closure, is_near_truss_ideal
from .subobjects import (
    Partition,
    Subset,
    _ops,
    _require_congruence,
    congruence_of_normal,
    enumerate_congruences,
)
from .trusses import NearTruss, require_valid

# triple-product limit for the full connector scan; above it the base-point reduction is used
FULL_SCAN_LIMIT = 30_000_000


@dataclass
class ConnectorDomain:
    """The triples ``(x, y, z)`` with ``x R y`` and ``y S z``, in lexicographic order."""

    triples: np.ndarray
    connector_witness: tuple | None
    closure_witness: tuple | None
    closure_checked: str

    def __len__(self):
        return len(self.triples)

    @property
    def passed(self) -> bool:
        return self.connector_witness is None and self.closure_witness is None


def connector_domain(algebra, r: Partition, s: Partition) -> ConnectorDomain:
    """Enumerate ``R ×_X S`` and check ``x S [x,y,z]`` and ``[x,y,z] R z`` on each triple.

    Closure under the componentwise operations is verified on all triples
    when the domain is small, and through one base triple otherwise.
    """
    _require_congruence(algebra, r, "R")
    _require_congruence(algebra, s, "S")
    P, M = _ops(algebra)
    rl, sl = r.labels, s.labels
    n = P.shape[0]
    rows = [(x, y, z) for x in range(n) for y in range(n) if rl[x] == rl[y]
            for z in range(n) if sl[y] == sl[z]]
    D = np.array(rows, dtype=np.int64).reshape(-1, 3)
    p = P[D[:, 0], D[:, 1], D[:, 2]]
    bad = (sl[D[:, 0]] != sl[p]) | (rl[p] != rl[D[:, 2]])
    cw = None if not bad.any() else tuple(int(v) for v in D[np.argmax(bad)])
    member = np.zeros((n, n, n), dtype=bool)
    member[D[:, 0], D[:, 1], D[:, 2]] = True
    k = len(D)
    if k ** 3 <= FULL_SCAN_LIMIT:
        mode = "full"
        closure = _ternary_closure_witness(P, D, member, range(k))
    else:
        mode = "base"
        closure = _ternary_closure_witness(P, D, member, [0])
    if closure is None and M is not None:
        prod = M[D[:, None, :], D[None, :, :]]  # [i, j, coord]
        w = first_witness(~member[prod[..., 0], prod[..., 1], prod[..., 2]])
        closure = None if w is None else ("mul",) + w
    return ConnectorDomain(D, cw, closure, mode)


def _ternary_closure_witness(P, D, member, middles):
    for j in middles:
        t = P[D[:, None, :], D[j][None, None, :], D[None, :, :]]  # [i, l, coord]
        w = first_witness(~member[t[..., 0], t[..., 1], t[..., 2]])
        if w is not None:
            return (w[0], j, w[1])
    return None


# ---------------------------------------------------------------------------
# heaps: retract-group route and oracle


def _smith_at(heap: TernaryTable, r: Partition, s: Partition, e: int) -> Partition:
    g = retract_group(heap, e, check=False)
    comm = commutator_subgroup(g, r.block_of(e), s.block_of(e))
    return congruence_of_normal(heap, Subset(heap.size, comm), check=False)


def smith_commutator_heap(heap: TernaryTable, r: Partition, s: Partition, e: int = 0,
                          all_bases: bool = True) -> Partition:
    """``[R, S]`` from the commutator ``[N, M]`` of the classes of ``e`` in ``(X, b_e)``.

    With ``all_bases`` the computation is repeated at every base point and a
    disagreement raises :class:`TheoremViolation`.
    """
    _require_congruence(heap, r, "R")
    _require_congruence(heap, s, "S")
    if not 0 <= e < heap.size:
        raise InputError(f"base element {e} not in carrier")
    result = _smith_at(heap, r, s, e)
    if all_bases:
        for f in range(heap.size):
            other = _smith_at(heap, r, s, f)
            if other != result:
                raise TheoremViolation(f"commutator at base {f} ({other}) differs from base {e} ({result})")
    return result


def _connector_is_morphism(P, M, D, lab, full: bool) -> bool:
    reps = np.array([int(np.argmax(lab == c)) for c in range(lab.max() + 1)])
    QP = lab[P[reps[:, None, None], reps[None, :, None], reps[None, None, :]]]
    q = lab[P[D[:, 0], D[:, 1], D[:, 2]]]
    middles = range(len(D)) if full else [0]
    for j in middles:
        t = P[D[:, None, :], D[j][None, None, :], D[None, :, :]]
        lhs = lab[P[t[..., 0], t[..., 1], t[..., 2]]]
        rhs = QP[q[:, None], q[j], q[None, :]]
        if (lhs != rhs).any():
            return False
    if M is not None:
        QM = lab[M[reps[:, None], reps[None, :]]]
        t = M[D[:, None, :], D[None, :, :]]
        lhs = lab[P[t[..., 0], t[..., 1], t[..., 2]]]
        if (lhs != QM[q[:, None], q[None, :]]).any():
            return False
    return True


def smith_commutator_oracle(algebra, r: Partition, s: Partition, max_n: int = DEFAULT_MAX_N) -> Partition:
    """Least congruence ``T`` for which the connector induces a morphism into ``X/T``.

    Heaps use heap congruences; near-trusses use near-truss congruences and
    also require the multiplication to be respected.  Uniqueness of the least
    candidate is asserted.
    """
    P, M = _ops(algebra)
    n = P.shape[0]
    if n > max_n:
        raise ResourceLimitError("Smith commutator oracle", n, max_n)
    dom = connector_domain(algebra, r, s)
    D = dom.triples
    full = len(D) ** 3 <= FULL_SCAN_LIMIT
    if isinstance(algebra, TernaryTable):
        congs = enumerate_congruences(algebra, max_n=max_n)
    else:
        congs = enumerate_near_truss_congruences(algebra, max_n=max_n)
    good = [t for t in congs if _connector_is_morphism(P, M, D, t.labels, full)]
    least = [t for t in good if all(t.refines(u) for u in good)]
    if len(least) != 1:
        raise TheoremViolation(f"no unique least congruence among {len(good)} candidates")
    return least[0]


# ---------------------------------------------------------------------------
# near-trusses: generator recipes


@dataclass
class GeneratorSet:
    kind: str
    elements: Subset


@dataclass
class NearTrussCommutators:
    base: int
    smith_generators: GeneratorSet
    huq_generators: GeneratorSet
    smith_ideal: Subset
    huq_ideal: Subset
    smith_congruence: Partition
    huq_congruence: Partition


def _generators(nt: NearTruss, e: int, a: Subset, xs: np.ndarray, b: Subset, chunk: int = 64) -> np.ndarray:
    """Mask of ``[φ(d1 d2), φ(d1) φ(d2), e]`` over ``d = (a, x, b)``.

    Here ``u = [a, e, x]``, ``w = [x, e, b]`` and ``φ(d) = [u, x, w]``, with
    the product ``d1 d2`` taken componentwise, so ``φ(d1 d2) = [u1 u2, x1 x2, w1 w2]``.
    """
    P, M = nt.heap.table, nt.mul.table
    A, X, B = np.meshgrid(a.array, xs, b.array, indexing="ij")
    A, X, B = A.ravel(), X.ravel(), B.ravel()
    U = P[A, e, X]
    W = P[X, e, B]
    phi = P[U, X, W]
    found = np.zeros(nt.size, dtype=bool)
    for start in range(0, len(A), chunk):
        sl = slice(start, start + chunk)
        uu = M[U[sl, None], U[None, :]]
        xx = M[X[sl, None], X[None, :]]
        ww = M[W[sl, None], W[None, :]]
        lhs = P[uu, xx, ww]
        rhs = M[phi[sl, None], phi[None, :]]
        found[P[lhs, rhs, e].ravel()] = True
    return found


def near_truss_commutators(nt: NearTruss, e: int, a: Subset, b: Subset) -> NearTrussCommutators:
    """Smith and Huq ideals generated from the ideals ``A`` and ``B`` through ``e``.

    The near-ring zero is identified with ``e``; sums and differences are taken
    in ``(X, b_e)``.  The Huq generators are the Smith ones at ``x1 = x2 = e``.
    """
    lt = nt.left_form()
    n = lt.size
    for name, s in (("A", a), ("B", b)):
        if e not in s or not is_near_truss_ideal(lt, s).is_ideal:
            raise InputError(f"{name} = {{{s}}} is not an ideal through {e}")
    smith_mask = _generators(lt, e, a, np.arange(n), b)
    huq_mask = _generators(lt, e, a, np.array([e]), b)
    sg = Subset(n, tuple(int(v) for v in np.flatnonzero(smith_mask)))
    hg = Subset(n, tuple(int(v) for v in np.flatnonzero(huq_mask)))
    smith = ideal_closure(lt, sg.members, e)
    huq = ideal_closure(lt, hg.members, e)
    if not huq.issubset(smith):
        raise TheoremViolation("Huq ideal is not contained in the Smith ideal")
    return NearTrussCommutators(
        e, GeneratorSet("smith", sg), GeneratorSet("huq", hg), smith, huq,
        congruence_of_normal(lt.heap, smith, check=False), congruence_of_normal(lt.heap, huq, check=False))


# ---------------------------------------------------------------------------
# the cube example


@dataclass
class HuqSmithExample:
    near_truss: NearTruss
    a: Subset
    b: Subset
    base: int
    m_size: int


def cube_index(m: int, c1: int, c2: int, c3: int) -> int:
    return (c1 * m + c2) * m + c3


def cube_near_truss(m_group: GroupView, k_members) -> HuqSmithExample:
    """``X = M^3`` with ``(n)(m) = (m2, 0, 0)`` when ``n2, n3 != 0`` and ``0`` otherwise.

    No conditions are imposed on ``K``; see :func:`build_huq_smith_example`.
    Coordinates ``(c1, c2, c3)`` have index ``(c1 |M| + c2) |M| + c3`` and ``A``,
    ``B`` are ``M × K × 0`` and ``M × 0 × M``.
    """
    q = m_group.size
    z = m_group.identity
    G, inv = m_group.op.table, m_group.inv_array
    n = q ** 3
    idx = np.arange(n)
    c1, c2, c3 = idx // (q * q), idx // q % q, idx % q

    def coord(c):
        return G[G[c[:, None, None], inv[c][None, :, None]], c[None, None, :]]

    heap = (coord(c1) * q + coord(c2)) * q + coord(c3)
    zero = cube_index(q, z, z, z)
    active = (c2 != z) & (c3 != z)
    mul = np.where(active[:, None], cube_index(q, 0, z, z) + (c2[None, :] * q * q), zero)
    ks = set(int(v) for v in k_members)
    a = Subset.of(n, [i for i in range(n) if c2[i] in ks and c3[i] == z])
    b = Subset.of(n, [i for i in range(n) if c2[i] == z])
    return HuqSmithExample(NearTruss(TernaryTable(heap), BinaryTable(mul), "left"), a, b, zero, q)


def build_huq_smith_example(m_group: GroupView, k: Subset, validate: bool = True) -> HuqSmithExample:
    """The cube near-truss over an abelian group ``M`` with a nonzero proper subgroup ``K``."""
    if not m_group.is_abelian():
        raise InputError("M must be abelian")
    if not is_subgroup(m_group, k.members):
        raise InputError(f"K = {{{k}}} is not a subgroup of M")
    if len(k) in (1, m_group.size):
        raise InputError(f"K = {{{k}}} must be a nonzero proper subgroup")
    ex = cube_near_truss(m_group, k.members)
    if validate:
        require_valid(ex.near_truss, max_n=DEFAULT_MAX_N)
    return ex
