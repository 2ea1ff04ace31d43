"""Near-trusses, trusses, semi-near-trusses and skew braces.

A :class:`NearTruss` stores its heap and its multiplication as given; ``side``
records which distributive law is claimed (``left``, ``right`` or ``both``).
Right near-trusses are handled by the left-sided routines through
:meth:`NearTruss.left_form`, which swaps in the opposite multiplication.

Left near-rings follow the convention: ``(N, +)`` a group (not necessarily
abelian), ``(N, ·)`` a semigroup, and ``z(x + y) = zx + zy``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_MAX_N,
    BinaryTable,
    Endomap,
    GroupView,
    TernaryTable,
    ValidationReport,
    all_maps,
    associativity_witness,
    check_heap,
    first_witness,
    heap_from_group,
    is_abelian_table,
    retract_group,
    ternary_morphism_mask,
    validate_ternary,
)
from .errors import InputError, ResourceLimitError, TheoremViolation
from .groups import cyclic_group, direct_product

SIDES = ("left", "right", "both")


@dataclass(frozen=True)
class NearTruss:
    heap: TernaryTable
    mul: BinaryTable
    side: str = "left"

    def __post_init__(self):
        if self.side not in SIDES:
            raise InputError(f"unknown side {self.side!r}")
        if self.heap.size != self.mul.size:
            raise InputError("heap and multiplication live on different carriers")

    @property
    def size(self) -> int:
        return self.heap.size

    @property
    def abelian(self) -> bool:
        return is_abelian_table(self.heap)

    def left_form(self) -> "NearTruss":
        """The left near-truss carrying the same data (opposite product for right ones)."""
        if self.side == "right":
            return NearTruss(self.heap, self.mul.opposite(), "left")
        return self

    def opposite(self) -> "NearTruss":
        flip = {"left": "right", "right": "left", "both": "both"}[self.side]
        return NearTruss(self.heap, self.mul.opposite(), flip)


@dataclass(frozen=True)
class SemiNearTruss:
    semiheap: TernaryTable
    mul: BinaryTable


@dataclass(frozen=True)
class SkewBrace:
    star: GroupView
    circ: GroupView


# ---------------------------------------------------------------------------
# distributivity scans


def _left_distributivity(P: np.ndarray, M: np.ndarray):
    """First ``(x, y, z, w)`` with ``x[y,z,w] != [xy, xz, xw]``."""
    n = P.shape[0]
    for x in range(n):
        r = M[x]
        lhs = r[P]
        rhs = P[r[:, None, None], r[None, :, None], r[None, None, :]]
        w = first_witness(lhs != rhs, (x,))
        if w is not None:
            return w
    return None


def _right_distributivity(P: np.ndarray, M: np.ndarray):
    """First ``(x, y, z, w)`` with ``[y,z,w]x != [yx, zx, wx]``."""
    return _left_distributivity(P, M.T)


def _retract_distributivity(P: np.ndarray, M: np.ndarray):
    """First ``(w, x, y, z)`` with ``w(x *_y z) != (wx) *_y (wy)^-1 *_y (wz)``."""
    n = P.shape[0]
    ar = np.arange(n)
    for w in range(n):
        r = M[w]
        lhs = r[P]  # lhs[x, y, z] = w [x, y, z]
        inv = P[ar, r, ar]  # (wy)^-1 in b_y, indexed by y
        left = P[r[:, None], ar[None, :], inv[None, :]]  # (wx) *_y (wy)^-1, indexed [x, y]
        rhs = P[left[:, :, None], ar[None, :, None], r[None, None, :]]
        wit = first_witness(lhs != rhs, (w,))
        if wit is not None:
            return wit
    return None


def validate_near_truss(heap: TernaryTable, mul: BinaryTable, side: str = "left",
                        max_n: int = DEFAULT_MAX_N) -> ValidationReport:
    """Heap laws, associativity of ``mul`` and the claimed distributive laws.

    Both distributive laws are always scanned and recorded in ``info``; only
    the claimed ones count as violations.  For left-sided structures the
    retract form of distributivity is scanned as a redundant cross-check.
    """
    if side not in SIDES:
        raise InputError(f"unknown side {side!r}")
    P, M = heap.table, mul.table
    rep = ValidationReport(f"near_truss_{side}" if side != "both" else "truss")
    rep.extend(check_heap(heap, max_n))
    rep.add("mul_associativity", associativity_witness(M))
    left = _left_distributivity(P, M)
    right = _right_distributivity(P, M)
    if side in ("left", "both"):
        rep.add("left_distributivity", left)
    if side in ("right", "both"):
        rep.add("right_distributivity", right)
    heap_ok = not any(law.startswith(("maltsev", "associativity", "retract")) for law in rep.laws())
    if heap_ok:
        if side in ("left", "both"):
            rd = _retract_distributivity(P, M)
            rep.add("retract_distributivity", rd)
            rep.info["retract_distributivity_agrees"] = (rd is None) == (left is None)
        if side == "right":
            rd = _retract_distributivity(P, M.T)
            rep.info["retract_distributivity_agrees"] = (rd is None) == (right is None)
    rep.info["left_distributive"] = left is None
    rep.info["right_distributive"] = right is None
    if left is not None:
        rep.info["left_witness"] = left
    if right is not None:
        rep.info["right_witness"] = right
    abelian = bool(rep.info.get("abelian"))
    if side == "both" and not abelian:
        rep.add("commutativity", first_witness(P != P.transpose(2, 1, 0)))
    rep.info["truss"] = abelian and left is None and right is None and associativity_witness(M) is None
    return rep


def validate_nt(nt: NearTruss, max_n: int = DEFAULT_MAX_N) -> ValidationReport:
    return validate_near_truss(nt.heap, nt.mul, nt.side, max_n)


def require_valid(nt: NearTruss, max_n: int = DEFAULT_MAX_N) -> None:
    rep = validate_nt(nt, max_n)
    if not rep.passed:
        law, w = rep.violations[0]
        raise InputError(f"not a valid {rep.kind}: law={law} witness={w}")


def validate_semi_near_truss(semiheap: TernaryTable, mul: BinaryTable,
                             max_n: int = DEFAULT_MAX_N) -> ValidationReport:
    rep = ValidationReport("semi_near_truss_left")
    rep.extend(validate_ternary(semiheap, "semiheap", max_n))
    rep.add("mul_associativity", associativity_witness(mul.table))
    rep.add("left_distributivity", _left_distributivity(semiheap.table, mul.table))
    return rep


def left_projection_semiheap(n: int) -> TernaryTable:
    return TernaryTable.from_function(n, lambda x, y, z: x)


def multiplication_mod(n: int) -> BinaryTable:
    return BinaryTable.from_function(n, lambda a, b: a * b % n)


# ---------------------------------------------------------------------------
# near-rings, rings and the Jacobson circle operation


def validate_left_near_ring(add: GroupView, mul: BinaryTable, kind: str = "left_near_ring") -> ValidationReport:
    """Group ``+``, associative ``·`` and ``z(x + y) = zx + zy``; rings also need the mirror law."""
    A, M = add.op.table, mul.table
    rep = ValidationReport(kind)
    rep.extend(add.validate())
    rep.add("mul_associativity", associativity_witness(M))
    lhs = M[:, A]  # z (x + y)
    rhs = A[M[:, :, None], M[:, None, :]]  # zx + zy
    rep.add("left_distributivity", first_witness(lhs != rhs))
    if kind == "ring":
        lhs = M[A]  # (x + y) z, indexed [x, y, z]
        rhs = A[M[:, None, :], M[None, :, :]]
        rep.add("right_distributivity", first_witness(lhs != rhs))
        rep.add("add_commutativity", first_witness(A != A.T))
    return rep


def zn_ring(n: int) -> tuple[GroupView, BinaryTable]:
    return cyclic_group(n), multiplication_mod(n)


def ut2_z2_ring() -> tuple[GroupView, BinaryTable]:
    """Upper-triangular ``2x2`` matrices over ``Z2``; ``[[a, b], [0, c]]`` has index ``4a + 2b + c``."""
    def dec(i):
        return i >> 2 & 1, i >> 1 & 1, i & 1

    def mul(i, j):
        a, b, c = dec(i)
        a2, b2, c2 = dec(j)
        return 4 * (a * a2 % 2) + 2 * ((a * b2 + b * c2) % 2) + (c * c2 % 2)

    add = direct_product(direct_product(cyclic_group(2), cyclic_group(2)), cyclic_group(2))
    return add, BinaryTable.from_function(8, mul)


def jacobson_mul(add: GroupView, mul: BinaryTable) -> BinaryTable:
    """``x ∘ y = x + y + xy``."""
    A, M = add.op.table, mul.table
    return BinaryTable(A[A, M])


def ring_unit(mul: BinaryTable) -> int | None:
    M = mul.table
    ar = np.arange(mul.size)
    for u in range(mul.size):
        if np.array_equal(M[u], ar) and np.array_equal(M[:, u], ar):
            return u
    return None


def near_truss_from_ring_or_nearring(add: GroupView, mul: BinaryTable, kind: str = "ring") -> tuple[NearTruss, dict]:
    """The near-truss ``[x, y, z] = x - y + z`` over a ring or left near-ring.

    For rings the returned dict records the two distinguished retracts: that
    ``(R, b_0)`` is the additive group, and, when a unit ``1`` exists, that
    ``x -> x - 1`` carries ``(R, b_1, ·)`` onto ``(R, +, ∘)``.
    """
    if kind not in ("ring", "left_near_ring"):
        raise InputError(f"unknown kind {kind!r}")
    rep = validate_left_near_ring(add, mul, kind)
    if not rep.passed:
        law, w = rep.violations[0]
        raise InputError(f"not a {kind}: law={law} witness={w}")
    heap = heap_from_group(add)
    nt = NearTruss(heap, mul, "both" if kind == "ring" else "left")
    checks: dict = {}
    if kind == "ring":
        zero = add.identity
        checks["b0_is_addition"] = bool(np.array_equal(heap.table[:, zero, :], add.op.table))
        u = ring_unit(mul)
        checks["unit"] = u
        if u is not None:
            A = add.op.table
            sigma = A[:, add.inverse[u]]  # x - 1
            b1 = heap.table[:, u, :]
            circ = jacobson_mul(add, mul).table
            M = mul.table
            checks["b1_to_addition"] = bool(np.array_equal(sigma[b1], A[sigma[:, None], sigma[None, :]]))
            checks["mul_to_jacobson"] = bool(np.array_equal(sigma[M], circ[sigma[:, None], sigma[None, :]]))
    return nt, checks


def ring_truss(add: GroupView, mul: BinaryTable) -> NearTruss:
    return near_truss_from_ring_or_nearring(add, mul, "ring")[0]


def zn_ring_truss(n: int) -> NearTruss:
    return ring_truss(*zn_ring(n))


def group_near_truss(g: GroupView) -> NearTruss:
    """A group used as both heap source and multiplication."""
    return NearTruss(heap_from_group(g), g.op, "left")


# ---------------------------------------------------------------------------
# skew braces


def validate_skew_brace(b: SkewBrace) -> ValidationReport:
    """``a ∘ (b * c) = (a ∘ b) * a^-1 * (a ∘ c)`` for all triples, both groups valid."""
    rep = ValidationReport("skew_brace")
    if b.star.size != b.circ.size:
        rep.add("size", (b.star.size, b.circ.size))
        return rep
    for name, g in (("star", b.star), ("circ", b.circ)):
        for law, w in g.validate().violations:
            rep.add(f"{name}_{law}", w)
    if not rep.passed:
        return rep
    S, C = b.star.op.table, b.circ.op.table
    inv = b.star.inv_array
    lhs = C[:, S]  # a ∘ (b * c)
    left = S[C, inv[:, None]]  # (a ∘ b) * a^-1, indexed [a, b]
    rhs = S[left[:, :, None], C[:, None, :]]
    rep.add("compatibility", first_witness(lhs != rhs))
    return rep


def find_skew_brace(star: GroupView, circ_model: GroupView) -> SkewBrace | None:
    """First relabelling of ``circ_model`` that forms a skew brace with ``star``.

    Bijections are tried in lexicographic order; identities are matched since
    both group structures of a skew brace share their neutral element.
    """
    n = star.size
    if circ_model.size != n:
        return None
    Cm = circ_model.op.table
    rest = [x for x in range(n) if x != star.identity]
    others = [x for x in range(n) if x != circ_model.identity]
    for perm in itertools.permutations(rest):
        sigma = np.empty(n, dtype=np.int64)  # model element -> carrier element
        sigma[circ_model.identity] = star.identity
        sigma[others] = perm
        inv_sigma = np.argsort(sigma)
        table = sigma[Cm[inv_sigma[:, None], inv_sigma[None, :]]]
        circ = GroupView(BinaryTable(table), star.identity,
                         tuple(int(sigma[circ_model.inverse[inv_sigma[x]]]) for x in range(n)))
        brace = SkewBrace(star, circ)
        if validate_skew_brace(brace).passed:
            return brace
    return None


def near_truss_from_skew_brace(b: SkewBrace) -> NearTruss:
    rep = validate_skew_brace(b)
    if not rep.passed:
        law, w = rep.violations[0]
        raise InputError(f"not a skew brace: law={law} witness={w}")
    nt = NearTruss(heap_from_group(b.star), b.circ.op, "left")
    left = _left_distributivity(nt.heap.table, nt.mul.table)
    if left is not None:
        raise TheoremViolation(f"skew brace near-truss fails left distributivity at {left}")
    return nt


# ---------------------------------------------------------------------------
# the right near-truss of all self-maps


class MapNearTruss:
    """Pointwise heap and composition on self-maps of a heap, without materialising them."""

    def __init__(self, heap: TernaryTable):
        self.heap = heap

    @property
    def order(self) -> int:
        return self.heap.size ** self.heap.size

    def bracket(self, f: Endomap, g: Endomap, h: Endomap) -> Endomap:
        P = self.heap.table
        return Endomap(tuple(int(v) for v in P[f.array, g.array, h.array]))

    @staticmethod
    def product(f: Endomap, g: Endomap) -> Endomap:
        """``f · g = f ∘ g``."""
        return f.compose(g)

    def validate(self, exhaustive: bool | None = None, samples: int = 40, seed: int = 0,
                 max_n: int = 3) -> ValidationReport:
        """Right distributivity on all (``n <= 3``) or sampled quadruples of maps.

        ``info['left_distributivity_witness']`` holds a quadruple of map indices
        (or sampled maps) where left distributivity fails, when one is found.
        """
        n = self.heap.size
        if exhaustive is None:
            exhaustive = n <= max_n
        if exhaustive and n > max_n:
            raise ResourceLimitError("exhaustive M(X) validation", n, max_n)
        P = self.heap.table
        rep = ValidationReport("right_near_truss")
        if exhaustive:
            F = all_maps(n)
            rep.info["mode"] = "exhaustive"
        else:
            rng = np.random.default_rng(seed)
            F = rng.integers(0, n, size=(samples, n))
            rep.info["mode"] = f"sampled({samples}, seed={seed})"
        k = F.shape[0]
        C = F[:, F]  # C[f, k, x] = f(k(x))
        right = left = None
        for f in range(k):
            br = P[F[f][None, None, :], F[:, None, :], F[None, :, :]]  # [f, g, h](x), indexed [g, h, x]
            # [f,g,h] ∘ q  versus  [f∘q, g∘q, h∘q]
            lhs = br[:, :, F]  # [g, h, q, x]
            rhs = P[C[f][None, None, :, :], C[:, None, :, :], C[None, :, :, :]]
            w = first_witness((lhs != rhs).any(axis=-1), (f,))
            if w is not None and right is None:
                right = w
            # q ∘ [f,g,h]  versus  [q∘f, q∘g, q∘h]
            lhs = np.moveaxis(F[:, br], 0, 2)  # [g, h, q, x]
            rhs = P[C[:, f][None, None, :, :], np.moveaxis(C, 0, 1)[:, None, :, :], np.moveaxis(C, 0, 1)[None, :, :, :]]
            w = first_witness((lhs != rhs).any(axis=-1), (f,))
            if w is not None and left is None:
                left = w
            if right is not None and left is not None:
                break
        rep.add("right_distributivity", right)
        rep.info["left_distributive"] = left is None
        if left is not None:
            rep.info["left_distributivity_witness"] = tuple(
                tuple(int(v) for v in F[i]) for i in left)
        rep.info["maps_checked"] = k
        return rep


def map_near_truss_MX(heap: TernaryTable) -> MapNearTruss:
    _ = check_heap(heap)
    return MapNearTruss(heap)


@dataclass
class EmbeddingReport:
    x_size: int
    maps: list
    injective: bool
    ternary_witness: tuple | None
    mul_witness: tuple | None
    x_valid: bool

    @property
    def passed(self) -> bool:
        return self.injective and self.ternary_witness is None and self.mul_witness is None and self.x_valid


def embed_in_MX(y: NearTruss, m: int = 3) -> EmbeddingReport:
    """Embed a right near-truss ``Y`` into the maps on ``X = Y × Z_m``.

    Pair ``(y, z)`` has index ``y * m + z``.  The image of ``y`` is the map
    sending ``(y1, 1)`` to ``(y·y1, 1)`` and every other point to ``(y, 1)``.
    """
    if y.side not in ("right", "both"):
        raise InputError("embedding needs a right near-truss")
    if m < 2:
        raise InputError("modulus must be at least 2 so that Y × {1} is proper")
    ny = y.size
    P, M = y.heap.table, y.mul.table
    zm_heap = heap_from_group(cyclic_group(m))
    ZP = zm_heap.table
    Zmul = np.fromfunction(lambda a, b: a * b % m, (m, m), dtype=np.int64)
    n = ny * m
    idx = np.arange(n)
    ys, zs = idx // m, idx % m
    XP = P[ys[:, None, None], ys[None, :, None], ys[None, None, :]] * m \
        + ZP[zs[:, None, None], zs[None, :, None], zs[None, None, :]]
    XM = M[ys[:, None], ys[None, :]] * m + Zmul[zs[:, None], zs[None, :]]
    x_heap, x_mul = TernaryTable(XP), BinaryTable(XM)
    x_valid = validate_near_truss(x_heap, x_mul, "right", max_n=max(DEFAULT_MAX_N, n)).passed

    lam = np.empty((ny, n), dtype=np.int64)
    on_y = zs == 1
    for a in range(ny):
        lam[a] = np.where(on_y, M[a, ys] * m + 1, a * m + 1)
    maps = [Endomap(tuple(int(v) for v in row)) for row in lam]
    injective = len(set(maps)) == ny
    # λ([a,b,c]) = [λa, λb, λc] pointwise
    lhs = lam[P]  # [a, b, c, point]
    rhs = XP[lam[:, None, None, :], lam[None, :, None, :], lam[None, None, :, :]]
    tw = first_witness((lhs != rhs).any(axis=-1))
    # λ(ab) = λa ∘ λb
    lhs = lam[M]
    rhs = lam[:, lam]  # rhs[a, b, p] = lam[a, lam[b, p]]
    mw = first_witness((lhs != rhs).any(axis=-1))
    return EmbeddingReport(n, maps, injective, tw, mw, x_valid)


# ---------------------------------------------------------------------------
# the λ^y action and the induced near-ring


@dataclass
class LambdaReport:
    base: int
    maps: list
    formula_witness: tuple | None
    endomorphism_witness: tuple | None
    semigroup_witness: tuple | None

    @property
    def passed(self) -> bool:
        return self.formula_witness is None and self.endomorphism_witness is None and self.semigroup_witness is None


def lambda_y_action(nt: NearTruss, y: int) -> LambdaReport:
    """``λ_x^y(z) = [y, xy, xz]``, compared with ``(xy)^-1 * (xz)`` in ``(X, b_y)``.

    Witnesses: ``(x, z)`` for the formulas, ``(x, z, u)`` for the
    endomorphism law ``λ(z *_y u) = λz *_y λu``, ``(x, t, z)`` for
    ``λ_{xt} = λ_x ∘ λ_t``.
    """
    lt = nt.left_form()
    P, M = lt.heap.table, lt.mul.table
    n = lt.size
    xy = M[:, y]
    heap_form = P[y, xy[:, None], M]  # [x, z]
    inv = P[y, xy, y]  # (xy)^-1 in b_y
    retract_form = P[inv[:, None], y, M]
    fw = first_witness(heap_form != retract_form)
    L = heap_form
    b = P[:, y, :]
    lhs = L[:, b]  # λ_x(z *_y u), [x, z, u]
    rhs = P[L[:, :, None], y, L[:, None, :]]
    ew = first_witness(lhs != rhs)
    lhs = L[M]  # λ_{xt}(z), [x, t, z]
    rhs = L[:, L]  # λ_x(λ_t(z)), [x, t, z]
    sw = first_witness(lhs != rhs)
    maps = [Endomap(tuple(int(v) for v in L[x])) for x in range(n)]
    return LambdaReport(y, maps, fw, ew, sw)


@dataclass
class InducedNearRing:
    base: int
    table: BinaryTable
    report: ValidationReport
    right_zero: bool
    group_identity: bool
    classification: ValidationReport | None


def induced_near_ring(nt: NearTruss, y: int) -> InducedNearRing:
    """``m_y(x, z) = [y, xy, xz]`` on the retract group at ``y``, plus the classification of ``·`` at ``y``.

    When ``y`` is a right zero of ``·``, ``(X, b_y, ·)`` is checked as a left
    near-ring; when ``(X, ·)`` is a group with identity ``y`` it is checked as
    a left skew brace.
    """
    lt = nt.left_form()
    P, M = lt.heap.table, lt.mul.table
    n = lt.size
    g = retract_group(lt.heap, y, check=False)
    my = BinaryTable(P[y, M[:, y][:, None], M])
    rep = validate_left_near_ring(g, my)
    right_zero = bool((M[:, y] == y).all())
    ar = np.arange(n)
    group_identity = bool(np.array_equal(M[y], ar) and np.array_equal(M[:, y], ar))
    classification = None
    if right_zero:
        classification = validate_left_near_ring(g, lt.mul)
    elif group_identity:
        try:
            circ = GroupView.from_table(lt.mul)
        except InputError:
            circ = None
        if circ is not None:
            classification = validate_skew_brace(SkewBrace(g, circ))
    return InducedNearRing(y, my, rep, right_zero, group_identity, classification)


# ---------------------------------------------------------------------------
# endomorphism truss and the maps μ, ρ


@dataclass
class EndomorphismTruss:
    maps: list
    truss: NearTruss
    report: ValidationReport


def heap_endomorphisms(heap: TernaryTable, max_n: int = 6) -> list[Endomap]:
    n = heap.size
    if n > max_n:
        raise ResourceLimitError("heap endomorphism enumeration over all maps", n, max_n)
    F = all_maps(n)
    keep = ternary_morphism_mask(heap.table, F)
    return [Endomap(tuple(int(v) for v in r)) for r in F[keep]]


def endomorphism_truss(heap: TernaryTable, max_n: int = 4) -> EndomorphismTruss:
    """All heap endomorphisms with pointwise bracket and composition ``f · g = f ∘ g``."""
    if not is_abelian_table(heap):
        raise InputError("endomorphism truss needs an abelian heap")
    maps = heap_endomorphisms(heap, max_n)
    n = heap.size
    F = np.array([f.images for f in maps], dtype=np.int64)
    weights = n ** np.arange(n - 1, -1, -1)
    codes = F @ weights  # maps are sorted, so codes are increasing
    P = heap.table
    br = P[F[:, None, None, :], F[None, :, None, :], F[None, None, :, :]]
    comp = F[:, F]  # comp[f, g, x] = f(g(x))
    T = np.searchsorted(codes, br @ weights)
    C = np.searchsorted(codes, comp @ weights)
    truss = NearTruss(TernaryTable(T), BinaryTable(C), "both")
    return EndomorphismTruss(maps, truss, validate_nt(truss))


@dataclass
class MuRhoReport:
    mu_endomorphisms: bool
    rho_endomorphisms: bool
    mu_multiplicative: tuple | None
    rho_antimultiplicative: tuple | None
    mu_ternary: tuple | None
    rho_ternary: tuple | None
    compatible: bool

    @property
    def passed(self) -> bool:
        return (self.mu_endomorphisms and self.rho_endomorphisms and self.compatible
                and self.mu_multiplicative is None and self.rho_antimultiplicative is None
                and self.mu_ternary is None and self.rho_ternary is None)


def mu_rho_check(t: NearTruss) -> MuRhoReport:
    """``μ(x)(y) = xy`` is a truss morphism, ``ρ(x)(y) = yx`` an antimorphism, into heap endomorphisms."""
    P, M = t.heap.table, t.mul.table
    mu = M  # mu[x] is the map y -> xy
    rho = M.T  # rho[x] is the map y -> yx
    mu_end = bool(ternary_morphism_mask(P, mu).all())
    rho_end = bool(ternary_morphism_mask(P, rho).all())
    mu_mul = first_witness(mu[M] != mu[:, mu])  # μ(xy) = μx ∘ μy
    rho_anti = first_witness(rho[M] != rho[:, rho].transpose(1, 0, 2))  # ρ(xy) = ρy ∘ ρx
    mu_t = first_witness((mu[P] != P[mu[:, None, None], mu[None, :, None], mu[None, None, :]]).any(axis=-1))
    rho_t = first_witness((rho[P] != P[rho[:, None, None], rho[None, :, None], rho[None, None, :]]).any(axis=-1))
    compatible = bool(np.array_equal(mu, rho.T))
    return MuRhoReport(mu_end, rho_end, mu_mul, rho_anti, mu_t, rho_t, compatible)
