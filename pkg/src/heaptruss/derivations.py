"""Derivations of trusses.

A derivation is a heap endomorphism ``D`` with ``D(ab) = [D(a)b, ab, aD(b)]``.
Candidates are the affine maps ``x -> [g(x), e, c]`` over the retract group at
``e``, which are exactly the heap endomorphisms of an abelian heap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_MAX_N, Endomap, endomap_is_morphism, first_witness, retract_group
from .errors import InputError, ResourceLimitError, TheoremViolation
from .groups import group_endomorphisms
from .trusses import NearTruss, validate_nt


def _require_truss(t: NearTruss) -> None:
    if not isinstance(t, NearTruss):
        raise InputError("derivations need a truss")
    rep = validate_nt(t)
    if not rep.passed or not rep.info.get("truss") or not t.abelian:
        raise InputError("derivations need an abelian two-sided truss")


def derivation_witness(t: NearTruss, d) -> tuple | None:
    """First failure as ``("morphism", None)`` or ``("identity", (a, b))``."""
    D = d.array if isinstance(d, Endomap) else np.asarray(d)
    if not endomap_is_morphism(t.heap, D):
        return ("morphism", None)
    P, M = t.heap.table, t.mul.table
    ar = np.arange(t.size)
    rhs = P[M[D[:, None], ar[None, :]], M, M[ar[:, None], D[None, :]]]
    w = first_witness(D[M] != rhs)
    return None if w is None else ("identity", w)


def is_derivation(t: NearTruss, d) -> tuple[bool, tuple | None]:
    """``(ok, witness)``; the witness is ``(a, b)`` or ``None`` for a non-morphism."""
    w = derivation_witness(t, d)
    if w is None:
        return True, None
    return False, w[1]


def heap_endomorphism_candidates(t: NearTruss, e: int = 0) -> list[Endomap]:
    heap = t.heap
    g = retract_group(heap, e, check=False)
    P = heap.table
    out = set()
    for h in group_endomorphisms(g):
        ha = h.array
        for c in range(heap.size):
            out.add(Endomap(tuple(int(v) for v in P[ha, e, c])))
    return sorted(out)


def pointwise_bracket(t: NearTruss, d1: Endomap, d2: Endomap, d3: Endomap) -> Endomap:
    P = t.heap.table
    return Endomap(tuple(int(v) for v in P[d1.array, d2.array, d3.array]))


@dataclass
class DerivationSet:
    truss: NearTruss
    members: list

    def __contains__(self, d) -> bool:
        return d in self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def enumerate_derivations(t: NearTruss, max_n: int = DEFAULT_MAX_N, verify: bool = True) -> DerivationSet:
    """All derivations, with closure under pointwise ``[-,-,-]`` checked when ``verify``."""
    _require_truss(t)
    if t.size > max_n:
        raise ResourceLimitError("derivation enumeration", t.size, max_n)
    members = [d for d in heap_endomorphism_candidates(t) if derivation_witness(t, d) is None]
    if verify:
        arr = np.array([d.images for d in members], dtype=np.int64)
        P = t.heap.table
        known = {d.images for d in members}
        # all triples at once: [D1(x), D2(x), D3(x)]
        triples = P[arr[:, None, None, :], arr[None, :, None, :], arr[None, None, :, :]].reshape(-1, t.size)
        for row in np.unique(triples, axis=0):
            if tuple(int(v) for v in row) not in known:
                raise TheoremViolation(f"pointwise bracket of derivations is not a derivation: {row.tolist()}")
    return DerivationSet(t, members)


def _require_derivation(t: NearTruss, d: Endomap, name: str) -> None:
    w = derivation_witness(t, d)
    if w is not None:
        raise InputError(f"{name} is not a derivation: {w[0]} fails at {w[1]}")


def commutator_derivation(t: NearTruss, d1: Endomap, d2: Endomap) -> Endomap:
    """``x -> [d1(d2(x)), d2(d1(x)), x]``."""
    _require_truss(t)
    _require_derivation(t, d1, "d1")
    _require_derivation(t, d2, "d2")
    out = pointwise_bracket(t, d1.compose(d2), d2.compose(d1), Endomap.identity(t.size))
    w = derivation_witness(t, out)
    if w is not None:
        raise TheoremViolation(f"commutator derivation fails: {w}")
    return out


def inner_derivation(t: NearTruss, a: int) -> Endomap:
    """``D_a(x) = [a x, x a, x]``."""
    _require_truss(t)
    if not 0 <= a < t.size:
        raise InputError(f"element {a} out of range")
    M = t.mul.table
    ar = np.arange(t.size)
    out = Endomap(tuple(int(v) for v in t.heap.table[M[a, ar], M[ar, a], ar]))
    w = derivation_witness(t, out)
    if w is not None:
        raise TheoremViolation(f"inner derivation D_{a} fails: {w}")
    return out
