"""Finite-algebra workbench for heaps, semiheaps, near-trusses, J-rings and skew braces."""

from .core import (
    BinaryTable,
    Endomap,
    GroupView,
    TernaryTable,
    ValidationReport,
    certify_heap,
    check_heap,
    direct_product_ternary,
    heap_from_group,
    retract_group,
    semiheap_from_join_lattice,
    translations,
    validate_ternary,
)
from .errors import EmptyCarrierError, HeapTrussError, InputError, ResourceLimitError, TheoremViolation
from .subobjects import Partition, Subset, enumerate_congruences, enumerate_subheaps, is_normal_subheap
from .trusses import NearTruss, SkewBrace, validate_near_truss
from .ideals import JRing, enumerate_ideals, ideal_closure, validate_jring
from .commutators import near_truss_commutators, smith_commutator_heap, smith_commutator_oracle
from .semidirect import (
    ActionTable,
    SemidirectDecomposition,
    check_semidirect_conditions,
    decomposition_correspondence,
    enumerate_idempotents,
    outer_semidirect,
)
from .derivations import commutator_derivation, enumerate_derivations, inner_derivation, is_derivation
from .fileio import AlgebraFile, parse_algebra, serialize_algebra

__version__ = "0.1.0"

__all__ = [
    "BinaryTable",
    "Endomap",
    "GroupView",
    "TernaryTable",
    "ValidationReport",
    "certify_heap",
    "check_heap",
    "direct_product_ternary",
    "heap_from_group",
    "retract_group",
    "semiheap_from_join_lattice",
    "translations",
    "validate_ternary",
    "EmptyCarrierError",
    "HeapTrussError",
    "InputError",
    "ResourceLimitError",
    "TheoremViolation",
    "Partition",
    "Subset",
    "enumerate_congruences",
    "enumerate_subheaps",
    "is_normal_subheap",
    "NearTruss",
    "SkewBrace",
    "validate_near_truss",
    "JRing",
    "enumerate_ideals",
    "ideal_closure",
    "validate_jring",
    "near_truss_commutators",
    "smith_commutator_heap",
    "smith_commutator_oracle",
    "ActionTable",
    "SemidirectDecomposition",
    "check_semidirect_conditions",
    "decomposition_correspondence",
    "enumerate_idempotents",
    "outer_semidirect",
    "commutator_derivation",
    "enumerate_derivations",
    "inner_derivation",
    "is_derivation",
    "AlgebraFile",
    "parse_algebra",
    "serialize_algebra",
]
