"""The shipped example algebras, as library objects and as ``.alg`` files."""

from __future__ import annotations

from pathlib import Path

from .core import chain_join, heap_from_group, semiheap_from_join_lattice
from .fileio import from_structure, write_algebra
from .groups import (
    cyclic_group,
    dihedral_group,
    direct_product,
    klein_group,
    quaternion_group,
    symmetric_group,
)
from .ideals import jacobson_jring
from .subobjects import Subset
from .trusses import (
    NearTruss,
    find_skew_brace,
    group_near_truss,
    near_truss_from_skew_brace,
    ring_truss,
    ut2_z2_ring,
    zn_ring,
    zn_ring_truss,
)


def small_groups() -> dict:
    """Every group of order at most 8 used by the test corpus."""
    out = {f"z{n}": cyclic_group(n) for n in range(2, 9)}
    out.update(klein=klein_group(), s3=symmetric_group(3), d4=dihedral_group(4), q8=quaternion_group(),
               z2xz4=direct_product(cyclic_group(2), cyclic_group(4)))
    return out


def corpus_heaps(max_size: int = 8) -> dict:
    return {f"{k}_heap": heap_from_group(g) for k, g in small_groups().items() if g.size <= max_size}


def skew_brace4():
    """Additive group Z4 with circle group the Klein group."""
    return find_skew_brace(cyclic_group(4), klein_group())


def ut2_truss() -> NearTruss:
    return ring_truss(*ut2_z2_ring())


def corpus_trusses() -> dict:
    out = {f"z{n}_truss": zn_ring_truss(n) for n in (2, 3, 4, 6)}
    out["ut2_z2_truss"] = ut2_truss()
    return out


def corpus_left_near_trusses() -> dict:
    """Left near-trusses of size at most 8; two-sided trusses are read as left ones."""
    out = {k: NearTruss(t.heap, t.mul, "left") for k, t in corpus_trusses().items()}
    out["skew_brace4_near_truss"] = near_truss_from_skew_brace(skew_brace4())
    out["s3_group_near_truss"] = group_near_truss(symmetric_group(3))
    return out


def corpus_files() -> dict:
    """``name -> AlgebraFile`` for the shipped corpus directory."""
    from .commutators import build_huq_smith_example

    files = {}
    for n in (2, 3, 4, 6):
        files[f"z{n}_heap"] = from_structure(heap_from_group(cyclic_group(n)), f"z{n}_heap", "heap")
        files[f"z{n}_truss"] = from_structure(zn_ring_truss(n), f"z{n}_truss", "truss")
    files["klein_heap"] = from_structure(heap_from_group(klein_group()), "klein_heap", "heap")
    files["s3_heap"] = from_structure(heap_from_group(symmetric_group(3)), "s3_heap", "heap")
    files["chain3_semiheap"] = from_structure(semiheap_from_join_lattice(chain_join(3)), "chain3_semiheap", "semiheap")
    files["jacobson_z4"] = from_structure(jacobson_jring(*zn_ring(4)), "jacobson_z4", "jring")
    ex = build_huq_smith_example(cyclic_group(4), Subset.of(4, [0, 2]))
    files["huq_smith_z4"] = from_structure(ex.near_truss, "huq_smith_z4", "near_truss_left")
    files["skew_brace4"] = from_structure(skew_brace4(), "skew_brace4", "skew_brace")
    files["ut2_z2_truss"] = from_structure(ut2_truss(), "ut2_z2_truss", "truss")
    files["z4_group"] = from_structure(cyclic_group(4), "z4_group", "group")
    files["klein_group"] = from_structure(klein_group(), "klein_group", "group")
    files["z4_ring"] = from_structure(zn_ring(4), "z4_ring", "ring")
    return files


def write_corpus(directory) -> list[Path]:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    out = []
    for name, af in sorted(corpus_files().items()):
        path = d / f"{name}.alg"
        write_algebra(path, af)
        out.append(path)
    return out


def z3_inversion_action_text() -> str:
    return "size_K = 3\nsize_Y = 2\nbase_y = 0\n0 1 2\n0 2 1\n"
