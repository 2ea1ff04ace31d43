"""Acceptance criteria, one test each.

Every test records a ``criterion N: PASS|FAIL`` line (shown in the terminal
summary and printed under ``-s``) and then asserts the same outcome. All
comparisons are exact; the only tolerances are the wall-clock budgets below.
"""

import io
import itertools
import time
from pathlib import Path

import numpy as np
import pytest

from conftest import ACCEPTANCE
from heaptruss.cli import run_command
from heaptruss.commutators import (
    build_huq_smith_example,
    cube_index,
    near_truss_commutators,
    smith_commutator_heap,
    smith_commutator_oracle,
)
from heaptruss.core import (
    Endomap,
    chain_join,
    direct_product_ternary,
    heap_from_group,
    retract_group,
    semiheap_from_join_lattice,
    translations,
    validate_ternary,
)
from heaptruss.corpus import corpus_heaps, corpus_left_near_trusses, corpus_trusses, small_groups
from heaptruss.derivations import commutator_derivation, enumerate_derivations, inner_derivation, pointwise_bracket
from heaptruss.errors import InputError
from heaptruss.groups import cyclic_group, find_isomorphism, is_normal_subgroup, klein_group, symmetric_group
from heaptruss.ideals import jacobson_jring, jring_from_retract, validate_jring
from heaptruss.semidirect import (
    ActionTable,
    check_semidirect_conditions,
    decomposition_correspondence,
    enumerate_idempotents,
    outer_semidirect,
)
from heaptruss.subobjects import (
    Partition,
    Subset,
    congruence_of_normal,
    congruences_by_partition_scan,
    enumerate_congruences,
    enumerate_subheaps,
    is_normal_subheap,
    normal_of_congruence,
    quotient_poset,
)
from heaptruss.trusses import embed_in_MX, induced_near_ring, lambda_y_action, validate_nt, zn_ring, zn_ring_truss

VALIDATOR_BUDGET_S = 10.0
CUBE_BUDGET_S = 60.0
CORPUS = Path(__file__).resolve().parent.parent / "corpus"

HEAPS = corpus_heaps(8)
SMALL_HEAPS = {k: h for k, h in HEAPS.items() if h.size <= 6}
SMALL_NEAR_TRUSSES = {k: t for k, t in corpus_left_near_trusses().items() if t.size <= 6}


def record(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[n] = line
    print(line)


def test_criterion_01_axiom_validators():
    start = time.perf_counter()
    bad = [name for name, g in small_groups().items() if not validate_ternary(heap_from_group(g), "heap").passed]
    chains = []
    for k in (2, 3, 4):
        t = semiheap_from_join_lattice(chain_join(k))
        chains.append(validate_ternary(t, "semiheap").passed and not validate_ternary(t, "heap").passed)
    elapsed = time.perf_counter() - start
    ok = not bad and all(chains) and elapsed < VALIDATOR_BUDGET_S
    record(1, ok, f"{len(small_groups())} group heaps, chains 2-4 semiheap-only, {elapsed:.2f}s < {VALIDATOR_BUDGET_S}s")
    assert ok, (bad, chains, elapsed)


def test_criterion_02_translation_group():
    failures = {name: translations(h) for name, h in HEAPS.items()}
    failures = {name: r for name, r in failures.items() if not r.passed or r.order != HEAPS[name].size}
    ok = not failures
    record(2, ok, f"{len(HEAPS)} heaps, S_X a group isomorphic to every retract; violations in {sorted(failures)}")
    assert ok


def test_criterion_03_congruences_and_normal_subheaps():
    problems = []
    for name, h in SMALL_HEAPS.items():
        congs = enumerate_congruences(h)
        for p in congs:
            for e in range(h.size):
                if congruence_of_normal(h, normal_of_congruence(h, p, e)) != p:
                    problems.append((name, "round trip", str(p), e))
        g = retract_group(h, 0)
        normal_subgroups = [s for s in enumerate_subheaps(h) if 0 in s and is_normal_subgroup(g, s.members)]
        if len(congs) != len(normal_subgroups):
            problems.append((name, "count"))
        if {p.block_id for p in congs} != {p.block_id for p in congruences_by_partition_scan(h)}:
            problems.append((name, "partition scan"))
    z4 = SMALL_HEAPS["z4_heap"]
    z4_counts = (len(enumerate_congruences(z4)), len(enumerate_subheaps(z4, normal_only=True)),
                 len(quotient_poset(z4).classes))
    ok = not problems and z4_counts == (3, 7, 3)
    record(3, ok, f"{len(SMALL_HEAPS)} heaps; Z4 congruences/normal subheaps/poset = {z4_counts}")
    assert ok, problems


def test_criterion_04_normality_criteria():
    disagreements = []
    total = 0
    for name, h in SMALL_HEAPS.items():
        for s in enumerate_subheaps(h):
            if len(s):
                total += 1
                if not is_normal_subheap(h, s).agree:
                    disagreements.append((name, str(s)))
    ok = not disagreements
    record(4, ok, f"{total} subheaps, {len(disagreements)} disagreements")
    assert ok, disagreements


def test_criterion_05_heap_commutators():
    mismatches = []
    pairs = 0
    for name, h in SMALL_HEAPS.items():
        congs = enumerate_congruences(h)
        for r, s in itertools.product(congs, congs):
            pairs += 1
            oracle = smith_commutator_oracle(h, r, s)
            for e in range(h.size):
                if smith_commutator_heap(h, r, s, e, all_bases=False) != oracle:
                    mismatches.append((name, str(r), str(s), e))
    s3 = SMALL_HEAPS["s3_heap"]
    top = Partition.one_block(6)
    s3_top = smith_commutator_heap(s3, top, top)
    ok = not mismatches and str(s3_top) == "0,3,4|1,2,5"
    record(5, ok, f"{pairs} congruence pairs at every base, exact; S3 [top,top] = {s3_top}")
    assert ok, mismatches


def _cube(m_group, k):
    start = time.perf_counter()
    ex = build_huq_smith_example(m_group, k, validate=False)
    rep = validate_nt(ex.near_truss, max_n=ex.near_truss.size)
    elapsed = time.perf_counter() - start
    c = near_truss_commutators(ex.near_truss, ex.base, ex.a, ex.b)
    q, z = m_group.size, m_group.identity
    k_line = {cube_index(q, x, z, z) for x in k}
    m_line = {cube_index(q, x, z, z) for x in range(q)}
    ok = (rep.passed and ex.near_truss.size == q ** 3 and set(c.huq_ideal) <= k_line
          and set(c.smith_ideal) >= m_line and c.smith_ideal != c.huq_ideal and elapsed < CUBE_BUDGET_S)
    return ok, f"huq {{{c.huq_ideal}}} smith {{{c.smith_ideal}}} {elapsed:.1f}s"


def test_criterion_06_huq_differs_from_smith():
    ok_z4, d_z4 = _cube(cyclic_group(4), Subset.of(4, [0, 2]))
    ok_v4, d_v4 = _cube(klein_group(), Subset.of(4, [0, 1]))
    ok = ok_z4 and ok_v4
    record(6, ok, f"Z4: {d_z4}; Z2xZ2: {d_v4}; budget {CUBE_BUDGET_S}s each")
    assert ok


def test_criterion_07_semidirect_conditions():
    algebras = dict(SMALL_HEAPS)
    algebras.update(SMALL_NEAR_TRUSSES)
    disagreements, checked, bad_corr = [], 0, []
    for name, a in algebras.items():
        heap = getattr(a, "heap", a)
        subs = [s for s in enumerate_subheaps(heap) if len(s)]
        for w in enumerate_congruences(heap):
            for y in subs:
                try:
                    cond = check_semidirect_conditions(a, y, w, strict=False)
                except InputError:
                    continue  # Y or omega is not a sub-near-truss / congruence of the near-truss
                checked += 1
                if not cond.agree:
                    disagreements.append((name, str(y), str(w)))
        if not decomposition_correspondence(a).bijective:
            bad_corr.append(name)
    z4_count = len(enumerate_idempotents(SMALL_HEAPS["z4_heap"]))
    ok = not disagreements and not bad_corr and z4_count == 5
    record(7, ok, f"{checked} (Y, omega) pairs over {len(algebras)} algebras, {len(disagreements)} disagreements; "
                  f"Z4 idempotents = {z4_count}")
    assert ok, (disagreements, bad_corr)


def test_criterion_08_outer_semidirect():
    z3, z2 = heap_from_group(cyclic_group(3)), heap_from_group(cyclic_group(2))
    inversion = ActionTable(0, (Endomap((0, 1, 2)), Endomap((0, 2, 1))))
    trivial = ActionTable(0, (Endomap((0, 1, 2)), Endomap((0, 1, 2))))
    out = outer_semidirect(z3, z2, inversion)
    sigma = find_isomorphism([retract_group(out.table, 0).op], [symmetric_group(3).op])
    flat = outer_semidirect(z3, z2, trivial)
    same = np.array_equal(flat.table.table, direct_product_ternary(z3, z2).table)
    ok = out.passed and out.table.size == 6 and sigma is not None and flat.passed and same
    record(8, ok, f"Z3 x| Z2 retract ~ S3 via {sigma}; trivial action equals direct product: {same}")
    assert ok


def test_criterion_09_jacobson():
    results = {}
    for n in (2, 3, 4, 5):
        j1 = jring_from_retract(zn_ring_truss(n), 1)
        j2 = jacobson_jring(*zn_ring(n))
        iso = find_isomorphism([j1.add.op, j1.mul], [j2.add.op, j2.mul])
        rep = validate_jring(j2)
        right_unit = bool(np.array_equal(j2.mul.table[:, 0], np.arange(n)))
        results[n] = iso is not None and rep.passed and right_unit
    ok = all(results.values())
    record(9, ok, f"isomorphic and valid with z o 0 = z for n = {sorted(k for k, v in results.items() if v)}")
    assert ok


@pytest.mark.xfail(strict=True, reason="m_y is not associative in general, e.g. on the ring truss Z2 at y=1")
def test_criterion_10_lambda_action_and_induced_near_ring():
    lam_fail, ring_fail, bases = [], [], 0
    for name, t in corpus_left_near_trusses().items():
        for y in range(t.size):
            bases += 1
            if not lambda_y_action(t, y).passed:
                lam_fail.append((name, y))
            r = induced_near_ring(t, y)
            if not r.report.passed:
                ring_fail.append((name, y, r.report.laws()[0]))
    record(10, not lam_fail and not ring_fail,
           f"{bases} bases: lambda formulas/endomorphism/composition violations {len(lam_fail)}; "
           f"(X, b_y, m_y) fails left near-ring axioms at {len(ring_fail)} bases, first {ring_fail[:1]}")
    assert not lam_fail
    assert not ring_fail


def test_criterion_11_embedding():
    reports = {n: embed_in_MX(zn_ring_truss(n).opposite(), 3) for n in (2, 3, 4)}
    ok = all(r.passed for r in reports.values())
    record(11, ok, "right near-trusses Z2, Z3, Z4 into M(Y x Z3): " +
           ", ".join(f"n={n} injective={r.injective} ops preserved={r.ternary_witness is None and r.mul_witness is None}"
                     for n, r in reports.items()))
    assert ok


def test_criterion_12_derivations():
    z2 = enumerate_derivations(zn_ring_truss(2)).members
    problems = []
    for name, t in corpus_trusses().items():
        der = enumerate_derivations(t)
        for d1, d2, d3 in itertools.product(der.members, repeat=3):
            if pointwise_bracket(t, d1, d2, d3) not in der:
                problems.append((name, "bracket"))
        for a in range(t.size):
            if inner_derivation(t, a) not in der:
                problems.append((name, "inner", a))
        for d1, d2 in itertools.product(der.members, repeat=2):
            if commutator_derivation(t, d1, d2) not in der:
                problems.append((name, "commutator"))
    ut2 = corpus_trusses()["ut2_z2_truss"]
    nontrivial = [a for a in range(ut2.size) if inner_derivation(ut2, a) != Endomap.identity(ut2.size)]
    ok = z2 == [Endomap.identity(2)] and not problems and bool(nontrivial)
    record(12, ok, f"Der(Z2) = {[str(d) for d in z2]}; closure problems {len(problems)}; "
                   f"UT2 non-identity D_a for a in {nontrivial}")
    assert ok, problems


def _cli_commands(tmp):
    c = lambda name: str(CORPUS / name)  # noqa: E731
    top = "0,1,2,3,4,5"
    return [
        ["validate", c("s3_heap.alg")],
        ["validate", c("chain3_semiheap.alg")],
        ["validate", c("z4_ring.alg"), "--as", "truss"],
        ["retract", c("s3_heap.alg"), "-e", "2"],
        ["subheaps", c("klein_heap.alg"), "--normal"],
        ["congruences", c("s3_heap.alg")],
        ["commutator", c("s3_heap.alg"), "-R", top, "-S", top, "--oracle"],
        ["huq-smith", "--example", "-M", c("z4_group.alg"), "-K", "0,2"],
        ["idempotents", c("klein_heap.alg")],
        ["semidirect", "check", c("s3_heap.alg"), "-Y", "0,1", "-w", "0,3,4|1,2,5"],
        ["semidirect", "outer", "-K", c("z3_heap.alg"), "-Y", c("z2_heap.alg"),
         "--action", c("z3_inversion.act"), "-o", str(tmp / "outer.alg")],
        ["direct-check", c("z6_heap.alg"), "-Y", "0,2,4", "-w", "0,3|1,4|2,5", "-e", "0"],
        ["derivations", c("ut2_z2_truss.alg")],
        ["embed", c("z3_truss.alg")],
        ["report", c("ut2_z2_truss.alg")],
    ]


def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def test_criterion_13_determinism(tmp_path):
    differing = []
    runs = 0
    for argv in _cli_commands(tmp_path):
        for fmt in ("text", "json"):
            full = ["--format", fmt, *argv]
            first = _run(full)
            written = (tmp_path / "outer.alg").read_bytes() if "-o" in argv else None
            second = _run(full)
            runs += 1
            if first != second or (written is not None and written != (tmp_path / "outer.alg").read_bytes()):
                differing.append(" ".join(argv[:2]))
            if first[0] not in (0, 1):
                differing.append(f"{argv[0]} exited {first[0]}: {first[2].strip()}")
    ok = not differing
    record(13, ok, f"{runs} command/format pairs run twice, byte-identical; differing: {differing}")
    assert ok
