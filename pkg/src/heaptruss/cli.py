"""Batch command line: ``heaptruss [--format text|json] [--max-n N] [--seed S] <command> ...``.

Exit codes: 0 the property holds, 1 it is violated (witness printed),
2 input error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from .commutators import (
    build_huq_smith_example,
    near_truss_commutators,
    smith_commutator_heap,
    smith_commutator_oracle,
)
from .core import DEFAULT_MAX_N, GroupView, TernaryTable, retract_group, validate_ternary
from .derivations import enumerate_derivations, inner_derivation
from .errors import InputError, ResourceLimitError, TheoremViolation
from .fileio import (
    KINDS,
    from_structure,
    parse_action,
    parse_partition,
    parse_subset,
    read_algebra,
    serialize_algebra,
    to_structure,
)
from .ideals import JRing, enumerate_near_truss_congruences, validate_jring
from .semidirect import (
    CONDITION_LABELS,
    SemidirectDecomposition,
    check_semidirect_conditions,
    direct_product_conditions,
    enumerate_idempotents,
    outer_semidirect,
)
from .subobjects import enumerate_congruences, enumerate_subheaps
from .trusses import (
    NearTruss,
    SkewBrace,
    embed_in_MX,
    map_near_truss_MX,
    validate_left_near_ring,
    validate_nt,
    validate_skew_brace,
)

MARK = {True: "✓", False: "✗"}


@dataclass
class Result:
    command: str
    inputs: dict
    verdict: bool = True
    lines: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    tables: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return 0 if self.verdict else 1


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def emit_report(result: Result, fmt: str = "text") -> str:
    if fmt == "json":
        doc = {
            "command": result.command,
            "inputs": result.inputs,
            "verdict": "holds" if result.verdict else "violated",
            "witnesses": result.witnesses,
            "tables": result.tables,
            "report": result.lines,
        }
        return json.dumps(_jsonable(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    return "".join(line + "\n" for line in result.lines)


def _witness_line(law, w) -> str:
    return f"law={law} witness=({','.join(map(str, w))})" if w is not None else f"law={law}"


def _add_violations(res: Result, violations) -> None:
    for law, w in violations:
        res.lines.append(_witness_line(law, w))
        res.witnesses.append({"law": law, "witness": w})


def _braces(s) -> str:
    return "{" + str(s) + "}"


def _load(path, kind=None):
    af = read_algebra(path)
    return af, to_structure(af, kind)


def _heap_of(obj) -> TernaryTable:
    if isinstance(obj, TernaryTable):
        return obj
    if isinstance(obj, NearTruss):
        return obj.heap
    raise InputError("this command needs a heap or near-truss file")


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> Result:
    af, obj = _load(args.file, args.as_kind)
    kind = args.as_kind or af.kind
    res = Result("validate", {"file": args.file, "kind": kind})
    if kind in ("heap", "semiheap"):
        rep = validate_ternary(obj, kind, args.max_n)
        head = f"{kind} {MARK[rep.passed]}"
        if kind == "heap":
            head += f" abelian {MARK[bool(rep.info['abelian'])]}"
        else:
            heap_ok = validate_ternary(obj, "heap", args.max_n).passed
            head += f" heap {MARK[heap_ok]}"
            res.tables["is_heap"] = heap_ok
        res.lines.append(head)
        res.verdict = rep.passed
        _add_violations(res, rep.violations)
        res.tables["abelian"] = bool(rep.info["abelian"])
        return res
    if isinstance(obj, NearTruss):
        rep = validate_nt(obj, args.max_n)
        res.lines.append(f"{rep.kind} {MARK[rep.passed]} abelian {MARK[bool(rep.info.get('abelian'))]}")
    elif isinstance(obj, JRing):
        rep = validate_jring(obj)
        res.lines.append(f"jring {MARK[rep.passed]}")
    elif isinstance(obj, GroupView):
        rep = obj.validate()
        res.lines.append(f"group {MARK[rep.passed]} abelian {MARK[obj.is_abelian()]}")
    elif isinstance(obj, SkewBrace):
        rep = validate_skew_brace(obj)
        res.lines.append(f"skew_brace {MARK[rep.passed]}")
    else:
        rep = validate_left_near_ring(obj[0], obj[1], "ring")
        res.lines.append(f"ring {MARK[rep.passed]}")
    res.verdict = rep.passed
    _add_violations(res, rep.violations)
    return res


def cmd_retract(args) -> Result:
    _, obj = _load(args.file)
    heap = _heap_of(obj)
    if not 0 <= args.e < heap.size:
        raise InputError(f"base {args.e} out of range")
    g = retract_group(heap, args.e, max_n=args.max_n)
    rep = g.validate()
    res = Result("retract", {"file": args.file, "e": args.e}, rep.passed)
    res.lines.append(f"retract group at {args.e}: {MARK[rep.passed]} abelian {MARK[g.is_abelian()]}")
    res.lines.extend(" ".join(map(str, row)) for row in g.op.table.tolist())
    res.tables["mul"] = g.op.table
    _add_violations(res, rep.violations)
    return res


def cmd_subheaps(args) -> Result:
    _, obj = _load(args.file)
    subs = enumerate_subheaps(_heap_of(obj), normal_only=args.normal, max_n=args.max_n)
    res = Result("subheaps", {"file": args.file, "normal": args.normal})
    res.lines.extend(_braces(s) for s in subs)
    res.tables["subheaps"] = [str(s) for s in subs]
    return res


def _congruences_of(obj, max_n):
    if isinstance(obj, NearTruss):
        return enumerate_near_truss_congruences(obj, max_n=max_n)
    return enumerate_congruences(_heap_of(obj), max_n=max_n)


def cmd_congruences(args) -> Result:
    _, obj = _load(args.file)
    parts = _congruences_of(obj, args.max_n)
    res = Result("congruences", {"file": args.file})
    res.lines.extend(str(p) for p in parts)
    res.tables["congruences"] = [str(p) for p in parts]
    return res


def cmd_commutator(args) -> Result:
    _, obj = _load(args.file)
    n = _heap_of(obj).size
    r, s = parse_partition(args.R, n), parse_partition(args.S, n)
    res = Result("commutator", {"file": args.file, "R": str(r), "S": str(s), "oracle": args.oracle, "e": args.e})
    if isinstance(obj, TernaryTable):
        c = smith_commutator_heap(obj, r, s, args.e if args.e is not None else 0, all_bases=args.e is None)
        res.lines.append(str(c))
        res.tables["commutator"] = str(c)
        if args.oracle:
            o = smith_commutator_oracle(obj, r, s, max_n=args.max_n)
            res.lines.append(f"oracle {o} {MARK[o == c]}")
            res.tables["oracle"] = str(o)
            res.verdict = o == c
    else:
        o = smith_commutator_oracle(obj, r, s, max_n=args.max_n)
        res.lines.append(str(o))
        res.tables["commutator"] = str(o)
    return res


def _relation(smith, huq) -> str:
    if smith == huq:
        return "Smith = Huq"
    if huq.issubset(smith):
        return "Smith ⊋ Huq"
    return "Smith ⊉ Huq"


def cmd_huq_smith(args) -> Result:
    if args.example:
        if args.M is None or args.K is None:
            raise InputError("--example needs -M <group-file> and -K <subset>")
        _, g = _load(args.M, "group")
        k = parse_subset(args.K, g.size)
        ex = build_huq_smith_example(g, k)
        nt, a, b, e = ex.near_truss, ex.a, ex.b, ex.base
        inputs = {"example": True, "M": args.M, "K": str(k)}
    else:
        if args.file is None or args.A is None or args.B is None or args.e is None:
            raise InputError("huq-smith needs <file> -A <subset> -B <subset> -e <int>, or --example")
        _, nt = _load(args.file)
        if not isinstance(nt, NearTruss):
            raise InputError("huq-smith needs a near-truss file")
        a, b, e = parse_subset(args.A, nt.size), parse_subset(args.B, nt.size), args.e
        inputs = {"file": args.file, "A": str(a), "B": str(b), "e": e}
    c = near_truss_commutators(nt, e, a, b)
    res = Result("huq-smith", inputs)
    res.lines.append(f"size {nt.size} base {e}")
    res.lines.append(f"smith ideal {_braces(c.smith_ideal)}")
    res.lines.append(f"huq ideal {_braces(c.huq_ideal)}")
    res.lines.append(_relation(c.smith_ideal, c.huq_ideal))
    res.lines.append("(ideals generated by the Smith generators and by their base-point specialisation)")
    res.tables.update(smith_ideal=str(c.smith_ideal), huq_ideal=str(c.huq_ideal),
                      smith_congruence=str(c.smith_congruence), huq_congruence=str(c.huq_congruence),
                      relation=_relation(c.smith_ideal, c.huq_ideal))
    return res


def cmd_idempotents(args) -> Result:
    _, obj = _load(args.file)
    idem = enumerate_idempotents(obj, max_n=args.max_n)
    res = Result("idempotents", {"file": args.file})
    res.lines.append(f"{len(idem)} idempotents")
    for i in idem:
        res.lines.append(f"{i.map} kernel={i.kernel} image={i.image}")
    res.tables["idempotents"] = [{"map": list(i.map.images), "kernel": str(i.kernel), "image": str(i.image)}
                                 for i in idem]
    return res


def cmd_semidirect(args) -> Result:
    if args.mode == "check":
        _, obj = _load(args.file)
        n = _heap_of(obj).size
        y, w = parse_subset(args.Y, n), parse_partition(args.w, n)
        cond = check_semidirect_conditions(obj, y, w)
        res = Result("semidirect check", {"file": args.file, "Y": str(y), "w": str(w)}, cond.holds)
        res.lines.append(" ".join(f"({k}) {MARK[cond.values[k]]}" for k in CONDITION_LABELS))
        res.lines.append(f"(l) without codomain Y {MARK[cond.l_any_codomain]}")
        res.lines.append(f"semidirect {MARK[cond.holds]}")
        res.tables["conditions"] = cond.values
        res.tables["l_any_codomain"] = cond.l_any_codomain
        return res
    _, k_heap = _load(args.K, "heap")
    _, y_heap = _load(args.Y, "heap")
    with open(args.action, encoding="utf-8") as fh:
        action = parse_action(fh.read())
    out = outer_semidirect(k_heap, y_heap, action)
    res = Result("semidirect outer", {"K": args.K, "Y": args.Y, "action": args.action}, out.passed)
    checks = [("heap", out.heap_valid), ("normal K-copy", out.k_copy_normal),
              ("K-copy isomorphic", out.k_copy_isomorphic), ("Y-sections", out.sections_ok),
              ("conditions", out.conditions_hold), ("action recovered", out.recovered_matches_translate)]
    res.lines.append(f"size {out.table.size}")
    res.lines.extend(f"{name} {MARK[ok]}" for name, ok in checks)
    res.tables["checks"] = dict(checks)
    res.tables["ternary"] = out.table.table
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(serialize_algebra(from_structure(out.table, "outer_semidirect", "heap")))
    return res


def cmd_direct_check(args) -> Result:
    _, obj = _load(args.file)
    heap = _heap_of(obj)
    n = heap.size
    y, w = parse_subset(args.Y, n), parse_partition(args.w, n)
    cond = check_semidirect_conditions(heap, y, w)
    if not cond.holds:
        raise InputError(f"Y = {_braces(y)} and omega = {w} do not form a semidirect decomposition")
    dec = SemidirectDecomposition.from_pair(w, y)
    d = direct_product_conditions(heap, dec, args.e)
    res = Result("direct-check", {"file": args.file, "Y": str(y), "w": str(w), "e": args.e}, d.holds)
    res.lines.append(" ".join(f"({k}) {MARK[v]}" for k, v in d.values.items()))
    res.lines.append(f"direct {MARK[d.holds]}")
    res.tables["conditions"] = d.values
    return res


def cmd_derivations(args) -> Result:
    _, t = _load(args.file)
    if not isinstance(t, NearTruss):
        raise InputError("derivations need a truss file")
    res = Result("derivations", {"file": args.file, "inner": args.inner})
    if args.inner is not None:
        d = inner_derivation(t, args.inner)
        res.lines.append(f"D_{args.inner} = {d}")
        res.tables["inner"] = list(d.images)
        return res
    ders = enumerate_derivations(t, max_n=args.max_n)
    res.lines.append(f"{len(ders)} derivations")
    res.lines.extend(str(d) for d in ders.members)
    res.tables["derivations"] = [list(d.images) for d in ders.members]
    return res


def cmd_embed(args) -> Result:
    _, t = _load(args.file)
    if not isinstance(t, NearTruss):
        raise InputError("embed needs a near-truss file")
    rep = embed_in_MX(t, args.m)
    res = Result("embed", {"file": args.file, "m": args.m, "seed": args.seed}, rep.passed)
    res.lines.append(f"X size {rep.x_size} valid {MARK[rep.x_valid]}")
    res.lines.append(f"injective {MARK[rep.injective]}")
    res.lines.append(f"preserves bracket {MARK[rep.ternary_witness is None]}")
    res.lines.append(f"preserves product {MARK[rep.mul_witness is None]}")
    if rep.ternary_witness is not None:
        _add_violations(res, [("bracket", rep.ternary_witness)])
    if rep.mul_witness is not None:
        _add_violations(res, [("product", rep.mul_witness)])
    res.tables["maps"] = [list(m.images) for m in rep.maps]
    return res


def cmd_report(args) -> Result:
    af, obj = _load(args.file)
    res = Result("report", {"file": args.file})
    res.lines.append(f"name {af.name} kind {af.kind} size {af.size}")
    sub = cmd_validate(argparse.Namespace(file=args.file, as_kind=None, max_n=max(args.max_n, af.size)))
    res.lines.extend(sub.lines)
    res.verdict = sub.verdict
    res.witnesses = sub.witnesses
    summary = {}

    def guarded(name, fn):
        try:
            summary[name] = fn()
            res.lines.append(f"{name} {summary[name]}")
        except ResourceLimitError as exc:
            res.lines.append(f"{name} skipped ({exc})")
        except (InputError, TheoremViolation) as exc:
            res.lines.append(f"{name} unavailable ({exc})")

    is_heap_like = isinstance(obj, (TernaryTable, NearTruss)) and af.kind != "semiheap"
    if sub.verdict and is_heap_like:
        heap = _heap_of(obj)
        guarded("subheaps", lambda: len(enumerate_subheaps(heap, max_n=args.max_n)))
        guarded("normal subheaps", lambda: len(enumerate_subheaps(heap, normal_only=True, max_n=args.max_n)))
        guarded("congruences", lambda: len(_congruences_of(obj, args.max_n)))
        guarded("idempotents", lambda: len(enumerate_idempotents(obj, max_n=args.max_n)))
        if isinstance(obj, NearTruss) and obj.side == "both":
            guarded("derivations", lambda: len(enumerate_derivations(obj, max_n=args.max_n)))
        if isinstance(obj, TernaryTable):
            guarded("M(X) left distributive",
                    lambda: MARK[map_near_truss_MX(heap).validate(seed=args.seed).info["left_distributive"]])
    res.tables["summary"] = summary
    return res


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--max-n", type=int, default=argparse.SUPPRESS, help="scan size cap")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="sampling seed for M(X) checks")

    p = argparse.ArgumentParser(prog="heaptruss", description="Finite heaps, trusses and their invariants.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="scan size cap")
    p.add_argument("--seed", type=int, default=0, help="sampling seed for M(X) checks")
    sp = p.add_subparsers(dest="command", required=True)

    def sub(name, fn, **kw):
        q = sp.add_parser(name, parents=[common], **kw)
        q.set_defaults(func=fn)
        return q

    q = sub("validate", cmd_validate, help="check the axioms of the file's kind")
    q.add_argument("file")
    q.add_argument("--as", dest="as_kind", choices=KINDS)
    q = sub("retract", cmd_retract, help="retract group at a base point")
    q.add_argument("file")
    q.add_argument("-e", type=int, required=True)
    q = sub("subheaps", cmd_subheaps, help="list (normal) subheaps")
    q.add_argument("file")
    q.add_argument("--normal", action="store_true")
    q = sub("congruences", cmd_congruences, help="list congruences, finest first")
    q.add_argument("file")
    q = sub("commutator", cmd_commutator, help="commutator of two congruences")
    q.add_argument("file")
    q.add_argument("-R", required=True)
    q.add_argument("-S", required=True)
    q.add_argument("--oracle", action="store_true")
    q.add_argument("-e", type=int)
    q = sub("huq-smith", cmd_huq_smith, help="Huq and Smith commutators of two ideals")
    q.add_argument("file", nargs="?")
    q.add_argument("-A")
    q.add_argument("-B")
    q.add_argument("-e", type=int)
    q.add_argument("--example", action="store_true")
    q.add_argument("-M")
    q.add_argument("-K")
    q = sub("idempotents", cmd_idempotents, help="idempotent endomorphisms")
    q.add_argument("file")
    q = sub("semidirect", cmd_semidirect, help="semidirect decompositions")
    q.add_argument("mode", choices=("check", "outer"))
    q.add_argument("file", nargs="?")
    q.add_argument("-Y")
    q.add_argument("-w")
    q.add_argument("-K")
    q.add_argument("--action")
    q.add_argument("-o", "--output")
    q = sub("direct-check", cmd_direct_check, help="is a semidirect decomposition direct")
    q.add_argument("file")
    q.add_argument("-Y", required=True)
    q.add_argument("-w", required=True)
    q.add_argument("-e", type=int, required=True)
    q = sub("derivations", cmd_derivations, help="derivations of a truss")
    q.add_argument("file")
    q.add_argument("--inner", type=int)
    q = sub("embed", cmd_embed, help="embed a right near-truss into self-maps")
    q.add_argument("file")
    q.add_argument("-m", type=int, default=3)
    q = sub("report", cmd_report, help="summary of a file")
    q.add_argument("file")
    return p


def _check_semidirect_args(args) -> None:
    if args.command != "semidirect":
        return
    if args.mode == "check" and (args.file is None or args.Y is None or args.w is None):
        raise InputError("semidirect check needs <file> -Y <subset> -w <partition>")
    if args.mode == "outer":
        if args.K is None or args.Y is None or args.action is None:
            raise InputError("semidirect outer needs -K <file> -Y <file> --action <file>")
        try:
            open(args.action, encoding="utf-8").close()
        except OSError as exc:
            raise InputError(f"cannot read {args.action}: {exc.strerror}") from None


def run_command(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _check_semidirect_args(args)
        result = args.func(args)
    except InputError as exc:
        err.write(f"input error: {exc}\n")
        return 2
    except ResourceLimitError as exc:
        err.write(f"resource limit: {exc}\n")
        return 3
    except TheoremViolation as exc:
        err.write(f"violation: {exc}\n")
        return 1
    out.write(emit_report(result, args.format))
    return result.exit_code


def main(argv=None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
