"""Text formats for algebras, actions, partitions and subsets.

Algebra file::

    # comment
    name = z4_heap
    kind = heap
    size = 4
    [ternary]
    <n blocks of n rows of n integers; block = first argument>

Binary sections (``mul``, ``add``, ``star``, ``circ``) hold ``n`` rows of
``n`` integers, row = left argument.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import BinaryTable, Endomap, GroupView, TernaryTable, heap_from_group
from .errors import EmptyCarrierError, InputError
from .semidirect import ActionTable
from .subobjects import Partition, Subset

KIND_SECTIONS = {
    "semiheap": ("ternary",),
    "heap": ("ternary",),
    "near_truss_left": ("ternary", "mul"),
    "near_truss_right": ("ternary", "mul"),
    "truss": ("ternary", "mul"),
    "jring": ("add", "mul"),
    "ring": ("add", "mul"),
    "group": ("mul",),
    "skew_brace": ("star", "circ"),
}
KINDS = tuple(KIND_SECTIONS)
HEADER_KEYS = ("name", "kind", "size")


@dataclass
class AlgebraFile:
    name: str
    kind: str
    size: int
    sections: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KIND_SECTIONS:
            raise InputError(f"unknown kind {self.kind!r}")
        if self.size <= 0:
            raise EmptyCarrierError()
        for sec in KIND_SECTIONS[self.kind]:
            if sec not in self.sections:
                raise InputError(f"missing section [{sec}] for kind {self.kind}")
            arr = np.asarray(self.sections[sec], dtype=np.int64)
            shape = (self.size,) * (3 if sec == "ternary" else 2)
            if arr.shape != shape:
                raise InputError(f"section [{sec}] has shape {arr.shape}, expected {shape}")
            if arr.min() < 0 or arr.max() >= self.size:
                raise InputError(f"section [{sec}] has values outside 0..{self.size - 1}")
            self.sections[sec] = arr

    def __eq__(self, other):
        if not isinstance(other, AlgebraFile):
            return NotImplemented
        return ((self.name, self.kind, self.size) == (other.name, other.kind, other.size)
                and self.sections.keys() == other.sections.keys()
                and all(np.array_equal(self.sections[k], other.sections[k]) for k in self.sections))


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_row(raw: str, n: int, lineno: int) -> list[int]:
    body = raw.split("#", 1)[0]
    out = []
    pos = 0
    for tok in body.split():
        col = body.index(tok, pos) + 1
        pos = col - 1 + len(tok)
        try:
            v = int(tok)
        except ValueError:
            raise InputError(f"not an integer: {tok!r}", lineno, col) from None
        if not 0 <= v < n:
            raise InputError(f"value {v} out of range 0..{n - 1}", lineno, col)
        out.append(v)
    if len(out) != n:
        raise InputError(f"row has {len(out)} entries, expected {n}", lineno)
    return out


def parse_algebra(text: str) -> AlgebraFile:
    headers: dict = {}
    sections: dict = {}
    current = None
    header_line = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if current is None and not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if current is None:
                _check_headers(headers, header_line, lineno)
            if name in sections:
                raise InputError(f"duplicate section [{name}]", lineno)
            allowed = KIND_SECTIONS[headers["kind"]]
            if name not in allowed:
                raise InputError(f"section [{name}] not allowed for kind {headers['kind']}", lineno)
            current = name
            sections[name] = []
            continue
        if current is None:
            if "=" not in line:
                raise InputError(f"expected 'key = value', got {line!r}", lineno)
            key, value = (p.strip() for p in line.split("=", 1))
            if key not in HEADER_KEYS:
                raise InputError(f"unknown header {key!r}", lineno)
            if key in headers:
                raise InputError(f"duplicate header {key!r}", lineno)
            headers[key] = value
            header_line[key] = lineno
            continue
        if not line:
            continue
        n = headers["size"]
        rows = sections[current]
        limit = n * n if current == "ternary" else n
        if len(rows) >= limit:
            raise InputError(f"too many rows in section [{current}]", lineno)
        rows.append(_parse_row(raw, n, lineno))
    if current is None:
        _check_headers(headers, header_line, None)
    n = headers["size"]
    total = len(text.splitlines())
    for sec in KIND_SECTIONS[headers["kind"]]:
        if sec not in sections:
            raise InputError(f"missing section [{sec}]", total)
        rows = sections[sec]
        expected = n * n if sec == "ternary" else n
        if len(rows) != expected:
            raise InputError(f"section [{sec}] has {len(rows)} rows, expected {expected}", total)
        arr = np.array(rows, dtype=np.int64)
        sections[sec] = arr.reshape(n, n, n) if sec == "ternary" else arr
    return AlgebraFile(headers.get("name", "unnamed"), headers["kind"], n, sections)


def _check_headers(headers: dict, header_line: dict, lineno) -> None:
    for key in ("kind", "size"):
        if key not in headers:
            raise InputError(f"missing header {key!r}", lineno)
    if headers["kind"] not in KIND_SECTIONS:
        raise InputError(f"unknown kind {headers['kind']!r}", header_line["kind"])
    try:
        size = int(headers["size"])
    except (TypeError, ValueError):
        raise InputError(f"size must be an integer, got {headers['size']!r}", header_line["size"]) from None
    if size == 0:
        raise EmptyCarrierError(header_line["size"])
    if size < 0:
        raise InputError("size must be positive", header_line["size"])
    headers["size"] = size


def read_algebra(path) -> AlgebraFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_algebra(text)


def _rows(arr) -> list[str]:
    return [" ".join(str(int(v)) for v in row) for row in arr]


def serialize_algebra(af: AlgebraFile) -> str:
    lines = [f"name = {af.name}", f"kind = {af.kind}", f"size = {af.size}"]
    for sec in KIND_SECTIONS[af.kind]:
        lines.append(f"[{sec}]")
        arr = af.sections[sec]
        if sec == "ternary":
            for i, block in enumerate(arr):
                if i:
                    lines.append("")
                lines.extend(_rows(block))
        else:
            lines.extend(_rows(arr))
    return "\n".join(lines) + "\n"


def write_algebra(path, af: AlgebraFile) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_algebra(af))


# ---------------------------------------------------------------------------
# conversion to library objects


def to_structure(af: AlgebraFile, kind: str | None = None):
    """The library object for ``af``, optionally derived as another kind.

    Derivations: group -> heap, ring -> truss, skew_brace -> near_truss_left,
    and any kind with a ternary section -> heap or semiheap.
    """
    from .ideals import JRing
    from .trusses import NearTruss, SkewBrace, near_truss_from_skew_brace, ring_truss

    kind = kind or af.kind
    if kind not in KIND_SECTIONS:
        raise InputError(f"unknown kind {kind!r}")
    s = af.sections
    src = af.kind
    if kind in ("heap", "semiheap"):
        if "ternary" in s:
            return TernaryTable(s["ternary"])
        if src == "group":
            return heap_from_group(GroupView.from_table(s["mul"]))
        if src in ("ring", "jring"):
            return heap_from_group(GroupView.from_table(s["add"]))
        if src == "skew_brace":
            return heap_from_group(GroupView.from_table(s["star"]))
    elif kind in ("near_truss_left", "near_truss_right", "truss"):
        side = {"near_truss_left": "left", "near_truss_right": "right", "truss": "both"}[kind]
        if "ternary" in s and "mul" in s:
            return NearTruss(TernaryTable(s["ternary"]), BinaryTable(s["mul"]), side)
        if src == "ring":
            t = ring_truss(GroupView.from_table(s["add"]), BinaryTable(s["mul"]))
            return NearTruss(t.heap, t.mul, side)
        if src == "skew_brace" and side == "left":
            return near_truss_from_skew_brace(SkewBrace(GroupView.from_table(s["star"]), GroupView.from_table(s["circ"])))
    elif kind == src:
        if kind == "group":
            return GroupView.from_table(s["mul"])
        if kind in ("ring", "jring"):
            add = GroupView.from_table(s["add"])
            return JRing(add, BinaryTable(s["mul"])) if kind == "jring" else (add, BinaryTable(s["mul"]))
        if kind == "skew_brace":
            return SkewBrace(GroupView.from_table(s["star"]), GroupView.from_table(s["circ"]))
    raise InputError(f"cannot read a {src} file as {kind}")


def from_structure(obj, name: str, kind: str) -> AlgebraFile:
    """Inverse of :func:`to_structure` for the kind's native object."""
    from .ideals import JRing
    from .trusses import NearTruss, SkewBrace

    if isinstance(obj, TernaryTable):
        sections = {"ternary": obj.table}
    elif isinstance(obj, NearTruss):
        sections = {"ternary": obj.heap.table, "mul": obj.mul.table}
    elif isinstance(obj, JRing):
        sections = {"add": obj.add.op.table, "mul": obj.mul.table}
    elif isinstance(obj, GroupView):
        sections = {"mul": obj.op.table}
    elif isinstance(obj, SkewBrace):
        sections = {"star": obj.star.op.table, "circ": obj.circ.op.table}
    elif isinstance(obj, tuple) and len(obj) == 2:
        sections = {"add": obj[0].op.table, "mul": obj[1].table}
    else:
        raise InputError(f"cannot serialise {type(obj).__name__}")
    n = next(iter(sections.values())).shape[0]
    return AlgebraFile(name, kind, n, {k: np.array(v) for k, v in sections.items()})


# ---------------------------------------------------------------------------
# partitions, subsets, actions


def parse_subset(text: str, n: int) -> Subset:
    text = text.strip()
    if not text:
        return Subset(n, ())
    try:
        items = [int(t) for t in text.split(",")]
    except ValueError:
        raise InputError(f"bad subset syntax {text!r}; expected e.g. 0,2") from None
    return Subset.of(n, items)


def parse_partition(text: str, n: int) -> Partition:
    try:
        blocks = [[int(t) for t in b.split(",")] for b in text.strip().split("|")]
    except ValueError:
        raise InputError(f"bad partition syntax {text!r}; expected e.g. 0,2|1,3") from None
    return Partition.from_blocks(n, blocks)


def parse_action(text: str) -> ActionTable:
    """Header ``size_K``, ``size_Y``, ``base_y``, then one permutation of ``K`` per ``y``."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if line:
            rows.append((lineno, line))
    if len(rows) < 3:
        raise InputError("action file needs size_K, size_Y and base_y", len(text.splitlines()) or None)
    header = {}
    for (lineno, line), key in zip(rows[:3], ("size_K", "size_Y", "base_y")):
        if "=" in line:
            k, _, v = (p.strip() for p in line.partition("="))
            if k != key:
                raise InputError(f"expected {key}, got {k!r}", lineno)
            line = v
        try:
            header[key] = int(line)
        except ValueError:
            raise InputError(f"{key} must be an integer", lineno) from None
    nk, ny, base = header["size_K"], header["size_Y"], header["base_y"]
    if nk <= 0 or ny <= 0:
        raise EmptyCarrierError(rows[0][0] if nk <= 0 else rows[1][0])
    if not 0 <= base < ny:
        raise InputError(f"base_y {base} out of range 0..{ny - 1}", rows[2][0])
    body = rows[3:]
    if len(body) != ny:
        raise InputError(f"expected {ny} permutation lines, found {len(body)}", body[-1][0] if body else rows[2][0])
    maps = []
    for lineno, line in body:
        images = _parse_row(line, nk, lineno)
        if len(set(images)) != nk:
            raise InputError("line is not a permutation", lineno)
        maps.append(Endomap(tuple(images)))
    return ActionTable(base, tuple(maps))


def serialize_action(action: ActionTable) -> str:
    lines = [f"size_K = {action.k_size}", f"size_Y = {action.y_size}", f"base_y = {action.base}"]
    lines.extend(str(m) for m in action.maps)
    return "\n".join(lines) + "\n"
