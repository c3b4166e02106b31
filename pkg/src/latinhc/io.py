"""JSON interchange and text-grid rendering.

JSON objects have the fields ``kind``, ``d``, ``n``, ``k`` (hypercuboids and
set arrays only), ``cells`` and ``meta``.  ``cells`` is flat in row-major
order: integers for symbol arrays, ascending integer lists for set arrays.
Parsing is strict: anything malformed is rejected, never repaired.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from .core import ConstraintArray, Hypercuboid, Layer, SetArray, Shape, SymbolSet
from .errors import LatinError, ParseError, RangeError

Obj = Union[Hypercuboid, SetArray, ConstraintArray, Layer]

KINDS = ("hypercuboid", "setarray", "constraintarray", "layer")


def kind_of(obj: Obj) -> str:
    if isinstance(obj, Hypercuboid):
        return "hypercuboid"
    if isinstance(obj, SetArray):
        return "setarray"
    if isinstance(obj, ConstraintArray):
        return "constraintarray"
    if isinstance(obj, Layer):
        return "layer"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def kind_of_type(cls: type) -> str:
    return {
        Hypercuboid: "hypercuboid",
        SetArray: "setarray",
        ConstraintArray: "constraintarray",
        Layer: "layer",
    }[cls]


def to_dict(obj: Obj, meta: dict[str, Any] | None = None) -> dict[str, Any]:
    kind = kind_of(obj)
    out: dict[str, Any] = {"kind": kind, "d": obj.d, "n": obj.n}
    if kind in ("hypercuboid", "setarray"):
        out["k"] = obj.k
    if kind in ("hypercuboid", "layer"):
        out["cells"] = list(obj.cells)
    else:
        out["cells"] = [list(c) for c in obj.cells]
    out["meta"] = dict(meta or {})
    return out


def dumps(obj: Obj, meta: dict[str, Any] | None = None) -> str:
    return json.dumps(to_dict(obj, meta), separators=(",", ":"), ensure_ascii=False) + "\n"


def dump(obj: Obj, path: str | Path, meta: dict[str, Any] | None = None) -> None:
    Path(path).write_text(dumps(obj, meta), encoding="utf-8")


def _int(data: dict, key: str, lo: int) -> int:
    if key not in data:
        raise ParseError(f"missing field {key!r}")
    v = data[key]
    if not isinstance(v, int) or isinstance(v, bool) or v < lo:
        raise ParseError(f"field {key!r} must be an integer >= {lo}, got {v!r}")
    return v


def _symbol(v: Any, n: int) -> int:
    if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= n:
        raise ParseError(f"symbol {v!r} outside [1, {n}]")
    return v


def _set(v: Any, n: int) -> SymbolSet:
    if not isinstance(v, list):
        raise ParseError(f"set cell must be a list, got {v!r}")
    syms = [_symbol(s, n) for s in v]
    if any(a >= b for a, b in zip(syms, syms[1:])):
        raise ParseError(f"set {v!r} is not strictly ascending")
    return SymbolSet.of(n, syms)


def from_dict(data: Any) -> tuple[Obj, dict[str, Any]]:
    """Build an object and return it with its ``meta`` map."""
    if not isinstance(data, dict):
        raise ParseError("top level must be a JSON object")
    kind = data.get("kind")
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}")
    allowed = {"kind", "d", "n", "cells", "meta"} | ({"k"} if kind in ("hypercuboid", "setarray") else set())
    extra = set(data) - allowed
    if extra:
        raise ParseError(f"unexpected fields {sorted(extra)}")
    d = _int(data, "d", 1 if kind == "hypercuboid" else 0)
    n = _int(data, "n", 1)
    k = _int(data, "k", 0) if kind in ("hypercuboid", "setarray") else None
    if k is not None and k > n:
        raise ParseError(f"k={k} exceeds n={n}")
    cells = data.get("cells")
    if not isinstance(cells, list):
        raise ParseError("cells must be a list")
    meta = data.get("meta", {})
    if not isinstance(meta, dict):
        raise ParseError("meta must be an object")
    expected = n ** (d - 1) * k if kind == "hypercuboid" else n**d
    if len(cells) != expected:
        raise ParseError(f"{kind} with d={d}, n={n} needs {expected} cells, got {len(cells)}")
    try:
        if kind == "hypercuboid":
            return Hypercuboid(Shape(d, n, k), tuple(_symbol(v, n) for v in cells)), meta
        if kind == "layer":
            return Layer(d, n, tuple(_symbol(v, n) for v in cells)), meta
        sets = tuple(_set(v, n) for v in cells)
        if kind == "setarray":
            return SetArray(d, n, k, sets), meta
        return ConstraintArray(d, n, sets), meta
    except ParseError:
        raise
    except LatinError as exc:
        raise ParseError(str(exc)) from exc


def loads(text: str) -> tuple[Obj, dict[str, Any]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return from_dict(data)


def load(path: str | Path) -> tuple[Obj, dict[str, Any]]:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    if raw.startswith(b"\xef\xbb\xbf"):
        raise ParseError("byte order mark not allowed")
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"not UTF-8: {exc}") from exc
    return loads(text)


# --------------------------------------------------------------------------
# text grids


def _fmt(v: Any) -> str:
    if isinstance(v, SymbolSet):
        return "{" + ",".join(map(str, v)) + "}"
    return str(v)


def render(obj: Obj) -> str:
    """Human-readable grid for ``d <= 3``: one block per layer.

    For hypercuboids the blocks are the depth layers; for arrays of
    dimension 3 they are the slices along the first axis.
    """
    if isinstance(obj, Hypercuboid):
        blocks = [L.cells for L in obj.layers()]
        dim = obj.d - 1
    else:
        dim = obj.d
        if dim == 3:
            sz = obj.n**2
            blocks = [obj.cells[i * sz : (i + 1) * sz] for i in range(obj.n)]
            dim = 2
        else:
            blocks = [obj.cells]
    if dim > 2:
        raise RangeError("text grids cover dimension at most 3")
    n = obj.n
    out = []
    for cells in blocks:
        texts = [_fmt(c) for c in cells]
        width = max((len(t) for t in texts), default=1)
        if dim == 2:
            rows = [texts[r * n : (r + 1) * n] for r in range(n)]
        else:
            rows = [texts]
        out.append("\n".join(" ".join(t.rjust(width) for t in row) for row in rows))
    return "\n\n".join(out) + "\n"


def describe(obj: Obj) -> str:
    kind = kind_of(obj)
    if kind == "hypercuboid":
        return f"hypercuboid d={obj.d} n={obj.n} k={obj.k}"
    if kind == "setarray":
        return f"({obj.n}^{obj.d},{obj.k})-array"
    return f"{kind} d={obj.d} n={obj.n}"


__all__ = ["describe", "dump", "dumps", "from_dict", "load", "loads", "render", "to_dict"]
