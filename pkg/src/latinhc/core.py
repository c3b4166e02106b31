"""Domain types and validators for Latin hypercuboids and arrays of sets.

Conventions used throughout the package:

* coordinates are 0-based tuples, stored in row-major order (last index
  fastest);
* symbols are the integers ``1..n`` on every public surface.  Sets of symbols
  are bitmasks internally, with bit ``s - 1`` standing for symbol ``s``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Any, Generic, Iterable, Iterator, Mapping, TypeVar, Union

from .errors import RangeError, ShapeError

Coord = tuple[int, ...]


# --------------------------------------------------------------------------
# indexing


@lru_cache(maxsize=None)
def strides(extents: tuple[int, ...]) -> tuple[int, ...]:
    out = [1] * len(extents)
    for a in range(len(extents) - 2, -1, -1):
        out[a] = out[a + 1] * extents[a + 1]
    return tuple(out)


def cell_count(extents: tuple[int, ...]) -> int:
    total = 1
    for e in extents:
        total *= e
    return total


def index_of(coord: Coord, extents: tuple[int, ...]) -> int:
    if len(coord) != len(extents):
        raise ShapeError(f"coordinate {coord} has wrong dimension for extents {extents}")
    idx = 0
    for c, e, s in zip(coord, extents, strides(extents)):
        if not 0 <= c < e:
            raise ShapeError(f"coordinate {coord} outside extents {extents}")
        idx += c * s
    return idx


def coord_of(index: int, extents: tuple[int, ...]) -> Coord:
    out = []
    for s in strides(extents):
        q, index = divmod(index, s)
        out.append(q)
    return tuple(out)


@lru_cache(maxsize=None)
def lines(extents: tuple[int, ...]) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """Every axis-parallel line as ``(axis, linear indices)``.

    Lines are listed axis by axis; within an axis, by the lexicographic order
    of the remaining coordinates.
    """
    st = strides(extents)
    out = []
    for axis, ext in enumerate(extents):
        others = [range(e) for a, e in enumerate(extents) if a != axis]
        for rest in product(*others):
            base = 0
            r = 0
            for a in range(len(extents)):
                if a == axis:
                    continue
                base += rest[r] * st[a]
                r += 1
            out.append((axis, tuple(base + i * st[axis] for i in range(ext))))
    return tuple(out)


@lru_cache(maxsize=None)
def cube_lines(d: int, n: int) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    """Lines of the ``n^d`` cube and, per cell, the ids of the lines through it."""
    ls = tuple(idx for _, idx in lines((n,) * d))
    through: list[list[int]] = [[] for _ in range(n**d)]
    for lid, idx in enumerate(ls):
        for c in idx:
            through[c].append(lid)
    return ls, tuple(tuple(t) for t in through)


# --------------------------------------------------------------------------
# symbol sets


def mask_of(symbols: Iterable[int]) -> int:
    m = 0
    for s in symbols:
        m |= 1 << (s - 1)
    return m


def symbols_of(mask: int) -> list[int]:
    out = []
    s = 1
    while mask:
        if mask & 1:
            out.append(s)
        mask >>= 1
        s += 1
    return out


@dataclass(frozen=True)
class SymbolSet:
    """A subset of ``[n]`` backed by a fixed-width membership bitmask."""

    mask: int
    n: int

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask >> self.n:
            raise RangeError(f"set {symbols_of(self.mask)} is not a subset of [{self.n}]")

    @classmethod
    def of(cls, n: int, symbols: Iterable[int] = ()) -> SymbolSet:
        symbols = list(symbols)
        for s in symbols:
            if not 1 <= s <= n:
                raise RangeError(f"symbol {s} outside [1, {n}]")
        return cls(mask_of(symbols), n)

    @classmethod
    def full(cls, n: int) -> SymbolSet:
        return cls((1 << n) - 1, n)

    @classmethod
    def empty(cls, n: int) -> SymbolSet:
        return cls(0, n)

    def __iter__(self) -> Iterator[int]:
        return iter(symbols_of(self.mask))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, s: object) -> bool:
        return isinstance(s, int) and 1 <= s <= self.n and bool(self.mask >> (s - 1) & 1)

    def __or__(self, other: SymbolSet) -> SymbolSet:
        return SymbolSet(self.mask | other.mask, max(self.n, other.n))

    def __and__(self, other: SymbolSet) -> SymbolSet:
        return SymbolSet(self.mask & other.mask, max(self.n, other.n))

    def __sub__(self, other: SymbolSet) -> SymbolSet:
        return SymbolSet(self.mask & ~other.mask, self.n)

    union = __or__
    intersection = __and__

    def complement(self) -> SymbolSet:
        return SymbolSet(((1 << self.n) - 1) & ~self.mask, self.n)

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self)) + "}"


# --------------------------------------------------------------------------
# arrays


@dataclass(frozen=True)
class Shape:
    """Dimension ``d``, order ``n`` and depth ``k`` of a hypercuboid."""

    d: int
    n: int
    k: int

    def __post_init__(self) -> None:
        if self.d < 1 or self.n < 1 or not 0 <= self.k <= self.n:
            raise ShapeError(f"invalid shape d={self.d} n={self.n} k={self.k}")

    @property
    def extents(self) -> tuple[int, ...]:
        return (self.n,) * (self.d - 1) + (self.k,)


@dataclass(frozen=True)
class Hypercuboid:
    """A ``n x ... x n x k`` array of symbols from ``[n]``.

    The Latin condition is *not* enforced on construction; use
    :func:`validate_hypercuboid`.  Only the cell count is checked.
    """

    shape: Shape
    cells: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "cells", tuple(self.cells))
        expected = cell_count(self.shape.extents)
        if len(self.cells) != expected:
            raise ShapeError(
                f"hypercuboid {self.shape} needs {expected} cells, got {len(self.cells)}"
            )

    @classmethod
    def build(cls, d: int, n: int, k: int, cells: Iterable[int]) -> Hypercuboid:
        return cls(Shape(d, n, k), tuple(cells))

    @classmethod
    def empty(cls, d: int, n: int) -> Hypercuboid:
        return cls(Shape(d, n, 0), ())

    d = property(lambda self: self.shape.d)
    n = property(lambda self: self.shape.n)
    k = property(lambda self: self.shape.k)
    extents = property(lambda self: self.shape.extents)

    def __getitem__(self, coord: Coord) -> int:
        return self.cells[index_of(tuple(coord), self.extents)]

    def layer(self, j: int) -> Layer:
        """The depth-``j`` layer (0-based) as a ``(d-1)``-dimensional layer."""
        if not 0 <= j < self.k:
            raise RangeError(f"layer {j} outside depth {self.k}")
        return Layer(self.d - 1, self.n, self.cells[j :: self.k])

    def layers(self) -> list[Layer]:
        return [self.layer(j) for j in range(self.k)]


@dataclass(frozen=True)
class Layer:
    """An ``n^d`` array of symbols; valid when every line is a permutation."""

    d: int
    n: int
    cells: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "cells", tuple(self.cells))
        if self.d < 0 or self.n < 1:
            raise ShapeError(f"invalid layer d={self.d} n={self.n}")
        if len(self.cells) != self.n**self.d:
            raise ShapeError(f"layer of order {self.n}, dimension {self.d} needs {self.n**self.d} cells")

    @property
    def extents(self) -> tuple[int, ...]:
        return (self.n,) * self.d

    def __getitem__(self, coord: Coord) -> int:
        return self.cells[index_of(tuple(coord), self.extents)]

    def as_hypercuboid(self) -> Hypercuboid:
        """The same cells viewed as a depth-1 hypercuboid of dimension ``d + 1``."""
        return Hypercuboid(Shape(self.d + 1, self.n, 1), self.cells)

    @classmethod
    def from_hypercube(cls, H: Hypercuboid) -> Layer:
        if H.k != H.n:
            raise ShapeError("only a full hypercube can be read as a layer")
        return cls(H.d, H.n, H.cells)


def _check_set_cells(d: int, n: int, cells: tuple[SymbolSet, ...]) -> None:
    if d < 0 or n < 1:
        raise ShapeError(f"invalid array d={d} n={n}")
    if len(cells) != n**d:
        raise ShapeError(f"array of order {n}, dimension {d} needs {n**d} cells, got {len(cells)}")
    for c in cells:
        if not isinstance(c, SymbolSet) or c.n != n:
            raise ShapeError(f"cell {c!r} is not a subset of [{n}]")


@dataclass(frozen=True)
class ConstraintArray:
    """An ``n^d`` array of arbitrary subsets of ``[n]``."""

    d: int
    n: int
    cells: tuple[SymbolSet, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "cells", tuple(self.cells))
        _check_set_cells(self.d, self.n, self.cells)

    @classmethod
    def from_sets(cls, d: int, n: int, sets: Iterable[Iterable[int]]) -> ConstraintArray:
        return cls(d, n, tuple(SymbolSet.of(n, s) for s in sets))

    @classmethod
    def filled(cls, d: int, n: int, symbols: Iterable[int]) -> ConstraintArray:
        cell = SymbolSet.of(n, symbols)
        return cls(d, n, (cell,) * n**d)

    @property
    def extents(self) -> tuple[int, ...]:
        return (self.n,) * self.d

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(c.mask for c in self.cells)

    def __getitem__(self, coord: Coord) -> SymbolSet:
        return self.cells[index_of(tuple(coord), self.extents)]

    def complement(self) -> ConstraintArray:
        return ConstraintArray(self.d, self.n, tuple(c.complement() for c in self.cells))


@dataclass(frozen=True)
class SetArray:
    """An ``(n^d, k)``-array: cells are ``k``-subsets of ``[n]`` and every
    symbol occurs exactly ``k`` times along every line.

    As with :class:`Hypercuboid`, the balance condition is checked by
    :func:`validate_set_array` rather than on construction.
    """

    d: int
    n: int
    k: int
    cells: tuple[SymbolSet, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "cells", tuple(self.cells))
        _check_set_cells(self.d, self.n, self.cells)
        if not 0 <= self.k <= self.n:
            raise ShapeError(f"cardinality k={self.k} outside [0, {self.n}]")

    @classmethod
    def from_sets(cls, d: int, n: int, k: int, sets: Iterable[Iterable[int]]) -> SetArray:
        return cls(d, n, k, tuple(SymbolSet.of(n, s) for s in sets))

    @classmethod
    def from_masks(cls, d: int, n: int, k: int, masks: Iterable[int]) -> SetArray:
        return cls(d, n, k, tuple(SymbolSet(m, n) for m in masks))

    @property
    def extents(self) -> tuple[int, ...]:
        return (self.n,) * self.d

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(c.mask for c in self.cells)

    def __getitem__(self, coord: Coord) -> SymbolSet:
        return self.cells[index_of(tuple(coord), self.extents)]

    def as_constraints(self) -> ConstraintArray:
        return ConstraintArray(self.d, self.n, self.cells)


AnySetArray = Union[SetArray, ConstraintArray]


@dataclass(frozen=True)
class PartialAssignment:
    """Sparse map from coordinates to symbols, e.g. ``{(0, 0): 5}``."""

    entries: tuple[tuple[Coord, int], ...] = ()

    def __post_init__(self) -> None:
        seen = set()
        for coord, s in self.entries:
            if coord in seen:
                raise ShapeError(f"coordinate {coord} assigned twice")
            if s < 1:
                raise RangeError(f"symbol {s} outside [1, n]")
            seen.add(coord)

    @classmethod
    def of(cls, mapping: Mapping[Coord, int] | Iterable[tuple[Coord, int]] | None = None) -> PartialAssignment:
        if mapping is None:
            return cls()
        if isinstance(mapping, PartialAssignment):
            return mapping
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        return cls(tuple((tuple(c), int(s)) for c, s in items))

    def __iter__(self) -> Iterator[tuple[Coord, int]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def indexed(self, d: int, n: int) -> dict[int, int]:
        """Linear index -> symbol for an ``n^d`` array, range-checked."""
        out = {}
        for coord, s in self.entries:
            if s > n:
                raise RangeError(f"forced symbol {s} outside [1, {n}]")
            out[index_of(coord, (n,) * d)] = s
        return out


# --------------------------------------------------------------------------
# outcomes


class Status(str, enum.Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    UNKNOWN = "unknown"


W = TypeVar("W")


@dataclass(frozen=True)
class SolveOutcome(Generic[W]):
    """Result of a complete search.

    ``INFEASIBLE`` is only reported after the search space was exhausted and
    ``UNKNOWN`` only when a budget stopped the search.
    """

    status: Status
    witness: W | None = None
    stats: dict[str, Any] = field(default_factory=dict)

    @property
    def feasible(self) -> bool:
        return self.status is Status.FEASIBLE

    @property
    def infeasible(self) -> bool:
        return self.status is Status.INFEASIBLE

    @property
    def unknown(self) -> bool:
        return self.status is Status.UNKNOWN

    @property
    def nodes(self) -> int:
        return self.stats.get("nodes", 0)


# --------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    reason: str
    axis: int | None = None
    cells: tuple[Coord, ...] = ()
    symbol: int | None = None

    def __str__(self) -> str:
        where = ", ".join("(" + ",".join(str(i + 1) for i in c) + ")" for c in self.cells)
        parts = [self.reason]
        if self.symbol is not None:
            parts.append(f"symbol {self.symbol}")
        if self.axis is not None:
            parts.append(f"along axis {self.axis + 1}")
        if where:
            parts.append(f"at {where}")
        return " ".join(parts)


@dataclass(frozen=True)
class Report:
    ok: bool
    violation: Violation | None = None

    def __bool__(self) -> bool:
        return self.ok


_OK = Report(True)


def _repeat_report(cells: tuple[int, ...], extents: tuple[int, ...], n: int) -> Report:
    for i, s in enumerate(cells):
        if not 1 <= s <= n:
            return Report(False, Violation("out-of-range", None, (coord_of(i, extents),), s))
    for axis, idx in lines(extents):
        seen: dict[int, int] = {}
        for i in idx:
            s = cells[i]
            if s in seen:
                where = (coord_of(seen[s], extents), coord_of(i, extents))
                return Report(False, Violation("repeated", axis, where, s))
            seen[s] = i
    return _OK


def validate_hypercuboid(H: Hypercuboid) -> Report:
    """True iff symbols lie in ``[n]`` and no line repeats a symbol."""
    if len(H.cells) != cell_count(H.extents):
        raise ShapeError("cell count does not match shape")
    return _repeat_report(H.cells, H.extents, H.n)


def validate_layer(L: Layer) -> Report:
    """True iff every line is a permutation of ``[n]``.

    Lines have length ``n``, so repeat-freeness over ``[n]`` suffices.
    """
    if len(L.cells) != L.n**L.d:
        raise ShapeError("cell count does not match shape")
    return _repeat_report(L.cells, L.extents, L.n)


def validate_set_array(A: SetArray) -> Report:
    """True iff every cell has ``k`` members and every symbol occurs ``k``
    times along every line."""
    if len(A.cells) != A.n**A.d:
        raise ShapeError("cell count does not match shape")
    ext = A.extents
    for i, c in enumerate(A.cells):
        if len(c) != A.k:
            return Report(False, Violation(f"cell has {len(c)} symbols, expected {A.k}:", None, (coord_of(i, ext),)))
    for axis, idx in lines(ext):
        counts = [0] * A.n
        for i in idx:
            m = A.cells[i].mask
            s = 0
            while m:
                if m & 1:
                    counts[s] += 1
                m >>= 1
                s += 1
        for s, cnt in enumerate(counts):
            if cnt != A.k:
                where = (coord_of(idx[0], ext), coord_of(idx[-1], ext))
                return Report(False, Violation(f"occurs {cnt} times, expected {A.k}:", axis, where, s + 1))
    return _OK


def is_layer_of(L: Layer, A: AnySetArray) -> bool:
    if L.d != A.d or L.n != A.n:
        raise ShapeError(f"layer (d={L.d}, n={L.n}) does not match array (d={A.d}, n={A.n})")
    if not validate_layer(L):
        return False
    return all(s in cell for s, cell in zip(L.cells, A.cells))


def is_extension_of(H2: Hypercuboid, H: Hypercuboid) -> bool:
    """True iff ``H2`` agrees with ``H`` on every coordinate of ``H``."""
    if H2.d != H.d or H2.n != H.n:
        raise ShapeError("extension must share dimension and order")
    k, k2 = H.k, H2.k
    if k2 < k:
        return False
    for base in range(H.n ** (H.d - 1)):
        if H2.cells[base * k2 : base * k2 + k] != H.cells[base * k : base * k + k]:
            return False
    return True
