"""Layer existence, layer decomposition, extension and completion."""

from __future__ import annotations

from typing import Iterator

from ..construct import stack_unchecked, unused_array, unused_masks
from ..core import (
    AnySetArray,
    ConstraintArray,
    Coord,
    Hypercuboid,
    Layer,
    PartialAssignment,
    SetArray,
    SolveOutcome,
    Status,
    coord_of,
    cube_lines,
    is_layer_of,
    validate_hypercuboid,
)
from ..errors import AlreadyFull, ForcedConflict, ShapeError
from .budget import Budget, BudgetExhausted, Tracker
from .exact_cover import iter_layers


def _forced_indices(C: AnySetArray, forced) -> dict[int, int]:
    idx = PartialAssignment.of(forced).indexed(C.d, C.n)
    for c, s in idx.items():
        if s not in C.cells[c]:
            raise ForcedConflict(
                f"forced symbol {s} at {tuple(i + 1 for i in coord_of(c, C.extents))} "
                f"is not in the cell's set {C.cells[c]!r}"
            )
    return idx


def find_layer(
    C: AnySetArray,
    forced: PartialAssignment | dict | None = None,
    budget: Budget | None = None,
    *,
    tracker: Tracker | None = None,
) -> SolveOutcome[Layer]:
    """Search for a layer of ``C`` that agrees with ``forced``.

    For ``d = 2`` this is list edge colouring of ``K_{n,n}`` with the cell
    sets as edge lists.
    """
    pinned = _forced_indices(C, forced)
    tr = tracker or Tracker(budget)
    try:
        cells = next(iter_layers(C.d, C.n, C.masks, tr, pinned), None)
    except BudgetExhausted:
        return SolveOutcome(Status.UNKNOWN, None, tr.stats())
    if cells is None:
        return SolveOutcome(Status.INFEASIBLE, None, tr.stats())
    L = Layer(C.d, C.n, cells)
    if not is_layer_of(L, C) or any(L.cells[c] != s for c, s in pinned.items()):
        raise RuntimeError("layer search produced an invalid witness")
    return SolveOutcome(Status.FEASIBLE, L, tr.stats())


# --------------------------------------------------------------------------
# decomposition


def _balanced(d: int, n: int, k: int, masks: tuple[int, ...]) -> bool:
    if any(m.bit_count() != k for m in masks):
        return False
    ls, _ = cube_lines(d, n)
    for idx in ls:
        counts = [0] * n
        for c in idx:
            m = masks[c]
            s = 0
            while m:
                if m & 1:
                    counts[s] += 1
                    if counts[s] > k:
                        return False
                m >>= 1
                s += 1
    return True


def _unsupported(d: int, n: int, masks: tuple[int, ...], tracker: Tracker) -> tuple[int, int] | None:
    """First ``(cell, symbol)`` that lies on no layer at all, if any.

    Every symbol of every cell must be covered by some layer of a
    decomposition, so one such pair settles non-decomposability.
    """
    pending = {(c, s) for c, m in enumerate(masks) for s in range(1, n + 1) if m >> (s - 1) & 1}
    while pending:
        c, s = min(pending)
        cells = next(iter_layers(d, n, masks, tracker, {c: s}), None)
        if cells is None:
            return c, s
        pending.difference_update(enumerate(cells))
    return None


def iter_decompositions(
    d: int, n: int, k: int, masks: tuple[int, ...], tracker: Tracker, support_check: bool = True
) -> Iterator[list[tuple[int, ...]]]:
    """Yield decompositions of ``masks`` into ``k`` layers.

    Layers are unordered, so the first layer of each level is required to
    take the smallest symbol of cell 0; this loses no decomposition.
    """
    if not _balanced(d, n, k, masks):
        return
    if support_check and k >= 2 and _unsupported(d, n, masks, tracker) is not None:
        return

    def rec(masks: tuple[int, ...], depth: int) -> Iterator[list[tuple[int, ...]]]:
        if depth == 0:
            yield []
            return
        low = (masks[0] & -masks[0]).bit_length()
        for cells in iter_layers(d, n, masks, tracker, {0: low}):
            rest = tuple(m & ~(1 << (s - 1)) for m, s in zip(masks, cells))
            for tail in rec(rest, depth - 1):
                yield [cells, *tail]

    yield from rec(masks, k)


def decompose(
    A: SetArray,
    budget: Budget | None = None,
    *,
    support_check: bool = True,
    tracker: Tracker | None = None,
) -> SolveOutcome[list[Layer]]:
    """Partition every cell of ``A`` among ``k`` layers."""
    tr = tracker or Tracker(budget)
    try:
        found = next(iter_decompositions(A.d, A.n, A.k, A.masks, tr, support_check), None)
    except BudgetExhausted:
        return SolveOutcome(Status.UNKNOWN, None, tr.stats())
    if found is None:
        return SolveOutcome(Status.INFEASIBLE, None, tr.stats())
    layers = [Layer(A.d, A.n, cells) for cells in found]
    _check_partition(A, layers)
    return SolveOutcome(Status.FEASIBLE, layers, tr.stats())


def _check_partition(A: SetArray, layers: list[Layer]) -> None:
    for L in layers:
        if not is_layer_of(L, A):
            raise RuntimeError("decomposition contains an invalid layer")
    for c, cell in enumerate(A.cells):
        if sorted(L.cells[c] for L in layers) != list(cell):
            raise RuntimeError("decomposition does not partition the cells")


def is_layerable(A: SetArray, budget: Budget | None = None) -> SolveOutcome[list[Layer]]:
    return decompose(A, budget)


# --------------------------------------------------------------------------
# hypercuboids


def is_extendible(H: Hypercuboid, budget: Budget | None = None) -> SolveOutcome[Layer]:
    """A layer of the unused-symbol array, i.e. a valid next layer for ``H``."""
    if H.k == H.n:
        raise AlreadyFull("a full hypercube has no room for another layer")
    out = find_layer(unused_array(H), budget=budget)
    if out.feasible and not validate_hypercuboid(stack_unchecked(H, [out.witness])):
        raise RuntimeError("extension witness does not validate")
    return out


def is_completable(H: Hypercuboid, budget: Budget | None = None, **kwargs) -> SolveOutcome[list[Layer]]:
    """Layers that complete ``H`` to a Latin hypercube, if any."""
    out = decompose(unused_array(H), budget, **kwargs)
    if out.feasible:
        full = stack_unchecked(H, out.witness)
        if not validate_hypercuboid(full):
            raise RuntimeError("completion witness does not validate")
    return out


def completion(H: Hypercuboid, budget: Budget | None = None) -> SolveOutcome[Hypercuboid]:
    out = is_completable(H, budget)
    full = stack_unchecked(H, out.witness) if out.feasible else None
    return SolveOutcome(out.status, full, out.stats)


def extension(H: Hypercuboid, budget: Budget | None = None) -> SolveOutcome[Hypercuboid]:
    out = is_extendible(H, budget)
    bigger = stack_unchecked(H, [out.witness]) if out.feasible else None
    return SolveOutcome(out.status, bigger, out.stats)


def completable_masks(d: int, n: int, k: int, masks: tuple[int, ...], tracker: Tracker) -> bool:
    return next(iter_decompositions(d, n, k, masks, tracker), None) is not None


def extendible_masks(d: int, n: int, masks: tuple[int, ...], tracker: Tracker) -> bool:
    return next(iter_layers(d, n, masks, tracker), None) is not None


# --------------------------------------------------------------------------
# avoidance


def avoidable(M: ConstraintArray, budget: Budget | None = None) -> SolveOutcome[Layer]:
    """A Latin square that never uses a symbol of ``M`` in its cell."""
    if M.d != 2:
        raise ShapeError("avoidability is defined for two-dimensional arrays")
    out = find_layer(M.complement(), budget=budget)
    if out.feasible and any(s in cell for s, cell in zip(out.witness.cells, M.cells)):
        raise RuntimeError("avoiding square meets the array")
    return out


def intersects(M: ConstraintArray, N: AnySetArray) -> Coord | None:
    """First cell (row-major) where ``M`` and ``N`` share a symbol."""
    if M.d != 2 or N.d != 2 or M.n != N.n:
        raise ShapeError("intersects needs two n x n arrays of the same order")
    for c, (a, b) in enumerate(zip(M.cells, N.cells)):
        if a.mask & b.mask:
            return coord_of(c, M.extents)
    return None


__all__ = [
    "avoidable",
    "completion",
    "decompose",
    "extension",
    "find_layer",
    "intersects",
    "is_completable",
    "is_extendible",
    "is_layerable",
    "iter_decompositions",
    "unused_masks",
]
