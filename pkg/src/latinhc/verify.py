"""Slow, independent oracles.

Nothing here shares search code with :mod:`latinhc.solve`; the point of these
routines is to be obviously correct, not fast.
"""

from __future__ import annotations

from itertools import permutations, product
from typing import Iterator

from .core import AnySetArray, Hypercuboid, Layer, PartialAssignment, Shape, SolveOutcome, Status
from .errors import RangeError

MAX_ORDER = 5


def enumerate_latin_squares(n: int, reduced: bool = False) -> Iterator[Hypercuboid]:
    """Every Latin square of order ``n`` exactly once, in lexicographic order
    of the row-major cell tuple.  ``reduced`` keeps only squares whose first
    row and column are ``1..n``."""
    if not 1 <= n <= MAX_ORDER:
        raise RangeError(f"enumeration is capped at order {MAX_ORDER}")
    grid = [0] * (n * n)
    row_used = [set() for _ in range(n)]
    col_used = [set() for _ in range(n)]
    shape = Shape(2, n, n)

    def fill(pos: int) -> Iterator[Hypercuboid]:
        if pos == n * n:
            yield Hypercuboid(shape, tuple(grid))
            return
        r, c = divmod(pos, n)
        if reduced and (r == 0 or c == 0):
            choices = [r + c + 1]
        else:
            choices = range(1, n + 1)
        for s in choices:
            if s in row_used[r] or s in col_used[c]:
                continue
            grid[pos] = s
            row_used[r].add(s)
            col_used[c].add(s)
            yield from fill(pos + 1)
            row_used[r].discard(s)
            col_used[c].discard(s)
        grid[pos] = 0

    yield from fill(0)


def _relabel(cells: list[int]) -> tuple[int, ...]:
    names: dict[int, int] = {}
    out = []
    for s in cells:
        if s not in names:
            names[s] = len(names) + 1
        out.append(names[s])
    return tuple(out)


def canonical_form(cells: tuple[int, ...], n: int) -> tuple[int, ...]:
    """Lexicographically least square isotopic to ``cells``.

    For fixed row and column permutations the least symbol relabelling is
    first-appearance order, so only ``(n!)^2`` arrangements are scanned.
    """
    rows = [cells[i * n : (i + 1) * n] for i in range(n)]
    best = None
    for p in permutations(range(n)):
        prows = [rows[i] for i in p]
        for q in permutations(range(n)):
            cand = _relabel([row[j] for row in prows for j in q])
            if best is None or cand < best:
                best = cand
    assert best is not None
    return best


def isotopy_classes(n: int) -> list[Hypercuboid]:
    """One lexicographically least representative per isotopy class.

    Every class meets the reduced squares, so only those are classified.
    """
    if not 1 <= n <= MAX_ORDER:
        raise RangeError(f"isotopy classification is capped at order {MAX_ORDER}")
    forms = {canonical_form(sq.cells, n) for sq in enumerate_latin_squares(n, reduced=True)}
    return [Hypercuboid(Shape(2, n, n), f) for f in sorted(forms)]


def apply_isotopy(cells: tuple[int, ...], n: int, rows: tuple[int, ...], cols: tuple[int, ...], syms: tuple[int, ...]) -> tuple[int, ...]:
    """Permute rows, columns and symbols (permutations given 0-based)."""
    return tuple(syms[cells[rows[i] * n + cols[j]] - 1] + 1 for i in range(n) for j in range(n))


def naive_find_layer(C: AnySetArray, forced: PartialAssignment | dict | None = None) -> SolveOutcome[Layer]:
    """Depth-first search in cell order with ascending symbols; the only
    pruning is rejecting a symbol already present on a line through the cell."""
    d, n = C.d, C.n
    coords = list(product(range(n), repeat=d))
    pinned = {tuple(c): s for c, s in PartialAssignment.of(forced)}
    for c, s in pinned.items():
        if s not in C.cells[coords.index(c)]:
            return SolveOutcome(Status.INFEASIBLE)
    chosen: dict[tuple[int, ...], int] = {}
    nodes = 0

    def clashes(coord: tuple[int, ...], s: int) -> bool:
        for other, t in chosen.items():
            if t == s and sum(a != b for a, b in zip(coord, other)) == 1:
                return True
        return False

    def go(pos: int) -> bool:
        nonlocal nodes
        if pos == len(coords):
            return True
        coord = coords[pos]
        options = [pinned[coord]] if coord in pinned else list(C.cells[pos])
        for s in options:
            nodes += 1
            if clashes(coord, s):
                continue
            chosen[coord] = s
            if go(pos + 1):
                return True
            del chosen[coord]
        return False

    if go(0):
        return SolveOutcome(Status.FEASIBLE, Layer(d, n, tuple(chosen[c] for c in coords)), {"nodes": nodes})
    return SolveOutcome(Status.INFEASIBLE, None, {"nodes": nodes})
