"""Layer search as exact cover.

A layer of an ``n^d`` array of symbol sets picks one symbol per cell so that
each symbol appears exactly once on every line.  Items are the cells and the
``(line, symbol)`` pairs; the option for ``(cell, s)`` covers the cell and one
``(line, s)`` item per line through the cell.  Search is Algorithm X over
dict-free set columns: the branching item is the one with fewest live options
(lowest item id on ties) and options are tried in ascending id, which for a
cell item means ascending symbol.
"""

from __future__ import annotations

from typing import Iterator, Protocol

from ..core import cube_lines
from .budget import Tracker


class Shuffler(Protocol):
    def shuffle(self, seq: list[int]) -> None: ...


def _options(d: int, n: int, masks: tuple[int, ...]) -> tuple[list[set[int]], dict[int, tuple[int, ...]]]:
    _, through = cube_lines(d, n)
    ncells = len(masks)
    cols: list[set[int]] = [set() for _ in range(ncells + len(cube_lines(d, n)[0]) * n)]
    rows: dict[int, tuple[int, ...]] = {}
    for c, m in enumerate(masks):
        s = 0
        while m:
            if m & 1:
                r = c * n + s
                items = (c,) + tuple(ncells + lid * n + s for lid in through[c])
                rows[r] = items
                for it in items:
                    cols[it].add(r)
            m >>= 1
            s += 1
    return cols, rows


def iter_layers(
    d: int,
    n: int,
    masks: tuple[int, ...],
    tracker: Tracker,
    forced: dict[int, int] | None = None,
    rng: Shuffler | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield every layer of ``masks`` (each at most once) as 1-based symbols.

    ``forced`` maps linear cell index to a symbol that must be chosen; the
    caller has already checked membership.  With ``rng`` the option order at
    every branch is shuffled.
    """
    cols, rows = _options(d, n, masks)
    live = set(range(len(cols)))
    solution: list[int] = []

    def select(r: int) -> list[set[int]]:
        removed = []
        for j in rows[r]:
            for i in cols[j]:
                for k in rows[i]:
                    if k != j:
                        cols[k].discard(i)
            live.discard(j)
            removed.append(cols[j])
        return removed

    def deselect(r: int, removed: list[set[int]]) -> None:
        for j in reversed(rows[r]):
            cols[j] = removed.pop()
            live.add(j)
            for i in cols[j]:
                for k in rows[i]:
                    if k != j:
                        cols[k].add(i)

    for c, s in sorted((forced or {}).items()):
        r = c * n + (s - 1)
        if r not in rows or any(j not in live or r not in cols[j] for j in rows[r]):
            return
        select(r)
        solution.append(r)

    ncells = len(masks)

    def layer() -> tuple[int, ...]:
        out = [0] * ncells
        for r in solution:
            c, s = divmod(r, n)
            out[c] = s + 1
        return tuple(out)

    def search() -> Iterator[tuple[int, ...]]:
        if not live:
            yield layer()
            return
        best = -1
        size = 1 << 30
        for it in live:
            ln = len(cols[it])
            if ln < size or (ln == size and it < best):
                best, size = it, ln
                if ln == 0:
                    return
        options = sorted(cols[best])
        if rng is not None:
            rng.shuffle(options)
        for r in options:
            tracker.tick()
            removed = select(r)
            solution.append(r)
            yield from search()
            solution.pop()
            deselect(r, removed)

    yield from search()
