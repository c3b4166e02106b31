"""Explicit constructions: cyclic hypercubes, unused-symbol arrays,
complements, the three-block unavoidable array, the odd-order nonlayerable
array, dimension lifting and cyclic development."""

from __future__ import annotations

from itertools import product

from .core import (
    ConstraintArray,
    Hypercuboid,
    Layer,
    SetArray,
    Shape,
    SymbolSet,
    is_layer_of,
    mask_of,
)
from .errors import AllEqualError, NotALayerError, RangeError


def cyclic_hypercube(d: int, n: int) -> Hypercuboid:
    """``H[i_1..i_d] = i_1 + ... + i_d (mod n)``, 1-based coordinates, with
    residue 0 written as ``n``."""
    shape = Shape(d, n, n)
    cells = [(sum(c) + d - 1) % n + 1 for c in product(range(n), repeat=d)]
    return Hypercuboid(shape, tuple(cells))


def prefix(H: Hypercuboid, k: int) -> Hypercuboid:
    """The first ``k`` layers of ``H``."""
    if not 0 <= k <= H.k:
        raise RangeError(f"prefix depth {k} outside [0, {H.k}]")
    cells = []
    for base in range(H.n ** (H.d - 1)):
        cells.extend(H.cells[base * H.k : base * H.k + k])
    return Hypercuboid(Shape(H.d, H.n, k), tuple(cells))


def unused_masks(H: Hypercuboid) -> tuple[int, ...]:
    full = (1 << H.n) - 1
    k = H.k
    return tuple(
        full & ~mask_of(H.cells[base * k : base * k + k]) for base in range(H.n ** (H.d - 1))
    )


def unused_array(H: Hypercuboid) -> SetArray:
    """Per depth line of ``H``, the symbols it does not use yet."""
    return SetArray.from_masks(H.d - 1, H.n, H.n - H.k, unused_masks(H))


def complement(A: SetArray) -> SetArray:
    return SetArray(A.d, A.n, A.n - A.k, tuple(c.complement() for c in A.cells))


def pebody_array(a: int, b: int, c: int) -> ConstraintArray:
    """Block-diagonal array with blocks of sizes ``a, b, c``.

    Cell ``(i, j)`` holds the block's symbol set when ``i`` and ``j`` fall in
    the same block and is empty otherwise.  No Latin square avoids it.
    """
    if min(a, b, c) < 1:
        raise RangeError("block sizes must be positive")
    if a == b == c:
        raise AllEqualError(f"block sizes {a}, {b}, {c} are all equal")
    n = a + b + c
    block = [0] * a + [1] * b + [2] * c
    sets = [
        SymbolSet.of(n, range(1, a + 1)),
        SymbolSet.of(n, range(a + 1, a + b + 1)),
        SymbolSet.of(n, range(a + b + 1, n + 1)),
    ]
    empty = SymbolSet.empty(n)
    cells = [sets[block[i]] if block[i] == block[j] else empty for i in range(n) for j in range(n)]
    return ConstraintArray(2, n, tuple(cells))


def nonlayerable_array(n: int) -> SetArray:
    """An ``(n^2, (n-1)/2)``-array with no layer through ``n`` at cell (1,1).

    Only odd ``n >= 5`` is supported.  The auxiliary square ``b[i][j] = i+j-3
    (mod m+1)`` takes values in ``T = {m+1..n}`` via residue ``r -> m+1+r``.
    Cases are tried in order and the first match wins.
    """
    if n < 5 or n % 2 == 0:
        raise RangeError(f"nonlayerable_array needs odd n >= 5, got {n}")
    m = (n - 1) // 2
    S = set(range(1, m + 1))
    T = set(range(m + 1, n + 1))
    T_mid = T - {m + 1, n - 1}

    def b(i: int, j: int) -> int:
        return m + 1 + (i + j - 3) % (m + 1)

    def cell(i: int, j: int) -> set[int]:
        if i == 1 and j <= m:
            return (S | {n}) - {1}
        if 2 <= i <= m and j == 1:
            return (S | {n}) - {2}
        if 2 <= i <= m and 2 <= j <= m:
            return S
        if i == 1 and j >= m + 2:
            return (T | {1}) - {n, b(1, j - m)}
        if 2 <= i <= m and j == m + 1:
            return (T | {2}) - {n, b(i, 1)}
        if (i, j) == (1, m + 1) or (2 <= i <= m and j > m + 1):
            return T - {b(i, j - m)}
        if i + j == n and j <= m:
            return (T | {1}) - {n, b(i - m, j)}
        if i in T_mid and j == 1:
            return (T | {2}) - {n, b(i - m, j)}
        if (i, j) == (m + 1, 1) or (2 <= j <= m < i and i + j != n):
            return T - {b(i - m, j)}
        if m < i == j - 1:
            return (S | {n}) - {1}
        if i in T_mid and j == m + 1:
            return (S | {n}) - {2}
        if m < i == j:
            return T - {b(m + 1, j - m)}
        return S

    sets = [cell(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    return SetArray.from_sets(2, n, m, sets)


def lift(H: Hypercuboid, d2: int) -> Hypercuboid:
    """Add ``d2 - d`` leading cyclic coordinates.

    ``I[i_1..i_d2] = i_1 + ... + i_{d2-d} + H[i_{d2-d+1}..] (mod n)`` in
    1-based terms, so the slice with every new coordinate equal to ``n`` is
    ``H`` itself.
    """
    extra = d2 - H.d
    if extra < 0:
        raise RangeError(f"cannot lift dimension {H.d} down to {d2}")
    n = H.n
    cells = []
    for lead in product(range(n), repeat=extra):
        shift = sum(lead) + extra
        cells.extend((shift + s - 1) % n + 1 for s in H.cells)
    return Hypercuboid(Shape(d2, n, H.k), tuple(cells))


def leading_slice(I: Hypercuboid, d: int, index: int | None = None) -> Hypercuboid:
    """Fix the first ``I.d - d`` coordinates at ``index`` (default ``n - 1``,
    i.e. the 1-based coordinate ``n``)."""
    extra = I.d - d
    if extra < 0:
        raise RangeError(f"cannot slice dimension {I.d} to {d}")
    idx = I.n - 1 if index is None else index
    block = I.n ** (d - 1) * I.k
    offset = 0
    for _ in range(extra):
        offset = offset * I.n + idx
    start = offset * block
    return Hypercuboid(Shape(d, I.n, I.k), I.cells[start : start + block])


def cyclic_development(L: Layer) -> Hypercuboid:
    """Stack ``L, L+1, ..., L+n-1`` (symbols mod ``n``) into a hypercube of
    dimension ``d + 1``."""
    n = L.n
    cells = []
    for s in L.cells:
        cells.extend((s - 1 + j) % n + 1 for j in range(n))
    return Hypercuboid(Shape(L.d + 1, n, n), tuple(cells))


def stack(H: Hypercuboid, L: Layer) -> Hypercuboid:
    """Append ``L`` as layer ``k + 1`` of ``H``."""
    if L.d != H.d - 1 or L.n != H.n or H.k == H.n or not is_layer_of(L, unused_array(H)):
        raise NotALayerError("layer does not fit the unused symbols of the hypercuboid")
    return stack_unchecked(H, [L])


def stack_unchecked(H: Hypercuboid, layers: list[Layer]) -> Hypercuboid:
    k = H.k
    cells = []
    for base in range(H.n ** (H.d - 1)):
        cells.extend(H.cells[base * k : base * k + k])
        cells.extend(L.cells[base] for L in layers)
    return Hypercuboid(Shape(H.d, H.n, k + len(layers)), tuple(cells))


def from_layers(layers: list[Layer]) -> Hypercuboid:
    """Hypercuboid whose depth layers are ``layers`` (all of one shape)."""
    first = layers[0]
    return stack_unchecked(Hypercuboid.empty(first.d + 1, first.n), layers)
