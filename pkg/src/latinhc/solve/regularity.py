"""Exact delta-regularity of a hypercuboid's unused-symbol array."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ..construct import unused_masks
from ..core import Coord, Hypercuboid, coord_of, cube_lines
from ..errors import DegenerateDepth


@dataclass(frozen=True)
class DeltaReport:
    """Least ``delta`` for which ``H`` is delta-regular, with a pair of line
    coordinates attaining it (``None`` when no adjacent pair exists)."""

    delta: Fraction
    pair: tuple[Coord, Coord] | None
    overlap: int | None = None


def regularity_term(n: int, k: int, overlap: int) -> Fraction:
    """``| n * overlap / (n - k)^2 - 1 |``."""
    return abs(Fraction(n * overlap, (n - k) ** 2) - 1)


def delta_regularity(H: Hypercuboid) -> DeltaReport:
    """Scan every line of the unused array once.

    The term is convex in the overlap size, so its maximum over all adjacent
    pairs is attained at the smallest or the largest overlap.
    """
    n, k = H.n, H.k
    if k == n:
        raise DegenerateDepth("delta-regularity divides by (n - k)^2")
    masks = unused_masks(H)
    ls, _ = cube_lines(H.d - 1, n)
    lo = hi = None
    for idx in ls:
        for a, b in combinations(idx, 2):
            ov = (masks[a] & masks[b]).bit_count()
            if lo is None or ov < lo[0]:
                lo = (ov, min(a, b), max(a, b))
            if hi is None or ov > hi[0]:
                hi = (ov, min(a, b), max(a, b))
    if lo is None:
        return DeltaReport(Fraction(0), None)
    ext = (n,) * (H.d - 1)
    best = max((regularity_term(n, k, e[0]), -e[1], -e[2], e) for e in (lo, hi))[3]
    ov, a, b = best
    return DeltaReport(regularity_term(n, k, ov), (coord_of(a, ext), coord_of(b, ext)), ov)


def delta_regularity_bruteforce(H: Hypercuboid) -> DeltaReport:
    """Direct double loop over all pairs of line coordinates."""
    n, k = H.n, H.k
    if k == n:
        raise DegenerateDepth("delta-regularity divides by (n - k)^2")
    ext = (n,) * (H.d - 1)
    U = [set(H.cells[b * k + j] for j in range(k)) for b in range(n ** (H.d - 1))]
    U = [set(range(1, n + 1)) - used for used in U]
    coords = [coord_of(i, ext) for i in range(len(U))]
    best: DeltaReport | None = None
    for i, p in enumerate(coords):
        for j in range(i + 1, len(coords)):
            q = coords[j]
            if sum(x != y for x, y in zip(p, q)) != 1:
                continue
            ov = len(U[i] & U[j])
            val = abs(Fraction(n, (n - k) ** 2) * ov - 1)
            if best is None or val > best.delta:
                best = DeltaReport(val, (p, q), ov)
    return best or DeltaReport(Fraction(0), None)
