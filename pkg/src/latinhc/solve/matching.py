"""Completion of Latin rectangles one row at a time by bipartite matching."""

from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from ..construct import stack_unchecked, unused_masks
from ..core import Hypercuboid, Layer, validate_hypercuboid
from ..errors import ShapeError, ValidationError


def system_of_distinct_representatives(sets: list[int], n: int) -> list[int] | None:
    """One distinct symbol per bitmask in ``sets`` (1-based), or ``None``."""
    rows, cols = [], []
    for i, m in enumerate(sets):
        for s in range(n):
            if m >> s & 1:
                rows.append(i)
                cols.append(s)
    graph = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(len(sets), n))
    match = maximum_bipartite_matching(graph, perm_type="column")
    if (match < 0).any():
        return None
    return [int(s) + 1 for s in match]


def complete_rectangle(R: Hypercuboid) -> Hypercuboid:
    """Extend a ``k x n`` Latin rectangle to a Latin square.

    ``R`` is two-dimensional with the depth axis as rows, so ``R[c, r]`` is
    the symbol in row ``r``, column ``c``.  Each new row is a perfect matching
    between columns and their unused symbols; Hall's condition guarantees one
    exists, so a failure here is a bug rather than an input problem.
    """
    if R.d != 2:
        raise ShapeError("rectangle completion needs a two-dimensional hypercuboid")
    report = validate_hypercuboid(R)
    if not report:
        raise ValidationError(f"not a Latin rectangle: {report.violation}")
    H = R
    while H.k < H.n:
        row = system_of_distinct_representatives(list(unused_masks(H)), H.n)
        if row is None:
            raise AssertionError("no perfect matching for a Latin rectangle row")
        H = stack_unchecked(H, [Layer(1, H.n, tuple(row))])
    if not validate_hypercuboid(H):
        raise AssertionError("completed square does not validate")
    return H
