"""Searches for noncompletable or nonextendible hypercuboids at desk scale.

Exhaustive mode fixes the first layer up to symmetry and enumerates the
remaining layers by backtracking:

* ``d = 3``: the first layer runs over one representative per isotopy class
  of Latin squares (stored for ``n <= 5``).  Permuting rows, columns and
  symbols of every layer at once preserves completability and extendibility.
* other ``d``: the first line of the first layer is fixed to ``1..n``
  (symbol relabelling).
* layers ``2..k`` can be permuted freely, so they are required to be in
  increasing lexicographic order.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator

from ..construct import from_layers
from ..core import Hypercuboid, Layer, SolveOutcome, Status, validate_hypercuboid
from ..errors import RangeError
from .budget import Budget, BudgetExhausted, Tracker
from .exact_cover import iter_layers
from .isotopy_data import REPRESENTATIVES
from .layers import completable_masks, extendible_masks, is_completable, is_extendible


class Kind(str, enum.Enum):
    NC = "NC"  # noncompletable
    NE = "NE"  # nonextendible


def _full(d: int, n: int) -> tuple[int, ...]:
    return ((1 << n) - 1,) * n ** (d - 1)


def _remove(masks: tuple[int, ...], cells: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(m & ~(1 << (s - 1)) for m, s in zip(masks, cells))


def first_layers(d: int, n: int, tracker: Tracker) -> Iterator[tuple[int, ...]]:
    if d == 3:
        if n not in REPRESENTATIVES:
            raise RangeError(f"exhaustive search at d=3 has isotopy data only for n <= {max(REPRESENTATIVES)}")
        yield from REPRESENTATIVES[n]
        return
    if d == 1:
        yield (1,)
        return
    # first line along the leading axis is 1..n
    stride = n ** (d - 2)
    pinned = {i * stride: i + 1 for i in range(n)}
    yield from iter_layers(d - 1, n, _full(d, n), tracker, pinned)


def enumerate_cuboids(d: int, n: int, k: int, tracker: Tracker) -> Iterator[tuple[list[tuple[int, ...]], tuple[int, ...]]]:
    """Yield ``(layers, unused masks)`` for every cuboid up to symmetry."""

    def grow(layers: list[tuple[int, ...]], unused: tuple[int, ...]):
        if len(layers) == k:
            yield layers, unused
            return
        for cells in iter_layers(d - 1, n, unused, tracker):
            if len(layers) >= 2 and cells < layers[-1]:
                continue
            yield from grow(layers + [cells], _remove(unused, cells))

    if k == 0:
        yield [], _full(d, n)
        return
    for first in first_layers(d, n, tracker):
        yield from grow([first], _remove(_full(d, n), first))


def _is_bad(kind: Kind, d: int, n: int, k: int, unused: tuple[int, ...], tracker: Tracker) -> bool:
    if kind is Kind.NC:
        return not completable_masks(d - 1, n, n - k, unused, tracker)
    return not extendible_masks(d - 1, n, unused, tracker)


def _shortcut(kind: Kind, n: int, k: int) -> str | None:
    if k == n - 1:
        return "depth n-1 is always completable"
    if k == 1:
        return "one layer is completed by cyclic development"
    return None


def _worker(args: tuple[Kind, int, int, int, tuple[int, ...], Budget]) -> tuple[bool | None, int]:
    kind, d, n, k, unused, budget = args
    tr = Tracker(budget)
    try:
        return _is_bad(kind, d, n, k, unused, tr), tr.nodes
    except BudgetExhausted:
        return None, tr.nodes


def _witness(layers: list[tuple[int, ...]], d: int, n: int) -> Hypercuboid:
    return from_layers([Layer(d - 1, n, cells) for cells in layers])


def _confirm(kind: Kind, H: Hypercuboid) -> int:
    """Re-prove the witness from scratch; returns the proof's node count."""
    if not validate_hypercuboid(H):
        raise RuntimeError("search witness is not a Latin hypercuboid")
    check = is_completable(H) if kind is Kind.NC else is_extendible(H)
    if not check.infeasible:
        raise RuntimeError("search witness failed re-verification")
    return check.nodes


def search(
    kind: Kind | str,
    d: int,
    n: int,
    k: int,
    mode: str = "exhaustive",
    seed: int = 0,
    budget: Budget | None = None,
    *,
    shortcuts: bool = True,
    max_samples: int = 1000,
    workers: int = 1,
) -> SolveOutcome[Hypercuboid]:
    """Look for a hypercuboid in the class ``(d, n, k)`` that is not
    completable (``NC``) or not extendible (``NE``).

    ``INFEASIBLE`` is returned only by exhaustive mode (or a proven shortcut)
    and means no such hypercuboid exists.  Random mode can only find witnesses
    or give up with ``UNKNOWN``.
    """
    kind = Kind(kind)
    if not 1 <= k < n:
        raise RangeError(f"search needs 1 <= k < n, got k={k}, n={n}")
    if d < 1:
        raise RangeError("dimension must be positive")
    tr = Tracker(budget)
    if shortcuts and (reason := _shortcut(kind, n, k)):
        return SolveOutcome(Status.INFEASIBLE, None, tr.stats(shortcut=reason, candidates=0))
    if mode == "exhaustive":
        if workers > 1:
            return _search_parallel(kind, d, n, k, tr, workers)
        return _search_exhaustive(kind, d, n, k, tr)
    if mode == "random":
        return _search_random(kind, d, n, k, seed, tr, max_samples)
    raise RangeError(f"unknown search mode {mode!r}")


def _found(kind: Kind, layers, d: int, n: int, tr: Tracker, candidates: int, **extra) -> SolveOutcome[Hypercuboid]:
    H = _witness(layers, d, n)
    proof = _confirm(kind, H)
    return SolveOutcome(Status.FEASIBLE, H, tr.stats(candidates=candidates, proof_nodes=proof, **extra))


def _search_exhaustive(kind: Kind, d: int, n: int, k: int, tr: Tracker) -> SolveOutcome[Hypercuboid]:
    candidates = 0
    try:
        for layers, unused in enumerate_cuboids(d, n, k, tr):
            candidates += 1
            if _is_bad(kind, d, n, k, unused, tr):
                return _found(kind, layers, d, n, tr, candidates)
    except BudgetExhausted:
        return SolveOutcome(Status.UNKNOWN, None, tr.stats(candidates=candidates))
    return SolveOutcome(Status.INFEASIBLE, None, tr.stats(candidates=candidates))


def _search_parallel(kind: Kind, d: int, n: int, k: int, tr: Tracker, workers: int, batch: int = 512) -> SolveOutcome[Hypercuboid]:
    """Candidates are generated here and tested in worker processes.

    Verdicts match the serial search; the witness is the first bad candidate
    in enumeration order, node counts differ.
    """
    candidates = 0
    remaining = tr.budget

    def pending() -> Iterator[list]:
        chunk = []
        for item in enumerate_cuboids(d, n, k, tr):
            chunk.append(item)
            if len(chunk) == batch:
                yield chunk
                chunk = []
        if chunk:
            yield chunk

    try:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for chunk in pending():
                tr.check_time()
                left = None if remaining.max_nodes is None else max(0, remaining.max_nodes - tr.nodes)
                sub = Budget(left, None if remaining.max_seconds is None else max(0.0, remaining.max_seconds - tr.elapsed))
                args = [(kind, d, n, k, unused, sub) for _, unused in chunk]
                results = list(pool.map(_worker, args, chunksize=max(1, len(args) // (4 * workers))))
                for (layers, _), (bad, nodes) in zip(chunk, results):
                    candidates += 1
                    tr.nodes += nodes
                    if bad is None:
                        raise BudgetExhausted
                    if bad:
                        return _found(kind, layers, d, n, tr, candidates, workers=workers)
                if remaining.max_nodes is not None and tr.nodes > remaining.max_nodes:
                    raise BudgetExhausted
    except BudgetExhausted:
        return SolveOutcome(Status.UNKNOWN, None, tr.stats(candidates=candidates, workers=workers))
    return SolveOutcome(Status.INFEASIBLE, None, tr.stats(candidates=candidates, workers=workers))


def _search_random(kind: Kind, d: int, n: int, k: int, seed: int, tr: Tracker, max_samples: int) -> SolveOutcome[Hypercuboid]:
    from ..construct import unused_masks
    from ..sample import derive_seed, random_hypercuboid

    samples = 0
    try:
        for i in range(max_samples):
            out = random_hypercuboid(d, n, k, derive_seed(seed, i), tracker=tr)
            if out.unknown:
                raise BudgetExhausted
            samples += 1
            H = out.witness
            if _is_bad(kind, d, n, k, unused_masks(H), tr):
                layers = [L.cells for L in H.layers()]
                return _found(kind, layers, d, n, tr, samples, sample_index=i)
    except BudgetExhausted:
        pass
    return SolveOutcome(Status.UNKNOWN, None, tr.stats(candidates=samples))


def search_noncompletable(d: int, n: int, k: int, mode: str = "exhaustive", seed: int = 0, budget: Budget | None = None, **kwargs) -> SolveOutcome[Hypercuboid]:
    return search(Kind.NC, d, n, k, mode, seed, budget, **kwargs)


def search_nonextendible(d: int, n: int, k: int, mode: str = "exhaustive", seed: int = 0, budget: Budget | None = None, **kwargs) -> SolveOutcome[Hypercuboid]:
    return search(Kind.NE, d, n, k, mode, seed, budget, **kwargs)


@dataclass(frozen=True)
class ThresholdResult:
    """Outcome of scanning depths ``1..kmax``.

    ``status`` is ``FEASIBLE`` with ``k`` and ``witness`` set when some depth
    has a bad hypercuboid, ``INFEASIBLE`` when every depth up to ``kmax`` was
    cleared (all good), and ``UNKNOWN`` when the budget ran out; ``decided``
    is the largest depth fully settled.
    """

    status: Status
    k: int | None
    witness: Hypercuboid | None
    decided: int
    per_depth: list[dict[str, Any]] = field(default_factory=list)

    @property
    def all_good(self) -> bool:
        return self.status is Status.INFEASIBLE


def compute_threshold(
    kind: Kind | str,
    d: int,
    n: int,
    kmax: int,
    budget: Budget | None = None,
    *,
    shortcuts: bool = True,
    workers: int = 1,
    on_depth: Callable[[int, SolveOutcome], None] | None = None,
) -> ThresholdResult:
    """Smallest depth ``k <= kmax`` with a noncompletable/nonextendible
    hypercuboid, by exhaustive search at each depth in turn."""
    kind = Kind(kind)
    if not 1 <= kmax < n:
        raise RangeError(f"kmax must lie in [1, {n - 1}]")
    tr = Tracker(budget)
    rows = []
    decided = 0
    for k in range(1, kmax + 1):
        left = budget and Budget(
            None if budget.max_nodes is None else max(0, budget.max_nodes - tr.nodes),
            None if budget.max_seconds is None else max(0.0, budget.max_seconds - tr.elapsed),
        )
        out = search(kind, d, n, k, "exhaustive", budget=left, shortcuts=shortcuts, workers=workers)
        tr.nodes += out.nodes
        rows.append({"k": k, "status": out.status.value, **out.stats})
        if on_depth:
            on_depth(k, out)
        if out.feasible:
            return ThresholdResult(Status.FEASIBLE, k, out.witness, k, rows)
        if out.unknown:
            return ThresholdResult(Status.UNKNOWN, None, None, decided, rows)
        decided = k
    return ThresholdResult(Status.INFEASIBLE, None, None, decided, rows)
