"""Seeded generation of Latin squares, hypercuboids and realisable arrays.

All randomness comes from :class:`SplitMix64`, so outputs are identical on
every platform for a given seed.  Only the Latin-square walk targets the
uniform distribution; hypercuboids of dimension 3 and up are grown layer by
layer (or cut from a composed hypercube when nearly full) and are *not*
uniform.  The set arrays produced are always realisable, being unused-symbol
arrays of some hypercuboid.
"""

from __future__ import annotations

from typing import Iterator

from .construct import unused_array
from .core import Hypercuboid, SetArray, Shape, SolveOutcome, Status, validate_hypercuboid
from .solve.budget import Budget, BudgetExhausted, Tracker
from .solve.exact_cover import iter_layers

MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 (Steele, Lea and Flood): golden-ratio increment, then the
    ``0xBF58476D1CE4E5B9`` / ``0x94D049BB133111EB`` finaliser."""

    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - (1 << 64) % bound
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def shuffle(self, seq: list) -> None:
        for i in range(len(seq) - 1, 0, -1):
            j = self.below(i + 1)
            seq[i], seq[j] = seq[j], seq[i]

    def choice(self, seq):
        return seq[self.below(len(seq))]


def derive_seed(seed: int, index: int) -> int:
    """Independent child seed for the ``index``-th item of a batch."""
    return SplitMix64(seed ^ ((index * 0xD1B54A32D192ED03) & MASK64)).next_u64()


def jm_steps(n: int) -> int:
    return 2 * n**3


def random_latin_square(n: int, seed: int) -> Hypercuboid:
    """Jacobson-Matthews walk from the cyclic square, stopped after
    ``2 n^3`` visits to proper squares."""
    if n < 1:
        raise ValueError("order must be positive")
    rng = SplitMix64(seed)
    nn = n * n
    # incidence cube, index r*n^2 + c*n + s, values in {-1, 0, 1}
    cube = [0] * (n * nn)
    for r in range(n):
        for c in range(n):
            cube[r * nn + c * n + (r + c) % n] = 1

    def pick(line: list[int], bit: int) -> int:
        # the line holds exactly two 1s next to the improper cell
        first = line.index(1)
        return line.index(1, first + 1) if bit else first

    improper: tuple[int, int, int] | None = None
    proper_visits = 0
    target = jm_steps(n) if n > 1 else 0
    below = rng.below
    while proper_visits < target:
        if improper is None:
            # uniform zero cell: any (r, c) and any symbol other than its own
            x = below(nn * (n - 1))
            rc, s = divmod(x, n - 1)
            r, c = divmod(rc, n)
            rc = r * nn + c * n
            s1 = cube[rc : rc + n].index(1)
            if s >= s1:
                s += 1
            r1 = cube[c * n + s :: nn].index(1)
            c1 = cube[r * nn + s : (r + 1) * nn : n].index(1)
        else:
            r, c, s = improper
            rc = r * nn + c * n
            bits = rng.next_u64()
            r1 = pick(cube[c * n + s :: nn], bits & 1)
            c1 = pick(cube[r * nn + s : (r + 1) * nn : n], bits >> 1 & 1)
            s1 = pick(cube[rc : rc + n], bits >> 2 & 1)
        a, a1 = r * nn, r1 * nn
        b, b1 = c * n, c1 * n
        cube[a + b + s] += 1
        cube[a + b1 + s1] += 1
        cube[a1 + b + s1] += 1
        cube[a1 + b1 + s] += 1
        cube[a + b + s1] -= 1
        cube[a + b1 + s] -= 1
        cube[a1 + b + s] -= 1
        cube[a1 + b1 + s1] -= 1
        if cube[a1 + b1 + s1] < 0:
            improper = (r1, c1, s1)
        else:
            improper = None
            proper_visits += 1

    cells = tuple(cube[r * nn + c * n : r * nn + c * n + n].index(1) + 1 for r in range(n) for c in range(n))
    H = Hypercuboid(Shape(2, n, n), cells)
    assert validate_hypercuboid(H)
    return H


def _grow(d: int, n: int, k: int, rng: SplitMix64, tracker: Tracker) -> Iterator[list[tuple[int, ...]]]:
    full = (1 << n) - 1
    start = (full,) * n ** (d - 1)

    def rec(layers: list[tuple[int, ...]], unused: tuple[int, ...]) -> Iterator[list[tuple[int, ...]]]:
        if len(layers) == k:
            yield layers
            return
        for cells in iter_layers(d - 1, n, unused, tracker, rng=rng):
            rest = tuple(m & ~(1 << (s - 1)) for m, s in zip(unused, cells))
            yield from rec(layers + [cells], rest)

    yield from rec([], start)


def random_latin_hypercube(d: int, n: int, seed: int) -> Hypercuboid:
    """A Latin hypercube composed from random Latin squares.

    ``C[x, l] = A[G(x), l]`` with ``A`` a walk-sampled square and ``G`` a
    random hypercube of dimension ``d - 1`` built the same way.  Each line
    of ``C`` is a line of ``G`` or a row or column of ``A`` pushed through a
    bijection, so ``C`` is Latin.  The family is far from all hypercubes.
    """
    if d < 1 or n < 1:
        raise ValueError("dimension and order must be positive")
    rng = SplitMix64(seed)
    if d == 1:
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        return Hypercuboid(Shape(1, n, n), tuple(perm))
    if d == 2:
        return random_latin_square(n, rng.next_u64())
    A = random_latin_square(n, rng.next_u64()).cells
    G = random_latin_hypercube(d - 1, n, rng.next_u64()).cells
    cells = tuple(A[(g - 1) * n + l] for g in G for l in range(n))
    H = Hypercuboid(Shape(d, n, n), cells)
    assert validate_hypercuboid(H)
    return H


class _Restart(Exception):
    pass


class _Attempt(Tracker):
    """Counts nodes of one attempt against ``cap`` and forwards every tick to
    the caller's tracker, whose budget stays authoritative."""

    def __init__(self, parent: Tracker, cap: int) -> None:
        super().__init__(None)
        self.parent = parent
        self.cap = cap

    def tick(self) -> None:
        self.parent.tick()
        self.nodes += 1
        if self.nodes > self.cap:
            raise _Restart


RESTART_NODES = 4096


def random_hypercuboid(d: int, n: int, k: int, seed: int, budget: Budget | None = None, *, tracker: Tracker | None = None) -> SolveOutcome[Hypercuboid]:
    """Grow ``k`` layers, each a randomly ordered layer search on what is
    left, backtracking over earlier layers on a dead end.  Depths ``n - 1``
    and ``n`` in dimension 3 and up are cut from :func:`random_latin_hypercube`
    instead.

    An attempt that spends more than its node allowance is abandoned and the
    next attempt starts afresh from a derived seed; allowances double, so the
    procedure always terminates.  The result is some member of the class, not
    a uniform one.
    """
    shape = Shape(d, n, k)
    tr = tracker or Tracker(budget)
    if d >= 3 and k >= n - 1 and n > 2:
        # growing the last layers by search dead-ends too often; every
        # hypercuboid this deep is a prefix of some hypercube anyway
        H = random_latin_hypercube(d, n, seed)
        cells = tuple(c for base in range(n ** (d - 1)) for c in H.cells[base * n : base * n + k])
        return SolveOutcome(Status.FEASIBLE, Hypercuboid(shape, cells), tr.stats(seed=seed, attempts=0))
    layers = None
    attempt = 0
    try:
        while True:
            rng = SplitMix64(seed if attempt == 0 else derive_seed(seed, attempt))
            cap = RESTART_NODES << min(attempt, 40)
            try:
                layers = next(_grow(d, n, k, rng, _Attempt(tr, cap)), None)
                break
            except _Restart:
                attempt += 1
    except BudgetExhausted:
        return SolveOutcome(Status.UNKNOWN, None, tr.stats(seed=seed, attempts=attempt + 1))
    if layers is None:
        return SolveOutcome(Status.INFEASIBLE, None, tr.stats(seed=seed, attempts=attempt + 1))
    cells = [0] * (n ** (d - 1) * k)
    for j, layer in enumerate(layers):
        for base, s in enumerate(layer):
            cells[base * k + j] = s
    H = Hypercuboid(shape, tuple(cells))
    if not validate_hypercuboid(H):
        raise RuntimeError("sampled hypercuboid does not validate")
    return SolveOutcome(Status.FEASIBLE, H, tr.stats(seed=seed, attempts=attempt + 1))


def random_realisable_array(d: int, n: int, k: int, seed: int, budget: Budget | None = None) -> SolveOutcome[SetArray]:
    """Unused-symbol array of a random ``(d+1)``-dimensional hypercuboid of
    depth ``n - k``; an ``(n^d, k)``-array that is realisable by construction."""
    out = random_hypercuboid(d + 1, n, n - k, seed, budget)
    A = unused_array(out.witness) if out.feasible else None
    return SolveOutcome(out.status, A, out.stats)
