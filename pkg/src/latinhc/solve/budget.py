from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Budget:
    """Search limits.  ``None`` means unlimited."""

    max_nodes: int | None = None
    max_seconds: float | None = None


UNLIMITED = Budget()


class BudgetExhausted(Exception):
    pass


class Tracker:
    """Mutable node counter shared by every stage of one search."""

    __slots__ = ("budget", "nodes", "start", "_deadline")

    def __init__(self, budget: Budget | None = None) -> None:
        self.budget = budget or UNLIMITED
        self.nodes = 0
        self.start = time.perf_counter()
        self._deadline = (
            None if self.budget.max_seconds is None else self.start + self.budget.max_seconds
        )

    def tick(self) -> None:
        self.nodes += 1
        limit = self.budget.max_nodes
        if limit is not None and self.nodes > limit:
            raise BudgetExhausted
        # wall-clock checks are rationed; they are the only nondeterminism
        if self._deadline is not None and not self.nodes & 255 and time.perf_counter() > self._deadline:
            raise BudgetExhausted

    def check_time(self) -> None:
        if self._deadline is not None and time.perf_counter() > self._deadline:
            raise BudgetExhausted

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.start

    def stats(self, **extra: Any) -> dict[str, Any]:
        return {"nodes": self.nodes, "elapsed": round(self.elapsed, 6), **extra}
