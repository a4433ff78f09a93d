"""Registry the acceptance tests append to; conftest prints it at session end."""
from __future__ import annotations

RESULTS: list[tuple[int, str, bool, float, float]] = []


def record(num: int, label: str, ok: bool, elapsed: float, budget: float) -> None:
    RESULTS.append((num, label, ok, elapsed, budget))
