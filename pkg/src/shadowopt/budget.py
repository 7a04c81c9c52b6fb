"""Copy-budget accounting shared by acquisition and the cost evaluators."""
from __future__ import annotations

from dataclasses import dataclass, field


class BudgetExhaustedError(RuntimeError):
    """Raised when a spend would exceed the configured copy budget."""


@dataclass
class BudgetLedger:
    """Counts consumed copies of the unknown state, split by phase.

    The count is monotone non-decreasing; a spend that would exceed ``limit``
    raises before consuming anything.
    """

    limit: int | None = None
    copies_consumed: int = 0
    breakdown: dict[str, int] = field(default_factory=dict)

    def spend(self, phase: str, amount: int) -> None:
        if amount < 0:
            raise ValueError("cannot spend a negative number of copies")
        if self.limit is not None and self.copies_consumed + amount > self.limit:
            raise BudgetExhaustedError(
                f"budget of {self.limit} copies exhausted "
                f"({self.copies_consumed} consumed, {amount} requested)"
            )
        self.copies_consumed += amount
        self.breakdown[phase] = self.breakdown.get(phase, 0) + amount

    def remaining(self) -> int | None:
        return None if self.limit is None else self.limit - self.copies_consumed
