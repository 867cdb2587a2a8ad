"""Task cost estimates, bottom-up cost propagation and the consistency test"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from model.costs import INFINITE
from model.tasks import Task


class UpdateStatus(Enum):
    CONSISTENT = "consistent"
    INCONSISTENT = "inconsistent"


@dataclass
class CostUpdateResult:
    """Outcome of update_costs; at is the first task that failed the consistency test"""
    status: UpdateStatus
    at: Optional[Task] = None
    recomputed: int = 0

    @property
    def consistent(self) -> bool:
        return self.status is UpdateStatus.CONSISTENT


def best_alternative(task: Task) -> float:
    """Cheapest estimate among the instances not chosen"""
    if not task.candidates:
        return INFINITE
    return min(task.candidates.values())


def heuristic_cost(task: Task) -> float:
    """Current estimate for a task.

    Unexpanded tasks cost 0. An expanded but uninstantiated task costs its
    cheapest candidate, INFINITE if it has none. An instantiated compound task
    costs the cheaper of its committed decomposition and its best alternative;
    an instantiated primitive task costs its action.
    """
    if task.chosen is None:
        if task.candidates is None:
            return 0.0
        return best_alternative(task)
    if task.is_primitive:
        return task.committed()
    return min(task.committed(), best_alternative(task))


def is_consistent(task: Task) -> bool:
    """Chosen instance is no dearer than any untried alternative; ties keep the incumbent"""
    if task.chosen is None:
        return True
    return task.committed() <= best_alternative(task)


def update_costs(task: Task) -> CostUpdateResult:
    """Refresh the estimate of task, then of each ancestor, stopping at the first inconsistency"""
    task.cost = heuristic_cost(task)
    recomputed = 0
    node = task
    while True:
        if not is_consistent(node):
            return CostUpdateResult(UpdateStatus.INCONSISTENT, node, recomputed)
        parent = node.parent
        if parent is None:
            return CostUpdateResult(UpdateStatus.CONSISTENT, None, recomputed)
        parent.cost = heuristic_cost(parent)
        recomputed += 1
        node = parent
