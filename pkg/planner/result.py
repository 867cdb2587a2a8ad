"""Planning outcomes"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from model.belief import BeliefState
from model.costs import INFINITE
from model.logic import Literal, State
from model.plans import ConditionalPlan, PathKey

from .context import SearchStats


class PlanStatus(Enum):
    PLAN = "plan"
    FAILURE = "failure"


@dataclass(frozen=True)
class TaskEstimate:
    """Largest estimate a compound task reached from one origin.

    agenda starts with the task itself, followed by the heads that were open
    behind it when it became current.
    """
    head: Literal
    state: State
    beliefs: Tuple[BeliefState, ...]
    agenda: Tuple[Literal, ...]
    estimate: float


@dataclass
class PlanResult:
    """Either a plan with its worst-case cost and path probabilities, or a failure with a reason"""
    status: PlanStatus
    plan: Optional[ConditionalPlan] = None
    cost: float = INFINITE
    probability: Dict[PathKey, float] = field(default_factory=dict)
    reason: str = ""
    stats: SearchStats = field(default_factory=SearchStats)
    estimates: List[TaskEstimate] = field(default_factory=list)

    @property
    def solved(self) -> bool:
        return self.status is PlanStatus.PLAN


@dataclass(frozen=True)
class SearchOutcome:
    """Result of one recursive step: a subplan, or the value that bounded the failure"""
    plan: Optional[ConditionalPlan]
    value: float

    @property
    def ok(self) -> bool:
        return self.plan is not None

    @classmethod
    def failure(cls, value: float) -> "SearchOutcome":
        return cls(None, value)
