"""Exhaustive minimum-cost enumeration used as ground truth"""
import time
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from config import PlannerConfig
from logging_config import get_logger
from model.belief import BeliefState
from model.costs import INFINITE, add_costs
from model.errors import BudgetExceeded
from model.logic import Literal, State
from model.operators import TaskKind, apply_effects
from model.plans import Branch, BranchNode, ConditionalPlan
from model.problem import Problem
from planner.grounding import Grounder
from planner.result import TaskEstimate
from planner.search import HQCPPlanner

logger = get_logger(__name__)

DEFAULT_NODE_BUDGET = 1_000_000

Solution = Tuple[float, Optional[ConditionalPlan]]


@dataclass
class OracleResult:
    best_cost: float
    best_plan: Optional[ConditionalPlan]
    plans_enumerated: int
    nodes: int = 0


@dataclass(frozen=True)
class AdmissibilityViolation:
    task: str
    state: str
    heuristic: float
    optimal: float


class ExhaustiveOracle:
    """Enumerates every decomposition in frontmost-task order without cost ordering or pruning"""

    def __init__(self, problem: Problem, node_budget: int = DEFAULT_NODE_BUDGET, allow_null_branches: bool = False):
        self.problem = problem
        self.node_budget = node_budget
        self.allow_null_branches = allow_null_branches
        self.grounder = Grounder(problem)
        self.nodes = 0
        self.plans_enumerated = 0

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise BudgetExceeded(f"exhaustive enumeration passed {self.node_budget} nodes")

    def optimum(self, state: State, beliefs: Tuple[BeliefState, ...], agenda: Tuple[Literal, ...]) -> float:
        """Cost of solve under a fresh node budget"""
        self.nodes = 0
        return self.solve(state, beliefs, agenda)[0]

    def solve(self, state: State, beliefs: Tuple[BeliefState, ...], agenda: Tuple[Literal, ...]) -> Solution:
        """Minimum worst-case cost of the agenda from state, with its plan"""
        self._tick()
        if not agenda:
            self.plans_enumerated += 1
            return 0.0, ConditionalPlan()
        head, rest = agenda[0], agenda[1:]
        kind = self.problem.domain.task_kind(head)
        best: Solution = (INFINITE, None)

        if kind is TaskKind.ACTUATION:
            for action in self.grounder.actuation_instances(head, state):
                cost, plan = self.solve(apply_effects(action, state), beliefs, rest)
                total = add_costs(action.cost, cost)
                if total < best[0]:
                    best = (total, plan.prepend(action))

        elif kind is TaskKind.COMPOUND:
            for method in self.grounder.method_instances(head, state):
                cost, plan = self.solve(state, beliefs, method.subtasks + rest)
                total = add_costs(method.cost, cost)
                if total < best[0]:
                    best = (total, plan.with_method(method))

        else:
            for action, belief in self.grounder.sensing_instances(head, state, beliefs):
                remaining = tuple(b for b in beliefs if b != belief)
                worst = 0.0
                branches: List[Branch] = []
                for alternative in belief.alternatives:
                    cost, plan = self.solve(state.union(alternative.fragment), remaining, rest)
                    if cost == INFINITE and self.allow_null_branches:
                        cost, plan = 0.0, None
                    elif cost == INFINITE:
                        worst = INFINITE
                        break
                    worst = max(worst, cost)
                    branches.append(Branch(alternative.fragment, alternative.probability, plan))
                total = add_costs(action.cost, worst)
                if total < best[0]:
                    best = (total, ConditionalPlan((BranchNode(action, tuple(branches)),)))
        return best


def oracle_plan(problem: Problem, node_budget: int = DEFAULT_NODE_BUDGET, allow_null_branches: bool = False) -> OracleResult:
    """Exact minimum worst-case cost by exhaustive enumeration"""
    oracle = ExhaustiveOracle(problem, node_budget, allow_null_branches)
    started = time.perf_counter()
    cost, plan = oracle.solve(problem.s0, problem.beliefs, problem.tasks)
    logger.info(
        "Oracle enumeration completed",
        problem=problem.name,
        best_cost=cost,
        plans_enumerated=oracle.plans_enumerated,
        nodes=oracle.nodes,
        elapsed_seconds=round(time.perf_counter() - started, 3),
        event_type="oracle_complete",
    )
    return OracleResult(cost, plan, oracle.plans_enumerated, oracle.nodes)


def check_admissibility(problem: Problem, node_budget: int = DEFAULT_NODE_BUDGET, allow_null_branches: bool = False,
                        estimates: Optional[Sequence[TaskEstimate]] = None) -> List[AdmissibilityViolation]:
    """Compare the planner's estimate of each compound task with the exact optimum.

    Estimates come from a planning run that records them after every consistent
    cost update, unless given. An estimate is admissible when it does not exceed
    the minimum worst-case cost of the agenda the task headed when it became
    current, from that state with the same pending beliefs. Each optimum gets
    its own node budget.
    """
    if estimates is None:
        config = PlannerConfig(allow_null_branches=allow_null_branches, record_estimates=True)
        estimates = HQCPPlanner(problem, config).plan().estimates
    oracle = ExhaustiveOracle(problem, node_budget, allow_null_branches)
    violations: List[AdmissibilityViolation] = []
    for entry in estimates:
        exact = oracle.optimum(entry.state, entry.beliefs, entry.agenda)
        if entry.estimate > exact:
            violation = AdmissibilityViolation(str(entry.head), entry.state.canonical(), entry.estimate, exact)
            logger.warning("Heuristic overestimates task cost", task=violation.task,
                           heuristic=entry.estimate, optimal=exact, event_type="admissibility_violation")
            violations.append(violation)
    logger.info("Admissibility check completed", problem=problem.name, estimates=len(estimates),
                violations=len(violations), event_type="admissibility_complete")
    return violations
