"""Cost-ordered forward decomposition with backtracking and sensing branches"""
import sys
import time
from typing import Any, Callable, Dict, List, Optional, Tuple

from config import PlannerConfig
from heuristics.engine import update_costs
from logging_config import get_logger, log_search_start, log_search_summary
from model.costs import INFINITE, add_costs
from model.errors import DepthExceeded
from model.operators import GroundAction, GroundMethod, TaskKind, apply_effects
from model.plans import Branch, BranchNode, ConditionalPlan, plan_cost, plan_probability
from model.problem import Problem
from model.tasks import BOUND_KEY, Instantiation, Task

from .context import SearchContext, backtrack
from .grounding import Grounder, SensingInstance
from .result import PlanResult, PlanStatus, SearchOutcome, TaskEstimate

logger = get_logger(__name__)

# Python frames per search level, with headroom.
FRAMES_PER_LEVEL = 5

Option = Tuple[str, float, Any]
Advance = Callable[[Task, Any, SearchContext, float, float, int], SearchOutcome]


class HQCPPlanner:
    """Minimum worst-case-cost contingent planner over a totally ordered agenda.

    Each decision point orders its applicable instances by value, the larger of
    the inherited value and committed cost plus instance cost. The chosen
    instance is committed only while update_costs finds the network consistent;
    the goal task's single alternative is the search bound, so a commitment whose
    value exceeds the bound is rejected there. Failed children back their value
    up and the next cheapest instance is tried.
    """

    def __init__(self, problem: Problem, config: Optional[PlannerConfig] = None):
        self.problem = problem
        self.config = config or PlannerConfig()
        self.grounder = Grounder(problem)
        self._estimates: Dict[Tuple, TaskEstimate] = {}

    def plan(self) -> PlanResult:
        log_search_start(logger, self.problem.name, len(self.problem.tasks), len(self.problem.beliefs))
        ctx = SearchContext.initial(self.problem)
        self._estimates = {}
        limit = FRAMES_PER_LEVEL * self.config.max_depth + 1000
        if sys.getrecursionlimit() < limit:
            sys.setrecursionlimit(limit)

        started = time.perf_counter()
        outcome = self._search(ctx, 0.0, INFINITE, 1)
        elapsed = time.perf_counter() - started

        if not outcome.ok:
            log_search_summary(logger, ctx.stats, None, elapsed)
            return PlanResult(
                status=PlanStatus.FAILURE,
                reason="no decomposition of the initial tasks exists",
                stats=ctx.stats,
                estimates=list(self._estimates.values()),
            )
        cost = plan_cost(outcome.plan).worst
        log_search_summary(logger, ctx.stats, cost, elapsed)
        return PlanResult(
            status=PlanStatus.PLAN,
            plan=outcome.plan,
            cost=cost,
            probability=plan_probability(outcome.plan),
            stats=ctx.stats,
            estimates=list(self._estimates.values()),
        )

    def _search(self, ctx: SearchContext, value: float, bound: float, depth: int) -> SearchOutcome:
        if depth > self.config.max_depth:
            raise DepthExceeded(f"search depth passed {self.config.max_depth}")
        ctx.depth = depth
        ctx.stats.nodes += 1
        ctx.stats.max_depth = max(ctx.stats.max_depth, depth)

        task = ctx.omega.current
        if task is None:
            return SearchOutcome(ConditionalPlan(), ctx.committed_cost())
        if self.config.trace:
            logger.debug("Expanding task", task=str(task.head), depth=depth, value=value, bound=bound)
        if task.kind is TaskKind.ACTUATION:
            return self.expand_actuation(task, ctx, value, bound, depth)
        if task.kind is TaskKind.SENSING:
            return self.expand_sensing(task, ctx, value, bound, depth)
        if self.config.record_estimates:
            task.origin = (ctx.s, tuple(ctx.bs), tuple(t.head for t in ctx.omega.agenda))
        return self.expand_compound(task, ctx, value, bound, depth)

    def expand_actuation(self, task: Task, ctx: SearchContext, value: float = 0.0,
                         bound: float = INFINITE, depth: int = 1) -> SearchOutcome:
        actions = self.grounder.actuation_instances(task.head, ctx.s)
        options = [(a.key, a.cost, a) for a in actions]
        return self._decide(ctx, options, value, bound, depth, self._apply_action)

    def expand_compound(self, task: Task, ctx: SearchContext, value: float = 0.0,
                        bound: float = INFINITE, depth: int = 1) -> SearchOutcome:
        methods = self.grounder.method_instances(task.head, ctx.s)
        options = [(m.key, m.cost, m) for m in methods]
        return self._decide(ctx, options, value, bound, depth, self._apply_method)

    def expand_sensing(self, task: Task, ctx: SearchContext, value: float = 0.0,
                       bound: float = INFINITE, depth: int = 1) -> SearchOutcome:
        instances = self.grounder.sensing_instances(task.head, ctx.s, ctx.bs)
        options = [(action.key, action.cost, (action, belief)) for action, belief in instances]
        return self._decide(ctx, options, value, bound, depth, self._branch)

    def _decide(self, ctx: SearchContext, options: List[Option], value: float, bound: float,
                depth: int, advance: Advance) -> SearchOutcome:
        if not options:
            return SearchOutcome.failure(INFINITE)
        base = ctx.committed_cost()
        costs = {key: cost for key, cost, _ in options}
        payloads = {key: payload for key, _, payload in options}
        values = {key: max(value, add_costs(base, cost)) for key, cost, _ in options}

        mark = ctx.checkpoint()
        try:
            while True:
                key = min(values, key=lambda k: (values[k], costs[k], k))
                best = values[key]
                if best == INFINITE:
                    return SearchOutcome.failure(INFINITE)

                task = ctx.omega.current
                payload = payloads[key]
                chosen = payload[0] if isinstance(payload, tuple) else payload
                task.chosen = Instantiation(key, costs[key], chosen)
                task.candidates = {k: v - base for k, v in values.items() if k != key}
                goal = ctx.omega.goal
                goal.floor = best
                goal.candidates = {BOUND_KEY: bound}

                ctx.stats.updates += 1
                update = update_costs(task)
                if not update.consistent:
                    ctx.stats.inconsistencies += 1
                    logger.debug(
                        "Inconsistent commitment",
                        task=str(task.head),
                        instance=key,
                        at=str(update.at.head),
                        value=best,
                        bound=bound,
                        event_type="inconsistent",
                    )
                    backtrack(ctx, mark)
                    return SearchOutcome.failure(best)
                if self.config.record_estimates:
                    self._record(task)

                runner_up = min((v for k, v in values.items() if k != key), default=INFINITE)
                outcome = advance(task, payload, ctx, best, min(bound, runner_up), depth)
                if outcome.ok:
                    return outcome
                backtrack(ctx, mark)
                if self.config.trace:
                    logger.debug("Backtracking", instance=key, backed_up=outcome.value, event_type="backtrack")
                values[key] = outcome.value
        finally:
            ctx.release(mark)

    def _record(self, task: Task) -> None:
        """Keep the estimates of task and its ancestors after a consistent update"""
        for node in (task, *task.ancestors()):
            if node.is_goal or node.origin is None:
                continue
            key = (node.head, *node.origin)
            known = self._estimates.get(key)
            if known is None or node.cost > known.estimate:
                self._estimates[key] = TaskEstimate(node.head, *node.origin, node.cost)

    def _apply_action(self, task: Task, action: GroundAction, ctx: SearchContext,
                      value: float, bound: float, depth: int) -> SearchOutcome:
        ctx.omega.pop_front()
        ctx.s = apply_effects(action, ctx.s)
        ctx.pi.append(action)
        outcome = self._search(ctx, value, bound, depth + 1)
        if outcome.ok:
            return SearchOutcome(outcome.plan.prepend(action), outcome.value)
        return outcome

    def _apply_method(self, task: Task, method: GroundMethod, ctx: SearchContext,
                      value: float, bound: float, depth: int) -> SearchOutcome:
        ctx.omega.decompose(task, method.subtasks)
        outcome = self._search(ctx, value, bound, depth + 1)
        if outcome.ok:
            return SearchOutcome(outcome.plan.with_method(method), outcome.value)
        return outcome

    def _branch(self, task: Task, instance: SensingInstance, ctx: SearchContext,
                value: float, bound: float, depth: int) -> SearchOutcome:
        """Solve every alternative of the observed belief state; the node's value is the worst branch"""
        action, belief = instance
        allow_null = self.config.allow_null_branches
        ctx.omega.pop_front()
        ctx.bs.remove(belief)
        ctx.pi.append(action)
        worst = ctx.committed_cost()
        # NULL branches need exact branch values, so branches are solved unbounded.
        branch_bound = INFINITE if allow_null else bound

        branches = []
        mark = ctx.checkpoint()
        try:
            for alternative in belief.alternatives:
                ctx.restore(mark)
                ctx.s = ctx.s.union(alternative.fragment)
                ctx.pi.append(f"(!Observe {alternative.label})")
                outcome = self._search(ctx, value, branch_bound, depth + 1)
                if outcome.ok:
                    branches.append(Branch(alternative.fragment, alternative.probability, outcome.plan))
                    worst = max(worst, outcome.value)
                elif allow_null and outcome.value == INFINITE:
                    branches.append(Branch(alternative.fragment, alternative.probability, None))
                else:
                    return outcome
            ctx.restore(mark)
        finally:
            ctx.release(mark)

        if worst > bound:
            return SearchOutcome.failure(worst)
        node = BranchNode(action, tuple(branches))
        return SearchOutcome(ConditionalPlan((node,)), worst)


def plan(problem: Problem, config: Optional[PlannerConfig] = None) -> PlanResult:
    """Plan for problem; deterministic for identical inputs and config"""
    return HQCPPlanner(problem, config).plan()
