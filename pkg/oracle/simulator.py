"""Monte-Carlo execution and exhaustive executability of conditional plans"""
import itertools
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field

from logging_config import get_logger
from model.belief import BeliefAlternative, BeliefState
from model.errors import BranchMissing, ValidationError
from model.operators import GroundAction, apply_effects
from model.plans import Branch, BranchNode, ConditionalPlan, PathKey, path_label
from model.problem import Problem

logger = get_logger(__name__)

RNG_NAME = "numpy.random.PCG64"

World = Dict[BeliefState, BeliefAlternative]


class SimulationReport(BaseModel):
    """Empirical execution statistics for one plan"""
    samples: int
    seed: int
    rng: str = RNG_NAME
    shards: int = 1
    success_rate: float = Field(ge=0.0, le=1.0)
    mean_cost: float
    branch_hits: Dict[str, int]


class ValidationReport(BaseModel):
    executable: bool
    issues: List[str]
    simulation: Optional[SimulationReport] = None


@dataclass
class _Tally:
    successes: int = 0
    total_cost: float = 0.0
    hits: Counter = field(default_factory=Counter)

    def merge(self, other: "_Tally") -> "_Tally":
        return _Tally(self.successes + other.successes, self.total_cost + other.total_cost, self.hits + other.hits)


def _belief_of(node: BranchNode, problem: Problem) -> BeliefState:
    for branch in node.branches:
        for literal in branch.observation:
            belief = problem.belief_for(literal)
            if belief is not None:
                return belief
    raise BranchMissing(f"no belief state is observed by {node.sensor}")


def _matching_branch(node: BranchNode, fragment) -> Branch:
    for branch in node.branches:
        if branch.observation == fragment:
            return branch
    raise BranchMissing(f"{node.sensor} observed {sorted(str(l) for l in fragment)} but the plan has no such branch")


def _execute(plan: ConditionalPlan, problem: Problem, world: World, rng: np.random.Generator) -> Tuple[bool, float, PathKey]:
    """Run one sample; cost stops accruing at the first failure"""
    state = problem.s0
    ok = True
    cost = 0.0
    path: PathKey = ()
    segment: Optional[ConditionalPlan] = plan

    def attempt(action: GroundAction) -> bool:
        nonlocal state, cost
        if not all(state.holds(lit) for lit in action.pre):
            return False
        if rng.random() >= action.prob:
            return False
        cost += action.cost
        state = apply_effects(action, state)
        return True

    while segment is not None:
        if ok:
            cost += segment.method_cost
        for action in segment.actions:
            ok = ok and attempt(action)
        node = segment.branch_node
        if node is None:
            break
        ok = ok and attempt(node.sensor)
        fragment = world[_belief_of(node, problem)].fragment
        branch = _matching_branch(node, fragment)
        path = path + (branch.label,)
        state = state.union(fragment)
        if branch.is_null:
            ok = False
        segment = branch.plan
    return ok, cost, path


def _run_shard(plan: ConditionalPlan, problem: Problem, samples: int, seed: np.random.SeedSequence) -> _Tally:
    rng = np.random.Generator(np.random.PCG64(seed))
    tally = _Tally()
    beliefs = problem.beliefs
    draws = [
        rng.choice(len(b.alternatives), size=samples, p=[a.probability for a in b.alternatives])
        for b in beliefs
    ]
    for index in range(samples):
        world = {b: b.alternatives[draws[j][index]] for j, b in enumerate(beliefs)}
        ok, cost, path = _execute(plan, problem, world, rng)
        tally.successes += int(ok)
        tally.total_cost += cost
        tally.hits[path_label(path)] += 1
    return tally


def simulate(plan: ConditionalPlan, problem: Problem, samples: int, seed: int, workers: int = 1) -> SimulationReport:
    """Sample worlds and action outcomes; deterministic for a given seed and worker count"""
    if samples < 1:
        raise ValidationError(f"simulation needs at least one sample, got {samples}")
    if not 0 <= seed < 2**64:
        raise ValidationError(f"simulation seed must lie in [0, 2**64), got {seed}")
    workers = max(1, min(workers, samples))
    sizes = [samples // workers + (1 if i < samples % workers else 0) for i in range(workers)]
    seeds = np.random.SeedSequence(seed).spawn(workers)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        tallies = list(executor.map(lambda args: _run_shard(plan, problem, *args), zip(sizes, seeds)))
    total = _Tally()
    for tally in tallies:
        total = total.merge(tally)

    report = SimulationReport(
        samples=samples,
        seed=seed,
        shards=workers,
        success_rate=total.successes / samples,
        mean_cost=total.total_cost / samples,
        branch_hits={label: total.hits[label] for label in sorted(total.hits)},
    )
    logger.info(
        "Simulation completed",
        samples=samples,
        seed=seed,
        success_rate=report.success_rate,
        mean_cost=report.mean_cost,
        event_type="simulation_complete",
    )
    return report


def _check_world(plan: ConditionalPlan, problem: Problem, world: World, allow_null: bool) -> List[str]:
    issues = []
    state = problem.s0
    segment: Optional[ConditionalPlan] = plan
    path: PathKey = ()

    def step(action: GroundAction) -> None:
        nonlocal state
        missing = [str(lit) for lit in action.pre if not state.holds(lit)]
        if missing:
            issues.append(f"{path_label(path)}: {action} precondition {' '.join(sorted(missing))} does not hold")
        state = apply_effects(action, state)

    while segment is not None:
        for action in segment.actions:
            step(action)
        node = segment.branch_node
        if node is None:
            return issues
        step(node.sensor)
        try:
            fragment = world[_belief_of(node, problem)].fragment
            branch = _matching_branch(node, fragment)
        except BranchMissing as exc:
            issues.append(f"{path_label(path)}: {exc}")
            return issues
        path = path + (branch.label,)
        state = state.union(fragment)
        if branch.is_null and not allow_null:
            issues.append(f"{path_label(path)}: NULL branch leaves tasks unachieved")
        segment = branch.plan
    return issues


def check_executable(plan: ConditionalPlan, problem: Problem, allow_null: bool = False) -> List[str]:
    """Walk the plan in every world of the belief states and report every violation found"""
    beliefs: Sequence[BeliefState] = problem.beliefs
    issues: List[str] = []
    for combination in itertools.product(*(b.alternatives for b in beliefs)):
        world = dict(zip(beliefs, combination))
        for issue in _check_world(plan, problem, world, allow_null):
            if issue not in issues:
                issues.append(issue)
    return issues
