"""Conditional plans, their cost and their path probabilities"""
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, Optional, Tuple, Union

from .belief import PROBABILITY_TOLERANCE, check_probability, fragment_text
from .costs import CostTable, add_costs
from .errors import ValidationError
from .logic import Literal
from .operators import GroundAction, GroundMethod, action_cost, method_cost

PathKey = Tuple[str, ...]
ROOT_PATH = "<root>"


def path_label(key: PathKey) -> str:
    return " | ".join(key) if key else ROOT_PATH


@dataclass(frozen=True)
class Branch:
    """One observation outcome; plan None is a NULL branch"""
    observation: FrozenSet[Literal]
    probability: float
    plan: Optional["ConditionalPlan"] = None

    @property
    def label(self) -> str:
        return fragment_text(self.observation)

    @property
    def is_null(self) -> bool:
        return self.plan is None


@dataclass(frozen=True)
class BranchNode:
    sensor: GroundAction
    branches: Tuple[Branch, ...]

    def __post_init__(self):
        if not self.sensor.is_sensing:
            raise ValidationError(f"branch node sensor {self.sensor} is not a sensing action")
        for branch in self.branches:
            check_probability(branch.probability, f"branch {branch.label}")
        if sum(b.probability for b in self.branches) > 1.0 + PROBABILITY_TOLERANCE:
            raise ValidationError(f"branches after {self.sensor} carry more than probability 1")

    @property
    def is_complete(self) -> bool:
        total = sum(b.probability for b in self.branches)
        return abs(total - 1.0) <= PROBABILITY_TOLERANCE


PlanStep = Union[GroundAction, BranchNode]


@dataclass(frozen=True)
class ConditionalPlan:
    """Linear segment of actions optionally ending in a branch node.

    methods lists the method instances applied while building this segment;
    their cost is paid on every path through the segment.
    """
    steps: Tuple[PlanStep, ...] = ()
    methods: Tuple[GroundMethod, ...] = ()

    def __post_init__(self):
        for step in self.steps[:-1]:
            if isinstance(step, BranchNode):
                raise ValidationError("a branch node may only end a plan segment")

    @property
    def is_empty(self) -> bool:
        return not self.steps

    @property
    def actions(self) -> Tuple[GroundAction, ...]:
        return tuple(s for s in self.steps if isinstance(s, GroundAction))

    @property
    def branch_node(self) -> Optional[BranchNode]:
        if self.steps and isinstance(self.steps[-1], BranchNode):
            return self.steps[-1]
        return None

    @property
    def method_cost(self) -> float:
        return sum(m.cost for m in self.methods)

    def prepend(self, action: GroundAction) -> "ConditionalPlan":
        return ConditionalPlan((action,) + self.steps, self.methods)

    def with_method(self, method: GroundMethod) -> "ConditionalPlan":
        return ConditionalPlan(self.steps, (method,) + self.methods)

    def all_actions(self) -> Iterator[GroundAction]:
        yield from self.actions
        node = self.branch_node
        if node is not None:
            yield node.sensor
            for branch in node.branches:
                if branch.plan is not None:
                    yield from branch.plan.all_actions()


@dataclass(frozen=True)
class PlanCost:
    worst: float
    breakdown: Dict[PathKey, float]


def _cached_action_cost(action: GroundAction) -> float:
    return action.cost


def _cached_method_cost(method: GroundMethod) -> float:
    return method.cost


def _walk(plan: ConditionalPlan, prefix: PathKey, cost_of, method_cost_of) -> Iterator[Tuple[PathKey, float]]:
    base = add_costs(*(cost_of(a) for a in plan.actions), *(method_cost_of(m) for m in plan.methods))
    node = plan.branch_node
    if node is None:
        yield prefix, base
        return
    base = add_costs(base, cost_of(node.sensor))
    for branch in node.branches:
        key = prefix + (branch.label,)
        if branch.plan is None:
            yield key, base
        else:
            for leaf, cost in _walk(branch.plan, key, cost_of, method_cost_of):
                yield leaf, add_costs(base, cost)


def plan_cost(plan: ConditionalPlan, delta: Optional[CostTable] = None) -> PlanCost:
    """Worst-case path cost; with delta, costs are recomputed instead of read from the cache"""
    if delta is None:
        breakdown = dict(_walk(plan, (), _cached_action_cost, _cached_method_cost))
    else:
        breakdown = dict(_walk(plan, (), lambda a: action_cost(a, delta), lambda m: method_cost(m, delta)))
    return PlanCost(max(breakdown.values()), breakdown)


def plan_probability(plan: ConditionalPlan) -> Dict[PathKey, float]:
    """Probability of reaching and succeeding on each leaf path"""
    result: Dict[PathKey, float] = {}

    def walk(segment: ConditionalPlan, prefix: PathKey, mass: float) -> None:
        for action in segment.actions:
            mass *= action.prob
        node = segment.branch_node
        if node is None:
            result[prefix] = mass
            return
        mass *= node.sensor.prob
        for branch in node.branches:
            key = prefix + (branch.label,)
            if branch.plan is None:
                result[key] = mass * branch.probability
            else:
                walk(branch.plan, key, mass * branch.probability)

    walk(plan, (), 1.0)
    return result
