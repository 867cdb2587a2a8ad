"""Operators, methods and their ground instances"""
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Tuple

from .belief import check_probability
from .costs import CostTable
from .errors import UnknownTask, ValidationError
from .logic import Literal, State, Substitution, literal_variables, sort_literals


class TaskKind(Enum):
    """What a task head resolves to"""
    COMPOUND = "compound"
    ACTUATION = "actuation"
    SENSING = "sensing"


def _check_params(name: str, params: Tuple[str, ...]) -> None:
    if len(set(params)) != len(params):
        raise ValidationError(f"{name}: duplicate parameter")
    for param in params:
        if not param.startswith("?"):
            raise ValidationError(f"{name}: parameter {param} must be a variable")


def _check_negatives_bound(name: str, pre: FrozenSet[Literal], params: Tuple[str, ...]) -> None:
    bound = set(params) | literal_variables(lit for lit in pre if lit.positive)
    for lit in pre:
        if not lit.positive and not set(lit.variables) <= bound:
            raise ValidationError(f"{name}: negative precondition {lit} uses an unbound variable")


@dataclass(frozen=True)
class GroundAction:
    """A primitive action instance; observation is set for sensing actions"""
    name: str
    args: Tuple[str, ...]
    pre: FrozenSet[Literal]
    effect_add: FrozenSet[Literal] = frozenset()
    effect_del: FrozenSet[Literal] = frozenset()
    prob: float = 1.0
    cost: float = 0.0
    observation: Optional[Literal] = None

    def __deepcopy__(self, memo):
        return self

    @property
    def head(self) -> Literal:
        return Literal(self.name, self.args)

    @property
    def is_sensing(self) -> bool:
        return self.observation is not None

    @property
    def key(self) -> str:
        return str(self.head)

    def __str__(self) -> str:
        return str(self.head)


def apply_effects(action: GroundAction, state: State) -> State:
    return state.apply(action.effect_add, action.effect_del)


def action_cost(action: GroundAction, delta: CostTable) -> float:
    """Sum of Delta over the action's preconditions"""
    return delta.literal_set_cost(action.pre)


@dataclass(frozen=True)
class ActuationOperator:
    name: str
    params: Tuple[str, ...]
    pre: FrozenSet[Literal]
    effect_add: FrozenSet[Literal]
    effect_del: FrozenSet[Literal]
    prob: float = 1.0

    def __post_init__(self):
        _check_params(self.name, self.params)
        check_probability(self.prob, f"operator {self.name}")
        _check_negatives_bound(self.name, self.pre, self.params)
        bound = set(self.params) | literal_variables(lit for lit in self.pre if lit.positive)
        for lit in self.effect_add | self.effect_del:
            if not lit.positive:
                raise ValidationError(f"{self.name}: effect {lit} must be positive")
            if not set(lit.variables) <= bound:
                raise ValidationError(f"{self.name}: effect {lit} uses an unbound variable")
        overlap = self.effect_add & self.effect_del
        if overlap:
            raise ValidationError(f"{self.name}: {sort_literals(overlap)[0]} is both added and deleted")

    @property
    def head(self) -> Literal:
        return Literal(self.name, self.params)

    def instantiate(self, sigma: Substitution, delta: CostTable) -> GroundAction:
        pre = frozenset(sigma.ground(lit) for lit in self.pre)
        return GroundAction(
            name=self.name,
            args=tuple(sigma.ground(self.head).args),
            pre=pre,
            effect_add=frozenset(sigma.ground(lit) for lit in self.effect_add),
            effect_del=frozenset(sigma.ground(lit) for lit in self.effect_del),
            prob=self.prob,
            cost=delta.literal_set_cost(pre),
        )


@dataclass(frozen=True)
class SensingOperator:
    name: str
    params: Tuple[str, ...]
    pre: FrozenSet[Literal]
    observe: Literal
    prob: float = 1.0

    def __post_init__(self):
        _check_params(self.name, self.params)
        check_probability(self.prob, f"sensing operator {self.name}")
        _check_negatives_bound(self.name, self.pre, self.params)
        if not self.observe.positive:
            raise ValidationError(f"{self.name}: observation template must be positive")

    @property
    def head(self) -> Literal:
        return Literal(self.name, self.params)

    def instantiate(self, sigma: Substitution, delta: CostTable) -> GroundAction:
        pre = frozenset(sigma.ground(lit) for lit in self.pre)
        return GroundAction(
            name=self.name,
            args=tuple(sigma.ground(self.head).args),
            pre=pre,
            prob=self.prob,
            cost=delta.literal_set_cost(pre),
            observation=sigma.apply(self.observe),
        )


@dataclass(frozen=True)
class GroundMethod:
    label: str
    task: Literal
    pre: FrozenSet[Literal]
    subtasks: Tuple[Literal, ...]
    cost: float = 0.0
    bindings: str = ""

    def __deepcopy__(self, memo):
        return self

    @property
    def key(self) -> str:
        return f"{self.label}[{self.bindings}]"


def method_cost(method: GroundMethod, delta: CostTable) -> float:
    return delta.literal_set_cost(method.pre)


@dataclass(frozen=True)
class Method:
    """Decomposition of a compound task into an ordered subtask list"""
    label: str
    task: Literal
    pre: FrozenSet[Literal]
    subtasks: Tuple[Literal, ...]

    def __post_init__(self):
        _check_params(self.label, self.task.args)
        if not self.subtasks:
            raise ValidationError(f"method {self.label}: subtask list is empty")
        _check_negatives_bound(self.label, self.pre, self.task.args)
        bound = set(self.task.args) | literal_variables(lit for lit in self.pre if lit.positive)
        for sub in self.subtasks:
            if not set(sub.variables) <= bound:
                raise ValidationError(f"method {self.label}: subtask {sub} uses an unbound variable")

    def instantiate(self, sigma: Substitution, delta: CostTable) -> GroundMethod:
        pre = frozenset(sigma.ground(lit) for lit in self.pre)
        return GroundMethod(
            label=self.label,
            task=sigma.ground(self.task),
            pre=pre,
            subtasks=tuple(sigma.ground(sub) for sub in self.subtasks),
            cost=delta.literal_set_cost(pre),
            bindings=sigma.canonical(),
        )


@dataclass(frozen=True)
class Domain:
    name: str
    actuation: Tuple[ActuationOperator, ...] = ()
    sensing: Tuple[SensingOperator, ...] = ()
    methods: Tuple[Method, ...] = ()

    def __post_init__(self):
        names: Dict[str, str] = {}
        for op in self.actuation + self.sensing:
            if op.name in names:
                raise ValidationError(f"domain {self.name}: operator {op.name} defined twice")
            names[op.name] = "operator"
        labels = set()
        for method in self.methods:
            if method.label in labels:
                raise ValidationError(f"domain {self.name}: method label {method.label} used twice")
            labels.add(method.label)
            if method.task.predicate in names:
                raise ValidationError(f"domain {self.name}: {method.task.predicate} is both operator and task")

    def __deepcopy__(self, memo):
        return self

    def actuation_operator(self, name: str) -> Optional[ActuationOperator]:
        return next((op for op in self.actuation if op.name == name), None)

    def sensing_operator(self, name: str) -> Optional[SensingOperator]:
        return next((op for op in self.sensing if op.name == name), None)

    def methods_for(self, task_name: str) -> List[Method]:
        return [m for m in self.methods if m.task.predicate == task_name]

    def task_kind(self, head: Literal) -> TaskKind:
        if self.actuation_operator(head.predicate) is not None:
            return TaskKind.ACTUATION
        if self.sensing_operator(head.predicate) is not None:
            return TaskKind.SENSING
        if self.methods_for(head.predicate):
            return TaskKind.COMPOUND
        raise UnknownTask(f"task {head} names no operator or method")
