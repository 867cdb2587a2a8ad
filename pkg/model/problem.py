"""Planning problem: domain, initial state, beliefs, initial tasks and costs"""
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .belief import BeliefState
from .costs import CostTable
from .errors import AmbiguousBelief, ValidationError
from .logic import Literal, State, literal_variables, unify
from .operators import Domain, SensingOperator
from .tasks import TaskNetwork


def check_observation(op: SensingOperator, beliefs: Tuple[BeliefState, ...]) -> None:
    """Every ground instance of the sensor must observe at most one belief state.

    Variables bound by the parameters or positive preconditions select the
    instance; the remaining variables of the template range over the outcomes.
    """
    selecting = sorted(set(op.observe.variables) & (set(op.params) | literal_variables(lit for lit in op.pre if lit.positive)))
    owner: Dict[Tuple[str, ...], int] = {}
    for index, belief in enumerate(beliefs):
        for lit in belief.literals:
            sigma = unify(op.observe, lit)
            if sigma is None:
                continue
            instance = tuple(sigma[v] for v in selecting)
            if owner.setdefault(instance, index) != index:
                raise AmbiguousBelief(f"{op.name} observes {op.observe}, which matches more than one belief state")


@dataclass(frozen=True)
class Problem:
    name: str
    domain: Domain
    s0: State
    beliefs: Tuple[BeliefState, ...]
    tasks: Tuple[Literal, ...]
    delta: CostTable

    def __post_init__(self):
        for head in self.tasks:
            if not head.is_ground:
                raise ValidationError(f"initial task {head} must be ground")
            self.domain.task_kind(head)
        owner = {}
        for index, belief in enumerate(self.beliefs):
            for lit in belief.literals:
                if lit in self.s0:
                    raise ValidationError(f"belief literal {lit} is already a fact of the initial state")
                if owner.setdefault(lit, index) != index:
                    raise ValidationError(f"belief literal {lit} appears in two belief states")
        for op in self.domain.sensing:
            check_observation(op, self.beliefs)

    def __deepcopy__(self, memo):
        return self

    def initial_network(self) -> TaskNetwork:
        return TaskNetwork.from_heads(self.tasks, self.domain)

    def belief_for(self, fragment_literal: Literal) -> Optional[BeliefState]:
        """The belief state whose fragments contain the literal"""
        return next((b for b in self.beliefs if fragment_literal in b.literals), None)
