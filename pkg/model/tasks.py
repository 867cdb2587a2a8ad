"""Task tree and agenda used during search"""
import copy
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .belief import BeliefState
from .costs import add_costs
from .logic import Literal, State
from .operators import Domain, GroundAction, GroundMethod, TaskKind

GOAL_HEAD = Literal(":goal")
BOUND_KEY = ":bound"

# state, pending beliefs and agenda heads at the moment a task became current
Origin = Tuple[State, Tuple[BeliefState, ...], Tuple[Literal, ...]]


@dataclass
class Instantiation:
    """The instance chosen for a task"""
    key: str
    cost: float
    payload: Union[GroundAction, GroundMethod, None] = None


@dataclass(eq=False)
class Task:
    """Node of the task tree.

    cost holds the current heuristic estimate. candidates maps instance keys of
    the unchosen alternatives to their estimated cost; None means the task has
    not been expanded yet. origin is set only when the search records
    estimates.
    """
    kind: TaskKind
    head: Literal
    cost: float = 0.0
    chosen: Optional[Instantiation] = None
    children: List["Task"] = field(default_factory=list)
    parent: Optional["Task"] = field(default=None, repr=False)
    candidates: Optional[Dict[str, float]] = None
    floor: float = 0.0
    origin: Optional[Origin] = field(default=None, repr=False)

    @property
    def is_goal(self) -> bool:
        return self.head == GOAL_HEAD

    @property
    def is_primitive(self) -> bool:
        return self.kind is not TaskKind.COMPOUND

    def add_child(self, child: "Task") -> "Task":
        child.parent = self
        self.children.append(child)
        return child

    def ancestors(self) -> Iterator["Task"]:
        node = self.parent
        while node is not None:
            yield node
            node = node.parent

    def committed(self) -> float:
        """Cost of the chosen instance plus the estimates of its children"""
        if self.chosen is None:
            return 0.0
        if self.kind is TaskKind.COMPOUND:
            base = add_costs(self.chosen.cost, *(child.cost for child in self.children))
        else:
            base = self.chosen.cost
        return max(self.floor, base)

    def canonical(self, indent: int = 0) -> str:
        pad = "  " * indent
        chosen = self.chosen.key if self.chosen else "-"
        lines = [f"{pad}{self.head} cost={self.cost!r} chosen={chosen}"]
        lines.extend(child.canonical(indent + 1) for child in self.children)
        return "\n".join(lines)


@dataclass(eq=False)
class TaskNetwork:
    """Goal pseudo-task with the initial tasks as its children, plus the agenda of open tasks"""
    goal: Task
    agenda: List[Task]
    domain: Domain = field(repr=False)

    @classmethod
    def from_heads(cls, heads: Sequence[Literal], domain: Domain) -> "TaskNetwork":
        goal = Task(TaskKind.COMPOUND, GOAL_HEAD, chosen=Instantiation(GOAL_HEAD.predicate, 0.0))
        agenda = [goal.add_child(Task(domain.task_kind(head), head)) for head in heads]
        return cls(goal, agenda, domain)

    def __deepcopy__(self, memo):
        return TaskNetwork(copy.deepcopy(self.goal, memo), copy.deepcopy(self.agenda, memo), self.domain)

    @property
    def roots(self) -> List[Task]:
        return self.goal.children

    @property
    def current(self) -> Optional[Task]:
        return self.agenda[0] if self.agenda else None

    def pop_front(self) -> Task:
        return self.agenda.pop(0)

    def decompose(self, task: Task, subtasks: Sequence[Literal]) -> List[Task]:
        """Replace the front task on the agenda by new child tasks"""
        children = [task.add_child(Task(self.domain.task_kind(head), head)) for head in subtasks]
        self.agenda[0:1] = children
        return children

    def committed_cost(self) -> float:
        return add_costs(*(root.cost for root in self.roots))

    def canonical(self) -> str:
        open_tasks = " ".join(str(task.head) for task in self.agenda)
        return f"{self.goal.canonical()}\nagenda: {open_tasks}"
