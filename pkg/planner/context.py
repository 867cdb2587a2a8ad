"""Mutable search context with snapshot-based restoration"""
import copy
from dataclasses import dataclass, field
from typing import List, Union

from model.belief import BeliefState
from model.logic import State
from model.operators import GroundAction
from model.problem import Problem
from model.tasks import TaskNetwork

TraceEntry = Union[GroundAction, str]


@dataclass
class SearchStats:
    nodes: int = 0
    backtracks: int = 0
    updates: int = 0
    inconsistencies: int = 0
    max_depth: int = 0


@dataclass(frozen=True)
class Snapshot:
    state: State
    beliefs: tuple
    network: TaskNetwork
    trace_length: int
    depth: int


@dataclass(eq=False)
class SearchContext:
    """State, pending beliefs, task network and the executed trace of one search path"""
    s: State
    bs: List[BeliefState]
    omega: TaskNetwork
    pi: List[TraceEntry] = field(default_factory=list)
    depth: int = 0
    stats: SearchStats = field(default_factory=SearchStats)
    snapshots: List[Snapshot] = field(default_factory=list, repr=False)

    @classmethod
    def initial(cls, problem: Problem) -> "SearchContext":
        return cls(problem.s0, list(problem.beliefs), problem.initial_network())

    def checkpoint(self) -> int:
        """Record a decision point and return its mark"""
        self.snapshots.append(Snapshot(self.s, tuple(self.bs), copy.deepcopy(self.omega), len(self.pi), self.depth))
        return len(self.snapshots) - 1

    def restore(self, mark: int) -> None:
        snap = self.snapshots[mark]
        del self.snapshots[mark + 1:]
        self.s = snap.state
        self.bs = list(snap.beliefs)
        self.omega = copy.deepcopy(snap.network)
        del self.pi[snap.trace_length:]
        self.depth = snap.depth

    def release(self, mark: int) -> None:
        """Drop the decision point at mark and everything above it"""
        del self.snapshots[mark:]

    def committed_cost(self) -> float:
        return self.omega.committed_cost()

    def canonical(self) -> str:
        trace = " ".join(str(entry) for entry in self.pi)
        beliefs = " ; ".join(b.canonical() for b in self.bs)
        return f"state: {self.s.canonical()}\nbeliefs: {beliefs}\ntrace: {trace}\n{self.omega.canonical()}"


def backtrack(ctx: SearchContext, to: int) -> SearchContext:
    """Revert ctx to the decision point at mark to"""
    ctx.restore(to)
    ctx.stats.backtracks += 1
    return ctx
