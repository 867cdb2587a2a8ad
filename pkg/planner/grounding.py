"""Enumeration of the applicable ground instances of a task"""
from typing import Dict, List, Sequence, Tuple

from model.belief import BeliefState
from model.errors import AmbiguousBelief, NoMatchingBelief
from model.logic import Literal, State, match_preconditions, unify
from model.operators import GroundAction, GroundMethod
from model.problem import Problem

SensingInstance = Tuple[GroundAction, BeliefState]


def _by_cost(items, cost_of, key_of):
    """Ascending by (cost, key); of instances sharing a key only the cheapest is kept"""
    unique = {}
    for item in sorted(items, key=lambda item: (cost_of(item), key_of(item))):
        unique.setdefault(key_of(item), item)
    return list(unique.values())


class Grounder:
    """Grounds task heads against a problem's domain, caching per (head, state)"""

    def __init__(self, problem: Problem):
        self.problem = problem
        self.domain = problem.domain
        self.delta = problem.delta
        self._actions: Dict[Tuple[Literal, State], List[GroundAction]] = {}
        self._methods: Dict[Tuple[Literal, State], List[GroundMethod]] = {}

    def actuation_instances(self, head: Literal, state: State) -> List[GroundAction]:
        """Applicable ground actions for head, ascending by (cost, key)"""
        key = (head, state)
        if key not in self._actions:
            op = self.domain.actuation_operator(head.predicate)
            sigma = unify(op.head, head)
            found = []
            if sigma is not None:
                found = [op.instantiate(sub, self.delta) for sub in match_preconditions(op.pre, sigma, state)]
                # add and delete sets of an instance must stay disjoint
                found = [a for a in found if not a.effect_add & a.effect_del]
            self._actions[key] = _by_cost(found, lambda a: a.cost, lambda a: a.key)
        return self._actions[key]

    def method_instances(self, head: Literal, state: State) -> List[GroundMethod]:
        key = (head, state)
        if key not in self._methods:
            found = []
            for method in self.domain.methods_for(head.predicate):
                sigma = unify(method.task, head)
                if sigma is None:
                    continue
                found.extend(method.instantiate(sub, self.delta) for sub in match_preconditions(method.pre, sigma, state))
            self._methods[key] = _by_cost(found, lambda m: m.cost, lambda m: m.key)
        return self._methods[key]

    def sensing_instances(self, head: Literal, state: State, pending: Sequence[BeliefState]) -> List[SensingInstance]:
        """Applicable sensing actions paired with the one pending belief state each observes"""
        op = self.domain.sensing_operator(head.predicate)
        sigma = unify(op.head, head)
        if sigma is None:
            return []
        found = []
        applicable = 0
        for sub in match_preconditions(op.pre, sigma, state):
            applicable += 1
            action = op.instantiate(sub, self.delta)
            matches = [b for b in pending if b.matches(action.observation)]
            if len(matches) > 1:
                raise AmbiguousBelief(f"{action} observes {action.observation}, which matches {len(matches)} belief states")
            if matches:
                found.append((action, matches[0]))
        if applicable and not found:
            raise NoMatchingBelief(f"{head} observes {op.observe}, which matches no pending belief state")
        return _by_cost(found, lambda pair: pair[0].cost, lambda pair: pair[0].key)
