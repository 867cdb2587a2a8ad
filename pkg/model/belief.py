"""Belief states over nondeterministic facts"""
import math
from dataclasses import dataclass
from typing import FrozenSet, Iterator, Tuple

from .costs import CostTable
from .errors import InvalidDistribution, ValidationError
from .logic import Literal, sort_literals, unify

PROBABILITY_TOLERANCE = 1e-9


def check_probability(value: float, what: str) -> None:
    if not math.isfinite(value) or value <= 0.0 or value > 1.0 + PROBABILITY_TOLERANCE:
        raise InvalidDistribution(f"{what} probability must lie in (0, 1], got {value}")


def fragment_text(fragment: FrozenSet[Literal]) -> str:
    """Observation label, e.g. 'supplier a unoccupied'"""
    return ", ".join(lit.inner_text for lit in sort_literals(fragment))


@dataclass(frozen=True)
class BeliefAlternative:
    fragment: FrozenSet[Literal]
    probability: float

    def __deepcopy__(self, memo):
        return self

    @property
    def label(self) -> str:
        return fragment_text(self.fragment)


@dataclass(frozen=True)
class BeliefState:
    """Finite distribution over state fragments"""
    alternatives: Tuple[BeliefAlternative, ...]

    def __post_init__(self):
        if not self.alternatives:
            raise InvalidDistribution("belief state needs at least one alternative")
        seen = set()
        for alt in self.alternatives:
            check_probability(alt.probability, f"belief alternative {alt.label}")
            if not alt.fragment:
                raise ValidationError("belief fragment must not be empty")
            for lit in alt.fragment:
                if not lit.positive or not lit.is_ground:
                    raise ValidationError(f"belief literal {lit} must be ground and positive")
            if alt.fragment in seen:
                raise ValidationError(f"duplicate belief fragment {alt.label}")
            seen.add(alt.fragment)
        total = sum(alt.probability for alt in self.alternatives)
        if abs(total - 1.0) > PROBABILITY_TOLERANCE:
            raise InvalidDistribution(f"belief probabilities sum to {total}, expected 1")

    def __deepcopy__(self, memo):
        return self

    def __iter__(self) -> Iterator[BeliefAlternative]:
        return iter(self.alternatives)

    @property
    def literals(self) -> FrozenSet[Literal]:
        return frozenset(lit for alt in self.alternatives for lit in alt.fragment)

    def matches(self, template: Literal) -> bool:
        """True if some fragment literal unifies with the observation template"""
        return any(unify(template, lit) is not None for lit in self.literals)

    def canonical(self) -> str:
        return " ".join(f"[{alt.label}:{alt.probability!r}]" for alt in self.alternatives)


def belief_cost(belief: BeliefState, delta: CostTable) -> float:
    """Expected literal cost of a belief state"""
    return sum(alt.probability * delta.literal_set_cost(alt.fragment) for alt in belief)
