"""Literal cost table and cost arithmetic"""
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable

from .errors import ValidationError
from .logic import Literal

INFINITE = math.inf


def add_costs(*values: float) -> float:
    """Sum that absorbs into INFINITE"""
    total = 0.0
    for value in values:
        if value == INFINITE:
            return INFINITE
        total += value
    return total


@dataclass(frozen=True)
class CostTable:
    """Delta: ground literal -> non-negative cost, with a default for unlisted literals"""
    entries: Dict[Literal, float] = field(default_factory=dict)
    default: float = 0.0

    def __post_init__(self):
        for literal, value in list(self.entries.items()) + [(None, self.default)]:
            if not math.isfinite(value) or value < 0:
                where = f" for {literal}" if literal is not None else ""
                raise ValidationError(f"cost{where} must be finite and >= 0, got {value}")
            if literal is not None and not literal.is_ground:
                raise ValidationError(f"cost entry {literal} must be ground")

    def __deepcopy__(self, memo):
        return self

    def cost(self, literal: Literal) -> float:
        return self.entries.get(literal, self.default)

    def literal_set_cost(self, literals: Iterable[Literal]) -> float:
        return sum(self.cost(lit) for lit in set(literals))

    def scaled(self, factor: float) -> "CostTable":
        return CostTable({lit: v * factor for lit, v in self.entries.items()}, self.default * factor)
