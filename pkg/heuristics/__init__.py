"""Task cost heuristic and consistency-driven cost propagation"""
from .engine import CostUpdateResult, UpdateStatus, best_alternative, heuristic_cost, is_consistent, update_costs

__all__ = [
    "CostUpdateResult",
    "UpdateStatus",
    "best_alternative",
    "heuristic_cost",
    "is_consistent",
    "update_costs",
]
