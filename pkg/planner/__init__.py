"""Contingent HTN planner"""
from .context import SearchContext, SearchStats, backtrack
from .grounding import Grounder
from .result import PlanResult, PlanStatus, TaskEstimate
from .search import HQCPPlanner, plan

__all__ = [
    "Grounder",
    "HQCPPlanner",
    "PlanResult",
    "PlanStatus",
    "SearchContext",
    "SearchStats",
    "TaskEstimate",
    "backtrack",
    "plan",
]
