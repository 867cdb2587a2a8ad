"""Domain model: literals, states, beliefs, operators, tasks, plans and problems"""
from .belief import BeliefAlternative, BeliefState, belief_cost
from .costs import INFINITE, CostTable, add_costs
from .errors import (
    AmbiguousBelief,
    BranchMissing,
    BudgetExceeded,
    DepthExceeded,
    HQCPError,
    InvalidDistribution,
    NoMatchingBelief,
    ParseError,
    PlanFormatError,
    SourceSpan,
    UnboundVariable,
    UnknownTask,
    ValidationError,
)
from .logic import Literal, State, Substitution, applicable, match_preconditions, unify
from .operators import (
    ActuationOperator,
    Domain,
    GroundAction,
    GroundMethod,
    Method,
    SensingOperator,
    TaskKind,
    action_cost,
    apply_effects,
    method_cost,
)
from .plans import Branch, BranchNode, ConditionalPlan, PlanCost, path_label, plan_cost, plan_probability
from .problem import Problem
from .tasks import Instantiation, Task, TaskNetwork

__all__ = [
    "ActuationOperator", "AmbiguousBelief", "BeliefAlternative", "BeliefState", "Branch",
    "BranchMissing", "BranchNode", "BudgetExceeded", "ConditionalPlan", "CostTable",
    "DepthExceeded", "Domain", "GroundAction", "GroundMethod", "HQCPError", "INFINITE",
    "Instantiation", "InvalidDistribution", "Literal", "Method", "NoMatchingBelief",
    "ParseError", "PlanCost", "PlanFormatError", "Problem", "SensingOperator", "SourceSpan",
    "State", "Substitution", "Task", "TaskKind", "TaskNetwork", "UnboundVariable",
    "UnknownTask", "ValidationError", "action_cost", "add_costs", "applicable",
    "apply_effects", "belief_cost", "match_preconditions", "method_cost", "path_label",
    "plan_cost", "plan_probability", "unify",
]
