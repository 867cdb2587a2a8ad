"""Readers and writers for domains, problems and plans"""
from .domain_parser import parse_domain, parse_literal
from .plan_format import parse_plan, serialize_plan
from .problem_parser import parse_problem
from .sexpr import SExpr, parse_sexprs

__all__ = [
    "SExpr",
    "parse_domain",
    "parse_literal",
    "parse_plan",
    "parse_problem",
    "parse_sexprs",
    "serialize_plan",
]
