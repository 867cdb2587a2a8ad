"""Problem reader: (defproblem name domain (:state ...) (:belief ...)* (:tasks ...) (:cost ...))"""
from typing import Dict, List

from model.belief import BeliefAlternative, BeliefState
from model.costs import CostTable
from model.errors import HQCPError, ParseError, SourceSpan, ValidationError
from model.logic import Literal, State
from model.operators import Domain
from model.problem import Problem

from .domain_parser import parse_literal, parse_literals
from .sexpr import AtomKind, SExpr, parse_sexprs


def _number(expr: SExpr, what: str) -> float:
    if expr.kind is not AtomKind.NUMBER:
        raise ParseError(f"{what} must be a number, found {expr.text}", expr.span)
    return expr.value


def _fragment(expr: SExpr) -> frozenset:
    """A single literal, or a list of literals"""
    items = expr.items
    if items and items[0].is_list:
        return frozenset(parse_literals(items, allow_negative=False))
    return frozenset([parse_literal(expr, allow_negative=False)])


def _belief(expr: SExpr) -> BeliefState:
    alternatives = []
    for entry in expr.items[1:]:
        pair = entry.items
        if len(pair) != 2:
            raise ParseError("belief entries are (fragment probability)", entry.span)
        alternatives.append(BeliefAlternative(_fragment(pair[0]), _number(pair[1], "belief probability")))
    try:
        return BeliefState(tuple(alternatives))
    except ValidationError as exc:
        raise type(exc)(exc.message, expr.span) from exc


def _cost_table(cost_expr, default_expr) -> CostTable:
    entries: Dict[Literal, float] = {}
    if cost_expr is not None:
        for entry in cost_expr.items[1:]:
            pair = entry.items
            if len(pair) != 2:
                raise ParseError("cost entries are (literal value)", entry.span)
            literal = parse_literal(pair[0])
            if literal in entries:
                raise ValidationError(f"cost for {literal} given twice", entry.span)
            entries[literal] = _number(pair[1], "cost")
    default = 0.0
    if default_expr is not None:
        if len(default_expr.items) != 2:
            raise ParseError("(:default-cost value) takes one number", default_expr.span)
        default = _number(default_expr.items[1], "default cost")
    try:
        return CostTable(entries, default)
    except ValidationError as exc:
        span = cost_expr.span if cost_expr is not None else default_expr.span
        raise type(exc)(exc.message, span) from exc


def parse_problem(text: str, domain: Domain, file: str = "<problem>") -> Problem:
    exprs = parse_sexprs(text, file)
    if not exprs:
        raise ParseError("empty problem file", SourceSpan(file, 1, 1, 1, 1))
    if len(exprs) > 1:
        raise ParseError("expected a single (defproblem ...) form", exprs[1].span)
    root = exprs[0]
    items = root.items
    if root.head != "defproblem" or len(items) < 3 or not items[1].is_symbol() or not items[2].is_symbol():
        raise ParseError("expected (defproblem name domain ...)", root.span)
    if items[2].value != domain.name:
        raise ValidationError(f"problem targets domain {items[2].value}, loaded {domain.name}", items[2].span)

    state: List[Literal] = []
    beliefs: List[BeliefState] = []
    tasks: List[Literal] = []
    cost_expr = default_expr = None
    seen = set()
    for clause in items[3:]:
        head = clause.head if clause.is_list else None
        if head != ":belief" and head in seen:
            raise ParseError(f"clause {head} given twice", clause.span)
        seen.add(head)
        if head == ":state":
            state.extend(parse_literals(clause.items[1:], allow_negative=False))
        elif head == ":belief":
            beliefs.append(_belief(clause))
        elif head == ":tasks":
            tasks.extend(parse_literals(clause.items[1:], allow_negative=False))
        elif head == ":cost":
            cost_expr = clause
        elif head == ":default-cost":
            default_expr = clause
        else:
            raise ParseError(f"unknown problem clause {clause.text[:40]}", clause.span)

    try:
        return Problem(
            name=items[1].value,
            domain=domain,
            s0=State(frozenset(state)),
            beliefs=tuple(beliefs),
            tasks=tuple(tasks),
            delta=_cost_table(cost_expr, default_expr),
        )
    except HQCPError as exc:
        if exc.span is None:
            exc.span = root.span
        raise
