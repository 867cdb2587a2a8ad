"""Domain reader: (defdomain name (operator | sensing | method ...))"""
from typing import Dict, List, Optional, Tuple

from model.errors import ParseError, SourceSpan, UnknownTask, ValidationError
from model.logic import Literal, format_number
from model.operators import ActuationOperator, Domain, Method, SensingOperator

from .sexpr import AtomKind, SExpr, parse_sexprs


def parse_term(expr: SExpr) -> str:
    if expr.kind is AtomKind.NUMBER:
        return format_number(expr.value)
    if expr.kind is AtomKind.SYMBOL:
        return expr.value
    raise ParseError(f"expected a term, found {expr.text}", expr.span)


def parse_literal(expr: SExpr, allow_negative: bool = True) -> Literal:
    """(pred term...) or (not (pred term...))"""
    items = expr.items
    if not items or not items[0].is_symbol():
        raise ParseError(f"expected a literal, found {expr.text}", expr.span)
    if items[0].is_symbol("not"):
        if not allow_negative:
            raise ParseError("negative literal not allowed here", expr.span)
        if len(items) != 2 or not items[1].is_list:
            raise ParseError("(not ...) takes exactly one literal", expr.span)
        return parse_literal(items[1], allow_negative=False).negate()
    return Literal(items[0].value, tuple(parse_term(arg) for arg in items[1:]))


def parse_literals(exprs, allow_negative: bool = True) -> Tuple[Literal, ...]:
    return tuple(parse_literal(e, allow_negative) for e in exprs)


def parse_params(expr: SExpr) -> Tuple[str, ...]:
    params = []
    for item in expr.items:
        if not item.is_symbol() or not item.value.startswith("?"):
            raise ParseError(f"parameter {item.text} must be a variable", item.span)
        params.append(item.value)
    return tuple(params)


def _split_clauses(exprs: Tuple[SExpr, ...], span: SourceSpan) -> Tuple[Dict[str, SExpr], Dict[str, SExpr]]:
    """Separate (:clause ...) lists from :keyword value pairs"""
    clauses: Dict[str, SExpr] = {}
    keywords: Dict[str, SExpr] = {}
    index = 0
    while index < len(exprs):
        expr = exprs[index]
        if expr.is_symbol() and expr.value.startswith(":"):
            if index + 1 >= len(exprs):
                raise ParseError(f"keyword {expr.value} needs a value", expr.span)
            keywords[expr.value] = exprs[index + 1]
            index += 2
            continue
        head = expr.head if expr.is_list else None
        if head is None or not head.startswith(":"):
            raise ParseError(f"unexpected {expr.text}", expr.span)
        if head in clauses:
            raise ParseError(f"clause {head} given twice", expr.span)
        clauses[head] = expr
        index += 1
    return clauses, keywords


def _probability(keywords: Dict[str, SExpr]) -> float:
    expr = keywords.get(":prob")
    if expr is None:
        return 1.0
    if expr.kind is not AtomKind.NUMBER:
        raise ParseError(":prob needs a number", expr.span)
    return expr.value


def _check_only(found: Dict[str, SExpr], allowed: Tuple[str, ...]) -> None:
    for name, expr in found.items():
        if name not in allowed:
            raise ParseError(f"unknown clause {name}", expr.span)


def _header(expr: SExpr, kind: str) -> Tuple[str, Tuple[str, ...], Tuple[Literal, ...], Tuple[SExpr, ...]]:
    items = expr.items
    if len(items) < 4 or not items[1].is_symbol():
        raise ParseError(f"{kind} needs a name, parameters and preconditions", expr.span)
    return items[1].value, parse_params(items[2]), parse_literals(items[3].items), items[4:]


def _operator(expr: SExpr) -> ActuationOperator:
    name, params, pre, rest = _header(expr, ":operator")
    clauses, keywords = _split_clauses(rest, expr.span)
    _check_only(clauses, (":add", ":delete"))
    _check_only(keywords, (":prob",))
    add = parse_literals(clauses[":add"].items[1:], False) if ":add" in clauses else ()
    delete = parse_literals(clauses[":delete"].items[1:], False) if ":delete" in clauses else ()
    _check_operator_name(name, expr)
    try:
        return ActuationOperator(name, params, frozenset(pre), frozenset(add), frozenset(delete), _probability(keywords))
    except ValidationError as exc:
        raise type(exc)(exc.message, expr.span) from exc


def _sensing(expr: SExpr) -> SensingOperator:
    name, params, pre, rest = _header(expr, ":sensing")
    clauses, keywords = _split_clauses(rest, expr.span)
    _check_only(clauses, (":observe",))
    _check_only(keywords, (":prob",))
    observe = clauses.get(":observe")
    if observe is None or len(observe.items) != 2:
        raise ParseError(f"sensing operator {name} needs exactly one (:observe literal)", expr.span)
    _check_operator_name(name, expr)
    try:
        return SensingOperator(name, params, frozenset(pre), parse_literal(observe.items[1], False), _probability(keywords))
    except ValidationError as exc:
        raise type(exc)(exc.message, expr.span) from exc


def _method(expr: SExpr, index: int) -> Method:
    task_name, params, pre, rest = _header(expr, ":method")
    clauses, keywords = _split_clauses(rest, expr.span)
    _check_only(clauses, (":subtasks",))
    _check_only(keywords, (":name",))
    if task_name.startswith("!"):
        raise ValidationError(f"compound task {task_name} must not start with '!'", expr.span)
    label_expr: Optional[SExpr] = keywords.get(":name")
    label = label_expr.value if label_expr is not None and label_expr.is_symbol() else f"{task_name}-{index}"
    subtasks = parse_literals(clauses[":subtasks"].items[1:], False) if ":subtasks" in clauses else ()
    try:
        return Method(label, Literal(task_name, params), frozenset(pre), subtasks)
    except ValidationError as exc:
        raise type(exc)(exc.message, expr.span) from exc


def _check_operator_name(name: str, expr: SExpr) -> None:
    if not name.startswith("!"):
        raise ValidationError(f"operator {name} must start with '!'", expr.span)


def _check_subtasks(actuation: List[ActuationOperator], sensing: List[SensingOperator],
                    methods: List[Method], spans: List[SourceSpan]) -> None:
    declared = {op.name for op in actuation} | {op.name for op in sensing} | {m.task.predicate for m in methods}
    for method, span in zip(methods, spans):
        for sub in method.subtasks:
            if sub.predicate not in declared:
                raise UnknownTask(f"method {method.label}: subtask {sub} names no operator or method", span)


def parse_domain(text: str, file: str = "<domain>") -> Domain:
    exprs = parse_sexprs(text, file)
    if not exprs:
        raise ParseError("empty domain file", SourceSpan(file, 1, 1, 1, 1))
    if len(exprs) > 1:
        raise ParseError("expected a single (defdomain ...) form", exprs[1].span)
    root = exprs[0]
    items = root.items
    if root.head != "defdomain" or len(items) < 2 or not items[1].is_symbol():
        raise ParseError("expected (defdomain name (...))", root.span)
    body = items[2:]
    if len(body) == 1 and body[0].is_list and (not body[0].items or body[0].items[0].is_list):
        body = body[0].items

    actuation: List[ActuationOperator] = []
    sensing: List[SensingOperator] = []
    methods: List[Method] = []
    method_spans: List[SourceSpan] = []
    per_task: Dict[str, int] = {}
    for item in body:
        head = item.head if item.is_list else None
        if head == ":operator":
            actuation.append(_operator(item))
        elif head == ":sensing":
            sensing.append(_sensing(item))
        elif head == ":method":
            task_name = item.items[1].value if len(item.items) > 1 and item.items[1].is_symbol() else ""
            index = per_task.get(task_name, 0)
            per_task[task_name] = index + 1
            methods.append(_method(item, index))
            method_spans.append(item.span)
        else:
            raise ParseError(f"unknown domain item {item.text[:40]}", item.span)
    _check_subtasks(actuation, sensing, methods, method_spans)
    try:
        return Domain(items[1].value, tuple(actuation), tuple(sensing), tuple(methods))
    except ValidationError as exc:
        raise type(exc)(exc.message, root.span) from exc
