"""Plan rendering: indented tree text and the frozen JSON document"""
import json
import typing
from typing import List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field
from pydantic import ValidationError as SchemaError

from model.errors import HQCPError, ParseError, PlanFormatError
from model.logic import Literal, sort_literals
from model.operators import GroundAction, GroundMethod
from model.plans import Branch, BranchNode, ConditionalPlan, plan_cost, plan_probability

from .domain_parser import parse_literal
from .sexpr import parse_one

PLAN_FORMAT = "hqcp-plan/1"
NULL = "NULL"


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ActionModel(_Strict):
    type: typing.Literal["action"] = "action"
    name: str
    args: List[str]
    pre: List[str]
    add: List[str] = []
    delete: List[str] = []
    prob: float
    cost: float
    observe: Optional[str] = None


class MethodModel(_Strict):
    label: str
    task: str
    bindings: str
    pre: List[str]
    subtasks: List[str]
    cost: float


class BranchModel(_Strict):
    observation: List[str]
    probability: float
    plan: Optional["SegmentModel"] = None


class BranchNodeModel(_Strict):
    type: typing.Literal["branch"] = "branch"
    sensor: ActionModel
    branches: List[BranchModel]


StepModel = typing.Annotated[Union[ActionModel, BranchNodeModel], Field(discriminator="type")]


class SegmentModel(_Strict):
    steps: List[StepModel]
    methods: List[MethodModel] = []


class PathModel(_Strict):
    path: List[str]
    cost: float
    probability: float


class PlanDocument(_Strict):
    format: typing.Literal["hqcp-plan/1"] = PLAN_FORMAT
    cost: float
    paths: List[PathModel]
    plan: SegmentModel


for _model in (BranchModel, BranchNodeModel, SegmentModel, PlanDocument):
    _model.model_rebuild()


def _texts(literals) -> List[str]:
    return [str(lit) for lit in sort_literals(literals)]


def _action_model(action: GroundAction) -> ActionModel:
    return ActionModel(
        name=action.name,
        args=list(action.args),
        pre=_texts(action.pre),
        add=_texts(action.effect_add),
        delete=_texts(action.effect_del),
        prob=action.prob,
        cost=action.cost,
        observe=str(action.observation) if action.observation is not None else None,
    )


def _segment_model(plan: ConditionalPlan) -> SegmentModel:
    steps: List[Union[ActionModel, BranchNodeModel]] = []
    for step in plan.steps:
        if isinstance(step, GroundAction):
            steps.append(_action_model(step))
        else:
            steps.append(BranchNodeModel(
                sensor=_action_model(step.sensor),
                branches=[
                    BranchModel(
                        observation=_texts(b.observation),
                        probability=b.probability,
                        plan=_segment_model(b.plan) if b.plan is not None else None,
                    )
                    for b in step.branches
                ],
            ))
    methods = [
        MethodModel(label=m.label, task=str(m.task), bindings=m.bindings, pre=_texts(m.pre),
                    subtasks=[str(s) for s in m.subtasks], cost=m.cost)
        for m in plan.methods
    ]
    return SegmentModel(steps=steps, methods=methods)


def _tree_lines(plan: Optional[ConditionalPlan], depth: int) -> List[str]:
    pad = "  " * depth
    if plan is None or plan.is_empty:
        return [pad + NULL]
    lines = [pad + str(action) for action in plan.actions]
    node = plan.branch_node
    if node is not None:
        for branch in node.branches:
            lines.append(f"{pad}(!Observe {branch.label})")
            lines.extend(_tree_lines(branch.plan, depth + 1))
    return lines


def serialize_plan(plan: ConditionalPlan, fmt: str = "tree") -> str:
    if fmt == "tree":
        return "\n".join(_tree_lines(plan, 0)) + "\n"
    if fmt != "json":
        raise ValueError(f"unknown plan format {fmt!r}")
    cost = plan_cost(plan)
    probability = plan_probability(plan)
    document = PlanDocument(
        cost=cost.worst,
        paths=[
            PathModel(path=list(key), cost=value, probability=probability.get(key, 0.0))
            for key, value in cost.breakdown.items()
        ],
        plan=_segment_model(plan),
    )
    return document.model_dump_json(indent=2) + "\n"


def _literal(text: str) -> Literal:
    try:
        return parse_literal(parse_one(text, "<plan>"))
    except ParseError as exc:
        raise PlanFormatError(f"bad literal {text!r}: {exc.message}") from exc


def _action(model: ActionModel) -> GroundAction:
    return GroundAction(
        name=model.name,
        args=tuple(model.args),
        pre=frozenset(_literal(t) for t in model.pre),
        effect_add=frozenset(_literal(t) for t in model.add),
        effect_del=frozenset(_literal(t) for t in model.delete),
        prob=model.prob,
        cost=model.cost,
        observation=_literal(model.observe) if model.observe is not None else None,
    )


def _segment(model: SegmentModel) -> ConditionalPlan:
    steps = []
    for step in model.steps:
        if isinstance(step, ActionModel):
            steps.append(_action(step))
        else:
            steps.append(BranchNode(
                sensor=_action(step.sensor),
                branches=tuple(
                    Branch(
                        observation=frozenset(_literal(t) for t in b.observation),
                        probability=b.probability,
                        plan=_segment(b.plan) if b.plan is not None else None,
                    )
                    for b in step.branches
                ),
            ))
    methods = tuple(
        GroundMethod(
            label=m.label,
            task=_literal(m.task),
            pre=frozenset(_literal(t) for t in m.pre),
            subtasks=tuple(_literal(t) for t in m.subtasks),
            cost=m.cost,
            bindings=m.bindings,
        )
        for m in model.methods
    )
    return ConditionalPlan(tuple(steps), methods)


def parse_plan(text: str) -> ConditionalPlan:
    """Inverse of serialize_plan(plan, "json")"""
    try:
        document = PlanDocument.model_validate(json.loads(text))
    except json.JSONDecodeError as exc:
        raise PlanFormatError(f"plan is not JSON: {exc.msg} at line {exc.lineno} column {exc.colno}") from exc
    except SchemaError as exc:
        first = exc.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise PlanFormatError(f"plan schema mismatch at {where}: {first['msg']}") from exc
    try:
        return _segment(document.plan)
    except PlanFormatError:
        raise
    except HQCPError as exc:
        raise PlanFormatError(f"invalid plan: {exc.message}") from exc
