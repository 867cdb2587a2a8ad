"""Benchmark campaigns: repeated planning runs aggregated into CSV rows"""
import time
import typing
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Sequence, Tuple, Union

import pandas as pd
import psutil
from pydantic import BaseModel, Field, model_validator

from config import PlannerConfig
from dsl.domain_parser import parse_domain
from dsl.plan_format import serialize_plan
from dsl.problem_parser import parse_problem
from logging_config import get_logger, log_campaign_row, log_error
from model.errors import HQCPError
from planner.search import plan

from .generators import SCENARIOS, gen_medicate, gen_zenotravel
from .random_domains import gen_random

logger = get_logger(__name__)

CSV_COLUMNS = ["domain", "scale", "rep", "wall_ms", "nodes", "backtracks", "cost"]
AVERAGE = "avg"
FAILURE = "failure"


class BenchSpec(BaseModel):
    """One benchmark instance family and how often to run it"""
    domain: typing.Literal["medicate", "zenotravel", "random"]
    scale: Union[int, str]
    repetitions: int = Field(default=5, ge=1)
    seed: int = 0

    @model_validator(mode="after")
    def check_scale(self) -> "BenchSpec":
        if self.domain == "zenotravel":
            if self.scale not in SCENARIOS:
                raise ValueError(f"zenotravel scale must be one of {', '.join(SCENARIOS)}")
        elif not isinstance(self.scale, int) or self.scale < 1:
            raise ValueError(f"{self.domain} scale must be an integer >= 1")
        return self

    def instance(self) -> Tuple[str, str]:
        if self.domain == "medicate":
            return gen_medicate(self.scale)
        if self.domain == "zenotravel":
            return gen_zenotravel(self.scale)
        return gen_random(self.seed + self.scale)

    def planner_options(self, base: PlannerConfig) -> PlannerConfig:
        # The tight scenario has no strong plan.
        if self.domain == "zenotravel" and self.scale == "tight":
            return base.model_copy(update={"allow_null_branches": True})
        return base

    @property
    def label(self) -> str:
        return f"{self.domain}-{self.scale}"


@dataclass
class BenchResult:
    rows: pd.DataFrame
    plans: Dict[str, str] = field(default_factory=dict)
    cpu_seconds: float = 0.0


def _run_once(spec: BenchSpec, rep: int, base: PlannerConfig) -> Tuple[dict, str, float]:
    process = psutil.Process()
    cpu_before = sum(process.cpu_times()[:2])
    started = time.perf_counter()
    row = {"domain": spec.domain, "scale": spec.scale, "rep": rep}
    tree = ""
    try:
        domain_text, problem_text = spec.instance()
        domain = parse_domain(domain_text, f"{spec.label}.domain")
        problem = parse_problem(problem_text, domain, f"{spec.label}.problem")
        result = plan(problem, spec.planner_options(base))
        row.update(nodes=result.stats.nodes, backtracks=result.stats.backtracks)
        if result.solved:
            row["cost"] = result.cost
            tree = serialize_plan(result.plan, "tree")
        else:
            row["cost"] = FAILURE
    except HQCPError as exc:
        log_error(logger, exc, {"component": "bench", "instance": spec.label, "rep": rep})
        row.update(nodes=0, backtracks=0, cost=f"error: {exc}")
    row["wall_ms"] = round((time.perf_counter() - started) * 1000.0, 3)
    cpu = sum(process.cpu_times()[:2]) - cpu_before
    log_campaign_row(logger, row, cpu)
    return row, tree, cpu


def _averages(frame: pd.DataFrame) -> pd.DataFrame:
    rows = []
    for (domain, scale), group in frame.groupby(["domain", "scale"], sort=False):
        costs = pd.to_numeric(group["cost"], errors="coerce")
        rows.append({
            "domain": domain,
            "scale": scale,
            "rep": AVERAGE,
            "wall_ms": round(group["wall_ms"].mean(), 3),
            "nodes": group["nodes"].mean(),
            "backtracks": group["backtracks"].mean(),
            "cost": costs.mean() if costs.notna().all() else FAILURE,
        })
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def run_bench(specs: Sequence[BenchSpec], planner_config: PlannerConfig = None, jobs: int = 1) -> BenchResult:
    """Run every repetition of every spec; rows keep spec order, averages follow"""
    base = planner_config or PlannerConfig()
    work = [(spec, rep) for spec in specs for rep in range(1, spec.repetitions + 1)]
    if jobs > 1 and len(work) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            outputs = list(executor.map(lambda item: _run_once(item[0], item[1], base), work))
    else:
        outputs = [_run_once(spec, rep, base) for spec, rep in work]

    rows = pd.DataFrame([row for row, _, _ in outputs], columns=CSV_COLUMNS)
    plans: Dict[str, str] = {}
    for (spec, _), (_, tree, _) in zip(work, outputs):
        if tree and spec.label not in plans:
            plans[spec.label] = tree
    if not rows.empty:
        rows = pd.concat([rows, _averages(rows)], ignore_index=True)
    return BenchResult(rows, plans, sum(cpu for _, _, cpu in outputs))


def write_csv(result: BenchResult, out_dir: Path, name: str = "bench.csv") -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / name
    result.rows.to_csv(path, index=False)
    for label, tree in result.plans.items():
        (out_dir / f"{label}.plan").write_text(tree)
    return path


def parse_scale_range(text: str) -> List[int]:
    """'1..6' or '1,3,5'"""
    if ".." in text:
        low, high = text.split("..", 1)
        return list(range(int(low), int(high) + 1))
    return [int(part) for part in text.split(",") if part.strip()]
