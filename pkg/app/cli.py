"""Command-line front end: plan, validate, bench and check"""
import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence, TextIO

from pydantic import ValidationError as PydanticValidationError

from benchmarks.generators import SCENARIOS
from benchmarks.runner import BenchSpec, parse_scale_range, run_bench, write_csv
from config import Config
from dsl.domain_parser import parse_domain
from dsl.plan_format import parse_plan, serialize_plan
from dsl.problem_parser import parse_problem
from logging_config import get_logger, log_error, setup_structured_logging
from model.costs import INFINITE
from model.errors import HQCPError, ParseError, SourceSpan, ValidationError
from model.logic import format_number
from model.plans import path_label
from model.problem import Problem
from oracle.exhaustive import check_admissibility, oracle_plan
from oracle.simulator import ValidationReport, check_executable, simulate
from planner.search import plan

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

# command flags that override a Config setting
COMMAND_SETTINGS = {
    "samples": "samples",
    "seed": "seed",
    "workers": "sim_workers",
    "jobs": "jobs",
    "out": "out_dir",
    "budget": "oracle_node_budget",
}


def format_cost(value: float) -> str:
    return "inf" if value == INFINITE else format_number(value)


def _read(path: str) -> str:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise FileNotFoundError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = data.count(b"\n", 0, exc.start) + 1
        column = exc.start - data.rfind(b"\n", 0, exc.start)
        span = SourceSpan(path, line, column, line, column)
        raise ParseError(f"invalid UTF-8 byte 0x{data[exc.start]:02x}", span) from exc


def load_problem(domain_file: str, problem_file: str) -> Problem:
    domain = parse_domain(_read(domain_file), domain_file)
    return parse_problem(_read(problem_file), domain, problem_file)


def _common_flags(defaults_suppressed: bool) -> argparse.ArgumentParser:
    default = argparse.SUPPRESS if defaults_suppressed else None
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=default, help="env-style settings file")
    common.add_argument("--log-level", default=default, help="DEBUG, INFO, WARNING, ERROR or CRITICAL")
    common.add_argument("--max-depth", type=int, default=default, help="search recursion limit")
    common.add_argument("--allow-null-branches", action="store_true", default=default,
                        help="permit NULL branches for unachievable observations")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hqcp",
        description="Minimum-cost contingent HTN planning.",
        parents=[_common_flags(False)],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_flags(True)

    p = sub.add_parser("plan", parents=[common], help="plan for a problem")
    p.add_argument("domain")
    p.add_argument("problem")
    p.add_argument("--json", action="store_true", help="print the JSON plan document")
    p.add_argument("--stats", action="store_true", help="print search counters to stderr")

    v = sub.add_parser("validate", parents=[common], help="check and simulate a JSON plan")
    v.add_argument("domain")
    v.add_argument("problem")
    v.add_argument("plan")
    v.add_argument("--samples", type=int, help="Monte-Carlo samples")
    v.add_argument("--seed", type=int, help="64-bit simulation seed")
    v.add_argument("--workers", type=int, help="simulation shards")

    b = sub.add_parser("bench", parents=[common], help="run a timing campaign")
    b.add_argument("--domain", choices=["medicate", "zenotravel", "random"], default="medicate")
    b.add_argument("--n", default="1..10", help="medicate sizes or random seeds: 1..6 or 1,3,5")
    b.add_argument("--scenario", default=",".join(SCENARIOS), help="zenotravel scenarios")
    b.add_argument("--reps", type=int, default=5, help="repetitions per instance")
    b.add_argument("--out", help="output directory")
    b.add_argument("--jobs", type=int, help="instances run in parallel")

    c = sub.add_parser("check", parents=[common], help="compare with the exhaustive oracle")
    c.add_argument("domain")
    c.add_argument("problem")
    c.add_argument("--budget", type=int, help="oracle node budget")
    return parser


class PlannerCLI:
    """Runs one parsed command against a Config"""

    def __init__(self, config: Config, out: TextIO = None, err: TextIO = None):
        self.config = config
        self.out = out or sys.stdout
        self.err = err or sys.stderr

    def run(self, args: argparse.Namespace) -> int:
        handler = getattr(self, f"cmd_{args.command}")
        try:
            return handler(args)
        except (HQCPError, PydanticValidationError, FileNotFoundError) as exc:
            code = getattr(exc, "exit_code", EXIT_INPUT)
            print(f"error: {exc}", file=self.err)
            return code
        except RecursionError as exc:
            log_error(logger, exc, {"component": "cli", "command": args.command})
            print("error: recursion limit reached; lower --max-depth", file=self.err)
            return EXIT_INTERNAL
        except Exception as exc:
            log_error(logger, exc, {"component": "cli", "command": args.command})
            print(f"internal error: {exc}", file=self.err)
            return EXIT_INTERNAL

    def cmd_plan(self, args: argparse.Namespace) -> int:
        problem = load_problem(args.domain, args.problem)
        result = plan(problem, self.config.planner_options())
        if args.stats:
            stats = result.stats
            print(f"nodes={stats.nodes} backtracks={stats.backtracks} updates={stats.updates} "
                  f"inconsistencies={stats.inconsistencies} max_depth={stats.max_depth}", file=self.err)
        if not result.solved:
            print(f"no plan: {result.reason}", file=self.err)
            print("failure", file=self.out)
            return EXIT_FAILURE
        if args.stats:
            print(f"cost={format_cost(result.cost)}", file=self.err)
            for key, probability in result.probability.items():
                print(f"probability[{path_label(key)}]={probability:.6g}", file=self.err)
        self.out.write(serialize_plan(result.plan, "json" if args.json else "tree"))
        return EXIT_OK

    def cmd_validate(self, args: argparse.Namespace) -> int:
        problem = load_problem(args.domain, args.problem)
        conditional_plan = parse_plan(_read(args.plan))
        issues = check_executable(conditional_plan, problem, self.config.allow_null_branches)
        if issues:
            report = ValidationReport(executable=False, issues=issues)
            self.out.write(report.model_dump_json(indent=2) + "\n")
            return EXIT_FAILURE
        config = self.config
        simulation = simulate(conditional_plan, problem, config.samples, config.seed, config.sim_workers)
        report = ValidationReport(executable=True, issues=[], simulation=simulation)
        self.out.write(report.model_dump_json(indent=2) + "\n")
        return EXIT_OK

    def cmd_bench(self, args: argparse.Namespace) -> int:
        specs = self._bench_specs(args)
        result = run_bench(specs, self.config.planner_options(), self.config.jobs)
        path = write_csv(result, self.config.out_dir, f"{args.domain}.csv")

        averages = result.rows[result.rows["rep"] == "avg"]
        if not averages.empty:
            self.out.write(averages.to_string(index=False) + "\n")
        for label, tree in result.plans.items():
            if args.domain != "medicate":
                self.out.write(f"\n# {label}\n{tree}")
        print(f"wrote {path} ({len(result.rows)} rows, cpu {result.cpu_seconds:.3f}s)", file=self.err)
        return EXIT_OK

    def _bench_specs(self, args: argparse.Namespace) -> List[BenchSpec]:
        if args.domain == "zenotravel":
            scales = [s.strip() for s in args.scenario.split(",") if s.strip()]
        else:
            try:
                scales = parse_scale_range(args.n)
            except ValueError as exc:
                raise ValidationError(f"bad --n {args.n!r}, expected 1..6 or 1,3,5") from exc
        return [BenchSpec(domain=args.domain, scale=scale, repetitions=args.reps) for scale in scales]

    def cmd_check(self, args: argparse.Namespace) -> int:
        problem = load_problem(args.domain, args.problem)
        budget = self.config.oracle_node_budget
        allow_null = self.config.allow_null_branches
        options = self.config.planner_options().model_copy(update={"record_estimates": True})
        result = plan(problem, options)
        reference = oracle_plan(problem, budget, allow_null)
        violations = check_admissibility(problem, budget, allow_null, result.estimates)

        hqcp_cost = result.cost if result.solved else INFINITE
        agree = hqcp_cost == reference.best_cost
        print(f"hqcp: {format_cost(hqcp_cost)}", file=self.out)
        print(f"oracle: {format_cost(reference.best_cost)} ({reference.plans_enumerated} plans, {reference.nodes} nodes)",
              file=self.out)
        print("HQCP=oracle" if agree else "HQCP!=oracle", file=self.out)
        print(f"violations: {len(violations)}", file=self.out)
        for violation in violations:
            print(f"  {violation.task} heuristic={format_cost(violation.heuristic)} "
                  f"optimal={format_cost(violation.optimal)} in [{violation.state}]", file=self.out)
        return EXIT_OK if agree and not violations else EXIT_FAILURE


def load_config(args: argparse.Namespace) -> Config:
    overrides = {}
    if args.log_level is not None:
        overrides["log_level"] = args.log_level
    if args.max_depth is not None:
        overrides["max_depth"] = args.max_depth
    if args.allow_null_branches:
        overrides["allow_null_branches"] = True
    for flag, setting in COMMAND_SETTINGS.items():
        value = getattr(args, flag, None)
        if value is not None:
            overrides[setting] = value
    if args.config is not None:
        if not Path(args.config).is_file():
            raise FileNotFoundError(f"config file {args.config} not found")
        return Config(_env_file=args.config, **overrides)
    return Config(**overrides)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        config = load_config(args)
    except (PydanticValidationError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    setup_structured_logging(config)
    return PlannerCLI(config).run(args)
