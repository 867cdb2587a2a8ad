"""Tests for benchmark generators and campaign runs"""
import tempfile
from pathlib import Path

import pandas as pd
import pytest
from pydantic import ValidationError as SchemaError

from benchmarks import BenchSpec, gen_medicate, gen_random, gen_zenotravel, run_bench, write_csv
from benchmarks.runner import AVERAGE, CSV_COLUMNS, FAILURE, _averages, parse_scale_range
from config import PlannerConfig
from dsl import parse_domain, parse_problem
from model import Literal, ValidationError, belief_cost
from oracle import simulate
from planner import plan


def load(domain_text: str, problem_text: str):
    return parse_problem(problem_text, parse_domain(domain_text, "bench.domain"), "bench.problem")


class TestGenerators:
    """Medicate, zenotravel and random instance text"""

    def test_medicate_alternatives(self):
        problem = load(*gen_medicate(1))

        (belief,) = problem.beliefs
        assert len(belief.alternatives) == 2
        assert {alt.probability for alt in belief.alternatives} == {0.5}

    def test_medicate_custom_distribution(self):
        problem = load(*gen_medicate(2, [0.5, 0.3, 0.2]))

        assert [alt.probability for alt in problem.beliefs[0]] == [0.5, 0.3, 0.2]

    def test_medicate_needs_a_disease(self):
        with pytest.raises(ValidationError):
            gen_medicate(0)

    def test_medicate_distribution_length(self):
        with pytest.raises(ValidationError):
            gen_medicate(2, [0.5, 0.5])

    def test_zenotravel_supplier_costs(self):
        problem = load(*gen_zenotravel("late"))

        assert problem.delta.cost(Literal("supplier", ("a", "unoccupied"))) == 100
        assert problem.delta.cost(Literal("supplier", ("a", "occupied"))) == 400
        assert belief_cost(problem.beliefs[0], problem.delta) == pytest.approx(130)

    def test_tight_scenario_has_deadline(self):
        problem = load(*gen_zenotravel("tight"))

        assert problem.s0.holds(Literal("late-arrival", ("c",)))

    def test_unknown_scenario(self):
        with pytest.raises(ValidationError):
            gen_zenotravel("early")

    def test_random_is_deterministic(self):
        assert gen_random(17) == gen_random(17)

    @pytest.mark.parametrize("seed", range(10))
    def test_random_instances_parse(self, seed):
        problem = load(*gen_random(seed))

        assert problem.tasks

    @pytest.mark.parametrize("seed", range(10))
    def test_random_tasks_keep_a_fallback(self, seed):
        domain = load(*gen_random(seed)).domain

        tasks = {m.task.predicate for m in domain.methods}
        assert tasks == {m.task.predicate for m in domain.methods if m.label.endswith("-fallback")}


class TestBenchSpec:

    def test_label(self):
        assert BenchSpec(domain="zenotravel", scale="late").label == "zenotravel-late"

    def test_zenotravel_scale(self):
        with pytest.raises(SchemaError):
            BenchSpec(domain="zenotravel", scale=3)

    def test_medicate_scale(self):
        with pytest.raises(SchemaError):
            BenchSpec(domain="medicate", scale=0)

    def test_unknown_domain(self):
        with pytest.raises(SchemaError):
            BenchSpec(domain="blocks", scale=1)

    def test_tight_forces_null_branches(self):
        base = PlannerConfig()

        assert BenchSpec(domain="zenotravel", scale="tight").planner_options(base).allow_null_branches
        assert not BenchSpec(domain="zenotravel", scale="late").planner_options(base).allow_null_branches
        assert not base.allow_null_branches


class TestScaleRange:

    def test_range(self):
        assert parse_scale_range("1..4") == [1, 2, 3, 4]

    def test_list(self):
        assert parse_scale_range("1,3, 5") == [1, 3, 5]

    def test_bad_text(self):
        with pytest.raises(ValueError):
            parse_scale_range("one..two")


class TestCampaign:
    """Repeated runs, averages and CSV output"""

    def test_rows_and_averages(self):
        specs = [BenchSpec(domain="medicate", scale=n, repetitions=3) for n in (1, 2)]

        result = run_bench(specs)

        rows = result.rows
        assert list(rows.columns) == CSV_COLUMNS
        assert len(rows) == 2 * 3 + 2
        averages = rows[rows["rep"] == AVERAGE]
        assert list(averages["scale"]) == [1, 2]
        assert list(averages["cost"]) == [4, 4]
        assert set(result.plans) == {"medicate-1", "medicate-2"}

    def test_repetitions_agree_on_cost(self):
        result = run_bench([BenchSpec(domain="zenotravel", scale="late", repetitions=4)], jobs=2)

        runs = result.rows[result.rows["rep"] != AVERAGE]
        assert set(runs["cost"]) == {220}
        assert set(runs["nodes"]) == {runs["nodes"].iloc[0]}

    def test_tight_scenario_solves_with_null_branches(self):
        result = run_bench([BenchSpec(domain="zenotravel", scale="tight", repetitions=1)])

        assert result.rows["cost"].iloc[0] == 500
        assert "NULL" in result.plans["zenotravel-tight"].split()

    def test_failed_run_fails_the_average(self):
        frame = pd.DataFrame([
            {"domain": "random", "scale": 1, "rep": 1, "wall_ms": 2.0, "nodes": 4, "backtracks": 0, "cost": 3.0},
            {"domain": "random", "scale": 1, "rep": 2, "wall_ms": 4.0, "nodes": 4, "backtracks": 0, "cost": FAILURE},
        ], columns=CSV_COLUMNS)

        (average,) = _averages(frame).to_dict("records")

        assert average["rep"] == AVERAGE
        assert average["cost"] == FAILURE
        assert average["wall_ms"] == 3.0

    def test_write_csv(self):
        result = run_bench([BenchSpec(domain="medicate", scale=1, repetitions=2)])

        with tempfile.TemporaryDirectory() as temp_dir:
            path = write_csv(result, Path(temp_dir) / "out", "medicate.csv")

            frame = pd.read_csv(path)
            assert list(frame.columns) == CSV_COLUMNS
            assert len(frame) == 3
            assert (Path(temp_dir) / "out" / "medicate-1.plan").read_text().startswith("(!Observe condition p1 d1)")

    def test_empty_campaign_writes_header(self):
        result = run_bench([])

        with tempfile.TemporaryDirectory() as temp_dir:
            path = write_csv(result, Path(temp_dir))

            assert path.read_text().strip() == ",".join(CSV_COLUMNS)

    @pytest.mark.slow
    def test_medicate_scaling(self):
        specs = [BenchSpec(domain="medicate", scale=n, repetitions=5) for n in range(1, 11)]

        result = run_bench(specs)

        averages = result.rows[result.rows["rep"] == AVERAGE]
        times = [float(ms) for ms in averages["wall_ms"]]
        assert list(averages["scale"]) == list(range(1, 11))
        assert times[-1] < 5000
        assert sum(1 for before, after in zip(times, times[1:]) if after < before) <= 1
        for n in range(1, 11):
            problem = load(*gen_medicate(n))
            outcome = plan(problem)
            assert len(outcome.plan.branch_node.branches) == n + 1
            assert simulate(outcome.plan, problem, samples=1_000, seed=n).success_rate == 1.0
