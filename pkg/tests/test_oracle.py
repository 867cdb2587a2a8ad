"""Tests for exhaustive enumeration and the admissibility check"""
import pytest

from benchmarks.generators import gen_medicate, gen_zenotravel
from benchmarks.random_domains import gen_random
from config import PlannerConfig
from dsl import parse_domain, parse_problem
from model import INFINITE, BudgetExceeded, Literal
from model.plans import plan_cost
from oracle import ExhaustiveOracle, check_admissibility, oracle_plan
from planner import TaskEstimate, plan

TRAP_DOMAIN = """\
(defdomain trap (
  (:operator !toll-road () ((toll)) (:add (delivered)))
  (:operator !free-road () ((detour)) (:add (delivered)))
  (:method deliver () ((shortcut)) (:subtasks (!toll-road)) :name via-shortcut)
  (:method deliver () ((highway)) (:subtasks (!free-road)) :name via-highway)
  (:method errand () () (:subtasks (deliver) (deliver)))
))
"""

CORPUS_SIZE = 50
CORPUS_BUDGET = 200_000

ERRAND_PROBLEM = """\
(defproblem errand-1 trap
  (:state (toll) (detour) (shortcut) (highway))
  (:tasks (errand))
  (:cost ((shortcut) 1) ((highway) 5) ((toll) 10)))
"""


def load(domain_text: str, problem_text: str):
    return parse_problem(problem_text, parse_domain(domain_text, "test.domain"), "test.problem")


def random_corpus(limit: int = 400):
    """The first CORPUS_SIZE random instances the oracle enumerates within CORPUS_BUDGET"""
    found = 0
    for seed in range(limit):
        problem = load(*gen_random(seed))
        try:
            reference = oracle_plan(problem, CORPUS_BUDGET)
        except BudgetExceeded:
            continue
        yield seed, problem, reference
        found += 1
        if found == CORPUS_SIZE:
            return


class TestOraclePlan:
    """Ground-truth minimum worst-case cost"""

    def test_empty_task_network(self):
        result = oracle_plan(load(TRAP_DOMAIN, "(defproblem nothing trap)"))

        assert result.best_cost == 0
        assert result.best_plan.is_empty
        assert result.plans_enumerated == 1

    def test_unsolvable(self):
        result = oracle_plan(load(TRAP_DOMAIN, "(defproblem stuck trap (:tasks (deliver)))"))

        assert result.best_cost == INFINITE
        assert result.best_plan is None

    def test_enumerates_every_alternative(self):
        problem = load(TRAP_DOMAIN, """\
(defproblem errand-1 trap
  (:state (toll) (detour) (shortcut) (highway))
  (:tasks (errand))
  (:cost ((shortcut) 1) ((highway) 5) ((toll) 10)))
""")

        result = oracle_plan(problem)

        assert result.best_cost == 10
        assert result.plans_enumerated == 4
        assert plan_cost(result.best_plan).worst == 10

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_medicate_matches_planner(self, n):
        problem = load(*gen_medicate(n))

        assert oracle_plan(problem).best_cost == plan(problem).cost == 4

    def test_zenotravel_late(self):
        problem = load(*gen_zenotravel("late"))

        assert oracle_plan(problem).best_cost == plan(problem).cost == 220

    def test_zenotravel_tight(self):
        problem = load(*gen_zenotravel("tight"))

        strong = oracle_plan(problem)
        relaxed = oracle_plan(problem, allow_null_branches=True)

        assert strong.best_cost == INFINITE
        assert relaxed.best_cost == 500
        assert plan(problem, PlannerConfig(allow_null_branches=True)).cost == 500

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            oracle_plan(load(*gen_medicate(2)), node_budget=10)

    def test_solve_from_intermediate_state(self):
        problem = load(*gen_zenotravel("late"))
        oracle = ExhaustiveOracle(problem)

        cost, solved = oracle.solve(problem.s0, problem.beliefs, problem.tasks[:1])

        assert cost == 100
        assert solved is not None


class TestAdmissibility:

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_medicate(self, n):
        assert check_admissibility(load(*gen_medicate(n))) == []

    def test_zenotravel(self):
        assert check_admissibility(load(*gen_zenotravel("late"))) == []
        assert check_admissibility(load(*gen_zenotravel("tight")), allow_null_branches=True) == []

    def test_unsolvable_task(self):
        assert check_admissibility(load(TRAP_DOMAIN, "(defproblem stuck trap (:tasks (deliver)))")) == []

    def test_overestimate_is_reported(self):
        problem = load(TRAP_DOMAIN, ERRAND_PROBLEM)
        inflated = TaskEstimate(Literal("deliver"), problem.s0, (), (Literal("deliver"),), 6.0)

        (violation,) = check_admissibility(problem, estimates=[inflated])

        assert violation.task == "(deliver)"
        assert (violation.heuristic, violation.optimal) == (6.0, 5.0)

    def test_estimates_cover_ancestors(self):
        problem = load(TRAP_DOMAIN, ERRAND_PROBLEM)

        result = plan(problem, PlannerConfig(record_estimates=True))

        recorded = sorted((str(e.head), len(e.agenda), e.estimate) for e in result.estimates)
        assert recorded == [("(deliver)", 1, 5), ("(deliver)", 2, 5), ("(errand)", 1, 10)]
        assert check_admissibility(problem, estimates=result.estimates) == []

    def test_no_estimates_without_recording(self):
        assert plan(load(TRAP_DOMAIN, ERRAND_PROBLEM)).estimates == []

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            check_admissibility(load(*gen_medicate(3)), node_budget=5)


@pytest.mark.slow
class TestRandomInstances:
    """Differential check of the planner against exhaustive enumeration"""

    def test_planner_matches_oracle(self):
        compared = 0
        for seed, problem, reference in random_corpus():
            result = plan(problem)

            assert reference.best_cost != INFINITE, f"seed {seed}"
            assert result.cost == reference.best_cost, f"seed {seed}"
            assert result.solved
            compared += 1

        assert compared == CORPUS_SIZE

    def test_heuristic_is_admissible(self):
        checked = 0
        for seed, problem, _ in random_corpus():
            violations = check_admissibility(problem, CORPUS_BUDGET)

            assert violations == [], f"seed {seed}"
            checked += 1

        assert checked == CORPUS_SIZE

    def test_corpus_is_solvable(self):
        solvable = [seed for seed in range(CORPUS_SIZE) if plan(load(*gen_random(seed))).solved]

        assert len(solvable) == CORPUS_SIZE
