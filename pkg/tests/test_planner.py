"""Tests for the contingent HTN planner"""
import numpy as np
import pytest

from benchmarks.generators import gen_medicate, gen_zenotravel
from config import PlannerConfig
from dsl import parse_domain, parse_problem, serialize_plan
from heuristics import update_costs
from model import (
    INFINITE,
    AmbiguousBelief,
    DepthExceeded,
    Instantiation,
    Literal,
    NoMatchingBelief,
    TaskKind,
    apply_effects,
)
from oracle import check_executable, oracle_plan
from planner import Grounder, HQCPPlanner, PlanStatus, SearchContext, backtrack, plan

TRAP_DOMAIN = """\
; the locally cheap method leads to an expensive action
(defdomain trap (
  (:operator !toll-road () ((toll)) (:add (delivered)))
  (:operator !free-road () ((detour)) (:add (delivered)))
  (:method deliver () ((shortcut)) (:subtasks (!toll-road)) :name via-shortcut)
  (:method deliver () ((highway)) (:subtasks (!free-road)) :name via-highway)
))
"""

TRAP_PROBLEM = """\
(defproblem trap-1 trap
  (:state (toll) (detour) (shortcut) (highway))
  (:tasks (deliver))
  (:cost ((shortcut) 1) ((highway) 5) ((toll) 10) ((detour) 0)))
"""

SHOP_DOMAIN = """\
(defdomain shop (
  (:operator !fetch (?item) ((stocked ?item ?store)) (:add (have ?item)))
))
"""

SHOP_PROBLEM = """\
(defproblem shop-1 shop
  (:state (stocked milk corner) (stocked milk market))
  (:tasks (!fetch milk))
  (:cost ((stocked milk corner) 7) ((stocked milk market) 2)))
"""

PICNIC_DOMAIN = """\
(defdomain picnic (
  (:sensing !look-outside () () (:observe (weather ?w)))
  (:operator !pack (?w) ((weather ?w)) (:add (packed ?w)))
  (:method prepare () () (:subtasks (!look-outside) (pack-for-weather)))
  (:method pack-for-weather () ((weather ?w)) (:subtasks (!pack ?w)))
))
"""

MOVE_DOMAIN = """\
(defdomain move (
  (:operator !mv (?x ?y) ((at ?x) (spot ?y)) (:add (at ?y)) (:delete (at ?x)))
))
"""


def load(domain_text: str, problem_text: str):
    return parse_problem(problem_text, parse_domain(domain_text, "test.domain"), "test.problem")


def random_walk(problem, rng: np.random.Generator, steps: int = 25) -> None:
    """Instantiate and backtrack at random, then return to the start and compare"""
    ctx = SearchContext.initial(problem)
    grounder = Grounder(problem)
    start = ctx.canonical()
    root = ctx.checkpoint()

    for _ in range(steps):
        task = ctx.omega.current
        if task is None:
            break
        if len(ctx.snapshots) > 1 and rng.random() < 0.3:
            backtrack(ctx, int(rng.integers(len(ctx.snapshots))))
            continue
        ctx.checkpoint()
        if task.kind is TaskKind.ACTUATION:
            actions = grounder.actuation_instances(task.head, ctx.s)
            if not actions:
                break
            chosen = actions[int(rng.integers(len(actions)))]
            task.chosen = Instantiation(chosen.key, chosen.cost, chosen)
            task.candidates = {}
            update_costs(task)
            ctx.omega.pop_front()
            ctx.s = apply_effects(chosen, ctx.s)
            ctx.pi.append(chosen)
        elif task.kind is TaskKind.COMPOUND:
            methods = grounder.method_instances(task.head, ctx.s)
            if not methods:
                break
            chosen = methods[int(rng.integers(len(methods)))]
            task.chosen = Instantiation(chosen.key, chosen.cost, chosen)
            task.candidates = {}
            update_costs(task)
            ctx.omega.decompose(task, chosen.subtasks)
        else:
            instances = grounder.sensing_instances(task.head, ctx.s, ctx.bs)
            if not instances:
                break
            sensor, belief = instances[0]
            task.chosen = Instantiation(sensor.key, sensor.cost, sensor)
            task.candidates = {}
            update_costs(task)
            ctx.omega.pop_front()
            ctx.bs.remove(belief)
            ctx.pi.append(sensor)
            alternative = belief.alternatives[int(rng.integers(len(belief.alternatives)))]
            ctx.s = ctx.s.union(alternative.fragment)

    backtrack(ctx, root)
    assert ctx.canonical() == start


class TestPlanner:
    """End-to-end planning on small domains"""

    def test_medicate_two_diseases(self):
        result = plan(load(*gen_medicate(2)))

        assert result.status is PlanStatus.PLAN
        node = result.plan.branch_node
        assert [b.label for b in node.branches] == [
            "condition p1 d1", "condition p1 d2", "condition p1 healthy",
        ]
        for branch in node.branches:
            outcome = branch.label.split()[-1]
            assert branch.plan.actions[0].head == Literal("!medicate", ("p1", outcome))
        assert result.cost == 4

    @pytest.mark.parametrize("n", [1, 3, 5])
    def test_medicate_branch_count(self, n):
        result = plan(load(*gen_medicate(n)))

        assert len(result.plan.branch_node.branches) == n + 1
        assert result.cost == 4

    def test_empty_task_network(self):
        result = plan(load(PICNIC_DOMAIN, "(defproblem nothing picnic)"))

        assert result.solved
        assert result.plan.is_empty
        assert result.cost == 0

    def test_zenotravel_late_flies(self):
        result = plan(load(*gen_zenotravel("late")))

        names = {a.name for a in result.plan.all_actions()}
        assert result.solved
        assert "!fly" in names
        assert "!zoom" not in names
        assert result.cost == 220

    def test_zenotravel_tight_zooms(self):
        result = plan(load(*gen_zenotravel("tight")), PlannerConfig(allow_null_branches=True))

        names = {a.name for a in result.plan.all_actions()}
        assert result.solved
        assert {"!zoom", "!refuel-at"} <= names
        assert result.cost == 500
        assert "NULL" in serialize_plan(result.plan, "tree").split()

    def test_zenotravel_tight_has_no_strong_plan(self):
        result = plan(load(*gen_zenotravel("tight")))

        assert result.status is PlanStatus.FAILURE
        assert result.cost == INFINITE
        assert result.reason

    def test_supplier_branches(self):
        result = plan(load(*gen_zenotravel("late")))

        probabilities = sorted(b.probability for b in result.plan.branch_node.branches)
        assert probabilities == [0.1, 0.9]

    def test_degenerate_belief(self):
        problem = load(PICNIC_DOMAIN, """\
(defproblem sunny picnic
  (:belief ((weather sunny) 1.0))
  (:tasks (prepare)))
""")

        result = plan(problem)

        (branch,) = result.plan.branch_node.branches
        assert branch.probability == 1.0
        assert branch.plan.actions[0].key == "(!pack sunny)"

    def test_no_matching_belief(self):
        problem = load(PICNIC_DOMAIN, "(defproblem blind picnic (:tasks (prepare)))")

        with pytest.raises(NoMatchingBelief):
            plan(problem)

    def test_ambiguous_belief(self):
        with pytest.raises(AmbiguousBelief):
            load(PICNIC_DOMAIN, """\
(defproblem twice picnic
  (:belief ((weather sunny) 0.5) ((weather rainy) 0.5))
  (:belief ((weather windy) 1.0))
  (:tasks (prepare)))
""")

    def test_unsolvable(self):
        problem = load(TRAP_DOMAIN, "(defproblem stuck trap (:state (toll)) (:tasks (deliver)))")

        result = plan(problem)

        assert not result.solved
        assert result.plan is None

    def test_self_cancelling_instance_is_dropped(self):
        problem = load(MOVE_DOMAIN, "(defproblem stay move (:state (at a) (spot a) (spot b)) (:tasks (!mv a a)))")

        result = plan(problem)

        assert Grounder(problem).actuation_instances(Literal("!mv", ("a", "a")), problem.s0) == []
        assert not result.solved
        assert oracle_plan(problem).best_cost == INFINITE

    def test_moving_instance_is_kept(self):
        problem = load(MOVE_DOMAIN, "(defproblem go move (:state (at a) (spot a) (spot b)) (:tasks (!mv a b)))")

        result = plan(problem)

        (action,) = result.plan.actions
        assert action.effect_add == frozenset([Literal("at", ("b",))])
        assert action.effect_del == frozenset([Literal("at", ("a",))])

    def test_depth_limit(self):
        with pytest.raises(DepthExceeded):
            plan(load(*gen_medicate(2)), PlannerConfig(max_depth=2))

    def test_deterministic(self):
        first = plan(load(*gen_zenotravel("late")))
        second = plan(load(*gen_zenotravel("late")))

        assert serialize_plan(first.plan, "json") == serialize_plan(second.plan, "json")


class TestSearchOrder:
    """Cost ordering, backtracking and the consistency gate"""

    def test_cheapest_instance_first(self):
        problem = load(SHOP_DOMAIN, SHOP_PROBLEM)

        result = plan(problem)

        assert result.cost == 2
        assert result.stats.backtracks == 0

    def test_cheap_method_abandoned(self):
        problem = load(TRAP_DOMAIN, TRAP_PROBLEM)

        result = plan(problem)

        assert result.cost == 5
        assert [a.key for a in result.plan.actions] == ["(!free-road)"]
        assert result.plan.methods[0].label == "via-highway"
        assert result.stats.backtracks >= 1
        assert result.stats.inconsistencies >= 1
        assert result.cost == oracle_plan(problem).best_cost

    def test_single_method_decomposes(self):
        problem = load(TRAP_DOMAIN, """\
(defproblem only-highway trap
  (:state (detour) (highway))
  (:tasks (deliver))
  (:cost ((highway) 5)))
""")

        result = plan(problem)

        assert result.cost == 5
        assert result.stats.backtracks == 0

    def test_expand_actuation_without_instances(self):
        problem = load(TRAP_DOMAIN, "(defproblem bare trap (:tasks (!toll-road)))")
        planner = HQCPPlanner(problem)
        ctx = SearchContext.initial(problem)

        outcome = planner.expand_actuation(ctx.omega.current, ctx)

        assert not outcome.ok
        assert outcome.value == INFINITE

    def test_stats_are_counted(self):
        result = plan(load(*gen_medicate(2)))

        assert result.stats.nodes > 0
        assert result.stats.updates > 0
        assert result.stats.max_depth >= 4


class TestSoundness:

    @pytest.mark.parametrize("instance,allow_null", [
        (gen_medicate(3), False),
        (gen_zenotravel("late"), False),
        (gen_zenotravel("tight"), True),
    ])
    def test_plans_execute_in_every_world(self, instance, allow_null):
        problem = load(*instance)

        result = plan(problem, PlannerConfig(allow_null_branches=allow_null))

        assert check_executable(result.plan, problem, allow_null) == []

    def test_branch_probabilities_sum_to_one(self):
        result = plan(load(*gen_medicate(4)))

        assert result.plan.branch_node.is_complete
        assert sum(result.probability.values()) == pytest.approx(1.0, abs=1e-9)


class TestBacktracking:
    """Snapshot restoration of the search context"""

    def test_single_action_revert(self):
        problem = load(SHOP_DOMAIN, SHOP_PROBLEM)
        ctx = SearchContext.initial(problem)
        before = ctx.canonical()
        mark = ctx.checkpoint()
        action = Grounder(problem).actuation_instances(ctx.omega.current.head, ctx.s)[0]

        ctx.omega.pop_front()
        ctx.s = apply_effects(action, ctx.s)
        ctx.pi.append(action)
        backtrack(ctx, mark)

        assert ctx.canonical() == before
        assert ctx.stats.backtracks == 1

    def test_method_revert_restores_uninstantiated_task(self):
        problem = load(TRAP_DOMAIN, TRAP_PROBLEM)
        ctx = SearchContext.initial(problem)
        mark = ctx.checkpoint()
        task = ctx.omega.current
        method = Grounder(problem).method_instances(task.head, ctx.s)[0]
        task.chosen = Instantiation(method.key, method.cost, method)
        task.candidates = {}
        update_costs(task)
        ctx.omega.decompose(task, method.subtasks)

        backtrack(ctx, mark)

        restored = ctx.omega.current
        assert restored.head == Literal("deliver")
        assert restored.chosen is None
        assert restored.children == []
        assert restored.cost == 0

    @pytest.mark.parametrize("instance", [gen_medicate(3), gen_zenotravel("late"), gen_zenotravel("tight")])
    def test_random_walks(self, instance):
        problem = load(*instance)
        rng = np.random.default_rng(2024)

        for _ in range(100):
            random_walk(problem, rng)
