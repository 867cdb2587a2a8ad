"""DSL text for the medicate and zenotravel benchmark domains"""
from typing import Optional, Sequence, Tuple

from model.errors import ValidationError

SCENARIOS = ("late", "tight")

MEDICATE_DOMAIN = """\
; Medicate: diagnose the patient, then apply the remedy for the observed condition.
; The healthy outcome needs no real cure; its remedy is a no-op of zero cost.
(defdomain medicate (
  (:sensing !diagnose (?p)
    ((patient ?p))
    (:observe (condition ?p ?c))
    :prob 1.0)
  (:operator !medicate (?p ?c)
    ((condition ?p ?c))
    (:add (cured ?p))
    (:delete (condition ?p ?c))
    :prob 1.0)
  (:method treat-patient (?p)
    ((patient ?p))
    (:subtasks (!diagnose ?p) (cure ?p)))
  (:method cure (?p)
    ((condition ?p ?c))
    (:subtasks (!medicate ?p ?c)))
))
"""

ZENOTRAVEL_DOMAIN = """\
; ZenoTravel: one plane carries passengers along a chain of airports.
; Zoom flies faster but burns more fuel and needs a refuel at an unoccupied supplier.
; Deadlines are static: (late-arrival ?c) forbids plain flights into ?c.
(defdomain zenotravel (
  (:operator !board-passenger (?n) () (:add (boarded ?n)))
  (:operator !debark-passenger (?n) () (:add (debarked ?n)) (:delete (boarded ?n)))
  (:sensing !observe-supplier (?c)
    ((plane-at ?c))
    (:observe (supplier ?c ?s)))
  (:operator !refuel-at (?c)
    ((plane-at ?c) (supplier ?c unoccupied))
    (:add (fuelled)))
  (:operator !fly (?x ?y)
    ((plane-at ?x) (fly-fuel ?x ?y) (not (late-arrival ?y)))
    (:add (plane-at ?y))
    (:delete (plane-at ?x)))
  (:operator !zoom (?x ?y)
    ((plane-at ?x) (fuelled) (zoom-fuel ?x ?y) (destination ?d))
    (:add (plane-at ?y))
    (:delete (plane-at ?x) (fuelled) (late-arrival ?d)))
  (:method trip (?x ?y ?up ?down)
    ((plane-at ?x))
    (:subtasks (!observe-supplier ?x) (leg ?x ?y ?up ?down)))
  (:method leg (?x ?y ?up ?down)
    ()
    (:subtasks (!board-passenger ?up) (!fly ?x ?y) (!debark-passenger ?down))
    :name leg-fly)
  (:method leg (?x ?y ?up ?down)
    ()
    (:subtasks (!refuel-at ?x) (!board-passenger ?up) (!zoom ?x ?y) (!debark-passenger ?down))
    :name leg-zoom)
))
"""

SUPPLIER_USABLE = 0.9
SUPPLIER_OCCUPIED = 0.1
SUPPLIER_COST = {"unoccupied": 100, "occupied": 400}
FLY_FUEL = {("a", "b"): 100, ("b", "c"): 120}
ZOOM_FUEL = {("a", "b"): 250, ("b", "c"): 300}


def gen_medicate(n: int, distribution: Optional[Sequence[float]] = None) -> Tuple[str, str]:
    """Domain and problem text for a patient with n possible infections or none.

    distribution gives the n + 1 outcome probabilities (infections first, then
    healthy); uniform when omitted.
    """
    if n < 1:
        raise ValidationError(f"medicate needs n >= 1 diseases, got {n}")
    outcomes = [f"d{i}" for i in range(1, n + 1)] + ["healthy"]
    if distribution is None:
        distribution = [1.0 / len(outcomes)] * len(outcomes)
    if len(distribution) != len(outcomes):
        raise ValidationError(f"medicate distribution needs {len(outcomes)} probabilities")

    belief = "\n".join(f"    ((condition p1 {o}) {p!r})" for o, p in zip(outcomes, distribution))
    costs = "\n".join(f"    ((condition p1 {o}) {0 if o == 'healthy' else 1})" for o in outcomes)
    problem = (
        f"(defproblem medicate-{n} medicate\n"
        f"  (:state (patient p1))\n"
        f"  (:belief\n{belief})\n"
        f"  (:tasks (treat-patient p1))\n"
        f"  (:cost\n    ((patient p1) 1)\n{costs}))\n"
    )
    return MEDICATE_DOMAIN, problem


def gen_zenotravel(scenario: str) -> Tuple[str, str]:
    """A -> B -> C transport; the tight scenario forbids a plain flight into C"""
    if scenario not in SCENARIOS:
        raise ValidationError(f"zenotravel scenario must be one of {', '.join(SCENARIOS)}, got {scenario!r}")
    facts = ["(plane-at a)", "(destination c)"]
    facts += [f"(fly-fuel {x} {y})" for x, y in FLY_FUEL]
    facts += [f"(zoom-fuel {x} {y})" for x, y in ZOOM_FUEL]
    if scenario == "tight":
        facts.append("(late-arrival c)")

    beliefs = "\n".join(
        f"  (:belief ((supplier {c} unoccupied) {SUPPLIER_USABLE!r}) ((supplier {c} occupied) {SUPPLIER_OCCUPIED!r}))"
        for c in ("a", "b")
    )
    costs = [f"((supplier {c} {kind}) {v})" for c in ("a", "b") for kind, v in SUPPLIER_COST.items()]
    costs += [f"((fly-fuel {x} {y}) {v})" for (x, y), v in FLY_FUEL.items()]
    costs += [f"((zoom-fuel {x} {y}) {v})" for (x, y), v in ZOOM_FUEL.items()]
    problem = (
        f"(defproblem zenotravel-{scenario} zenotravel\n"
        f"  (:state {' '.join(facts)})\n"
        f"{beliefs}\n"
        f"  (:tasks (trip a b 20 10) (trip b c 30 40))\n"
        f"  (:cost\n    " + "\n    ".join(costs) + "))\n"
    )
    return ZENOTRAVEL_DOMAIN, problem
