"""Small random HTN instances for differential testing against the oracle"""
from typing import List, Tuple

import numpy as np

UNARY = ("p", "q", "r")
PROBS = (1.0, 1.0, 0.9, 0.8)


def _pick(rng: np.random.Generator, items):
    return items[int(rng.integers(len(items)))]


def _unary_condition(rng: np.random.Generator, var: str) -> str:
    literal = f"({_pick(rng, UNARY)} {var})"
    return literal if rng.random() < 0.7 else f"(not {literal})"


def gen_random(seed: int, levels: int = 2, max_methods: int = 3, max_constants: int = 6) -> Tuple[str, str]:
    """Domain and problem text for a random instance.

    The hierarchy has up to `levels` layers of compound tasks over one primitive
    layer, at most `max_methods` methods per task and two subtasks per method.
    About half of the instances observe a two-valued mode before the main tasks.
    Every compound task keeps one method that bottoms out in !fallback, whose
    only precondition (ready ?x) holds for every constant and is never deleted,
    so every instance is solvable.
    """
    rng = np.random.default_rng(seed)
    constants = [f"c{i}" for i in range(int(rng.integers(2, max_constants + 1)))]
    sensing = bool(rng.random() < 0.5)

    items: List[str] = []
    primitives = []
    for i in range(int(rng.integers(2, 5))):
        name = f"!op{i}"
        pre = [_unary_condition(rng, "?x")]
        target = "?x"
        if rng.random() < 0.5:
            pre.append("(link ?x ?y)")
            target = "?y"
        add = f"({_pick(rng, UNARY)} {target})"
        delete = f"({_pick(rng, UNARY)} ?x)"
        effects = f"(:add {add})"
        if delete != add:
            effects += f" (:delete {delete})"
        items.append(f"  (:operator {name} (?x) ({' '.join(pre)}) {effects} :prob {_pick(rng, PROBS)!r})")
        primitives.append(name)

    items.append("  (:operator !fallback (?x) ((ready ?x)) (:add (r ?x)))")

    if sensing:
        items.append("  (:sensing !sense (?x) () (:observe (mode ?x ?m)))")

    below = primitives
    fallback = "!fallback"
    for level in range(1, levels + 1):
        tasks = [f"t{level}-{j}" for j in range(2 if level < levels else 1)]
        for task in tasks:
            for _ in range(int(rng.integers(1, max_methods + 1))):
                pre = []
                arg = "?x"
                roll = rng.random()
                if roll < 0.3:
                    pre.append(_unary_condition(rng, "?x"))
                elif roll < 0.5:
                    pre.append("(link ?x ?z)")
                    arg = "?z"
                elif sensing and roll < 0.65:
                    pre.append(f"(mode ?x {_pick(rng, ('on', 'off'))})")
                subtasks = [f"({_pick(rng, below)} {_pick(rng, ('?x', arg))})" for _ in range(int(rng.integers(1, 3)))]
                items.append(f"  (:method {task} (?x) ({' '.join(pre)}) (:subtasks {' '.join(subtasks)}))")
            items.append(f"  (:method {task} (?x) () (:subtasks ({fallback} ?x)) :name {task}-fallback)")
        fallback = tasks[0]
        below = tasks

    domain = f"; random instance, seed {seed}\n(defdomain random (\n" + "\n".join(items) + "\n))\n"

    facts = [f"({u} {c})" for u in UNARY for c in constants if rng.random() < 0.5]
    facts += [f"(ready {c})" for c in constants]
    facts += [f"(link {a} {b})" for a in constants for b in constants if a != b and rng.random() < 0.3]
    costs = [f"(({u} {c}) {int(rng.integers(0, 10))})" for u in UNARY for c in constants if rng.random() < 0.6]
    costs += [f"((link {a} {b}) {int(rng.integers(0, 10))})" for a in constants for b in constants if a != b]
    costs += [f"((ready {c}) {int(rng.integers(3, 13))})" for c in constants]

    tasks = [f"(!sense {constants[0]})"] if sensing else []
    tasks += [f"({_pick(rng, below)} {_pick(rng, constants)})" for _ in range(int(rng.integers(1, 3)))]
    sections = [f"(defproblem random-{seed} random", f"  (:state {' '.join(facts)})"]
    if sensing:
        on = _pick(rng, (0.5, 0.3, 0.7))
        sections.append(f"  (:belief ((mode {constants[0]} on) {on!r}) ((mode {constants[0]} off) {round(1 - on, 10)!r}))")
        costs += [f"((mode {constants[0]} on) {int(rng.integers(0, 10))})"]
    sections.append(f"  (:tasks {' '.join(tasks)})")
    sections.append(f"  (:cost {' '.join(costs)}))")
    return domain, "\n".join(sections) + "\n"
