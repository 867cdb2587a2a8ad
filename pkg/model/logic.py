"""Literals, states and substitutions"""
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

from .errors import UnboundVariable, ValidationError


def is_variable(term: str) -> bool:
    """Variables are written with a leading '?'"""
    return term.startswith("?")


def format_number(value: float) -> str:
    """Canonical text for a numeric constant"""
    if float(value).is_integer():
        return str(int(value))
    return repr(float(value))


@dataclass(frozen=True, order=True)
class Literal:
    """A predicate applied to terms, with polarity"""
    predicate: str
    args: Tuple[str, ...] = ()
    positive: bool = True

    def __deepcopy__(self, memo):
        return self

    @property
    def atom(self) -> "Literal":
        """Positive version of this literal"""
        if self.positive:
            return self
        return Literal(self.predicate, self.args, True)

    def negate(self) -> "Literal":
        return Literal(self.predicate, self.args, not self.positive)

    @property
    def is_ground(self) -> bool:
        return not any(is_variable(a) for a in self.args)

    @property
    def variables(self) -> Tuple[str, ...]:
        seen: List[str] = []
        for arg in self.args:
            if is_variable(arg) and arg not in seen:
                seen.append(arg)
        return tuple(seen)

    @property
    def inner_text(self) -> str:
        return " ".join((self.predicate,) + self.args)

    def __str__(self) -> str:
        text = f"({self.inner_text})"
        return text if self.positive else f"(not {text})"


def literal_variables(literals: Iterable[Literal]) -> FrozenSet[str]:
    return frozenset(v for lit in literals for v in lit.variables)


def sort_literals(literals: Iterable[Literal]) -> List[Literal]:
    return sorted(literals, key=lambda lit: (lit.predicate, lit.args, not lit.positive))


@dataclass(frozen=True)
class State:
    """A finite set of ground positive atoms"""
    atoms: FrozenSet[Literal] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "atoms", frozenset(self.atoms))
        for atom in self.atoms:
            if not atom.positive or not atom.is_ground:
                raise ValidationError(f"state atom {atom} must be ground and positive")

    def __deepcopy__(self, memo):
        return self

    def __contains__(self, literal: Literal) -> bool:
        return literal in self.atoms

    def __iter__(self) -> Iterator[Literal]:
        return iter(sort_literals(self.atoms))

    def __len__(self) -> int:
        return len(self.atoms)

    def holds(self, literal: Literal) -> bool:
        """Closed-world truth of a ground literal"""
        if literal.positive:
            return literal in self.atoms
        return literal.atom not in self.atoms

    def apply(self, add: Iterable[Literal], delete: Iterable[Literal]) -> "State":
        """(s - delete) | add"""
        return State((self.atoms - frozenset(delete)) | frozenset(add))

    def union(self, fragment: Iterable[Literal]) -> "State":
        return State(self.atoms | frozenset(fragment))

    def canonical(self) -> str:
        return " ".join(str(atom) for atom in self)


@dataclass(frozen=True)
class Substitution:
    """Mapping from variables to constants"""
    bindings: Dict[str, str] = field(default_factory=dict)

    def __getitem__(self, variable: str) -> str:
        return self.bindings[variable]

    def __contains__(self, variable: str) -> bool:
        return variable in self.bindings

    def bind(self, variable: str, value: str) -> Optional["Substitution"]:
        """Extend with variable -> value; None on a conflicting binding"""
        current = self.bindings.get(variable)
        if current is not None:
            return self if current == value else None
        merged = dict(self.bindings)
        merged[variable] = value
        return Substitution(merged)

    def term(self, term: str) -> str:
        if is_variable(term):
            return self.bindings.get(term, term)
        return term

    def apply(self, literal: Literal) -> Literal:
        """Replace bound variables; free ones are left in place"""
        return Literal(literal.predicate, tuple(self.term(a) for a in literal.args), literal.positive)

    def ground(self, literal: Literal) -> Literal:
        """Replace variables and insist the result is ground"""
        result = self.apply(literal)
        if not result.is_ground:
            free = ", ".join(v for v in result.variables)
            raise UnboundVariable(f"unbound {free} in {literal}")
        return result

    def canonical(self) -> str:
        return ",".join(f"{k}={v}" for k, v in sorted(self.bindings.items()))


EMPTY = Substitution()


def unify(template: Literal, ground: Literal, sigma: Substitution = EMPTY) -> Optional[Substitution]:
    """Match a lifted template against a ground literal, polarity ignored"""
    if template.predicate != ground.predicate or len(template.args) != len(ground.args):
        return None
    result: Optional[Substitution] = sigma
    for term, value in zip(template.args, ground.args):
        if is_variable(term):
            result = result.bind(term, value)
            if result is None:
                return None
        elif term != value:
            return None
    return result


def match_preconditions(pre: Iterable[Literal], sigma: Substitution, state: State) -> Iterator[Substitution]:
    """All extensions of sigma under which every precondition holds in state"""
    literals = list(pre)
    positives = sort_literals(lit for lit in literals if lit.positive)
    negatives = [lit for lit in literals if not lit.positive]
    by_predicate: Dict[str, List[Literal]] = {}
    for atom in state:
        by_predicate.setdefault(atom.predicate, []).append(atom)

    def join(index: int, current: Substitution) -> Iterator[Substitution]:
        if index == len(positives):
            if all(state.holds(current.ground(lit)) for lit in negatives):
                yield current
            return
        template = current.apply(positives[index])
        for atom in by_predicate.get(template.predicate, ()):
            extended = unify(template, atom, current)
            if extended is not None:
                yield from join(index + 1, extended)

    yield from join(0, sigma)


def applicable(pre: Iterable[Literal], sigma: Substitution, state: State) -> bool:
    """True iff every precondition, grounded by sigma, holds in state"""
    return all(state.holds(sigma.ground(lit)) for lit in pre)
