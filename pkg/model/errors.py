"""Error hierarchy shared by the parser, planner, oracle and CLI"""
from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class SourceSpan:
    """Position of an S-expression in its source text (1-based line and column)"""
    file: str
    line: int
    column: int
    end_line: int
    end_column: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


class HQCPError(Exception):
    """Base class for every error raised by the planner stack"""

    exit_code = 3

    def __init__(self, message: str, span: Optional[SourceSpan] = None):
        super().__init__(message)
        self.message = message
        self.span = span

    def __str__(self) -> str:
        if self.span is not None:
            return f"{self.span}: {self.message}"
        return self.message


class InputError(HQCPError):
    """Faults in user-supplied domain, problem or plan files"""

    exit_code = 2


class ParseError(InputError):
    """Syntax fault in an S-expression or plan document"""


class ValidationError(InputError):
    """Well-formed input that violates a type invariant"""


class UnknownTask(ValidationError):
    """A task head names no operator and no method"""


class InvalidDistribution(ValidationError):
    """Probabilities outside (0, 1] or not summing to 1"""


class AmbiguousBelief(ValidationError):
    """An observation template matches more than one pending belief state"""


class UnboundVariable(InputError):
    """A substitution leaves a variable free where a ground term is required"""


class NoMatchingBelief(InputError):
    """A sensing task observes a predicate with no pending belief state"""


class BudgetExceeded(InputError):
    """Exhaustive enumeration ran past its node budget"""


class PlanFormatError(InputError):
    """A JSON plan document does not match the frozen plan schema"""


class DepthExceeded(HQCPError):
    """Search recursion passed the configured depth limit"""


class BranchMissing(HQCPError):
    """Plan execution reached an observation with no matching branch"""

    exit_code = 1
