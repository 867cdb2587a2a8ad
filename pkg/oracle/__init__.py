"""Ground-truth enumeration, admissibility checking and plan simulation"""
from .exhaustive import AdmissibilityViolation, ExhaustiveOracle, OracleResult, check_admissibility, oracle_plan
from .simulator import SimulationReport, ValidationReport, check_executable, simulate

__all__ = [
    "AdmissibilityViolation",
    "ExhaustiveOracle",
    "OracleResult",
    "SimulationReport",
    "ValidationReport",
    "check_admissibility",
    "check_executable",
    "oracle_plan",
    "simulate",
]
