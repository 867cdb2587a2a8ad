"""Benchmark domains and timing campaigns"""
from .generators import gen_medicate, gen_zenotravel
from .random_domains import gen_random
from .runner import CSV_COLUMNS, BenchResult, BenchSpec, run_bench, write_csv

__all__ = [
    "BenchResult",
    "BenchSpec",
    "CSV_COLUMNS",
    "gen_medicate",
    "gen_random",
    "gen_zenotravel",
    "run_bench",
    "write_csv",
]
