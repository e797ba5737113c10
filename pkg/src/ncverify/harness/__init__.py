"""Scenario-driven verification harness."""

from .checks import CHECKS, ReportRow, RunOptions, run_check, run_scenarios
from .randgen import PolySpec, random_polynomial
from .scenario import RandomSource, Scenario, load_config, scenario_from_dict

__all__ = [
    "CHECKS",
    "PolySpec",
    "RandomSource",
    "ReportRow",
    "RunOptions",
    "Scenario",
    "load_config",
    "random_polynomial",
    "run_check",
    "run_scenarios",
    "scenario_from_dict",
]
