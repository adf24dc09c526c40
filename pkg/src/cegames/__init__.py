"""Exact solver for cooperative export games under minimum quantity commitments."""

from importlib import resources
from pathlib import Path

from .allocation import (
    Allocation,
    Rule,
    delta_proportional,
    egalitarian_rate,
    excess,
    in_core,
    nea,
    proportional_rate,
    rho_egalitarian,
    rho_proportional,
)
from .coalition import brute_force_coalition, optimal_complementary, solve_coalition
from .game import CEGame, TUGame, build_game
from .instance import load_instance, parse_instance
from .model import CESituation
from .nucleolus import nucleolus

__all__ = [
    "Allocation",
    "CEGame",
    "CESituation",
    "Rule",
    "TUGame",
    "brute_force_coalition",
    "build_game",
    "delta_proportional",
    "egalitarian_rate",
    "example_path",
    "excess",
    "in_core",
    "load_instance",
    "nea",
    "nucleolus",
    "optimal_complementary",
    "parse_instance",
    "proportional_rate",
    "rho_egalitarian",
    "rho_proportional",
    "solve_coalition",
]


def example_path(k: int) -> Path:
    """Path of the bundled instance file for worked example ``k`` (1-5)."""
    return Path(str(resources.files(__package__) / "fixtures" / f"example{k}.yaml"))
