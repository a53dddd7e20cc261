from .base_utility import BaseUtility
from .coverage_utility import CoverageUtility, coverage_value
from .linear_utility import LinearUtility
from models.graph import SequenceStructure
from utils.errors import InputError


# Utilities selectable by name from the command line.
UTILITIES = {
    "coverage": CoverageUtility,
    "linear": LinearUtility,
}


def build_utility(name: str, structure: SequenceStructure) -> BaseUtility:
    if name not in UTILITIES:
        raise InputError(f"unknown utility '{name}', expected one of {sorted(UTILITIES)}")
    return UTILITIES[name].from_structure(structure)
