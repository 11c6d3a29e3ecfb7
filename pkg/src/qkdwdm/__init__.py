"""Noise, link-budget and key-rate model for QKD sharing a CWDM fiber with classical channels."""
from .errors import ConfigurationError, DomainError, EstimationError, PlanningError, QkdWdmError
from .keyrate import DecoyProtocolSpec, IntensityClass, LinkParams, decoy_estimate, key_rate
from .planner import ChannelAssignment, PlanConstraints, evaluate_assignment, plan, search
from .scenario import Scenario, default_scenario, evaluate_point, load_scenario, run_sweep, validate

__all__ = [
    "ChannelAssignment",
    "ConfigurationError",
    "DecoyProtocolSpec",
    "DomainError",
    "EstimationError",
    "IntensityClass",
    "LinkParams",
    "PlanConstraints",
    "PlanningError",
    "QkdWdmError",
    "Scenario",
    "decoy_estimate",
    "default_scenario",
    "evaluate_assignment",
    "evaluate_point",
    "key_rate",
    "load_scenario",
    "plan",
    "run_sweep",
    "search",
    "validate",
]

__version__ = "0.1.0"
