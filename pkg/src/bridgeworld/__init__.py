"""Virtuous agents in BridgeWorld: a deterministic tragedy-of-the-commons simulator."""

from .experiment import Condition, death_rate, run_condition, run_suite
from .rng import RngStream
from .virtue import Character, EType, EventKind, LearnConfig, MoralEvent, VirtueKind
from .world import WorldConfig, init_world, run_cycle

__all__ = [
    "Character", "Condition", "EType", "EventKind", "LearnConfig", "MoralEvent",
    "RngStream", "VirtueKind", "WorldConfig", "death_rate", "init_world",
    "run_condition", "run_cycle", "run_suite",
]
__version__ = "0.1.0"
