"""Campaign environments: Monte-Carlo simulation and timing bench."""

from src.environment.base import BaseEnvironment, EnvironmentFactory
from src.environment.bench import BenchEnvironment
from src.environment.simulation import SimulationEnvironment


__all__ = [
    "BaseEnvironment",
    "BenchEnvironment",
    "EnvironmentFactory",
    "SimulationEnvironment",
]
