from abc import abstractmethod
from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, Field

from src.config import config
from src.logger import logger
from src.schema import SimConfig


class BaseEnvironment(BaseModel):
    """Base environment class for campaigns over one code and decoder"""

    name: str = Field(default="base_environment")
    description: str = Field(default="Base environment class")
    sim_config: SimConfig = Field(..., description="Campaign parameters")
    progress_callback: Any = Field(
        default=None, description="Async callback receiving progress updates"
    )

    class Config:
        arbitrary_types_allowed = True

    @classmethod
    async def create(cls, **kwargs) -> "BaseEnvironment":
        """Factory method to create and initialize an environment"""
        instance = cls(**kwargs)
        await instance.initialize()
        return instance

    async def initialize(self) -> None:
        """Initialize the environment. Override in subclasses."""
        cfg = self.sim_config
        logger.info(
            f"Initializing {self.name} (q={cfg.q}, m={cfg.m}, decoder={cfg.decoder.value}, "
            f"seed={cfg.seed})"
        )

    @property
    def workers(self) -> int:
        return self.sim_config.workers or config.simulation.workers

    async def report_progress(self, update: dict) -> None:
        if self.progress_callback:
            try:
                await self.progress_callback(update)
            except Exception as e:
                logger.warning(f"Progress callback failed: {e}")

    @abstractmethod
    async def run(self, **kwargs) -> Any:
        """Run the environment. Override in subclasses."""
        raise NotImplementedError("Subclasses must implement run method")

    async def cleanup(self) -> None:
        """Clean up resources when done"""
        logger.info(f"Cleaning up {self.name}")


class EnvironmentType(str, Enum):
    """Enum of available environment types"""

    SIMULATION = "simulation"
    BENCH = "bench"


class EnvironmentFactory:
    """Factory for creating the campaign environments"""

    @staticmethod
    async def create_environment(
        environment_type: EnvironmentType,
        sim_config: Optional[SimConfig] = None,
        **kwargs,
    ) -> BaseEnvironment:
        """Create and initialize an environment of the specified type

        Args:
            environment_type: The type of environment to create
            sim_config: The campaign parameters
            **kwargs: Additional arguments to pass to the environment constructor

        Returns:
            An initialized environment instance
        """
        from src.environment.bench import BenchEnvironment
        from src.environment.simulation import SimulationEnvironment

        environments = {
            EnvironmentType.SIMULATION: SimulationEnvironment,
            EnvironmentType.BENCH: BenchEnvironment,
        }

        environment_class = environments.get(EnvironmentType(environment_type))
        if not environment_class:
            raise ValueError(f"Unknown environment type: {environment_type}")

        return await environment_class.create(sim_config=sim_config, **kwargs)
