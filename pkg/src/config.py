import threading


try:
    import tomllib
except ImportError:
    import tomli as tomllib

from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field


def get_project_root() -> Path:
    """Get the project root directory"""
    return Path(__file__).resolve().parent.parent


PROJECT_ROOT = get_project_root()


class FieldSettings(BaseModel):
    max_order: int = Field(
        65536, description="Largest supported field size q^2 (table-driven arithmetic)"
    )


class LoggingSettings(BaseModel):
    print_level: str = Field("OFF", description="Terminal log level, OFF disables it")
    logfile_level: str = Field("DEBUG", description="Log level of the file sink")
    logfile: bool = Field(True, description="Whether to write logs/<timestamp>.log")


class SimulationSettings(BaseModel):
    workers: int = Field(1, description="Worker processes for trial-level parallelism")
    report_dir: str = Field("reports", description="Directory for CSV/JSON reports")
    bench_runs: int = Field(
        10, description="Successful decodes whose median timings a bench reports"
    )
    bench_max_attempts: int = Field(
        200, description="Upper bound on decode attempts per bench weight"
    )


class AppConfig(BaseModel):
    field: FieldSettings = Field(default_factory=FieldSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)
    simulation: SimulationSettings = Field(default_factory=SimulationSettings)


class Config:
    _instance = None
    _lock = threading.Lock()
    _initialized = False

    def __new__(cls):
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self):
        if not self._initialized:
            with self._lock:
                if not self._initialized:
                    self._config: Optional[AppConfig] = None
                    self._load_initial_config()
                    self._initialized = True

    @staticmethod
    def _get_config_path() -> Path:
        root = PROJECT_ROOT
        config_path = root / "config" / "config.toml"
        if config_path.exists():
            return config_path
        example_path = root / "config" / "config.example.toml"
        if example_path.exists():
            return example_path
        raise FileNotFoundError("No configuration file found in config directory")

    def _load_config(self) -> dict:
        config_path = self._get_config_path()
        with config_path.open("rb") as f:
            return tomllib.load(f)

    def _load_initial_config(self):
        raw_config = self._load_config()

        config_dict = {
            section: raw_config[section]
            for section in ("field", "logging", "simulation")
            if isinstance(raw_config.get(section), dict)
        }

        self._config = AppConfig(**config_dict)

    @property
    def field(self) -> FieldSettings:
        return self._config.field

    @property
    def logging(self) -> LoggingSettings:
        return self._config.logging

    @property
    def simulation(self) -> SimulationSettings:
        return self._config.simulation

    @property
    def report_root(self) -> Path:
        """Directory reports are written to, resolved against the project root"""
        path = Path(self._config.simulation.report_dir)
        return path if path.is_absolute() else PROJECT_ROOT / path


config = Config()
