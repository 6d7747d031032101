from dataclasses import dataclass
import logging
import os
from pathlib import Path
from typing import List, Optional, Dict, Any, Tuple
from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator, model_validator

from .constants import Normalization, SimulationKind


class _YamlModel(BaseModel):

    @classmethod
    def from_yaml(cls, yaml_path: str):
        import yaml
        with open(yaml_path, "r") as f:
            config_dict = yaml.safe_load(f) or {}
        return cls(**config_dict)


class BasisConfig(_YamlModel):
    n_intervals: int = Field(15, ge=1)
    degree: int = Field(3, ge=0)

    @property
    def n_basis(self) -> int:
        return self.n_intervals + self.degree


class ModelConfig(_YamlModel):
    frequencies: List[float] = Field(default_factory=list)
    extra_frequencies: List[float] = Field(default_factory=list)
    basis: BasisConfig = Field(default_factory=BasisConfig)
    penalty_order: int = Field(2, ge=1)
    taus: Optional[List[float]] = None

    @field_validator("frequencies", "extra_frequencies")
    @classmethod
    def _positive_distinct(cls, values: List[float]) -> List[float]:
        if any(f <= 0 for f in values):
            raise ValueError("frequencies must be positive")
        if len(set(values)) != len(values):
            raise ValueError("frequencies must be distinct")
        return values

    @property
    def n_harmonics(self) -> int:
        return len(self.frequencies) + len(self.extra_frequencies)

    @property
    def n_groups(self) -> int:
        return 2 * self.n_harmonics + 1

    @model_validator(mode="after")
    def _check_taus(self) -> "ModelConfig":
        if self.penalty_order >= self.basis.n_basis:
            raise ValueError(
                f"penalty order r={self.penalty_order} must be smaller than J={self.basis.n_basis}"
            )
        if self.taus is not None:
            if len(self.taus) == 1:
                self.taus = self.taus * self.n_groups
            if len(self.taus) != self.n_groups:
                raise ValueError(f"expected {self.n_groups} taus, got {len(self.taus)}")
            if any(tau < 0 for tau in self.taus):
                raise ValueError("taus must be non-negative")
        return self

    def resolved_taus(self) -> List[float]:
        return list(self.taus) if self.taus is not None else [0.0] * self.n_groups

    @property
    def all_frequencies(self) -> List[float]:
        return list(self.frequencies) + list(self.extra_frequencies)

    @property
    def n_columns(self) -> int:
        return self.basis.n_basis * self.n_groups

    def penalty_spec(self):
        from .basis.penalty import PenaltySpec
        return PenaltySpec(order=self.penalty_order, taus=self.resolved_taus(),
                           n_basis=self.basis.n_basis)


class TuningConfig(_YamlModel):
    frequencies: List[float] = Field(default_factory=list)
    extra_frequencies: List[float] = Field(default_factory=list)
    tau_grid: List[float] = Field(default_factory=lambda: [0.0])
    tau_grids: Optional[List[List[float]]] = None
    group_sizes: Optional[List[int]] = None
    n_intervals: List[int] = Field(default_factory=lambda: [15])
    degrees: List[int] = Field(default_factory=lambda: [3])
    penalty_orders: List[int] = Field(default_factory=lambda: [2])
    harmonic_counts: Optional[List[int]] = None
    threads: int = Field(1, ge=1)

    @model_validator(mode="after")
    def _check_grid(self) -> "TuningConfig":
        if not self.tau_grid:
            raise ValueError("tau grid must not be empty")
        grids = self.group_grids()
        if any(not grid for grid in grids):
            raise ValueError("every tau group needs at least one candidate")
        if any(tau < 0 for grid in grids for tau in grid):
            raise ValueError("tau grid values must be non-negative")
        if self.group_sizes is not None:
            if any(size < 1 for size in self.group_sizes):
                raise ValueError("tau group sizes must be positive")
            for k in self.candidate_harmonics():
                n_taus = 2 * (k + len(self.extra_frequencies)) + 1
                if sum(self.group_sizes) != n_taus:
                    raise ValueError(
                        f"tau group sizes sum to {sum(self.group_sizes)} but K={k} needs {n_taus} taus"
                    )
        elif self.tau_grids is not None and len(self.tau_grids) != 1:
            raise ValueError("tau_grids with more than one group needs group_sizes")
        for k in self.candidate_harmonics():
            if k > len(self.frequencies):
                raise ValueError(f"harmonic count {k} exceeds the {len(self.frequencies)} frequencies given")
        for n in self.n_intervals:
            for d in self.degrees:
                for r in self.penalty_orders:
                    if r >= n + d:
                        raise ValueError(f"penalty order r={r} must be smaller than J={n + d}")
        return self

    def group_grids(self) -> List[List[float]]:
        if self.tau_grids is not None:
            return [list(grid) for grid in self.tau_grids]
        n_groups = len(self.group_sizes) if self.group_sizes is not None else 1
        return [list(self.tau_grid) for _ in range(n_groups)]

    def candidate_harmonics(self) -> List[int]:
        if self.harmonic_counts is not None:
            return list(self.harmonic_counts)
        return [len(self.frequencies)]

    def expand_taus(self, group_values: Tuple[float, ...], n_harmonics: int) -> List[float]:
        """Spread one value per group over the 2K+1 taus of a configuration."""
        n_taus = 2 * (n_harmonics + len(self.extra_frequencies)) + 1
        if self.group_sizes is None:
            return [float(group_values[0])] * n_taus
        taus: List[float] = []
        for value, size in zip(group_values, self.group_sizes):
            taus.extend([float(value)] * size)
        return taus


class SpectrumConfig(_YamlModel):
    t0: float
    delta: float = Field(..., gt=0)
    grid_tol: Optional[float] = Field(None, ge=0)
    n_grid: Optional[int] = Field(None, ge=1)
    bandwidth: float = Field(0.3, gt=0)
    band: Optional[Tuple[float, float]] = None
    flat_ratio: Optional[float] = Field(None, gt=1)
    presmooth: bool = True
    normalization: Normalization = Normalization.KERNEL


class SimulationConfig(_YamlModel):
    kind: SimulationKind
    seed: int = 0
    n: Optional[int] = Field(None, ge=1)
    sigma2: Optional[float] = Field(None, ge=0)
    n_design: int = Field(28799, ge=2)
    n_blocks: int = Field(50, ge=1)
    block_len: int = Field(10, ge=1)
    keep: int = Field(30, ge=1)


class RunConfig(_YamlModel):
    command: str
    input: Optional[str] = None
    output_dir: str = "results"
    model: Optional[ModelConfig] = None
    tuning: Optional[TuningConfig] = None
    spectrum: Optional[SpectrumConfig] = None
    simulation: Optional[SimulationConfig] = None
    level: float = Field(0.95, gt=0, lt=1)
    value_column: Optional[str] = None

    def echo(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")


@dataclass
class Settings:
    output_dir: str = 'results'
    threads: int = 1
    log_level: str = 'INFO'
    grid_tol_factor: float = 1e-6
    deconv_floor: float = 1e-12
    imag_tol: float = 1e-6
    flat_ratio: float = 3.0
    jitter: float = 1e-10

    def validate(self) -> None:
        errors = []

        if self.threads < 1:
            errors.append("LCMOD_THREADS must be >= 1")

        if self.grid_tol_factor < 0:
            errors.append("LCMOD_GRID_TOL_FACTOR must be >= 0")

        if not 0 < self.deconv_floor < 1:
            errors.append("LCMOD_DECONV_FLOOR must lie in (0, 1)")

        if self.imag_tol <= 0:
            errors.append("LCMOD_IMAG_TOL must be > 0")

        if self.flat_ratio <= 1:
            errors.append("LCMOD_FLAT_RATIO must be > 1")

        if self.jitter < 0:
            errors.append("LCMOD_JITTER must be >= 0")

        if logging.getLevelName(self.log_level.upper()) == f"Level {self.log_level.upper()}":
            errors.append(f"LCMOD_LOG_LEVEL '{self.log_level}' is not a logging level")

        if errors:
            raise ValueError(f"Invalid configuration: {', '.join(errors)}")

    def get_spectral_config(self) -> Dict[str, float]:
        return {
            "deconv_floor": self.deconv_floor,
            "imag_tol": self.imag_tol,
            "flat_ratio": self.flat_ratio,
        }


class ConfigLoader:
    def __init__(self, env_path: Optional[Path] = None):
        self.env_path = env_path or Path.cwd() / '.env'
        self.logger = logging.getLogger("lc_modulation.config")

    @staticmethod
    def _get_float_env(key: str, default: float) -> float:
        value = os.getenv(key)
        if value is None or value == "":
            return default
        try:
            return float(value)
        except ValueError:
            raise ValueError(f"{key} must be a number, got '{value}'")

    @staticmethod
    def _get_int_env(key: str, default: int) -> int:
        value = os.getenv(key)
        if value is None or value == "":
            return default
        try:
            return int(value)
        except ValueError:
            raise ValueError(f"{key} must be an integer, got '{value}'")

    def load(self) -> Settings:
        if self.env_path.exists():
            load_dotenv(self.env_path, override=False)
            self.logger.debug(f"Loaded environment overrides from {self.env_path}")

        settings = Settings(
            output_dir=os.getenv('LCMOD_OUTPUT_DIR', 'results'),
            threads=self._get_int_env('LCMOD_THREADS', 1),
            log_level=os.getenv('LCMOD_LOG_LEVEL', 'INFO'),
            grid_tol_factor=self._get_float_env('LCMOD_GRID_TOL_FACTOR', 1e-6),
            deconv_floor=self._get_float_env('LCMOD_DECONV_FLOOR', 1e-12),
            imag_tol=self._get_float_env('LCMOD_IMAG_TOL', 1e-6),
            flat_ratio=self._get_float_env('LCMOD_FLAT_RATIO', 3.0),
            jitter=self._get_float_env('LCMOD_JITTER', 1e-10),
        )

        settings.validate()
        return settings


_config: Optional[Settings] = None


def get_config() -> Settings:
    global _config
    if _config is None:
        loader = ConfigLoader()
        _config = loader.load()
    return _config


def reset_config() -> None:
    global _config
    _config = None
