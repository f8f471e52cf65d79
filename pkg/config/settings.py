# Simulator Configuration
# =======================
# This file holds all configuration in ONE place: numerical tolerances,
# resource guardrails, experiment defaults and output formatting.

import math
import os
from dataclasses import dataclass
from typing import Optional


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name, "")
    return int(value) if value.strip() else default


def _env_flag(name: str, default: bool) -> bool:
    value = os.getenv(name, "")
    if not value.strip():
        return default
    return value.strip().lower() in ("1", "true", "yes", "on")


@dataclass
class ToleranceConfig:
    """Numerical tolerances used by assertions and certificates."""
    assertion: float = 1e-10          # norm, charge and inequality checks
    identity: float = 1e-12           # exact identities (unitarity, overlaps)
    certificate_slack: float = 1e-9   # proof-chain inequalities
    clip_threshold: float = 1e-14     # Schmidt values below this are dropped
    noise_floor: float = 1e-8         # decay fits ignore q below this
    alpha_one_window: float = 1e-6    # Renyi index this close to 1 -> von Neumann


@dataclass
class ResourceConfig:
    """Guardrails on memory and enumeration size."""
    # d^N must satisfy N * log2(d) <= this exponent
    max_amplitude_exponent: int = _env_int("QUDIT_MAX_EXPONENT", 30)
    enumeration_cap: int = 4096
    workers: int = _env_int("QUDIT_WORKERS", 1)


@dataclass
class ExperimentDefaults:
    """Defaults for the command line when neither a flag nor a config file sets a value."""
    N: int = 10
    d: int = 2
    depth: int = 10
    m: int = 6
    alpha: float = 2.0
    seed: int = 7
    realizations: int = 20
    p_degree: int = 2
    scaling_c: float = 2.0
    log_base: float = math.e


@dataclass
class OutputConfig:
    """How results are written."""
    float_digits: int = 17
    progress: bool = _env_flag("QUDIT_PROGRESS", False)


@dataclass
class AppConfig:
    """Master configuration for the entire application."""
    tolerances: Optional[ToleranceConfig] = None
    resources: Optional[ResourceConfig] = None
    experiment: Optional[ExperimentDefaults] = None
    output: Optional[OutputConfig] = None

    def __post_init__(self):
        # Nested groups get their defaults here, after the dataclass __init__
        if self.tolerances is None:
            self.tolerances = ToleranceConfig()
        if self.resources is None:
            self.resources = ResourceConfig()
        if self.experiment is None:
            self.experiment = ExperimentDefaults()
        if self.output is None:
            self.output = OutputConfig()


# Other files can do: from config import config
config = AppConfig()
