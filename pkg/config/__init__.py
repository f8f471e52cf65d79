# This file makes the 'config' folder a Python package
# You can import from it like: from config import config
from .settings import (
    AppConfig,
    ExperimentDefaults,
    OutputConfig,
    ResourceConfig,
    ToleranceConfig,
    config,
)
