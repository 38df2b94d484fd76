"""
Core module for Orbita.

This module provides configuration loading and the parallel task manager
shared by the numerical modules and the CLI.
"""

from orbita.core.config import (
    THREADS_ENV_VAR,
    ConfigurationError,
    ExperimentSettings,
    SimConfig,
    experiment_params,
    load_settings,
    read_config_file,
    threads_from_env,
)
from orbita.core.parallel import ParallelManager, ParallelismMode, ProgressTracker

__all__ = [
    "THREADS_ENV_VAR",
    "ConfigurationError",
    "ExperimentSettings",
    "ParallelManager",
    "ParallelismMode",
    "ProgressTracker",
    "SimConfig",
    "experiment_params",
    "load_settings",
    "read_config_file",
    "threads_from_env",
]
