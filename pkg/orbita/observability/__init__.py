"""
Observability module for Orbita.

This module provides logging configuration so that long integrations and
quadrature sweeps can be followed and diagnosed.
"""

from orbita.observability.logging_setup import configure_logging, get_logger

__all__ = ["configure_logging", "get_logger"]
