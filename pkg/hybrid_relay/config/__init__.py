"""Configuration, settings and scenario loading."""

from hybrid_relay.config.settings import SolverConfig, init_tracing

__all__ = ["SolverConfig", "init_tracing"]
