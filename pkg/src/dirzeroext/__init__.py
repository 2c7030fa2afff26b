"""Directed minimum 0-extension: classification, solving and hardness gadgets."""
from .metric import (DirectedMetric, INF, validate_metric, interval, ratio,
                     find_median, is_modular, is_mu_shortest, delta,
                     minimal_medianless_triple)

__all__ = ["DirectedMetric", "INF", "validate_metric", "interval", "ratio",
           "find_median", "is_modular", "is_mu_shortest", "delta",
           "minimal_medianless_triple"]
