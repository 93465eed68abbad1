from .calculators import (
    MetricCalculator,
    AccuracyCalculator,
    GraphErrorCalculator,
    RegressionErrorCalculator,
    gmse,
    l_reg,
    mean_accuracy,
)
from .registry import MetricsRegistry
