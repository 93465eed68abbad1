from .base import MetricCalculator
from .accuracy import AccuracyCalculator, mean_accuracy
from .graph_error import GraphErrorCalculator, gmse
from .regression_error import RegressionErrorCalculator, l_reg
