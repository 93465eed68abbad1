from .comparator import SeedOutcome, compare_methods
from .method_runner import MethodRun, evaluate_run, initialize_agents, run_metadata, run_method
from .metrics_report import ComparisonReport, MetricsReport

__all__ = [
    'compare_methods',
    'SeedOutcome',
    'MethodRun',
    'run_method',
    'run_metadata',
    'evaluate_run',
    'initialize_agents',
    'MetricsReport',
    'ComparisonReport',
]
