from .config import ExperimentConfig, load_config, parse_config
from .experiment import RunReport, run_experiment
from .locality import locality_check
from .report import render_report
from .table import DataTable, read_table, write_table

__all__ = [
    "DataTable",
    "ExperimentConfig",
    "RunReport",
    "load_config",
    "locality_check",
    "parse_config",
    "read_table",
    "render_report",
    "run_experiment",
    "write_table",
]
