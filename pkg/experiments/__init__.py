from .decay_experiment import DECAY_COLUMNS, DecayRow, DecayExperiment, run_decay_experiment, fit_decay
from .width_tables import ProbeSweep, run_probe_sweep, run_width_table
from .report_generator import FORMATS, ReportGenerator, check_format

__all__ = [
    'DECAY_COLUMNS', 'DecayRow', 'DecayExperiment', 'run_decay_experiment', 'fit_decay',
    'ProbeSweep', 'run_probe_sweep', 'run_width_table',
    'FORMATS', 'ReportGenerator', 'check_format',
]
