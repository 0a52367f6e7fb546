from .invariant_suite import FAULTS, CheckResult, InvariantSuite

__all__ = ['FAULTS', 'CheckResult', 'InvariantSuite']
