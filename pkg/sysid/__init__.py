"""
sysid: sparse nonlinear system identification.

Entropic Regression plus the classical sparse-regression baselines,
benchmark-system generators and a reproducible benchmark harness.
"""

__version__ = "0.1.0"
