# Harness Module
# Runs the entropy-bound argument on concrete instances and reports every step
from .certificates import (
    CERTIFICATE_COLUMNS,
    ChainStep,
    ProofCertificate,
    certify,
    run_chain,
    run_instance,
    trace_chain,
)
from .experiment import ExperimentSpec, scaling_width
from .selftest import CheckResult, run_selftest
from .sprime import S_PRIME_COLUMNS, SPrimeReport, enumerate_s_prime, region_overlaps
from .sweep import SUMMARY_COLUMNS, SWEEP_COLUMNS, SweepResult, entropy_growth_sweep
