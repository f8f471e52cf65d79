# Transport Module
# Charge profiles, the random-walk oracle and diffusive-decay diagnostics
from .decay import DecayFit, bulk_charge_decay, bulk_charge_series, fit_decay, oracle_charge_decay
from .ensemble import (
    EnsembleProfile,
    MarkovCheck,
    ensemble_average_profile,
    ensemble_profile_series,
    markov_exceedance,
    mean_and_stderr,
    realization_generators,
    run_realizations,
)
from .profile import ChargeProfile, ConditionCheck, charge_profile, condition_inequality_check
from .random_walk import average_bonds, random_walk_oracle
