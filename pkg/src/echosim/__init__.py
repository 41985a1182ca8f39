"""Simulator and analysis toolkit for generalized time-reversal experiments.

A chaotic two-dimensional well is quantized in a truncated oscillator
basis and reduced to an energy window of its reference Hamiltonian E,
where the coupling B is banded. Experiments evolve a prepared state
forward under H1 = E + eps*B and backward under H2 = E - eps*B, locate
the compensation time t_r of the maximum return probability, and
collapse t_r/T onto the scaling curve f(lambda) of the ratio
lambda = eps_evol/eps_prep. A sign-randomized surrogate (ERMT) isolates
which parts of the behavior only depend on the band profile.
"""

__version__ = "0.1.0"

from .analysis import (CompensationResult, DecayFit, LambdaStarEstimate,
                       ScalingCurve, ScalingPoint, classify_regime,
                       combine_compensations, echo_condition,
                       estimate_lambda_star, find_tr, fit_gamma,
                       scaling_curve)
from .basis import (FULL_SCALE_REFERENCE, TAU_CL_REFERENCE, OscillatorBasis,
                    QuantizedModel, SpectralDiagnostics, build_basis,
                    build_coupling_matrix, build_hamiltonian_matrix,
                    diagonalize_reference, q_squared_elements, select_window,
                    spectral_diagnostics)
from .cache import load_model, model_hash, save_model
from .config import config_hash, load_config
from .ermt import randomize_signs
from .errors import ConfigError, EchosimError, NumericalError
from .experiment import (ExperimentCell, ExperimentRecord,
                         measure_survival_rate, median_survival_rate,
                         run_cell, run_sweep, surface_with_level)
from .prepare import (PreparationSpec, coherent_state, eigenstate_preparation,
                      ergodic_preparation, lambda_value, participation_ratio,
                      prepare_state, random_superposition, solve_momentum)
from .propagate import (EchoTrace, EvolutionPair, echo_trace, evolve,
                        fidelity_trace, return_probability, surface,
                        survival_trace)

__all__ = [
    "__version__",
    "CompensationResult", "DecayFit", "LambdaStarEstimate", "ScalingCurve",
    "ScalingPoint", "classify_regime", "combine_compensations",
    "echo_condition", "estimate_lambda_star", "find_tr", "fit_gamma",
    "scaling_curve",
    "FULL_SCALE_REFERENCE", "TAU_CL_REFERENCE", "OscillatorBasis",
    "QuantizedModel", "SpectralDiagnostics", "build_basis",
    "build_coupling_matrix", "build_hamiltonian_matrix",
    "diagonalize_reference", "q_squared_elements", "select_window",
    "spectral_diagnostics",
    "load_model", "model_hash", "save_model",
    "config_hash", "load_config",
    "randomize_signs",
    "ConfigError", "EchosimError", "NumericalError",
    "ExperimentCell", "ExperimentRecord", "measure_survival_rate",
    "median_survival_rate", "run_cell", "run_sweep", "surface_with_level",
    "PreparationSpec", "coherent_state", "eigenstate_preparation",
    "ergodic_preparation", "lambda_value", "participation_ratio",
    "prepare_state", "random_superposition", "solve_momentum",
    "EchoTrace", "EvolutionPair", "echo_trace", "evolve", "fidelity_trace",
    "return_probability", "surface", "survival_trace",
]
