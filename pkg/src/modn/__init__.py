"""Mod-n function calculus and kaleidoscope superpositions of coherent states.

The package splits analytic functions into root-of-unity Fourier
components (mod-n functions), evaluates the resulting generalized
hyperbolic exponentials by two independent routes, realizes the matching
superpositions of coherent states on a truncated Fock space, and checks
the operator identities and coordinate-space formulas that tie the two
pictures together.
"""

from .core import (
    DEFAULT_SERIES,
    ModulusContext,
    SeriesConfig,
    check_component_index,
    derivative_index,
    make_context,
    modn_component,
    modn_exp_all,
    modn_exp_dft,
    modn_exp_series,
)
from .coordinate import (
    WaveFunctionGrid,
    hermite_values,
    modn_gaussian_exp,
    modn_hermite_generating_sum,
    probability_grid,
    quartet_closed_form,
    wavefunction,
    wavefunction_samples,
)
from .errors import (
    ComponentIndexError,
    DegenerateNormalizationError,
    EvaluationError,
    HermiteRangeError,
    InvalidModulusError,
    ModnError,
    NonConvergenceError,
    TruncationError,
    UnnormalizedStateError,
    UnsafeParameterError,
    UnsupportedFormulaError,
)
from .fock import (
    StateVector,
    coherent_state,
    default_dim,
    displacement_operator,
    kaleidoscope_dim,
    kaleidoscope_state,
    ladder_operators,
    modn_displacement,
)
from .identities import (
    IdentityReport,
    certified_block_norm,
    operator_modn_exp,
    operator_modn_exp_all,
    run_identity_suite,
    verify_addition_formulas,
    verify_exchange_identities,
    verify_mod2_factorization,
    verify_q_commutation,
)
from .observables import (
    CatUncertainty,
    ObservableReport,
    Uncertainty,
    cat_uncertainty_check,
    observable_report,
    photon_number_fock,
    photon_number_formula,
    uncertainty_formula,
    uncertainty_product,
)

__version__ = "0.1.0"

__all__ = [
    "CatUncertainty",
    "ComponentIndexError",
    "DEFAULT_SERIES",
    "DegenerateNormalizationError",
    "EvaluationError",
    "HermiteRangeError",
    "IdentityReport",
    "InvalidModulusError",
    "ModnError",
    "ModulusContext",
    "NonConvergenceError",
    "ObservableReport",
    "SeriesConfig",
    "StateVector",
    "TruncationError",
    "Uncertainty",
    "UnnormalizedStateError",
    "UnsafeParameterError",
    "UnsupportedFormulaError",
    "WaveFunctionGrid",
    "cat_uncertainty_check",
    "certified_block_norm",
    "check_component_index",
    "coherent_state",
    "default_dim",
    "derivative_index",
    "displacement_operator",
    "hermite_values",
    "kaleidoscope_dim",
    "kaleidoscope_state",
    "ladder_operators",
    "make_context",
    "modn_component",
    "modn_displacement",
    "modn_exp_all",
    "modn_exp_dft",
    "modn_exp_series",
    "modn_gaussian_exp",
    "modn_hermite_generating_sum",
    "observable_report",
    "operator_modn_exp",
    "operator_modn_exp_all",
    "photon_number_fock",
    "photon_number_formula",
    "probability_grid",
    "quartet_closed_form",
    "run_identity_suite",
    "uncertainty_formula",
    "uncertainty_product",
    "verify_addition_formulas",
    "verify_exchange_identities",
    "verify_mod2_factorization",
    "verify_q_commutation",
    "wavefunction",
    "wavefunction_samples",
]
