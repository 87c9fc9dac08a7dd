"""Semiclassical eigenvalues and wave-corrected bound-state moments for
one-dimensional anharmonic wells, computed directly from the potential."""
from ._bm import (  # noqa: F401
    EigenEstimate,
    MomentEstimate,
    NumericState,
    OrderPair,
    PhaseSpaceCurve,
    Potential,
    TurningPoints,
    WaveField,
    a1_rate,
    action_area,
    choose_gamma,
    choose_gamma_field,
    classical_average,
    count_bound_states,
    default_grid,
    delta_F,
    gamma_spread,
    moment_estimate,
    normalize_field,
    normalized_moment,
    numeric_moment,
    psc_sample,
    q_bar,
    quantize,
    script_F,
    solve_eigen,
    synthesize,
    turning_points,
)

__all__ = [n for n in dir() if not n.startswith("_")]
__version__ = "0.1.0"
