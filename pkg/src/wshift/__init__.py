"""Exact k-hyponormality, subnormality and quadratic hyponormality tests for
unilateral weighted shifts, their powers, Schur products and back-step
extensions."""

from .exactmath import INFINITE, Poly, SymMatrix, char_poly, is_psd, psd_corner_threshold
from .measures import (
    Measure,
    backstep_measure,
    backstep_subnormal_threshold,
    dirac,
    monomial_density,
    multi_backstep_check,
    neg_moment,
    piece_measure,
    power_backstep_subnormal_threshold,
    pushforward_power,
    shift_from_measure,
    split_origin,
)
from .positivity import (
    backstep_k_threshold,
    hankel,
    is_k_hyponormal_window,
    is_power_k_hyponormal_window,
    power_backstep_k_threshold,
    schur_preservation_check,
)
from .quadratic import (
    beta_family,
    c_table,
    d_poly,
    det_window,
    pqh_check,
    pqh_threshold_family,
    qh_window,
    uvw,
)
from .weights import (
    WeightSequenceSq,
    backstep,
    bergman,
    constant,
    packet,
    power_decompose,
    schur,
)

__version__ = "0.1.0"
