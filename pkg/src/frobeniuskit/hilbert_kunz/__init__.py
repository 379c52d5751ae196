from .estimate import HKEstimate, HKSample, estimate_ehk_beta, evaluate_closed_form, solve_two_point
from .groebner import NotZeroDimensional, groebner_basis, standard_monomial_count
from .lengths import (
    MonomialIdeal,
    NotMPrimary,
    certify_m_primary,
    frobenius_power,
    groebner_length,
    hk_length_hypersurface,
    hk_length_toric,
    rank_mod_p,
)
from .polynomials import PrimeFieldIdeal, PrimeFieldPoly

__all__ = [
    "HKEstimate", "HKSample", "MonomialIdeal", "NotMPrimary", "NotZeroDimensional",
    "PrimeFieldIdeal", "PrimeFieldPoly", "certify_m_primary", "estimate_ehk_beta",
    "evaluate_closed_form", "frobenius_power", "groebner_basis", "groebner_length",
    "hk_length_hypersurface", "hk_length_toric", "rank_mod_p", "solve_two_point",
    "standard_monomial_count",
]
