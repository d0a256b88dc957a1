"""Cartier operators, Hasse derivatives and digit bases over F_q((T)) and Z_p."""
from .fq import GF, FieldError, make_field, parse_field
from .series import PrecisionError, TruncatedLaurent, parse_series, render, to_text, from_text
from .operators import (PreconditionError, cartier_delta, hasse, phi, psi, shift, decompose, recompose,
                        qth_power_expansion, phi_product, compose_phi)
from .carlitz import E_eval, carlitz_constants, e_poly, carlitz_coefficient
from .linbasis import BasisId, LinearFunc, expand, evaluate_expansion, transition, is_linear
from .digit import ContinuousFunc, digit_eval, expand_continuous, orthogonality_sum, recover_coeff
from .padic import PadicInt, padic_cartier, mahler_coeffs, padic_digit_eval, residue_vector
from .wronskian import (Certificate, LinearDependenceError, find_certificate, in_Km, independent_over_Km,
                        normalize_orders)

__version__ = "0.1.0"
