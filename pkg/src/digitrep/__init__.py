"""Digit operators on finite coordinate/momentum lattices of radix ``q``."""
from .errors import DomainError, NotANodeError, UnsupportedRadixError
from .lattice import LatticeSpec, coordinate_points, index_of, momentum_points
from .linalg import dft_matrix, is_hermitian, is_permutation, is_unitary
from .operators import (
    ShiftCoefficients,
    closed_form_coefficients,
    coordinate_digit,
    coordinate_operator,
    digit_shift_coefficients,
    momentum_digit_oracle,
    momentum_operator,
    projector,
    shift_operator,
)
from .physics import TwistSpec, twisted_shift

__version__ = "0.1.0"
