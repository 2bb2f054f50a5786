"""Formulas evaluated as printed, next to the oracle they should reproduce.

Each check builds the printed expression literally on a small probe lattice
and reports its largest coefficient (or matrix entry) deviation from the
oracle, together with the deviation after the correction used by this package.
These are informational; none of them gates verification.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List

import numpy as np

from .commutators import commutator, coordinate_digit_commutator_closed_form
from .lattice import LatticeSpec
from .linalg import cis_turns
from .numeral import offsets_agree_mod_period
from .operators import (
    ShiftCoefficients,
    _harmonics,
    closed_form_coefficients,
    closed_form_coordinate_coefficients,
    coordinate_digit_coefficients,
    coordinate_operator,
    digit_shift_coefficients,
    momentum_digit_oracle,
)
from .physics import _line_coefficient

__all__ = ["Erratum", "errata_report"]


@dataclass(frozen=True)
class Erratum:
    key: str
    description: str
    probe: str
    printed_deviation: float
    corrected_deviation: float

    def line(self) -> str:
        return (f"{self.key}: printed {self.printed_deviation:.3e}, "
                f"corrected {self.corrected_deviation:.3e} [{self.probe}] {self.description}")


def _printed_sum(spec: LatticeSpec, level: int, n_low: int, step: Fraction, d1: Fraction,
                 kind: str, sign_of_shift: int, phase_step: Fraction) -> ShiftCoefficients:
    """``(d1 + q - 1)/2 - (step/q**level) sum_{D, sigma=0..q-1} T / (1 - e(step A)) e(-phase_step A d1)``.

    The ``D = 0, sigma = 0`` term is singular and is left out.
    """
    q = spec.q
    out = ShiftCoefficients(spec, kind)
    out.add(0, complex((d1 + q - 1) / 2))
    weight = float(step * Fraction(q) ** (-level))
    scale = Fraction(q) ** (-level)
    for D in range(q ** (level + n_low)):
        for sigma in range(q):
            A = scale * (D + Fraction(sigma, q))
            if (step * A) % 1 == 0:
                continue
            value = -weight / (1 - cis_turns(step * A)) * cis_turns(-phase_step * A * d1)
            out.add(sign_of_shift * A, value)
    return out


def _shifted_momentum_digit() -> Erratum:
    spec = LatticeSpec(3, 1, 1, d1_p=Fraction(-1, 2))
    printed = max(_printed_sum(spec, r, spec.n_plus, spec.dp, spec.d1_p, "coordinate", 1, spec.dp)
                  .max_deviation(digit_shift_coefficients(r, spec)) for r in spec.p_digits)
    fixed = max(closed_form_coefficients(r, spec).max_deviation(digit_shift_coefficients(r, spec))
                for r in spec.p_digits)
    return Erratum("shifted_momentum_digit",
                   "sigma must start at 1, the shift is T_{-A}, the constant is d1 + (q-1)/2",
                   spec.describe(), printed, fixed)


def _shifted_coordinate_digit() -> Erratum:
    spec = LatticeSpec(3, 1, 1, d1_x=Fraction(-1, 2))
    printed = max(_printed_sum(spec, s, spec.n_minus, spec.dx, spec.d1_x, "momentum", 1, spec.dp)
                  .max_deviation(coordinate_digit_coefficients(s, spec)) for s in spec.x_digits)
    fixed = max(closed_form_coordinate_coefficients(s, spec).max_deviation(coordinate_digit_coefficients(s, spec))
                for s in spec.x_digits)
    return Erratum("shifted_coordinate_digit",
                   "same constant and sigma range as the momentum form; the phase is exp(2 pi i B x0)",
                   spec.describe(), printed, fixed)


def _binary_forms(spec: LatticeSpec, r: int, sine: Callable[[float], complex], with_phase: bool) -> ShiftCoefficients:
    d1 = spec.d1_p
    out = ShiftCoefficients(spec, "coordinate")
    out.add(0, complex(d1 + Fraction(1, 2)))
    weight = float(spec.dp * Fraction(2) ** (-r))
    for _, _, A in _harmonics(2, r, spec.n_plus):
        if with_phase:
            value = -weight / (1 - cis_turns(spec.dp * A)) * cis_turns(-spec.dp * A * d1)
        else:
            theta = float(spec.dp * A)
            value = weight / (2j * sine(theta)) * cis_turns(-spec.dp * A * (2 * d1 + 1) / 2)
        out.add(-A, value)
    return out


def _binary_sine_step() -> Erratum:
    spec = LatticeSpec(2, 1, 2, d1_p=Fraction(-1, 4))
    printed = fixed = 0.0
    for r in spec.p_digits:
        first = _binary_forms(spec, r, None, True)
        as_printed = _binary_forms(spec, r, lambda t: complex(np.sin(np.pi * 1j * t)), False)
        corrected = _binary_forms(spec, r, lambda t: complex(np.sin(np.pi * t)), False)
        printed = max(printed, as_printed.max_deviation(first))
        fixed = max(fixed, corrected.max_deviation(first))
    return Erratum("binary_sine_step", "the sine argument is pi dp A, without a factor i",
                   spec.describe() + " (second line vs first line)", printed, fixed)


def _binary_phase() -> Erratum:
    spec = LatticeSpec(2, 1, 2, d1_p=Fraction(-1, 2))
    printed = max(_binary_forms(spec, r, None, True).max_deviation(digit_shift_coefficients(r, spec))
                  for r in spec.p_digits)
    fixed = max(closed_form_coefficients(r, spec).max_deviation(digit_shift_coefficients(r, spec))
                for r in spec.p_digits)
    return Erratum("binary_phase",
                   "exp(-2 pi i dp A d1) fails on the top digit; exp(2 pi i A p0) holds for every digit",
                   spec.describe(), printed, fixed)


def _ternary_nonsymmetric() -> Erratum:
    spec = LatticeSpec(3, 1, 1)
    printed = fixed = 0.0
    for r in spec.p_digits:
        sym = ShiftCoefficients(spec, "coordinate")
        weight = float(spec.dp * Fraction(3) ** (-r))
        for D, sigma, A in _harmonics(3, r, spec.n_plus):
            sign = -1.0 if (D + sigma) % 2 else 1.0
            sym.add(-A, weight * sign / (2j * math.sin(math.pi * float(spec.dp * A))))
        oracle = digit_shift_coefficients(r, spec)
        printed = max(printed, sym.max_deviation(oracle))
        fixed = max(fixed, closed_form_coefficients(r, spec, "base_q").max_deviation(oracle))
    return Erratum("ternary_nonsymmetric", "the symmetric-digit form lacks the constant 1 and the phases",
                   spec.describe(), printed, fixed)


def _line_limit() -> Erratum:
    spec = LatticeSpec(2, 1, 10)
    A = Fraction(1, 2)
    lattice = digit_shift_coefficients(0, spec)[A]
    printed_value = 1 / (2j * math.pi * float(A))
    printed = abs(lattice - printed_value)
    fixed = abs(lattice - _line_coefficient(A, 0, spec))
    constant = abs(float((spec.d1_p + spec.q + 1) / 2 - (spec.d1_p + Fraction(spec.q - 1, 2))))
    return Erratum("line_limit", "T_A enters with -1/(2 pi i A) q**-r; the constant is d1 + (q-1)/2 "
                   f"(printed constant off by {constant:g})", spec.describe() + " A=1/2", printed, fixed)


def _commutator_boundary() -> Erratum:
    spec = LatticeSpec(3, 1, 2, d1_p=Fraction(-1))
    x = coordinate_operator(spec)
    printed = fixed = 0.0
    for r in spec.p_digits:
        direct = commutator(x, momentum_digit_oracle(r, spec))
        printed = max(printed, float(np.abs(direct - coordinate_digit_commutator_closed_form(r, spec, False)).max()))
        fixed = max(fixed, float(np.abs(direct - coordinate_digit_commutator_closed_form(r, spec)).max()))
    return Erratum("commutator_boundary", "on a finite lattice x - x_{-A} equals A - Xi on wrapped rows",
                   spec.describe(), printed, fixed)


def _renorm_offset() -> Erratum:
    q, n_low, n_high, d1 = 3, 1, 1, Fraction(-1, 2)
    ok = offsets_agree_mod_period(q, n_low, n_high, d1)
    return Erratum("renorm_offset", "the all-d1 string is d1 (Xi - dx)/(q - 1), which is not -d1 dx modulo Xi in general",
                   f"q={q} n-={n_low} n+={n_high} d1={d1}", 0.0 if ok else 1.0, 0.0)


def errata_report() -> List[Erratum]:
    return [
        _shifted_momentum_digit(),
        _shifted_coordinate_digit(),
        _binary_sine_step(),
        _binary_phase(),
        _ternary_nonsymmetric(),
        _line_limit(),
        _commutator_boundary(),
        _renorm_offset(),
    ]
