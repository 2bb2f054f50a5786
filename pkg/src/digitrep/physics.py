"""Twisted boundary conditions, flux/phase mapping, ring momenta, line limits."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from .errors import DomainError
from .lattice import LatticeSpec, coordinate_points
from .linalg import format_real
from .numeral import as_rational
from .operators import digit_shift_coefficients, shift_operator

__all__ = [
    "TwistSpec",
    "phase_from_d1",
    "twisted_shift",
    "twisted_eigenpairs",
    "twisted_spectrum_residual",
    "momentum_boundary_phase",
    "flux_to_phase",
    "phase_to_flux",
    "ring_momenta",
    "LineLimitRecord",
    "line_limit_check",
]

TWO_PI = 2 * math.pi
# boundary phases are snapped to this many binary places of a turn, so that
# phi and phi + 2 pi k give bit-identical matrices
_TURN_BITS = 44


@dataclass(frozen=True)
class TwistSpec:
    """A lattice plus the boundary phase ``psi(x + Xi) = exp(i phi) psi(x)``."""

    base: LatticeSpec
    phi: float

    def __post_init__(self):
        if not math.isfinite(self.phi):
            raise DomainError("boundary phase must be finite")

    @property
    def turns(self) -> float:
        """``phi / 2 pi`` folded into ``[0, 1)`` on a grid of ``2**-44``."""
        scale = 2**_TURN_BITS
        return (round((self.phi / TWO_PI) % 1.0 * scale) % scale) / scale

    @property
    def reduced_phi(self) -> float:
        """``phi`` folded into ``[0, 2 pi)``."""
        return TWO_PI * self.turns

    @property
    def d1(self) -> float:
        """Least momentum digit whose shifted lattice produces this twist: ``-phi / 2 pi``."""
        return -self.phi / TWO_PI


def phase_from_d1(d1) -> float:
    """Boundary phase ``phi = -2 pi d1`` induced by the least momentum digit."""
    return -TWO_PI * float(as_rational(d1))


def momentum_boundary_phase(spec: LatticeSpec) -> float:
    """Phase picked up by ``T_dx`` at the wraparound on ``spec``'s momentum lattice.

    It is ``2 pi Xi p0`` with ``p0`` the all-``d1_p`` momentum.  For ``q = 2``
    this equals ``-2 pi d1_p`` modulo ``2 pi`` whenever ``N d1_p`` is an integer.
    """
    return TWO_PI * float((spec.x_period * spec.p_offset) % 1)


def twisted_shift(twist: TwistSpec) -> np.ndarray:
    """Minimal shift with its single wraparound entry multiplied by ``exp(i phi)``."""
    N = twist.base.N
    out = shift_operator(twist.base.dx, twist.base.with_d1(d1_p=0))
    out[0, N - 1] = np.exp(2j * np.pi * twist.turns)
    return out


def twisted_eigenpairs(twist: TwistSpec) -> List[Tuple[complex, np.ndarray]]:
    """Analytic eigenpairs ``psi_m(x) = exp(2 pi i x (m - d1) dp) / sqrt(N)``.

    The eigenvalue of ``psi_m`` is ``exp(2 pi i dx (m - d1) dp)``.
    """
    spec = twist.base
    N = spec.N
    d1 = -twist.turns
    x = np.array([float(v) for v in coordinate_points(spec)])
    dx, dp = float(spec.dx), float(spec.dp)
    pairs = []
    for m in range(N):
        lam = np.exp(2j * np.pi * dx * (m - d1) * dp)
        psi = np.exp(2j * np.pi * x * (m - d1) * dp) / math.sqrt(N)
        pairs.append((complex(lam), psi))
    return pairs


def twisted_spectrum_residual(twist: TwistSpec, matrix: np.ndarray = None) -> float:
    """Largest ``||T psi - lambda psi||`` over the analytic eigenpairs."""
    t = twisted_shift(twist) if matrix is None else matrix
    return max(float(np.linalg.norm(t @ psi - lam * psi)) for lam, psi in twisted_eigenpairs(twist))


def flux_to_phase(flux: float, flux_quantum: float) -> float:
    """Boundary phase ``phi = 2 pi Phi / Phi_0`` of a ring threaded by flux ``Phi``."""
    if not flux_quantum > 0:
        raise DomainError("flux quantum must be positive")
    return TWO_PI * flux / flux_quantum


def phase_to_flux(phi: float, flux_quantum: float) -> float:
    if not flux_quantum > 0:
        raise DomainError("flux quantum must be positive")
    return phi * flux_quantum / TWO_PI


def ring_momenta(a: float, phi: float, n_range: Iterable[int]) -> List[float]:
    """Wavenumbers ``k_n = 2 pi n / a - phi / a`` on a ring of length ``a``."""
    if not a > 0:
        raise DomainError("ring length must be positive")
    return [TWO_PI * n / a - phi / a for n in n_range]


@dataclass
class LineLimitRecord:
    """Lattice vs line coefficient of one shift over a sequence of lattices."""

    shift: Fraction
    r: int
    rows: List[Tuple[int, Fraction, complex, complex, float]] = field(default_factory=list)

    @property
    def errors(self) -> List[float]:
        return [row[4] for row in self.rows]

    @property
    def ratios(self) -> List[float]:
        e = self.errors
        return [b / a for a, b in zip(e, e[1:])]

    @property
    def strictly_decreasing(self) -> bool:
        e = self.errors
        return all(b < a for a, b in zip(e, e[1:]))

    def to_csv(self) -> str:
        lines = ["n_plus,delta_p,err"]
        for n_plus, dp, _, _, err in self.rows:
            lines.append(f"{n_plus},{format_real(dp)},{format_real(err)}")
        return "\n".join(lines) + "\n"


def _line_coefficient(A: Fraction, r: int, spec: LatticeSpec) -> complex:
    # p0 -> d1 Pi / (q - 1) as dp -> 0
    limit_offset = spec.d1_p * spec.p_period / (spec.q - 1)
    phase = np.exp(-2j * np.pi * float((A * limit_offset) % 1))
    return complex(-(float(spec.q) ** (-r)) / (2j * np.pi * float(A)) * phase)


def line_limit_check(A, r: int, specs: Sequence[LatticeSpec]) -> LineLimitRecord:
    """Compare the lattice coefficient of ``T_A`` in ``p_r`` with its line limit.

    On the line the coefficient of ``T_A`` is ``-q**-r / (2 pi i A)``; the
    lattice value approaches it with an error of first order in ``dp``.  Only
    the harmonics ``A = q**-r (D + sigma / q)`` carry a coefficient.
    """
    A = as_rational(A)
    if not specs:
        raise DomainError("need at least one lattice")
    record = LineLimitRecord(A, r)
    for spec in specs:
        scaled = A * Fraction(spec.q) ** (r + 1)
        if A <= 0 or scaled.denominator != 1 or scaled.numerator % spec.q == 0:
            raise DomainError(f"shift {A} is not a harmonic of momentum digit {r}")
        if (A / spec.dx).denominator != 1 or not 0 < A < spec.x_period:
            raise DomainError(f"shift {A} is not a node shift of {spec.describe()}")
        coeffs = digit_shift_coefficients(r, spec)
        lattice = coeffs[A]
        line = _line_coefficient(A, r, spec)
        record.rows.append((spec.n_plus, spec.dp, lattice, line, abs(lattice - line)))
    return record
