"""Shift, coordinate, momentum, digit and projector operators.

The momentum-diagonal construction ``F diag(d) F^+`` is the reference for every
digit operator; the closed-form shift decompositions are built independently
from their coefficient formulas and compared against it.

Shift operators are ``T_A = exp(2 pi i A p)``.  When the momentum nodes are
offset so that ``Xi * p_offset`` is not an integer, ``T_A`` is a permutation
with phases on the entries that wrap around the period (a twisted boundary);
otherwise it is the plain cyclic permutation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, Tuple

import numpy as np

from .errors import DomainError
from .lattice import LatticeSpec, coordinate_points, index_of, momentum_points
from .linalg import adjoint, cis_turns, dft_matrix, format_real

__all__ = [
    "SYSTEMS",
    "ShiftCoefficients",
    "momentum_twist",
    "shift_operator",
    "arbitrary_shift",
    "momentum_shift_operator",
    "coordinate_operator",
    "coordinate_digit",
    "coordinate_digit_values",
    "momentum_digit_values",
    "momentum_digit_oracle",
    "momentum_operator",
    "digit_shift_coefficients",
    "closed_form_coefficients",
    "coordinate_digit_coefficients",
    "closed_form_coordinate_coefficients",
    "projector",
    "lattice_shifts",
]

SYSTEMS = ("base_q", "binary", "ternary_symmetric", "shifted")


def _indices(spec: LatticeSpec) -> np.ndarray:
    """Lattice index held by each basis row."""
    return np.arange(spec.N - 1, -1, -1)


def _shift_steps(shift, step: Fraction) -> int:
    shift = Fraction(shift)
    k = shift / step
    if k.denominator != 1:
        raise DomainError(f"shift {shift} is not a multiple of the lattice step {step}")
    return int(k)


def momentum_twist(spec: LatticeSpec) -> Fraction:
    """Turns ``t`` with ``T_Xi = exp(2 pi i t) * 1``; zero for untwisted lattices."""
    return (spec.x_period * spec.p_offset) % 1


def _coordinate_twist(spec: LatticeSpec) -> Fraction:
    """Turns ``t`` with ``S_Pi = exp(2 pi i t) * 1``."""
    return (-spec.p_period * spec.x_offset) % 1


def lattice_shifts(spec: LatticeSpec):
    """Canonical coordinate shifts ``j * dx`` for ``j = 0 .. N-1``."""
    return [j * spec.dx for j in range(spec.N)]


def _shift_entries(k: int, spec: LatticeSpec):
    """Rows, columns and phases of the nonzero entries of ``T_{k dx}``."""
    N = spec.N
    m = _indices(spec)
    t = m + k
    target = t % N
    wraps = t // N
    rows = np.arange(N)
    cols = N - 1 - target
    twist = momentum_twist(spec)
    if twist == 0:
        phases = np.ones(N, dtype=complex)
    else:
        phases = np.array([cis_turns(int(w) * twist) for w in wraps])
    return rows, cols, phases


def shift_operator(A, spec: LatticeSpec) -> np.ndarray:
    """Lattice shift ``T_A psi(x) = psi(x + A)``; ``A`` must be a multiple of ``dx``.

    ``<x'|T_A|x''>`` is nonzero exactly when ``x'' = x' + A`` modulo the period.
    """
    k = _shift_steps(A, spec.dx)
    rows, cols, phases = _shift_entries(k, spec)
    out = np.zeros((spec.N, spec.N), dtype=complex)
    out[rows, cols] = phases
    return out


def arbitrary_shift(A, spec: LatticeSpec) -> np.ndarray:
    """``exp(2 pi i A p)`` for any real ``A``, built in the momentum eigenbasis."""
    f = dft_matrix(spec)
    if isinstance(A, (int, Fraction)):
        A = Fraction(A)
        diag = np.array([cis_turns(A * p) for p in momentum_points(spec)])
    else:
        p = np.array([float(v) for v in momentum_points(spec)])
        diag = np.exp(2j * np.pi * float(A) * p)
    return (f * diag[None, :]) @ adjoint(f)


def momentum_shift_operator(B, spec: LatticeSpec) -> np.ndarray:
    """Momentum shift ``S_B = diag(exp(-2 pi i B x))``, so ``S_B`` moves ``psi~(p)`` to ``psi~(p + B)``."""
    B = Fraction(B)
    return np.diag([cis_turns(-B * x) for x in coordinate_points(spec)])


def coordinate_digit_values(s: int, spec: LatticeSpec) -> np.ndarray:
    if s not in spec.x_digits:
        raise DomainError(f"coordinate digit {s} outside [{-spec.n_minus}, {spec.n_plus - 1}]")
    c = (_indices(spec) // spec.q ** (s + spec.n_minus)) % spec.q
    return c + float(spec.d1_x)


def momentum_digit_values(r: int, spec: LatticeSpec) -> np.ndarray:
    if r not in spec.p_digits:
        raise DomainError(f"momentum digit {r} outside [{-spec.n_plus}, {spec.n_minus - 1}]")
    c = (_indices(spec) // spec.q ** (r + spec.n_plus)) % spec.q
    return c + float(spec.d1_p)


def coordinate_operator(spec: LatticeSpec) -> np.ndarray:
    return np.diag([float(x) for x in coordinate_points(spec)]).astype(complex)


def coordinate_digit(s: int, spec: LatticeSpec) -> np.ndarray:
    return np.diag(coordinate_digit_values(s, spec)).astype(complex)


def _in_momentum_basis(diag: np.ndarray, spec: LatticeSpec) -> np.ndarray:
    """``F diag(v) F^+`` evaluated entry by entry.

    The product only depends on the node difference ``d = m - m'``, so it is
    Toeplitz.  Each of the ``2N - 1`` distinct entries is a single pairwise sum
    whose phases are reduced mod 1 in integers, which keeps the rounding error
    near machine precision even for ``N`` in the hundreds.
    """
    N = spec.N
    # turns(d, l) = d l / N + d dx p_offset, over a common denominator D
    shift = spec.dx * spec.p_offset
    D = N * shift.denominator
    d = np.arange(-(N - 1), N, dtype=np.int64)
    u = np.array([(int(k) * shift.numerator * N) % D for k in d], dtype=np.int64)
    ell = np.arange(N, dtype=np.int64)
    num = (np.outer(d % N, ell) % N) * (D // N) + u[:, None]
    phase = np.exp(2j * np.pi * ((num % D) / D))
    kernel = (phase * diag[::-1][None, :]).sum(axis=1) / N
    i = np.arange(N)
    return kernel[(i[None, :] - i[:, None]) + N - 1]


def momentum_digit_oracle(r: int, spec: LatticeSpec) -> np.ndarray:
    """Momentum digit operator ``F diag(d1_p + c_r(p)) F^+``."""
    return _in_momentum_basis(momentum_digit_values(r, spec).astype(complex), spec)


def momentum_operator(spec: LatticeSpec, *, from_digits: bool = False) -> np.ndarray:
    """``F diag(p) F^+``, or the digit sum ``sum_r q**r p_r`` when ``from_digits``."""
    if from_digits:
        out = np.zeros((spec.N, spec.N), dtype=complex)
        for r in spec.p_digits:
            out += float(Fraction(spec.q) ** r) * momentum_digit_oracle(r, spec)
        return out
    p = np.array([float(v) for v in momentum_points(spec)], dtype=complex)
    return _in_momentum_basis(p, spec)


def projector(p, spec: LatticeSpec) -> np.ndarray:
    """Rank-one projector onto the momentum eigenstate ``|p>``."""
    index_of(p, spec, "momentum")  # raises for off-lattice p
    p = Fraction(p)
    ket = np.array([cis_turns(p * x) for x in coordinate_points(spec)])
    return np.outer(ket, ket.conj()) / spec.N


@dataclass
class ShiftCoefficients:
    """Coefficients of a shift decomposition ``sum_A c(A) T_A``.

    ``kind="coordinate"`` expands over coordinate shifts ``T_A`` (keys are
    multiples of ``dx`` in ``[0, Xi)``); ``kind="momentum"`` over momentum
    shifts ``S_B`` (multiples of ``dp`` in ``[0, Pi)``).  Inserting a coefficient
    at a non-canonical shift folds it onto the canonical one, carrying the
    boundary twist of the lattice.
    """

    spec: LatticeSpec
    kind: str = "coordinate"
    coeffs: Dict[Fraction, complex] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("coordinate", "momentum"):
            raise DomainError(f"unknown shift kind {self.kind!r}")

    @property
    def period(self) -> Fraction:
        return self.spec.x_period if self.kind == "coordinate" else self.spec.p_period

    @property
    def step(self) -> Fraction:
        return self.spec.dx if self.kind == "coordinate" else self.spec.dp

    @property
    def twist(self) -> Fraction:
        return momentum_twist(self.spec) if self.kind == "coordinate" else _coordinate_twist(self.spec)

    def _fold(self, shift) -> Tuple[Fraction, int]:
        shift = Fraction(shift)
        _shift_steps(shift, self.step)
        canonical = shift % self.period
        return canonical, int((shift - canonical) / self.period)

    def add(self, shift, value: complex) -> None:
        canonical, wraps = self._fold(shift)
        if wraps and self.twist:
            value = value * cis_turns(wraps * self.twist)
        self.coeffs[canonical] = self.coeffs.get(canonical, 0j) + complex(value)

    def coefficient(self, shift) -> complex:
        """Coefficient multiplying the shift operator at ``shift`` (any representative)."""
        canonical, wraps = self._fold(shift)
        value = self.coeffs.get(canonical, 0j)
        if wraps and self.twist:
            value = value * cis_turns(-wraps * self.twist)
        return value

    def __getitem__(self, shift) -> complex:
        return self.coefficient(shift)

    def __iter__(self) -> Iterator[Tuple[Fraction, complex]]:
        return iter(sorted(self.coeffs.items()))

    def __len__(self) -> int:
        return len(self.coeffs)

    def max_deviation(self, other: "ShiftCoefficients") -> float:
        keys = set(self.coeffs) | set(other.coeffs)
        return max((abs(self.coeffs.get(k, 0j) - other.coeffs.get(k, 0j)) for k in keys), default=0.0)

    def operator(self) -> np.ndarray:
        """Rebuild ``sum c(A) T_A`` (or ``sum c(B) S_B``)."""
        N = self.spec.N
        out = np.zeros((N, N), dtype=complex)
        if self.kind == "momentum":
            for B, c in self.coeffs.items():
                out += c * momentum_shift_operator(B, self.spec)
            return out
        for A, c in self.coeffs.items():
            rows, cols, phases = _shift_entries(_shift_steps(A, self.spec.dx), self.spec)
            out[rows, cols] += c * phases
        return out

    def to_csv(self) -> str:
        lines = ["shift,re,im"]
        for A, c in self:
            lines.append(f"{format_real(A)},{format_real(c.real)},{format_real(c.imag)}")
        return "\n".join(lines) + "\n"


def digit_shift_coefficients(r: int, spec: LatticeSpec) -> ShiftCoefficients:
    """Fourier data of a momentum digit: ``c(A) = (1/N) sum_p d(r, p) exp(-2 pi i A p)``."""
    if r not in spec.p_digits:
        raise DomainError(f"momentum digit {r} outside [{-spec.n_plus}, {spec.n_minus - 1}]")
    N = spec.N
    k = np.arange(N)
    d = (k // spec.q ** (r + spec.n_plus)) % spec.q + float(spec.d1_p)
    # A_j p_k = j k / N + j dx p_offset
    roots = np.exp(-2j * np.pi * np.arange(N) / N)
    sums = roots[np.outer(k, k) % N] @ d / N
    out = ShiftCoefficients(spec, "coordinate")
    for j in range(N):
        out.coeffs[j * spec.dx] = complex(sums[j] * cis_turns(-j * spec.dx * spec.p_offset))
    return out


def coordinate_digit_coefficients(s: int, spec: LatticeSpec) -> ShiftCoefficients:
    """Dual expansion of a coordinate digit over momentum shifts ``S_B``."""
    if s not in spec.x_digits:
        raise DomainError(f"coordinate digit {s} outside [{-spec.n_minus}, {spec.n_plus - 1}]")
    N = spec.N
    m = np.arange(N)
    d = (m // spec.q ** (s + spec.n_minus)) % spec.q + float(spec.d1_x)
    roots = np.exp(2j * np.pi * np.arange(N) / N)
    sums = roots[np.outer(m, m) % N] @ d / N
    out = ShiftCoefficients(spec, "momentum")
    for j in range(N):
        out.coeffs[j * spec.dp] = complex(sums[j] * cis_turns(j * spec.dp * spec.x_offset))
    return out


def _check_system(system: str, spec: LatticeSpec) -> None:
    if system not in SYSTEMS:
        raise DomainError(f"unknown system {system!r}; choose from {SYSTEMS}")
    if system == "base_q" and spec.d1_p != 0:
        raise DomainError("base_q closed form needs momentum digits {0..q-1} (d1_p = 0)")
    if system == "binary" and (spec.q != 2 or spec.d1_p != 0):
        raise DomainError("binary closed form needs q = 2 and d1_p = 0")
    if system == "ternary_symmetric" and (spec.q != 3 or spec.d1_p != -1):
        raise DomainError("ternary_symmetric closed form needs q = 3 and d1_p = -1")


def _harmonics(q: int, level: int, n_low: int):
    """Shifts ``q**-level (D + sigma/q)`` carrying a digit's Fourier weight.

    Yields ``(D, sigma, A)`` for ``D`` in ``Z_{q**(level + n_low)}`` and
    ``sigma = 1 .. q-1``.
    """
    scale = Fraction(q) ** (-level)
    for D in range(q ** (level + n_low)):
        for sigma in range(1, q):
            yield D, sigma, scale * (D + Fraction(sigma, q))


def closed_form_coefficients(r: int, spec: LatticeSpec, system: str = "shifted") -> ShiftCoefficients:
    """Momentum-digit shift coefficients from the closed-form expressions.

    Each harmonic ``A = q**-r (D + sigma/q)`` contributes to ``T_{-A}``:

    * ``base_q`` / ``binary``: ``-(dp/q**r) / (1 - exp(2 pi i dp A))``
    * ``ternary_symmetric``: ``(dp/q**r) (-1)**(D+sigma) / (2i sin(pi dp A))``
    * ``shifted``: ``-(dp/q**r) exp(2 pi i A p0) / (1 - exp(2 pi i dp A))`` with
      ``p0`` the all-``d1`` momentum

    plus the mean digit ``d1 + (q-1)/2`` on the identity.
    """
    if r not in spec.p_digits:
        raise DomainError(f"momentum digit {r} outside [{-spec.n_plus}, {spec.n_minus - 1}]")
    _check_system(system, spec)
    weight = spec.dp * Fraction(spec.q) ** (-r)
    out = ShiftCoefficients(spec, "coordinate")
    out.add(0, complex(spec.d1_p + Fraction(spec.q - 1, 2)))
    for D, sigma, A in _harmonics(spec.q, r, spec.n_plus):
        theta = spec.dp * A
        if system == "ternary_symmetric":
            sign = -1.0 if (D + sigma) % 2 else 1.0
            value = float(weight) * sign / (2j * np.sin(np.pi * float(theta)))
        else:
            value = -float(weight) / (1 - cis_turns(theta))
            if system == "shifted":
                value *= cis_turns(A * spec.p_offset)
        out.add(-A, value)
    return out


def closed_form_coordinate_coefficients(s: int, spec: LatticeSpec) -> ShiftCoefficients:
    """Coordinate-digit coefficients over ``S_B`` from the closed form.

    ``B = q**-s (D + sigma/q)`` contributes ``-(dx/q**s) exp(2 pi i B x0) / (1 - exp(2 pi i dx B))``
    to ``S_B``, where ``x0`` is the all-``d1`` coordinate.
    """
    if s not in spec.x_digits:
        raise DomainError(f"coordinate digit {s} outside [{-spec.n_minus}, {spec.n_plus - 1}]")
    weight = spec.dx * Fraction(spec.q) ** (-s)
    out = ShiftCoefficients(spec, "momentum")
    out.add(0, complex(spec.d1_x + Fraction(spec.q - 1, 2)))
    for _, _, B in _harmonics(spec.q, s, spec.n_minus):
        value = -float(weight) / (1 - cis_turns(spec.dx * B)) * cis_turns(B * spec.x_offset)
        out.add(B, value)
    return out
