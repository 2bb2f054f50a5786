"""Commutators of coordinate/momentum digits and their shift-sum closed forms."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from .errors import DomainError
from .lattice import LatticeSpec
from .linalg import cis_turns, format_real
from .operators import (
    _harmonics,
    _indices,
    _shift_entries,
    _shift_steps,
    coordinate_digit,
    coordinate_operator,
    momentum_digit_oracle,
    momentum_operator,
)

__all__ = [
    "commutator",
    "shift_commutator_rhs",
    "CommutatorReport",
    "CommutationLawViolation",
    "commutation_region",
    "coordinate_digit_commutator_closed_form",
    "CoordinateMomentumCommutator",
    "coordinate_momentum_commutator",
]

HBAR = 1 / (2 * math.pi)


class CommutationLawViolation(AssertionError):
    """A digit pair with ``s + r <= -2`` failed to commute."""


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 2:
        raise DomainError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b - b @ a


def shift_commutator_rhs(f_values: np.ndarray, A, spec: LatticeSpec) -> np.ndarray:
    """``(f(x) - f(x + A)) T_A`` for a diagonal ``f`` given by its values in basis order.

    ``x + A`` is taken modulo the period, so ``f`` is read on the cyclic lattice.
    """
    k = _shift_steps(A, spec.dx)
    rows, cols, phases = _shift_entries(k, spec)
    f_values = np.asarray(f_values)
    out = np.zeros((spec.N, spec.N), dtype=complex)
    out[rows, cols] = (f_values[rows] - f_values[cols]) * phases
    return out


@dataclass
class CommutatorReport:
    """Norms of ``[x_s, p_r]`` over every digit pair of a lattice."""

    spec: LatticeSpec
    threshold: float
    pairs: List[Tuple[int, int, float]] = field(default_factory=list)

    def commutes(self, s: int, r: int) -> bool:
        return self.norm(s, r) < self.threshold

    def norm(self, s: int, r: int) -> float:
        for ps, pr, value in self.pairs:
            if (ps, pr) == (s, r):
                return value
        raise KeyError((s, r))

    def violations(self) -> List[Tuple[int, int, float]]:
        """Pairs inside the commuting region whose norm is not below threshold."""
        return [p for p in self.pairs if p[0] + p[1] <= -2 and p[2] >= self.threshold]

    def extra_commuting(self) -> List[Tuple[int, int, float]]:
        """Pairs outside the region that commute anyway (reported, not a failure)."""
        return [p for p in self.pairs if p[0] + p[1] > -2 and p[2] < self.threshold]

    @property
    def law_holds(self) -> bool:
        return not self.violations()

    def to_csv(self) -> str:
        lines = ["s,r,norm,commutes"]
        for s, r, value in self.pairs:
            lines.append(f"{s},{r},{format_real(value)},{str(value < self.threshold).lower()}")
        return "\n".join(lines) + "\n"


def commutation_region(spec: LatticeSpec, threshold: float = 1e-10, strict: bool = True) -> CommutatorReport:
    """Scan ``||[x_s, p_r]||_F`` for all ``(s, r)``.

    With ``strict`` a :class:`CommutationLawViolation` is raised if any pair with
    ``s + r <= -2`` does not commute.
    """
    xs = {s: coordinate_digit(s, spec) for s in spec.x_digits}
    ps = {r: momentum_digit_oracle(r, spec) for r in spec.p_digits}
    report = CommutatorReport(spec, threshold)
    for s in spec.x_digits:
        for r in spec.p_digits:
            report.pairs.append((s, r, float(np.linalg.norm(commutator(xs[s], ps[r])))))
    if strict and not report.law_holds:
        raise CommutationLawViolation(f"non-commuting pairs in region s + r <= -2: {report.violations()}")
    return report


def coordinate_digit_commutator_closed_form(r: int, spec: LatticeSpec, boundary: bool = True) -> np.ndarray:
    """``[x, p_r]`` as a sum over the harmonics ``A = q**-r (D + sigma/q)`` of ``T_{-A}``.

    Each term is ``c(-A) (x - x_{-A}) T_{-A}`` with ``c(-A)`` the closed-form
    coefficient of the shifted system.  On the cyclic lattice ``x - x_{-A}``
    equals ``A`` except on the rows where ``x - A`` wraps past the lowest node,
    where it is ``A - Xi``.  ``boundary=False`` drops that correction and keeps
    only the scalar ``A``, which is exact only on the line.
    """
    if r not in spec.p_digits:
        raise DomainError(f"momentum digit {r} outside [{-spec.n_plus}, {spec.n_minus - 1}]")
    N = spec.N
    weight = float(spec.dp * Fraction(spec.q) ** (-r))
    m = _indices(spec)
    out = np.zeros((N, N), dtype=complex)
    for _, _, A in _harmonics(spec.q, r, spec.n_plus):
        theta = spec.dp * A
        coeff = -weight / (1 - cis_turns(theta)) * cis_turns(A * spec.p_offset)
        k = _shift_steps(-A, spec.dx)
        rows, cols, phases = _shift_entries(k, spec)
        if boundary:
            wrapped = (m + k) < 0
            diff = float(A) - float(spec.x_period) * wrapped
        else:
            diff = np.full(N, float(A))
        out[rows, cols] += coeff * diff * phases
    return out


@dataclass
class CoordinateMomentumCommutator:
    direct: np.ndarray
    closed_form: np.ndarray

    @property
    def agreement(self) -> float:
        return float(np.linalg.norm(self.direct - self.closed_form))

    @property
    def canonical_deviation(self) -> float:
        """``||[x, p] - i hbar 1||_F``: the finite lattice never reaches the canonical value."""
        n = self.direct.shape[0]
        return float(np.linalg.norm(self.direct - 1j * HBAR * np.eye(n)))

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.direct))


def coordinate_momentum_commutator(spec: LatticeSpec, x: Optional[np.ndarray] = None,
                                   p: Optional[np.ndarray] = None) -> CoordinateMomentumCommutator:
    """Direct ``[x, p]`` next to the triple shift sum ``sum_r q**r [x, p_r]``."""
    x = coordinate_operator(spec) if x is None else x
    p = momentum_operator(spec) if p is None else p
    closed = np.zeros((spec.N, spec.N), dtype=complex)
    for r in spec.p_digits:
        closed += float(Fraction(spec.q) ** r) * coordinate_digit_commutator_closed_form(r, spec)
    return CoordinateMomentumCommutator(commutator(x, p), closed)
