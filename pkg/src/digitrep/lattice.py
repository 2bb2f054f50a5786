"""Lattice geometry for the coordinate and momentum systems.

Basis rows are ordered by decreasing lattice index: row ``i`` holds index
``N - 1 - i``.  Every matrix built by this package uses that ordering.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List

from .errors import DomainError, NotANodeError
from .numeral import as_rational, digits_of, shifted_offset

__all__ = ["LatticeSpec", "coordinate_points", "momentum_points", "index_of", "row_of_index"]


@dataclass(frozen=True)
class LatticeSpec:
    """Radix, digit ranges and least digits of a cyclic coordinate/momentum lattice.

    Coordinate digits run over exponents ``-n_minus .. n_plus - 1`` and momentum
    digits over ``-n_plus .. n_minus - 1``.  ``d1_x`` and ``d1_p`` are the least
    digits of the two alphabets and may be any exact rational.
    """

    q: int
    n_minus: int
    n_plus: int
    d1_x: Fraction = field(default=Fraction(0))
    d1_p: Fraction = field(default=Fraction(0))

    def __post_init__(self):
        if not isinstance(self.q, int) or self.q < 2:
            raise DomainError(f"radix must be an integer >= 2, got {self.q!r}")
        if self.n_minus < 0 or self.n_plus < 0 or self.n_minus + self.n_plus < 1:
            raise DomainError("need n_minus, n_plus >= 0 with n_minus + n_plus >= 1")
        object.__setattr__(self, "d1_x", as_rational(self.d1_x))
        object.__setattr__(self, "d1_p", as_rational(self.d1_p))
        if self.x_period * self.dp != 1 or self.dx * self.dp != Fraction(1, self.N):
            raise AssertionError("lattice duality constants are inconsistent")

    @property
    def n(self) -> int:
        return self.n_minus + self.n_plus

    @property
    def N(self) -> int:
        return self.q**self.n

    @property
    def dx(self) -> Fraction:
        return Fraction(1, self.q**self.n_minus)

    @property
    def dp(self) -> Fraction:
        return Fraction(1, self.q**self.n_plus)

    @property
    def x_period(self) -> Fraction:
        """Coordinate period ``Xi = q**n_plus``."""
        return Fraction(self.q**self.n_plus)

    @property
    def p_period(self) -> Fraction:
        """Momentum period ``Pi = q**n_minus``."""
        return Fraction(self.q**self.n_minus)

    @property
    def x_offset(self) -> Fraction:
        """Value of the all-``d1_x`` coordinate (index 0)."""
        return shifted_offset(self.q, self.n_minus, self.n_plus, self.d1_x)

    @property
    def p_offset(self) -> Fraction:
        """Value of the all-``d1_p`` momentum (index 0)."""
        return shifted_offset(self.q, self.n_plus, self.n_minus, self.d1_p)

    @property
    def x_digits(self) -> range:
        return range(-self.n_minus, self.n_plus)

    @property
    def p_digits(self) -> range:
        return range(-self.n_plus, self.n_minus)

    def with_d1(self, d1_x=None, d1_p=None) -> "LatticeSpec":
        return LatticeSpec(
            self.q,
            self.n_minus,
            self.n_plus,
            self.d1_x if d1_x is None else d1_x,
            self.d1_p if d1_p is None else d1_p,
        )

    def x_value(self, m: int) -> Fraction:
        """Coordinate value of lattice index ``m`` (``m * dx + x_offset``)."""
        return m * self.dx + self.x_offset

    def p_value(self, k: int) -> Fraction:
        return k * self.dp + self.p_offset

    def x_digit(self, s: int, m: int) -> Fraction:
        """Shifted coordinate digit ``d1_x + c_s(m)``."""
        if s not in self.x_digits:
            raise DomainError(f"coordinate digit {s} outside [{-self.n_minus}, {self.n_plus - 1}]")
        return self.d1_x + digits_of(m, self.q, self.n_minus, self.n_plus)[s]

    def p_digit(self, r: int, k: int) -> Fraction:
        """Shifted momentum digit ``d1_p + c_r(k)``."""
        if r not in self.p_digits:
            raise DomainError(f"momentum digit {r} outside [{-self.n_plus}, {self.n_minus - 1}]")
        return self.d1_p + digits_of(k, self.q, self.n_plus, self.n_minus)[r]

    def describe(self) -> str:
        return (f"q={self.q} n-={self.n_minus} n+={self.n_plus} "
                f"d1_x={self.d1_x} d1_p={self.d1_p}")


def row_of_index(m: int, N: int) -> int:
    return N - 1 - m


def coordinate_points(spec: LatticeSpec) -> List[Fraction]:
    """Coordinate values in basis order (strictly decreasing)."""
    return [spec.x_value(spec.N - 1 - i) for i in range(spec.N)]


def momentum_points(spec: LatticeSpec) -> List[Fraction]:
    """Momentum values in basis order (strictly decreasing)."""
    return [spec.p_value(spec.N - 1 - i) for i in range(spec.N)]


def index_of(value, spec: LatticeSpec, which: str = "coordinate") -> int:
    """Basis row holding ``value``, after reduction modulo the period."""
    value = as_rational(value)
    if which == "coordinate":
        step, offset = spec.dx, spec.x_offset
    elif which == "momentum":
        step, offset = spec.dp, spec.p_offset
    else:
        raise DomainError(f"which must be 'coordinate' or 'momentum', not {which!r}")
    t = (value - offset) / step
    if t.denominator != 1:
        raise NotANodeError(f"{value} is not a {which} node of {spec.describe()}")
    return row_of_index(int(t) % spec.N, spec.N)
