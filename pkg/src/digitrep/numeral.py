"""Exact positional-numeral arithmetic over rationals.

Digits are always stored canonically in ``{0, ..., q-1}``; a shifted alphabet
``{d1, ..., d1 + q - 1}`` is a view obtained by adding ``d1`` when a digit is
read.  All values are :class:`fractions.Fraction`.
"""
from __future__ import annotations

import numbers
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DomainError, UnsupportedRadixError

__all__ = [
    "DigitVector",
    "DigitSeries",
    "Tail",
    "as_rational",
    "digits_of",
    "value_of",
    "digit_function",
    "renormalize_linear",
    "renormalize_top_digit",
    "eval_renormalized_series",
    "renormalized_offset",
    "shifted_offset",
    "offsets_agree_mod_period",
]

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def as_rational(value) -> Fraction:
    """Coerce ``value`` to an exact :class:`~fractions.Fraction`.

    Accepts integers, fractions and strings of the form ``"p"`` or ``"p/q"``.
    Floats are rejected: lattice values must stay exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value):
            raise DomainError(f"not a rational literal: {value!r}")
        return Fraction(value.replace(" ", ""))
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def _check_radix(q: int) -> None:
    if not isinstance(q, numbers.Integral) or q < 2:
        raise DomainError(f"radix must be an integer >= 2, got {q!r}")


@dataclass(frozen=True)
class DigitVector:
    """Canonical digits ``c_s`` for ``s = s_min .. s_min + len(digits) - 1``.

    ``digits[0]`` is the least significant digit (exponent ``s_min``).
    """

    q: int
    s_min: int
    digits: tuple

    def __post_init__(self):
        _check_radix(self.q)
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        if not self.digits:
            raise DomainError("a digit vector needs at least one digit")
        for d in self.digits:
            if not 0 <= d < self.q:
                raise DomainError(f"digit {d} outside 0..{self.q - 1}")

    @property
    def s_max(self) -> int:
        return self.s_min + len(self.digits) - 1

    @property
    def n(self) -> int:
        return len(self.digits)

    def exponents(self) -> range:
        return range(self.s_min, self.s_max + 1)

    def __getitem__(self, s: int) -> int:
        if not self.s_min <= s <= self.s_max:
            raise DomainError(f"digit index {s} outside [{self.s_min}, {self.s_max}]")
        return self.digits[s - self.s_min]

    def index(self) -> int:
        """Lattice index ``m`` encoded by the digits."""
        return sum(d * self.q**k for k, d in enumerate(self.digits))

    @classmethod
    def from_msd(cls, q: int, s_max: int, msd_first: Sequence[int]) -> "DigitVector":
        """Build from digits written most-significant first, e.g. ``101.1``."""
        digits = tuple(reversed(list(msd_first)))
        return cls(q, s_max - len(digits) + 1, digits)


def digits_of(m: int, q: int, n_minus: int, n_plus: int) -> DigitVector:
    """Digits of lattice index ``m`` on a lattice with exponents ``-n_minus .. n_plus - 1``."""
    _check_radix(q)
    n = n_minus + n_plus
    if n_minus < 0 or n_plus < 0 or n < 1:
        raise DomainError("need n_minus, n_plus >= 0 and n_minus + n_plus >= 1")
    if not isinstance(m, numbers.Integral) or not 0 <= m < q**n:
        raise DomainError(f"index {m!r} outside [0, {q**n})")
    m = int(m)
    digits = []
    for _ in range(n):
        m, d = divmod(m, q)
        digits.append(d)
    return DigitVector(q, -n_minus, tuple(digits))


def value_of(dv: DigitVector, d1=0) -> Fraction:
    """Positional value ``sum_s (d1 + c_s) q**s`` of a digit vector."""
    d1 = as_rational(d1)
    q = Fraction(dv.q)
    return sum(((d1 + c) * q**s for s, c in zip(dv.exponents(), dv.digits)), Fraction(0))


def digit_function(s: int, m: int, spec, d1=0) -> Fraction:
    """Shifted digit ``d1 + c_s(m)``; ``spec`` supplies ``q, n_minus, n_plus``."""
    dv = digits_of(m, spec.q, spec.n_minus, spec.n_plus)
    return as_rational(d1) + dv[s]


def renormalize_linear(dv: DigitVector) -> Fraction:
    """Linear renormalization ``(qx - x)/(q - 1)`` written digit-wise.

    The digit below the least one is taken to be zero.  For ``q > 2`` the
    result need not be a lattice node.
    """
    q = Fraction(dv.q)
    total = Fraction(0)
    prev = 0
    for s, c in zip(dv.exponents(), dv.digits):
        total += (prev - c) * q**s
        prev = c
    return total / (q - 1)


def renormalize_top_digit(dv: DigitVector) -> Fraction:
    """Replace the most significant digit so the lattice becomes signed.

    ``q = 2`` flips the sign of the top digit (two's complement).  ``q = 3``
    maps the top digit ``t -> t - 3/2 (t - 1) t``, i.e. ``{0, 1, 2} -> {0, 1, -1}``.
    """
    q = dv.q
    top = dv.digits[-1]
    if q == 2:
        new_top = Fraction(-top)
    elif q == 3:
        new_top = top - Fraction(3, 2) * (top - 1) * top
    else:
        raise UnsupportedRadixError(f"top-digit renormalization is defined for q in {{2, 3}}, not {q}")
    rest = DigitVector(q, dv.s_min, dv.digits[:-1] + (0,))
    return value_of(rest) + new_top * Fraction(q) ** dv.s_max


@dataclass(frozen=True)
class Tail:
    """Periodic digit tail.

    For a left tail (toward ``+inf``) ``pattern[j]`` sits at exponent
    ``start + j`` and repeats every ``len(pattern)`` places upward.  For a right
    tail (toward ``-inf``) ``pattern[j]`` sits at ``start - j`` and repeats
    downward.
    """

    pattern: tuple
    start: int

    def __post_init__(self):
        object.__setattr__(self, "pattern", tuple(int(d) for d in self.pattern))
        if not self.pattern:
            raise DomainError("a periodic tail needs a non-empty pattern")

    @property
    def period(self) -> int:
        return len(self.pattern)


@dataclass(frozen=True)
class DigitSeries:
    """Two-sided digit sequence: finite core plus optional periodic tails."""

    q: int
    core: Optional[DigitVector] = None
    left_tail: Optional[Tail] = None
    right_tail: Optional[Tail] = None

    def __post_init__(self):
        _check_radix(self.q)
        if self.core is not None and self.core.q != self.q:
            raise DomainError("core radix differs from series radix")
        for tail in (self.left_tail, self.right_tail):
            if tail is None:
                continue
            if not isinstance(tail, Tail):
                raise DomainError("tails must be declared as Tail(pattern, start)")
            for d in tail.pattern:
                if not 0 <= d < self.q:
                    raise DomainError(f"tail digit {d} outside 0..{self.q - 1}")
        lo = self.core.s_min if self.core is not None else None
        hi = self.core.s_max if self.core is not None else None
        if self.left_tail is not None and hi is not None and self.left_tail.start <= hi:
            raise DomainError("left tail overlaps the core")
        if self.right_tail is not None and lo is not None and self.right_tail.start >= lo:
            raise DomainError("right tail overlaps the core")
        if (self.core is None and self.left_tail is not None and self.right_tail is not None
                and self.left_tail.start <= self.right_tail.start):
            raise DomainError("left and right tails overlap")


def eval_renormalized_series(series: DigitSeries) -> Fraction:
    """Exact value of a digit series with the divergent part continued analytically.

    The right tail is an ordinary convergent geometric sum.  The left tail is
    assigned ``V / (1 - q**P)`` where ``V`` is the value of one period; this is
    ``sum'_{s>=0} q**s = 1/(1 - q)`` extended to periodic patterns.
    """
    q = Fraction(series.q)
    total = value_of(series.core) if series.core is not None else Fraction(0)
    if series.left_tail is not None:
        t = series.left_tail
        block = sum((d * q ** (t.start + j) for j, d in enumerate(t.pattern)), Fraction(0))
        total += block / (1 - q**t.period)
    if series.right_tail is not None:
        t = series.right_tail
        block = sum((d * q ** (t.start - j) for j, d in enumerate(t.pattern)), Fraction(0))
        total += block / (1 - q ** (-t.period))
    return total


def renormalized_offset(q: int, n_low: int, d1) -> Fraction:
    """Renormalized sum ``sum'_{s >= -n_low} d1 q**s = d1 q**(-n_low) / (1 - q)``.

    This is the node offset the digit shift ``d1`` induces once the digits above
    the lattice are summed "with prime"; for ``q = 2`` it is ``-d1 * step``.
    """
    unit = eval_renormalized_series(DigitSeries(q, left_tail=Tail((1,), -n_low)))
    return as_rational(d1) * unit


def shifted_offset(q: int, n_low: int, n_high: int, d1) -> Fraction:
    """Finite sum ``sum_{s=-n_low}^{n_high-1} d1 q**s``: value of the all-``d1`` number."""
    d1 = as_rational(d1)
    return d1 * (Fraction(q) ** n_high - Fraction(q) ** (-n_low)) / (q - 1)


def offsets_agree_mod_period(q: int, n_low: int, n_high: int, d1) -> bool:
    """Whether the constructive node set and the ``-d1 * step`` node set coincide modulo the period.

    Both sets are ``offset + step * Z``; they agree modulo ``q**n_high`` iff the
    offsets differ by a multiple of the step.
    """
    step = Fraction(q) ** (-n_low)
    diff = shifted_offset(q, n_low, n_high, d1) + as_rational(d1) * step
    return (diff / step).denominator == 1

