"""Data tables behind the digit and torus-winding plots (no rendering)."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Sequence, Tuple

from .errors import DomainError
from .linalg import format_real
from .lattice import LatticeSpec
from .numeral import as_rational

__all__ = ["PLOT_KINDS", "digit_lattice", "digit_line", "winding_d1", "winding_momentum", "rows_to_csv"]

PLOT_KINDS = ("digit-lattice", "digit-line", "winding-d1", "winding-momentum")


def digit_lattice(spec: LatticeSpec, s: int, x_min=None, x_max=None) -> List[Tuple[Fraction, Fraction]]:
    """Rows ``(x, d1_x + c_s(x))`` over the coordinate nodes, ascending in ``x``.

    Without a window the rows are the ``N`` nodes themselves.  A window
    ``[x_min, x_max]`` is filled with the periodic images ``x + k Xi``.
    """
    if s not in spec.x_digits:
        raise DomainError(f"coordinate digit {s} outside [{-spec.n_minus}, {spec.n_plus - 1}]")
    nodes = [(spec.x_value(m), spec.x_digit(s, m)) for m in range(spec.N)]
    if x_min is None and x_max is None:
        return sorted(nodes)
    lo = as_rational(x_min) if x_min is not None else min(x for x, _ in nodes)
    hi = as_rational(x_max) if x_max is not None else max(x for x, _ in nodes)
    if hi < lo:
        raise DomainError("empty window: x_max < x_min")
    period = spec.x_period
    rows = []
    for x, d in nodes:
        k = math.ceil((lo - x) / period)
        while x + k * period <= hi:
            rows.append((x + k * period, d))
            k += 1
    return sorted(rows)


def digit_line(q: int, s: int, d1=0, x_min=-4, x_max=4) -> List[Tuple[Fraction, Fraction, Fraction]]:
    """Constant pieces ``(x_left, x_right, d1 + c_s(x))`` of the digit on the real line.

    Breakpoints sit at multiples of ``q**s`` for every ``d1``.
    """
    d1 = as_rational(d1)
    lo, hi = as_rational(x_min), as_rational(x_max)
    if hi <= lo:
        raise DomainError("empty window: x_max <= x_min")
    width = Fraction(q) ** s
    rows = []
    j = math.floor(lo / width)
    while j * width < hi:
        left, right = max(lo, j * width), min(hi, (j + 1) * width)
        rows.append((left, right, d1 + j % q))
        j += 1
    return rows


def winding_d1(q: int, n_minus: int, n_plus: int, d1_min=-1, d1_max=0, steps: int = 8) -> List[Tuple[Fraction, int, Fraction]]:
    """Rows ``(d1, m, x mod Xi)`` with ``x = (m - d1) dx`` over a grid of ``d1`` sections.

    Each node traces a line of slope ``-1/dx`` across the ``(x, d1)`` torus; moving
    ``d1`` by one moves every node by one step, so the picture has period 1 in ``d1``.
    """
    lo, hi = as_rational(d1_min), as_rational(d1_max)
    if hi < lo or steps < 1:
        raise DomainError("need d1_min <= d1_max and steps >= 1")
    dx = Fraction(1, q**n_minus)
    period = Fraction(q**n_plus)
    N = q ** (n_minus + n_plus)
    rows = []
    for j in range(steps + 1):
        d1 = lo + (hi - lo) * Fraction(j, steps)
        for m in range(N):
            rows.append((d1, m, ((m - d1) * dx) % period))
    return rows


def winding_momentum(q: int, n_minus: int, n_plus: int, d1=0) -> List[Tuple[int, Fraction, Fraction]]:
    """Segment endpoints ``(segment, p, frac)`` of ``frac = (p - c) mod 1`` over ``[0, Pi]``.

    ``p`` is the value of the unshifted digit string and ``c = d1 dp / (q - 1)``
    the renormalized value of the all-``d1`` string, so the sawtooth moves along
    ``p`` as ``d1`` changes while its slope stays 1.
    Every segment has unit slope; each ends on ``frac = 1`` except possibly the last.
    """
    d1 = as_rational(d1)
    period = Fraction(q**n_minus)
    c = d1 * Fraction(1, q**n_plus) / (q - 1)
    rows = []
    p = Fraction(0)
    seg = 0
    while p < period:
        frac = (p - c) % 1
        end = min(period, p + 1 - frac)
        rows.append((seg, p, frac))
        rows.append((seg, end, frac + (end - p)))
        p = end
        seg += 1
    return rows


def rows_to_csv(header: Sequence[str], rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(str(v) if isinstance(v, int) else format_real(v) for v in row))
    return "\n".join(lines) + "\n"
