"""Invariant suites run over a grid of lattices, plus the golden-matrix check."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, List, Optional

import numpy as np

from . import appendix, errata
from .commutators import commutation_region, coordinate_momentum_commutator
from .errors import DomainError
from .lattice import LatticeSpec, coordinate_points, index_of, momentum_points
from .linalg import (
    dft_matrix,
    dumps_matrix,
    is_hermitian,
    is_permutation,
    is_unitary,
    loads_matrix,
    matrix_from_csv,
    matrix_to_csv,
)
from .numeral import digits_of, value_of
from .operators import (
    closed_form_coefficients,
    closed_form_coordinate_coefficients,
    coordinate_digit,
    coordinate_digit_coefficients,
    coordinate_operator,
    digit_shift_coefficients,
    momentum_digit_oracle,
    momentum_operator,
    momentum_twist,
    projector,
    shift_operator,
)
from .physics import TwistSpec, phase_from_d1, twisted_shift, twisted_spectrum_residual

__all__ = ["Check", "VerifyReport", "default_grid", "run_grid", "run_golden", "MAX_N"]

MAX_N = 729


@dataclass(frozen=True)
class Check:
    name: str
    config: str
    passed: bool
    value: Optional[float] = None

    def as_dict(self) -> dict:
        return {"name": self.name, "config": self.config, "passed": self.passed, "value": self.value}


@dataclass
class VerifyReport:
    checks: List[Check] = field(default_factory=list)
    info: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            value = "" if c.value is None else f" ({c.value:.3e})"
            lines.append(f"{'PASS' if c.passed else 'FAIL'} {c.name} [{c.config}]{value}")
        lines.extend(f"INFO {line}" for line in self.info)
        lines.append(f"{len(self.checks) - len(self.failures)}/{len(self.checks)} checks passed")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "passed": self.passed,
            "checks": [c.as_dict() for c in self.checks],
            "info": list(self.info),
        }
        return json.dumps(payload, indent=1) + "\n"

    def to_csv(self) -> str:
        lines = ["name,config,passed,value"]
        for c in self.checks:
            value = "" if c.value is None else f"{c.value:.17g}"
            lines.append(f"{c.name},{c.config},{str(c.passed).lower()},{value}")
        return "\n".join(lines) + "\n"


def default_grid(radices: Iterable[int] = (2, 3), max_n: int = 3) -> List[LatticeSpec]:
    """Every ``(q, n_minus, n_plus)`` with ``1 <= n <= max_n`` and ``d1`` in ``{0, -(q-1)/2}``."""
    specs = []
    for q in radices:
        for n in range(1, max_n + 1):
            if q**n > MAX_N:
                raise DomainError(f"grid point q={q} n={n} exceeds N = {MAX_N}")
            for n_minus in range(n + 1):
                for d1 in (Fraction(0), Fraction(-(q - 1), 2)):
                    specs.append(LatticeSpec(q, n_minus, n - n_minus, d1, d1))
    return specs


def _config(spec: LatticeSpec) -> str:
    return f"q={spec.q},n-={spec.n_minus},n+={spec.n_plus},d1={spec.d1_x}"


class _Suite:
    def __init__(self, spec: LatticeSpec, tol: float, report: VerifyReport):
        self.spec = spec
        self.tol = tol
        self.report = report
        self.cfg = _config(spec)

    def flag(self, name: str, passed: bool) -> None:
        self.report.checks.append(Check(name, self.cfg, bool(passed)))

    def small(self, name: str, value: float, tol: Optional[float] = None) -> None:
        value = float(value)
        self.report.checks.append(Check(name, self.cfg, value < (self.tol if tol is None else tol), value))


def _numeral_suite(t: _Suite) -> None:
    spec = t.spec
    ok = all(value_of(digits_of(m, spec.q, spec.n_minus, spec.n_plus), spec.d1_x) % spec.x_period
             == spec.x_value(m) % spec.x_period for m in range(spec.N))
    t.flag("numeral.value_of_digits", ok)


def _lattice_suite(t: _Suite) -> None:
    spec = t.spec
    xs, ps = coordinate_points(spec), momentum_points(spec)
    t.flag("lattice.duality", spec.x_period * spec.dp == 1 and spec.dx * spec.dp * spec.N == 1)
    t.flag("lattice.decreasing", all(a > b for a, b in zip(xs, xs[1:])) and all(a > b for a, b in zip(ps, ps[1:])))
    t.flag("lattice.index_round_trip", all(index_of(x, spec) == i for i, x in enumerate(xs))
           and all(index_of(p, spec, "momentum") == i for i, p in enumerate(ps)))


def _linalg_suite(t: _Suite) -> None:
    f = dft_matrix(t.spec)
    t.small("linalg.dft_unitary", np.linalg.norm(f @ f.conj().T - np.eye(t.spec.N)))
    t.flag("linalg.json_round_trip", np.array_equal(loads_matrix(dumps_matrix(f)), f))
    t.flag("linalg.csv_round_trip", np.array_equal(matrix_from_csv(matrix_to_csv(f)), f))


def _operator_suite(t: _Suite, fault: bool) -> None:
    spec, N = t.spec, t.spec.N
    x = coordinate_operator(spec)
    p = momentum_operator(spec)
    if fault:
        p = p.copy()
        p[0, N - 1] += 1e-6
    t.flag("operators.x_hermitian", is_hermitian(x, t.tol))
    t.flag("operators.p_hermitian", is_hermitian(p, t.tol))
    digits = {r: momentum_digit_oracle(r, spec) for r in spec.p_digits}
    t.flag("operators.p_digits_hermitian", all(is_hermitian(d, t.tol) for d in digits.values()))
    xsum = sum(float(Fraction(spec.q) ** s) * coordinate_digit(s, spec) for s in spec.x_digits)
    psum = sum(float(Fraction(spec.q) ** r) * d for r, d in digits.items())
    t.small("operators.x_digit_sum", np.linalg.norm(xsum - x))
    t.small("operators.p_digit_sum", np.linalg.norm(psum - p))

    step = shift_operator(spec.dx, spec)
    t.flag("operators.shift_unitary", is_unitary(step, t.tol))
    t.flag("operators.shift_permutation", is_permutation(step) == (momentum_twist(spec) == 0))
    power = np.linalg.matrix_power(step, N)
    twist = np.exp(2j * np.pi * float(momentum_twist(spec)))
    t.small("operators.shift_period", np.linalg.norm(power - twist * np.eye(N)))
    t.small("operators.shift_identity", np.linalg.norm(shift_operator(0, spec) - np.eye(N)))

    worst = max(closed_form_coefficients(r, spec).max_deviation(digit_shift_coefficients(r, spec))
                for r in spec.p_digits)
    t.small("operators.closed_form_momentum", worst)
    worst = max(closed_form_coordinate_coefficients(s, spec).max_deviation(coordinate_digit_coefficients(s, spec))
                for s in spec.x_digits)
    t.small("operators.closed_form_coordinate", worst)
    worst = max(float(np.linalg.norm(digit_shift_coefficients(r, spec).operator() - d)) for r, d in digits.items())
    t.small("operators.shift_expansion_rebuild", worst)

    if any(v == 0 for v in momentum_points(spec)) and momentum_twist(spec) == 0:
        total = sum(shift_operator(j * spec.dx, spec) for j in range(N))
        t.small("operators.shift_sum_projector", np.linalg.norm(total - N * projector(0, spec)))


def _commutator_suite(t: _Suite) -> None:
    report = commutation_region(t.spec, strict=False)
    t.flag("commutators.region_law", report.law_holds)
    t.flag("commutators.region_boundary", any(
        s + r == -1 and v > 0.05 for s, r, v in report.pairs) or not any(s + r == -1 for s, r, _ in report.pairs))
    result = coordinate_momentum_commutator(t.spec)
    t.small("commutators.xp_closed_form", result.agreement, 1e-10)


def _physics_suite(t: _Suite) -> None:
    spec = t.spec
    for d1 in (Fraction(0), Fraction(-1, 2), Fraction(-1, 4)):
        twist = TwistSpec(spec, phase_from_d1(d1))
        t.small(f"physics.twisted_spectrum[d1={d1}]", twisted_spectrum_residual(twist))
        m = twisted_shift(twist)
        power = np.linalg.matrix_power(m, spec.N)
        t.small(f"physics.twisted_power[d1={d1}]", np.linalg.norm(power - np.exp(1j * twist.phi) * np.eye(spec.N)))
        t.flag(f"physics.gauge[d1={d1}]",
               np.array_equal(twisted_shift(TwistSpec(spec, twist.phi + 2 * np.pi)), m))


SUITES: List[Callable] = [_numeral_suite, _lattice_suite, _linalg_suite, _commutator_suite, _physics_suite]


def run_grid(specs: Optional[List[LatticeSpec]] = None, tol: float = 1e-12, inject_fault: bool = False,
             include_errata: bool = True) -> VerifyReport:
    """Run every suite on every lattice.  ``inject_fault`` perturbs one entry of ``p``."""
    specs = default_grid() if specs is None else specs
    report = VerifyReport()
    for spec in specs:
        if spec.N > MAX_N:
            raise DomainError(f"{spec.describe()} exceeds N = {MAX_N}")
        suite = _Suite(spec, tol, report)
        for fn in SUITES[:3]:
            fn(suite)
        _operator_suite(suite, inject_fault)
        for fn in SUITES[3:]:
            fn(suite)
    if include_errata:
        report.info.extend(e.line() for e in errata.errata_report())
    return report


def run_golden(tol: float = 1e-12) -> VerifyReport:
    """Embedded oracle fixture and corrected transcription must match; printed values are informational."""
    report = VerifyReport()
    for row in appendix.compare_golden(source="fixture", tol=tol):
        report.checks.append(Check(f"golden.fixture.{row.matrix}", row.case, row.passed, row.distance))
    for row in appendix.compare_golden(source="corrected", tol=tol):
        report.checks.append(Check(f"golden.corrected.{row.matrix}", row.case, row.passed, row.distance))
    fixes = appendix.corrections()
    for reading in appendix.READINGS:
        for row in appendix.compare_golden(reading, tol=tol):
            status = "matches" if row.passed else "DIVERGES"
            note = f" (fix: {fixes[(row.case, row.matrix)]})" if (row.case, row.matrix) in fixes and not row.passed else ""
            report.info.append(f"printed[{reading}] {row.case} {row.matrix} {status} "
                               f"oracle, distance {row.distance:.3e}{note}")
    return report
