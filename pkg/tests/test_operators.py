from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from digitrep.errors import DomainError, NotANodeError
from digitrep.lattice import LatticeSpec, momentum_points
from digitrep.linalg import is_hermitian, is_permutation, is_unitary
from digitrep.operators import (
    ShiftCoefficients,
    arbitrary_shift,
    closed_form_coefficients,
    closed_form_coordinate_coefficients,
    coordinate_digit,
    coordinate_digit_coefficients,
    coordinate_operator,
    digit_shift_coefficients,
    momentum_digit_oracle,
    momentum_operator,
    momentum_shift_operator,
    momentum_twist,
    projector,
    shift_operator,
)

F = Fraction

EXAMPLE_SPECS = [
    pytest.param(LatticeSpec(2, 1, 1), id="binary-4"),
    pytest.param(LatticeSpec(2, 1, 2, F(-1, 2), F(-1, 2)), id="binary-8-half"),
    pytest.param(LatticeSpec(2, 2, 1, F(-1, 4), F(-1, 4)), id="binary-8-quarter"),
    pytest.param(LatticeSpec(3, 1, 1), id="ternary-9"),
    pytest.param(LatticeSpec(3, 0, 2, -1, -1), id="ternary-9-symmetric"),
    pytest.param(LatticeSpec(3, 1, 2, -1, -1), id="ternary-27-symmetric"),
    pytest.param(LatticeSpec(5, 1, 1), id="quinary-25"),
]


def hs_coefficients(r, spec):
    """Independent route: c(A) = tr(T_A^+ p_r) / N, using HS orthogonality of the shifts."""
    d = momentum_digit_oracle(r, spec)
    return {j * spec.dx: np.trace(shift_operator(j * spec.dx, spec).conj().T @ d) / spec.N for j in range(spec.N)}


def test_shift_examples():
    spec = LatticeSpec(3, 0, 1)
    t = shift_operator(1, spec)
    assert np.array_equal(t @ np.array([1, 2, 3]), np.array([3, 1, 2]))
    assert np.array_equal(shift_operator(0, spec), np.eye(3))
    assert np.array_equal(shift_operator(3, spec), np.eye(3))
    with pytest.raises(DomainError):
        shift_operator(F(1, 2), spec)


@pytest.mark.parametrize("spec", EXAMPLE_SPECS)
def test_shift_powers_and_twist(spec):
    step = shift_operator(spec.dx, spec)
    assert is_unitary(step)
    power = np.linalg.matrix_power(step, spec.N)
    assert np.allclose(power, np.exp(2j * np.pi * float(momentum_twist(spec))) * np.eye(spec.N), atol=1e-12)
    assert is_permutation(step) == (momentum_twist(spec) == 0)


@pytest.mark.parametrize("spec", EXAMPLE_SPECS)
def test_shift_group_law(spec):
    for a in (1, 2, spec.N - 1):
        for b in (1, spec.N):
            A, B = a * spec.dx, b * spec.dx
            lhs = shift_operator(A, spec) @ shift_operator(B, spec)
            assert np.allclose(lhs, shift_operator(A + B, spec), atol=1e-12)


@pytest.mark.parametrize("spec", EXAMPLE_SPECS)
def test_arbitrary_shift(spec):
    assert np.allclose(arbitrary_shift(spec.dx, spec), shift_operator(spec.dx, spec), atol=1e-12)
    assert np.allclose(arbitrary_shift(3 * spec.dx, spec), shift_operator(3 * spec.dx, spec), atol=1e-12)
    half = arbitrary_shift(spec.dx / 2, spec)
    assert is_unitary(half) and not is_permutation(half)
    assert np.allclose(half @ half, shift_operator(spec.dx, spec), atol=1e-12)
    assert np.allclose(arbitrary_shift(0.25, spec), arbitrary_shift(F(1, 4), spec), atol=1e-12)


def test_arbitrary_shift_by_period_is_identity_without_twist():
    spec = LatticeSpec(3, 1, 1)
    assert np.allclose(arbitrary_shift(spec.x_period, spec), np.eye(spec.N), atol=1e-12)


def test_momentum_shift_moves_momentum_states():
    spec = LatticeSpec(2, 1, 1)
    ps = momentum_points(spec)
    s = momentum_shift_operator(spec.dp, spec)
    # S_B maps the eigenstate |p> onto |p - B>
    assert np.allclose(s @ projector(ps[0], spec) @ s.conj().T, projector(ps[1], spec), atol=1e-12)


def test_digit_examples():
    spec = LatticeSpec(2, 0, 1)
    assert np.allclose(momentum_digit_oracle(-1, spec), [[0.5, -0.5], [-0.5, 0.5]], atol=1e-15)
    assert np.allclose(momentum_operator(spec), [[0.25, -0.25], [-0.25, 0.25]], atol=1e-15)
    assert np.array_equal(coordinate_operator(spec), np.diag([1.0, 0.0]))
    with pytest.raises(DomainError):
        momentum_digit_oracle(0, spec)
    with pytest.raises(DomainError):
        coordinate_digit(1, spec)


def test_digit_spectra():
    spec = LatticeSpec(3, 1, 1, -1, -1)
    for r in spec.p_digits:
        values = np.sort(np.linalg.eigvalsh(momentum_digit_oracle(r, spec)))
        assert np.allclose(values, np.repeat([-1, 0, 1], 3), atol=1e-12)


def test_coefficient_example():
    c = digit_shift_coefficients(-1, LatticeSpec(2, 0, 1))
    assert len(c) == 2
    assert abs(c[0] - 0.5) < 1e-15 and abs(c[1] + 0.5) < 1e-15
    assert abs(c[-1] + 0.5) < 1e-15


@pytest.mark.parametrize("spec", EXAMPLE_SPECS)
def test_coefficients_match_trace_route(spec):
    for r in spec.p_digits:
        c = digit_shift_coefficients(r, spec)
        for A, value in hs_coefficients(r, spec).items():
            assert abs(c[A] - value) < 1e-12
        assert abs(c[0] - float(spec.d1_p + F(spec.q - 1, 2))) < 1e-12


@pytest.mark.parametrize("spec", EXAMPLE_SPECS)
def test_closed_form_matches_oracle(spec):
    for r in spec.p_digits:
        assert closed_form_coefficients(r, spec).max_deviation(digit_shift_coefficients(r, spec)) < 1e-12
    for s in spec.x_digits:
        assert closed_form_coordinate_coefficients(s, spec).max_deviation(
            coordinate_digit_coefficients(s, spec)) < 1e-12


def test_named_closed_forms():
    for spec, system in [(LatticeSpec(3, 1, 2), "base_q"), (LatticeSpec(2, 2, 2), "binary"),
                         (LatticeSpec(3, 1, 2, -1, -1), "ternary_symmetric"), (LatticeSpec(5, 1, 1), "base_q")]:
        for r in spec.p_digits:
            cf = closed_form_coefficients(r, spec, system)
            assert cf.max_deviation(digit_shift_coefficients(r, spec)) < 1e-12


def test_closed_form_system_checks():
    with pytest.raises(DomainError):
        closed_form_coefficients(-1, LatticeSpec(3, 0, 2), "ternary_symmetric")
    with pytest.raises(DomainError):
        closed_form_coefficients(-1, LatticeSpec(3, 0, 2), "binary")
    with pytest.raises(DomainError):
        closed_form_coefficients(-1, LatticeSpec(2, 0, 2, 0, F(-1, 2)), "base_q")
    with pytest.raises(DomainError):
        closed_form_coefficients(-1, LatticeSpec(2, 0, 2), "octal")
    with pytest.raises(DomainError):
        digit_shift_coefficients(5, LatticeSpec(2, 0, 2))


@pytest.mark.parametrize("spec", EXAMPLE_SPECS)
def test_coefficients_rebuild_operators(spec):
    for r in spec.p_digits:
        assert np.linalg.norm(digit_shift_coefficients(r, spec).operator() - momentum_digit_oracle(r, spec)) < 1e-12
    for s in spec.x_digits:
        assert np.linalg.norm(coordinate_digit_coefficients(s, spec).operator() - coordinate_digit(s, spec)) < 1e-12


def test_coefficient_folding_carries_twist():
    spec = LatticeSpec(2, 1, 1, 0, F(-1, 2))
    c = ShiftCoefficients(spec)
    c.add(spec.x_period + spec.dx, 1.0)
    # T_{Xi + dx} = exp(2 pi i t) T_dx
    assert abs(c[spec.dx] - np.exp(2j * np.pi * float(momentum_twist(spec)))) < 1e-15
    assert abs(c[spec.x_period + spec.dx] - 1.0) < 1e-15
    assert np.allclose(c.operator(), shift_operator(spec.x_period + spec.dx, spec), atol=1e-12)
    assert c.to_csv().splitlines()[0] == "shift,re,im"


@pytest.mark.parametrize("spec", EXAMPLE_SPECS)
def test_digit_sums_reconstruct(spec):
    q = F(spec.q)
    x = sum(float(q**s) * coordinate_digit(s, spec) for s in spec.x_digits)
    assert np.linalg.norm(x - coordinate_operator(spec)) < 1e-12
    p = momentum_operator(spec, from_digits=True)
    assert np.linalg.norm(p - momentum_operator(spec)) < 1e-12
    assert is_hermitian(p)


def test_projector_examples():
    spec = LatticeSpec(2, 0, 1)
    assert np.allclose(projector(0, spec), np.full((2, 2), 0.5), atol=1e-15)
    with pytest.raises(NotANodeError):
        projector(F(1, 4), spec)


@pytest.mark.parametrize("spec", EXAMPLE_SPECS)
def test_projectors_resolve_identity(spec):
    ps = momentum_points(spec)
    total = np.zeros((spec.N, spec.N), dtype=complex)
    for p in ps:
        P = projector(p, spec)
        assert np.allclose(P @ P, P, atol=1e-12)
        total += P
    assert np.allclose(total, np.eye(spec.N), atol=1e-12)


@given(st.sampled_from([2, 3, 5]), st.integers(0, 2), st.integers(1, 2))
def test_shift_sum_is_zero_momentum_projector(q, n_minus, n_plus):
    spec = LatticeSpec(q, n_minus, n_plus)
    total = sum(shift_operator(j * spec.dx, spec) for j in range(spec.N))
    assert np.linalg.norm(total - spec.N * projector(0, spec)) < 1e-12
