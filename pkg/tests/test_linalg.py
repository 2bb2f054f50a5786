import cmath
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from digitrep.errors import DomainError
from digitrep.lattice import LatticeSpec, coordinate_points, momentum_points
from digitrep.linalg import (
    adjoint,
    dft_matrix,
    dumps_matrix,
    frobenius_distance,
    is_hermitian,
    is_permutation,
    is_unitary,
    loads_matrix,
    matrix_from_csv,
    matrix_to_csv,
)
from digitrep.operators import momentum_digit_oracle, shift_operator


def naive_dft(spec):
    """Entry-by-entry reference with cmath on the exact product x p."""
    xs, ps = coordinate_points(spec), momentum_points(spec)
    return np.array([[cmath.exp(2j * cmath.pi * float(x * p)) for p in ps] for x in xs]) / np.sqrt(spec.N)


def test_two_point_dft():
    f = dft_matrix(LatticeSpec(2, 0, 1))
    assert np.allclose(f, np.array([[-1, 1], [1, 1]]) / np.sqrt(2), atol=1e-15)


@pytest.mark.parametrize("spec", [
    LatticeSpec(2, 1, 1),
    LatticeSpec(3, 0, 2, -1, -1),
    LatticeSpec(2, 1, 2, Fraction(-1, 2), Fraction(-1, 4)),
    LatticeSpec(5, 1, 1),
])
def test_dft_matches_reference(spec):
    assert frobenius_distance(dft_matrix(spec), naive_dft(spec)) < 1e-12


@pytest.mark.parametrize("q,n", [(2, 9), (3, 6), (5, 4), (3, 3)])
def test_dft_unitary(q, n):
    for n_minus in (0, n // 2, n):
        spec = LatticeSpec(q, n_minus, n - n_minus, Fraction(-(q - 1), 2), Fraction(-(q - 1), 2))
        assert is_unitary(dft_matrix(spec), 1e-10)


def test_dft_is_read_only():
    f = dft_matrix(LatticeSpec(2, 1, 1))
    with pytest.raises(ValueError):
        f[0, 0] = 0


def test_predicates():
    spec = LatticeSpec(3, 0, 1)
    t = shift_operator(1, spec)
    assert is_permutation(t) and is_unitary(t) and not is_hermitian(t)
    assert not is_permutation(dft_matrix(spec))
    with pytest.raises(DomainError):
        is_hermitian(np.zeros((2, 3)))
    with pytest.raises(DomainError):
        frobenius_distance(np.eye(2), np.eye(3))


def test_adjoint_of_symmetric_ternary_digit():
    p = momentum_digit_oracle(-1, LatticeSpec(3, 0, 1, -1, -1))
    assert frobenius_distance(adjoint(p), p) < 1e-12


matrices = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.complex_numbers(allow_nan=False, allow_infinity=False, max_magnitude=1e6),
                       min_size=n * n, max_size=n * n).map(lambda v: np.array(v).reshape(n, n)))


@given(matrices)
def test_json_round_trip_is_bit_exact(m):
    back = loads_matrix(dumps_matrix(m))
    assert back.shape == m.shape and np.array_equal(back, m)


@given(matrices)
def test_csv_round_trip_is_bit_exact(m):
    back = matrix_from_csv(matrix_to_csv(m))
    assert np.array_equal(back, m)


def test_csv_layout():
    text = matrix_to_csv(np.array([[1, 0.5j], [0, -1]]))
    lines = text.splitlines()
    assert lines[0] == "row,c0,c1"
    assert lines[1].startswith("0,1+0i,")
