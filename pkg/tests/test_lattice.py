from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from digitrep.errors import DomainError, NotANodeError
from digitrep.lattice import LatticeSpec, coordinate_points, index_of, momentum_points

F = Fraction


def test_point_lists():
    assert coordinate_points(LatticeSpec(3, 0, 2)) == list(range(8, -1, -1))
    assert coordinate_points(LatticeSpec(3, 0, 2, -1, -1)) == list(range(4, -5, -1))
    assert coordinate_points(LatticeSpec(2, 1, 1)) == [F(3, 2), 1, F(1, 2), 0]
    assert momentum_points(LatticeSpec(2, 0, 1)) == [F(1, 2), 0]


def test_shifted_momentum_lattice():
    spec = LatticeSpec(2, 1, 1, 0, F(-1, 2))
    ps = momentum_points(spec)
    # every node moves by d1_p (Pi - dp) / (q - 1) = -3/4
    assert ps == [p - F(3, 4) for p in momentum_points(LatticeSpec(2, 1, 1))]


def test_index_of():
    spec = LatticeSpec(3, 0, 2)
    assert index_of(0, spec) == 8
    assert index_of(9, spec) == 8
    assert index_of(8, spec) == 0
    with pytest.raises(NotANodeError):
        index_of(F(1, 2), spec)
    with pytest.raises(DomainError):
        index_of(0, spec, "energy")


def test_invalid_specs():
    with pytest.raises(DomainError):
        LatticeSpec(1, 1, 1)
    with pytest.raises(DomainError):
        LatticeSpec(2, 0, 0)
    with pytest.raises(DomainError):
        LatticeSpec(2, -1, 2)
    with pytest.raises(TypeError):
        LatticeSpec(2, 1, 1, 0.5)


def test_digit_accessors():
    spec = LatticeSpec(3, 0, 2, -1, -1)
    assert spec.x_digit(1, 8) == 1
    assert spec.x_digit(0, 0) == -1
    assert spec.p_digits == range(-2, 0)
    assert spec.x_digits == range(0, 2)


specs = st.builds(
    LatticeSpec,
    st.sampled_from([2, 3, 5]),
    st.integers(0, 2),
    st.integers(1, 2),
    st.sampled_from([F(0), F(-1, 2), F(-1), F(-1, 4)]),
    st.sampled_from([F(0), F(-1, 2), F(-1), F(-1, 4)]),
)


@given(specs)
def test_duality(spec):
    assert spec.x_period * spec.dp == 1
    assert spec.dx * spec.dp * spec.N == 1
    assert spec.p_period * spec.dx == 1


@given(specs)
def test_nodes_distinct_modulo_period_and_decreasing(spec):
    xs, ps = coordinate_points(spec), momentum_points(spec)
    assert len({x % spec.x_period for x in xs}) == spec.N
    assert len({p % spec.p_period for p in ps}) == spec.N
    assert all(a - b == spec.dx for a, b in zip(xs, xs[1:]))
    assert all(a - b == spec.dp for a, b in zip(ps, ps[1:]))


@given(specs)
def test_index_round_trip(spec):
    for i, x in enumerate(coordinate_points(spec)):
        assert index_of(x, spec) == i
        assert index_of(x + spec.x_period, spec) == i
    for i, p in enumerate(momentum_points(spec)):
        assert index_of(p, spec, "momentum") == i


@given(specs)
def test_node_value_is_digit_sum(spec):
    q = F(spec.q)
    for m in range(spec.N):
        assert spec.x_value(m) == sum(spec.x_digit(s, m) * q**s for s in spec.x_digits)
        assert spec.p_value(m) == sum(spec.p_digit(r, m) * q**r for r in spec.p_digits)
