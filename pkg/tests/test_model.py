import math

import numpy as np
import pytest
from hypothesis import given

from parampli import (SWAP, ModelParams, ParameterError, PhysicalInputs, build_dynamics_matrix,
                      reduce_physical)
from parampli.model import InitialState

from conftest import model_params


def test_decoupled_matrix_is_diagonal():
    m = build_dynamics_matrix(ModelParams(1.0, 0.0, 0.0))
    np.testing.assert_array_equal(m, np.diag([-1.0, 1.0, -1.0, 1.0]))


def test_matrix_entries():
    m = build_dynamics_matrix(ModelParams(0.5, 0.4, 1.0))
    expected = [[-1, -0.4, -1, -1],
                [0.4, 1, 1, 1],
                [-1, -1, -0.5, 0],
                [1, 1, 0, 0.5]]
    np.testing.assert_array_equal(m, expected)
    assert m.dtype == float


@given(model_params())
def test_trace_zero_and_pseudo_reality(p):
    m = build_dynamics_matrix(p)
    assert np.trace(m) == 0.0
    np.testing.assert_array_equal(SWAP @ m @ SWAP, -m)


@pytest.mark.parametrize("kwargs", [
    dict(delta=math.nan, kappa=0.0, chi=1.0),
    dict(delta=0.0, kappa=math.inf, chi=1.0),
    dict(delta=0.0, kappa=0.0, chi=-0.1),
    dict(delta=0.0, kappa=-0.1, chi=0.1),
    dict(delta=0.0, kappa=1.0, chi=0.1),
    dict(delta=0.0, kappa=1.2, chi=0.1),
])
def test_invalid_params(kwargs):
    with pytest.raises(ParameterError):
        ModelParams(**kwargs)


def test_params_are_immutable():
    p = ModelParams(0.5, 0.0, 1.0)
    with pytest.raises(AttributeError):
        p.delta = 1.0


def test_reduce_physical_hand_calculation():
    w = 2.0e3
    inputs = PhysicalInputs(n_atoms=1e4, coupling_product=0.05 * w, optical_matrix_element=0.1,
                            collision_overlap=0.3 * w, omega_m=w)
    p = reduce_physical(inputs, detuning=0.5 * w)
    # sqrt(1e4) * 0.1 * 0.05 = 0.5
    assert p.chi == pytest.approx(0.5, rel=1e-15)
    assert p.delta == pytest.approx(0.5, rel=1e-15)
    assert p.kappa == pytest.approx(0.3, rel=1e-15)


def test_reduce_physical_limits():
    base = dict(n_atoms=100.0, coupling_product=3.0, optical_matrix_element=-0.2,
                collision_overlap=0.0, omega_m=7.0)
    assert reduce_physical(PhysicalInputs(**base)).kappa == 0.0
    assert reduce_physical(PhysicalInputs(**dict(base, n_atoms=0.0))).chi == 0.0
    # sign of the matrix element is absorbed
    assert reduce_physical(PhysicalInputs(**base)).chi == pytest.approx(10 * 0.2 * 3 / 7)


def test_reduce_physical_errors():
    with pytest.raises(ParameterError):
        PhysicalInputs(1.0, 1.0, 1.0, 0.0, omega_m=0.0)
    with pytest.raises(ParameterError):
        reduce_physical(PhysicalInputs(1.0, 1.0, 1.0, collision_overlap=2.0, omega_m=1.0))


def test_two_entry_paths_agree():
    inputs = PhysicalInputs(n_atoms=400.0, coupling_product=0.01, optical_matrix_element=0.5,
                            collision_overlap=0.4, omega_m=1.0)
    via_physical = build_dynamics_matrix(reduce_physical(inputs, detuning=-1.0))
    direct = build_dynamics_matrix(ModelParams(-1.0, 0.4, 0.1))
    np.testing.assert_allclose(via_physical, direct, rtol=1e-15, atol=0)


def test_initial_state_validation():
    assert InitialState(2).alpha == 2 + 0j
    with pytest.raises(ParameterError):
        InitialState(complex(math.nan, 0))
