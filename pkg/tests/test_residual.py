import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mvi_tseng import residual, scaling_bounds_check

from conftest import BUILTIN_SETS


def test_zero_on_set(box):
    r = residual(box, [3.0, 7.0], [0.0, 0.0], 0.7)
    np.testing.assert_array_equal(r.vector, [0.0, 0.0])
    assert r.norm == 0.0


def test_clamp_example(box):
    # P_C((-1, -1)) = (0, 0), so r = (1, 1)
    r = residual(box, [1.0, 1.0], [2.0, 2.0], 1.0)
    np.testing.assert_array_equal(r.vector, [1.0, 1.0])
    assert r.norm == pytest.approx(np.sqrt(2.0), abs=1e-15)


@pytest.mark.parametrize("t", [0.0, 0.05, 0.1, 0.2])
def test_origin_solves_example41(box, t):
    assert residual(box, [0.0, 0.0], [t, 0.0], 1.0).norm == 0.0


def test_rejects_nonpositive_mu(box):
    with pytest.raises(ValueError):
        residual(box, [1.0, 1.0], [0.0, 0.0], 0.0)
    with pytest.raises(ValueError):
        scaling_bounds_check(box, [1.0, 1.0], [0.0, 0.0], -1.0)


def test_scaling_mu_one(box):
    assert scaling_bounds_check(box, [4.0, 2.0], [3.0, -8.0], 1.0)


def test_scaling_example(box):
    # r_0.5 = (1, 1) - P_C((0, 0)) = (1, 1); r_1 = (1, 1); 0.5 sqrt2 <= sqrt2 <= sqrt2
    assert residual(box, [1.0, 1.0], [2.0, 2.0], 0.5).norm == pytest.approx(np.sqrt(2.0))
    assert scaling_bounds_check(box, [1.0, 1.0], [2.0, 2.0], 0.5)


def _instance(name, data):
    C = BUILTIN_SETS[name]()
    n = C.bounds[0].size
    x = np.array(data.draw(st.lists(st.floats(-30, 30), min_size=n, max_size=n)))
    w = np.array(data.draw(st.lists(st.floats(-50, 50), min_size=n, max_size=n)))
    return C, x, w


@pytest.mark.parametrize("name", sorted(BUILTIN_SETS))
@settings(max_examples=300, deadline=None)
@given(data=st.data(), mu=st.floats(1e-3, 5.0))
def test_scaling_property(name, data, mu):
    C, x, w = _instance(name, data)
    assert scaling_bounds_check(C, x, w, mu)


@pytest.mark.parametrize("name", sorted(BUILTIN_SETS))
@settings(max_examples=200, deadline=None)
@given(data=st.data(), mu=st.floats(0.01, 2.0))
def test_zero_iff_fixed_point(name, data, mu):
    C, x, w = _instance(name, data)
    x = C.project(x)
    r = residual(C, x, w, mu)
    fixed = np.allclose(x, C.project(x - mu * w), rtol=0, atol=1e-12)
    assert (r.norm <= 1e-12) == fixed


@pytest.mark.parametrize("name", sorted(BUILTIN_SETS))
def test_continuity(name, rng):
    C = BUILTIN_SETS[name]()
    n = C.bounds[0].size
    for _ in range(300):
        x, w = rng.uniform(-20, 20, size=(2, n))
        mu = rng.uniform(0.01, 1.0)
        dx, dw = rng.normal(size=(2, n))
        dx *= 1e-8 / np.linalg.norm(dx)
        dw *= 1e-8 / np.linalg.norm(dw)
        change = abs(residual(C, x + dx, w + dw, mu).norm - residual(C, x, w, mu).norm)
        assert change <= 1e-6
        assert change <= (2 + mu) * 1e-8 + 1e-12
