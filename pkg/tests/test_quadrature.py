"""Adaptive panel engine on known integrals."""

import math

import mpmath as mp
import numpy as np
import pytest

from oscphase.errors import BudgetError
from oscphase.quadrature import (
    adaptive,
    corner_graded,
    osc_power_integral,
    phase_breakpoints,
)



def test_adaptive_smooth():
    res = adaptive(np.exp, np.array([0.0, 1.0]), 1e-14, 1e-14, 10_000)
    assert abs(res.value - (math.e - 1.0)) <= 1e-14
    assert res.est_error >= 0.0


def test_adaptive_refines_peak():
    f = lambda x: 1.0 / (1e-4 + (x - 0.3) ** 2)
    # closed form: 100 (atan(70) + atan(30))
    expect = (math.atan(70.0) + math.atan(30.0)) / 1e-2
    res = adaptive(f, np.linspace(0.0, 1.0, 5), 1e-10, 1e-12, 200_000)
    assert abs(res.value - expect) <= 1e-8


def test_phase_breakpoints_cap():
    lam, p = 37.0, 2.0
    pts = phase_breakpoints(0.5, 3.0, p, lam)
    ph = lam * pts**p
    assert np.all(np.diff(ph) <= math.pi * 1.0001)
    assert pts[0] == 0.5 and pts[-1] == 3.0


def test_corner_graded_shape():
    pts = corner_graded(1.0, 4)
    assert pts[0] == 0.0 and pts[-1] == 1.0
    assert np.all(np.diff(pts) > 0)


def test_singular_endpoint_oscillatory():
    # integral_0^1 e^(ix) x^(-1/2) dx, oracle via mpmath
    expect = complex(mp.quad(lambda t: mp.e ** (1j * t) / mp.sqrt(t), [0, 1]))
    res = osc_power_integral(
        lambda x: np.ones_like(x), 0.0, 1.0, 1.0, 0.5, 1.0, +1, 1e-12, 1e-12, 100_000
    )
    assert abs(res.value - expect) <= 1e-11


def test_mildly_singular_direct_branch():
    # q = 1.5 keeps the direct branch (no substitution); e^(2ix) x^(1/2)
    expect = complex(mp.quad(lambda t: mp.e ** (2j * t) * mp.sqrt(t), [0, 1]))
    res = osc_power_integral(
        lambda x: np.ones_like(x), 0.0, 1.0, 1.0, 1.5, 2.0, +1, 1e-12, 1e-12, 100_000
    )
    assert abs(res.value - expect) <= 1e-11


def test_budget_error():
    f = lambda x: np.exp(1j * 500.0 * x**2)
    with pytest.raises(BudgetError):
        adaptive(f, np.array([0.0, 6.0]), 1e-14, 1e-14, 300)
