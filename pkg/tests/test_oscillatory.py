"""Oscillatory integral paths against closed forms and each other."""

import cmath
import math

import numpy as np
import pytest

from oscphase import (
    Amplitude,
    BudgetError,
    ClassError,
    DEFAULT_EPS_LADDER,
    DomainError,
    OrderError,
    QuadratureConfig,
    builtin,
    default_regularizer,
    epsilon_regularized,
    generalized_fresnel,
    os_integral_fullline,
    os_integral_halfline,
    rational_regularizer,
    rotated_contour_reference,
)

ONE = builtin("constant_one")
GAUSS = builtin("gaussian")


def test_fresnel_anchor_quadrature():
    rep = os_integral_halfline(2.0, 1.0, +1, 1.0, ONE)
    expect = math.sqrt(math.pi) / 2.0 * cmath.exp(1j * math.pi / 4.0)
    assert abs(rep.value - expect) <= 1e-8
    assert rep.est_error >= abs(rep.value - expect) / 100.0  # honest estimate
    assert rep.tail_cut >= 2.0


def test_cube_phase_value():
    # (1/3) e^(i pi/3) Gamma(2/3); Gamma(2/3) frozen from mpmath
    gamma_23 = 1.3541179394264004169
    rep = os_integral_halfline(3.0, 2.0, +1, 1.0, ONE)
    expect = cmath.exp(1j * math.pi / 3.0) * gamma_23 / 3.0
    assert abs(rep.value - expect) <= 1e-8


def test_lambda_scaling():
    expect = generalized_fresnel(2.0, 1.0, +1).value
    for lam in (4.0, 100.0):
        rep = os_integral_halfline(2.0, 1.0, +1, lam, ONE)
        assert abs(rep.value - lam**-0.5 * expect) <= 1e-8


def test_gaussian_amplitude_halfline_conjugate():
    plus = os_integral_halfline(2.0, 1.3, +1, 3.0, GAUSS)
    minus = os_integral_halfline(2.0, 1.3, -1, 3.0, GAUSS)
    assert abs(minus.value - plus.value.conjugate()) <= 1e-12


def test_fullline_quadratic_gaussian_exact():
    # oracle: integral of e^((i lam - 1) x^2) = sqrt(pi / (1 - i lam))
    for lam in (1.0, 10.0):
        rep = os_integral_fullline(2, +1, lam, GAUSS)
        expect = cmath.sqrt(math.pi / (1.0 - 1j * lam))
        assert abs(rep.value - expect) <= 1e-10


def test_fullline_linear_gaussian_fourier():
    # oracle: Fourier transform of the gaussian
    for lam in (3.0, 8.0):
        rep = os_integral_fullline(1, +1, lam, GAUSS)
        expect = math.sqrt(math.pi) * math.exp(-lam * lam / 4.0)
        assert abs(rep.value - expect) <= 1e-10


def test_fullline_odd_amplitude_cancels():
    odd = builtin("polynomial(0,1)*gaussian")
    rep = os_integral_fullline(2, +1, 1.0, odd)
    assert abs(rep.value) <= 1e-10


def test_fullline_rejects_non_integer():
    with pytest.raises(DomainError):
        os_integral_fullline(2.5, +1, 1.0, GAUSS)


def test_epsilon_path_matches_closed_form():
    expect = generalized_fresnel(2.0, 1.0, +1).value
    v = epsilon_regularized(2.0, 1.0, +1, 1.0, ONE, default_regularizer(), DEFAULT_EPS_LADDER)
    assert abs(v - expect) <= 1e-4


def test_epsilon_path_chi_independent():
    v1 = epsilon_regularized(2.0, 1.0, +1, 1.0, ONE, default_regularizer(), DEFAULT_EPS_LADDER)
    v2 = epsilon_regularized(2.0, 1.0, +1, 1.0, ONE, rational_regularizer(), DEFAULT_EPS_LADDER)
    assert abs(v1 - v2) <= 1e-4


def test_epsilon_path_linear_phase():
    v = epsilon_regularized(1.0, 1.0, +1, 1.0, ONE, default_regularizer(), DEFAULT_EPS_LADDER)
    assert abs(v - 1j) <= 1e-4


def test_epsilon_ladder_validation():
    chi = default_regularizer()
    with pytest.raises(DomainError):
        epsilon_regularized(2.0, 1.0, +1, 1.0, ONE, chi, [0.1, 0.2])
    with pytest.raises(DomainError):
        epsilon_regularized(2.0, 1.0, +1, 1.0, ONE, chi, [1.5, 0.5])
    with pytest.raises(DomainError):
        epsilon_regularized(2.0, 1.0, +1, 1.0, ONE, chi, [0.1])


@pytest.mark.parametrize(
    "p,q,expect",
    [
        (2.0, 1.0, math.sqrt(math.pi) / 2.0 * cmath.exp(1j * math.pi / 4.0)),
        (1.0, 2.0, -1.0 + 0.0j),  # e^(i pi) 1! = -1
        (2.7, 2.7, 1j / 2.7),
    ],
)
def test_rotated_contour_values(p, q, expect):
    assert abs(rotated_contour_reference(p, q, +1) - expect) <= 1e-10


def test_cutoff_radius_independence():
    a = os_integral_halfline(2.0, 1.0, +1, 1.0, ONE, QuadratureConfig(cutoff_radius=1.5))
    b = os_integral_halfline(2.0, 1.0, +1, 1.0, ONE, QuadratureConfig(cutoff_radius=3.0))
    assert abs(a.value - b.value) <= 10.0 * (a.est_error + b.est_error) + 1e-13


def test_depth_override_respected():
    rep = os_integral_halfline(2.0, 1.0, +1, 1.0, ONE, QuadratureConfig(ibp_depth_override=3))
    assert rep.ibp_depth_used == 3
    expect = generalized_fresnel(2.0, 1.0, +1).value
    assert abs(rep.value - expect) <= 1e-8


def test_depth_override_below_integrability_rejected():
    with pytest.raises(DomainError):
        os_integral_halfline(2.0, 1.0, +1, 1.0, ONE, QuadratureConfig(ibp_depth_override=0))


def _flat_amplitude(delta: float) -> Amplitude:
    def stack(x, order):
        out = np.zeros((order + 1, x.size))
        out[0] = 1.0
        return out

    return Amplitude("flat", 0.0, delta, 8, stack)


def test_class_error_for_bad_delta():
    with pytest.raises(ClassError):
        os_integral_halfline(1.0, 1.0, +1, 1.0, _flat_amplitude(0.0))


def test_order_error_for_shallow_amplitude():
    shallow = Amplitude("shallow", 0.0, -1.0, 1, lambda x, o: np.vstack(
        [np.ones(x.size)] + [np.zeros(x.size)] * o) if o else np.ones((1, x.size)))
    with pytest.raises(OrderError):
        os_integral_halfline(2.0, 1.0, +1, 1.0, shallow, QuadratureConfig(ibp_depth_override=4))


def test_budget_error():
    with pytest.raises(BudgetError):
        os_integral_halfline(2.0, 1.0, +1, 300.0, ONE, QuadratureConfig(max_nodes=200))


def test_domain_validation():
    with pytest.raises(DomainError):
        os_integral_halfline(0.0, 1.0, +1, 1.0, ONE)
    with pytest.raises(DomainError):
        os_integral_halfline(2.0, -1.0, +1, 1.0, ONE)
    with pytest.raises(DomainError):
        os_integral_halfline(2.0, 1.0, +1, 0.0, ONE)
    with pytest.raises(DomainError):
        os_integral_halfline(2.0, 1.0, 0, 1.0, ONE)


def test_report_invariants():
    rep = os_integral_halfline(1.5, 0.7, -1, 2.0, GAUSS)
    assert rep.est_error >= 0.0
    assert rep.tail_cut >= 2.0
    assert rep.nodes_used > 0
    assert rep.ibp_depth_used >= 1


def test_filon_switch_large_lambda():
    lam = 3.0e6  # ~1.9e6 periods over the compact region: Filon path
    rep = os_integral_halfline(2.0, 1.0, +1, lam, ONE)
    expect = lam**-0.5 * generalized_fresnel(2.0, 1.0, +1).value
    assert abs(rep.value - expect) <= 1e-6 * abs(expect)


def test_large_exponent_uses_ladder_reduction():
    # l_pq = floor(12 / 0.5) + 1 = 25 is far beyond usable transformed-tail
    # depth; the no-cutoff ladder peels q down and stays accurate
    rep = os_integral_halfline(0.5, 12.0, +1, 1.0, ONE)
    exact = generalized_fresnel(0.5, 12.0, +1).value
    assert abs(rep.value - exact) <= 1e-6 * abs(exact)
    assert rep.ibp_depth_used >= 23


def test_order_error_when_depth_unreachable():
    # an amplitude too shallow for both the direct depth and the reduction
    shallow = Amplitude(
        "shallow8", 0.0, -1.0, 8,
        lambda x, o: np.vstack([np.ones(x.size)] + [np.zeros(x.size)] * o)
        if o else np.ones((1, x.size)),
    )
    with pytest.raises(OrderError):
        os_integral_halfline(0.5, 12.0, +1, 1.0, shallow)


def test_fullline_reflection_with_asymmetric_amplitude():
    # oracle: Fourier transform of (1+x) e^(-x^2) is sqrt(pi) e^(-lam^2/4) (1 + i lam/2);
    # exercises the reflected half-line with the sign flip for odd m
    amp = builtin("polynomial(1,1)*gaussian")
    for lam in (2.0, 6.0):
        rep = os_integral_fullline(1, +1, lam, amp)
        expect = math.sqrt(math.pi) * math.exp(-lam * lam / 4.0) * (1.0 + 0.5j * lam)
        assert abs(rep.value - expect) <= 1e-10
