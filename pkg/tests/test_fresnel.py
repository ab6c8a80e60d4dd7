"""Closed-form layer: values, identities, continuation, poles, Beta."""

import cmath
import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oscphase import (
    DomainError,
    FresnelValue,
    PoleError,
    PoleReport,
    c_tilde,
    gamma,
    generalized_beta,
    generalized_fresnel,
    generalized_fresnel_continued,
    signed_fresnel_m,
)
from oscphase.ibp import strict_floor_ratio


SQRT_PI = math.sqrt(math.pi)


def test_classical_fresnel_both_signs():
    expect = SQRT_PI / 2.0 * cmath.exp(1j * math.pi / 4.0)
    for sign in (+1, -1):
        v = generalized_fresnel(2.0, 1.0, sign).value
        e = expect if sign > 0 else expect.conjugate()
        assert abs(v - e) <= 1e-14 * abs(e)


@pytest.mark.parametrize("p0", [0.5, 1.0, 2.2, 7.0])
def test_q_equals_p_gives_i_over_p(p0):
    v = generalized_fresnel(p0, p0, +1).value
    assert abs(v - 1j / p0) <= 1e-14 / p0


def test_gelfand_shilov_form_p1():
    # Gamma(2.5) = 1.5 * 0.5 * Gamma(0.5), by the recurrence
    expect = cmath.exp(1j * math.pi * 2.5 / 2.0) * (0.75 * SQRT_PI)
    v = generalized_fresnel(1.0, 2.5, +1).value
    assert abs(v - expect) <= 1e-14 * abs(expect)


def test_recomputable_from_fields():
    fv = generalized_fresnel(1.7, 0.9, -1)
    again = generalized_fresnel(fv.p, fv.q, fv.sign)
    assert again.value == fv.value


def test_domain_errors():
    with pytest.raises(DomainError):
        generalized_fresnel(-1.0, 1.0, +1)
    with pytest.raises(DomainError):
        generalized_fresnel(2.0, 0.0, +1)
    with pytest.raises(DomainError):
        generalized_fresnel(2.0, 1.0, 2)


def test_conjugate_pair():
    for p, q in [(0.7, 0.3), (2.0, 5.0), (3.0, 1.1)]:
        a = generalized_fresnel(p, q, +1).value
        b = generalized_fresnel(p, q, -1).value
        assert b == a.conjugate()


def test_modulus_identity():
    for p, q in [(0.7, 0.3), (2.0, 5.0), (1.5, 1.5)]:
        v = generalized_fresnel(p, q, +1).value
        assert abs(v) == pytest.approx(abs(gamma(q / p)) / p, rel=1e-14)


@given(
    st.floats(min_value=0.3, max_value=4.0),
    st.floats(min_value=1.001, max_value=8.0),
)
@settings(max_examples=200, deadline=None)
def test_ladder_identity(p, ratio):
    # I(p, q) = (i/p)^l0 prod_{s<=l0} (q - p s) I(p, q - p l0) for q > p
    q = p * ratio
    if abs(ratio - round(ratio)) < 1e-2:
        return  # near-integer ratios make the (q - ps) factors ill-conditioned
    l0 = strict_floor_ratio(q, p)
    if l0 < 1:
        return
    lhs = generalized_fresnel(p, q, +1).value
    rhs = generalized_fresnel(p, q - p * l0, +1).value
    for s in range(1, l0 + 1):
        rhs *= q - p * s
    rhs *= (1j / p) ** l0
    assert abs(lhs - rhs) <= 1e-12 * max(abs(lhs), 1e-300)


def test_continuation_agrees_on_positive_axis():
    a = generalized_fresnel(2.0, 1.0, +1).value
    out = generalized_fresnel_continued(2.0, 1.0 + 0.0j, +1)
    assert isinstance(out, FresnelValue)
    assert abs(out.value - a) <= 1e-15


def test_pole_report_locations():
    out = generalized_fresnel_continued(1.0, -1.0, +1)
    assert isinstance(out, PoleReport)
    assert out.order == 1
    assert abs(out.location - (-1.0)) <= 1e-12
    # q = 0 is classified as a pole too (inherited from Gamma)
    assert isinstance(generalized_fresnel_continued(1.3, 0.0, +1), PoleReport)
    # non-lattice negative q is a regular value
    assert isinstance(generalized_fresnel_continued(1.7, -1.0, +1), FresnelValue)


def test_pole_set_for_fixed_p():
    p = 1.7
    for j in range(4):
        assert isinstance(generalized_fresnel_continued(p, -p * j, +1), PoleReport)
    for q in (-0.4, -1.0, -2.5):
        assert isinstance(generalized_fresnel_continued(p, q, +1), FresnelValue)


@pytest.mark.parametrize("p,j", [(1.0, 1), (2.0, 1), (2.0, 2), (1.5, 3)])
def test_residue_against_numeric_limit(p, j):
    # oracle: (q + p j) I(p, q) along q -> -p j, high-precision in mpmath
    def f(h):
        q = mp.mpf(-p * j) + h
        return h * mp.gamma(q / p) * mp.e ** (1j * mp.pi / 2 * q / p) / p

    lim = complex(f(mp.mpf("1e-25")))
    rep = generalized_fresnel_continued(p, -p * j, +1)
    assert isinstance(rep, PoleReport)
    assert abs(rep.residue - lim) <= 1e-12


def test_signed_family():
    # even m: the twisted sign coincides with the plain one
    assert signed_fresnel_m(2, 1, +1) == generalized_fresnel(2.0, 1.0, +1).value
    # odd m flips: conjugate of the plain value
    plain = generalized_fresnel(3.0, 1.0, +1).value
    assert abs(signed_fresnel_m(3, 1, +1) - plain.conjugate()) <= 1e-15
    # m=1, k=2, sign -: e^(i pi) Gamma(2) = -1
    assert abs(signed_fresnel_m(1, 2, -1) - (-1.0)) <= 1e-14


def test_c_tilde_values():
    assert c_tilde(2, 1, +1) == 0.0
    expect = SQRT_PI * cmath.exp(1j * math.pi / 4.0)
    assert abs(c_tilde(2, 0, +1) - expect) <= 1e-14 * abs(expect)
    # odd power: 2/3 cos(pi/6) Gamma(1/3); Gamma(1/3) frozen from mpmath
    gamma_third = 2.678938534707747633
    expect = 2.0 / 3.0 * math.cos(math.pi / 6.0) * gamma_third
    assert abs(c_tilde(3, 0, +1) - expect) <= 1e-13 * expect


def test_c_tilde_odd_term_vanishing_even_m():
    for l in range(1, 7):
        for k in range(11):
            assert abs(c_tilde(2 * l, 2 * k + 1, +1)) <= 1e-14
            assert abs(c_tilde(2 * l, 2 * k + 1, -1)) <= 1e-14


def test_generalized_beta_reduces_to_beta():
    assert abs(generalized_beta(1, 1, 1, 2.0, 3.0, 5.0, +1) - 1.0 / 12.0) <= 1e-14
    assert abs(generalized_beta(1, 1, 1, 0.5, 0.5, 1.0, +1) - math.pi) <= 1e-13
    assert abs(generalized_beta(1, 1, 1, 1.0, 1.0, 2.0, +1) - 1.0) <= 1e-14


def test_generalized_beta_pole_propagates():
    with pytest.raises(PoleError):
        generalized_beta(1, 1, 1, -1.0, 3.0, 2.0, +1)
