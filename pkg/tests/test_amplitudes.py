"""Amplitude catalogue, envelopes, cutoff and regularizer oracles."""

import math

import mpmath as mp
import numpy as np
import pytest

from oscphase import (
    DomainError,
    UnknownAmplitude,
    builtin,
    default_cutoff,
    default_regularizer,
    rational_regularizer,
    reflected,
)



def test_builtin_values():
    one = builtin("constant_one")
    assert one.deriv(0, 3.7) == 1.0
    assert one.deriv(1, 3.7) == 0.0
    g = builtin("gaussian")
    assert g.deriv(1, 0.0) == 0.0
    assert g.deriv(2, 0.0) == -2.0  # d2/dx2 e^(-x^2) at 0, Hermite recurrence
    r = builtin("rational_decay(1.5)")
    assert r.tau == -3.0
    assert r.deriv(0, 0.0) == 1.0
    pg = builtin("polynomial(1,2)*gaussian")
    assert pg.deriv(0, 0.0) == 1.0
    assert pg.deriv(1, 0.0) == 2.0  # (1+2x)' g + (1+2x) g' at 0


def test_unknown_amplitude():
    with pytest.raises(UnknownAmplitude):
        builtin("lorentzian")
    with pytest.raises(UnknownAmplitude):
        builtin("rational_decay(-1)")


@pytest.mark.parametrize(
    "name,f",
    [
        ("gaussian", lambda x: mp.e ** (-(x**2))),
        ("rational_decay(2)", lambda x: (1 + x**2) ** -2),
        ("polynomial(1,0,-1)*gaussian", lambda x: (1 - x**2) * mp.e ** (-(x**2))),
    ],
)
def test_derivatives_match_mpmath(name, f):
    a = builtin(name)
    for x in (0.3, 1.1):
        for k in range(7):
            expect = float(mp.diff(f, mp.mpf(str(x)), k))
            got = a.deriv(k, x)
            assert got == pytest.approx(expect, rel=1e-11, abs=1e-12)


@pytest.mark.parametrize(
    "name", ["constant_one", "gaussian", "rational_decay(1)", "polynomial(0,1)*gaussian"]
)
def test_envelope_certification(name):
    # |a^(k)(x)| <= deriv_bound(k) <x>^(tau + delta k), sampled densely
    a = builtin(name)
    xs = np.linspace(-50.0, 50.0, 4001)
    for k in range(9):
        d = np.abs(a.deriv_stack(xs, k)[k])
        env = a.deriv_bound(k) * (1.0 + xs**2) ** ((a.tau + a.delta * k) / 2.0)
        assert np.all(d <= env + 1e-300)
        assert a.seminorm_bound(k) >= a.deriv_bound(k)


def test_reflected_amplitude():
    pg = builtin("polynomial(0,1)*gaussian")  # odd function x e^(-x^2)
    ref = reflected(pg)
    for x in (0.0, 0.7, 2.1):
        assert ref.deriv(0, x) == pytest.approx(-pg.deriv(0, x), abs=1e-15)
        assert ref.deriv(1, x) == pytest.approx(pg.deriv(1, -x) * -1.0, abs=1e-15)
    assert ref.tau == pg.tau and ref.delta == pg.delta


def test_cutoff_plateau_and_support():
    c = default_cutoff(2.0)
    assert c.phi(0.5) == 1.0
    assert c.phi(1.0) == 1.0
    assert c.phi(3.0) == 0.0
    assert 0.0 < c.phi(1.5) < 1.0
    with pytest.raises(DomainError):
        default_cutoff(1.0)


def test_cutoff_partition_exact():
    c = default_cutoff(2.0)
    xs = np.linspace(0.0, 3.0, 301)
    phi = c.phi_stack(xs, 0)[0]
    psi = c.psi_stack(xs, 0)[0]
    assert np.all(phi + psi == 1.0)


def test_cutoff_derivatives_match_mpmath():
    r = 2.0
    f = lambda t: mp.e ** (-1 / t) if t > 0 else mp.mpf(0)

    def phi_mp(x):
        u = (x - 1) / (r - 1)
        return f(1 - u) / (f(u) + f(1 - u))

    c = default_cutoff(r)
    for x in (1.2, 1.5, 1.83):
        for k in range(7):
            expect = float(mp.diff(phi_mp, mp.mpf(str(x)), k))
            assert c.phi_deriv(k, x) == pytest.approx(expect, rel=1e-9, abs=1e-10)


def test_cutoff_flat_at_junctions():
    c = default_cutoff(2.0)
    for k in range(1, 9):
        assert c.phi_deriv(k, 1.0) == 0.0
        assert c.phi_deriv(k, 2.0) == 0.0


def test_regularizer_normalization():
    for chi in (default_regularizer(), rational_regularizer()):
        assert chi.chi(0.0) == 1.0
        assert chi.chi_deriv(1, 0.0) == 0.0
    assert default_regularizer().chi_deriv(2, 0.0) == -2.0
    assert rational_regularizer().chi_deriv(2, 0.0) == -4.0


def test_regularizer_uniform_bound():
    # |d^u/dx^u chi(eps x)| <= C_u <x>^(-u) for 0 < eps < 1
    for chi in (default_regularizer(), rational_regularizer()):
        xs = np.linspace(0.0, 80.0, 2001)
        for u in (1, 3, 5):
            cu = chi.uniform_bound(u)
            for eps in (0.9, 0.3, 0.01):
                d = np.abs(chi.scaled_stack(xs, eps, u)[u])
                assert np.all(d <= cu * (1.0 + xs**2) ** (-u / 2.0) + 1e-300)


def test_regularizer_family_tends_to_one_on_compacts():
    chi = default_regularizer()
    xs = np.linspace(-10.0, 10.0, 101)
    prev = math.inf
    for eps in (1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6):
        gap = float(np.max(np.abs(chi.scaled_stack(xs, eps, 0)[0] - 1.0)))
        assert gap <= prev
        prev = gap
    assert prev <= 1e-9
