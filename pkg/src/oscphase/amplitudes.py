"""Amplitude class with certified growth envelopes, cutoffs and regularizers.

An amplitude a lives in the class with parameters (tau, delta) when
|a^(k)(x)| <= C_k <x>^(tau + delta k) for every k, where <x> = sqrt(1+x^2).
Built-ins ship exact derivative recurrences plus sampled envelope constants;
the constants are upper bounds used by the certified tail truncation, so they
carry a small safety margin.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, OrderError, UnknownAmplitude
from .jets import derivs_to_jet, jet_div, jet_mul, jet_to_derivs

_ENVELOPE_MARGIN = 1.05
_ENVELOPE_GRID = np.linspace(-60.0, 60.0, 12001)


def _hypot1(x: np.ndarray) -> np.ndarray:
    return np.sqrt(1.0 + np.asarray(x, dtype=float) ** 2)


@dataclass(frozen=True)
class Amplitude:
    """Derivative oracle with a certified (tau, delta) growth envelope.

    deriv_stack(x, order) returns [a(x), a'(x), ..., a^(order)(x)] as an
    array of shape (order+1, len(x)); deriv(k, x) is the scalar-order view.
    seminorm_bound(l) bounds max_{k<=l} sup_x <x>^(-tau-delta k) |a^(k)(x)|,
    deriv_bound(k) the single-order sup (sharper; 0 for vanishing orders).
    """

    name: str
    tau: float
    delta: float
    max_order: int
    _stack: Callable[[np.ndarray, int], np.ndarray]
    _bound_cache: dict = field(default_factory=dict, compare=False)

    def deriv_stack(self, x, order: int) -> np.ndarray:
        if order > self.max_order:
            raise OrderError(
                f"amplitude {self.name!r} supports derivatives up to "
                f"{self.max_order}, requested {order}"
            )
        return self._stack(np.asarray(x, dtype=float), order)

    def deriv(self, k: int, x):
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        out = self.deriv_stack(xs, k)[k]
        return float(out[0]) if np.isscalar(x) or np.ndim(x) == 0 else out

    def deriv_bound(self, k: int) -> float:
        """Envelope constant: |a^(k)(x)| <= deriv_bound(k) * <x>^(tau+delta k)."""
        if k not in self._bound_cache:
            d = self.deriv_stack(_ENVELOPE_GRID, k)[k]
            env = _hypot1(_ENVELOPE_GRID) ** (self.tau + self.delta * k)
            sup = float(np.max(np.abs(d) / env))
            self._bound_cache[k] = 0.0 if sup == 0.0 else sup * _ENVELOPE_MARGIN
        return self._bound_cache[k]

    def seminorm_bound(self, l: int) -> float:
        return max(self.deriv_bound(k) for k in range(l + 1))


def _constant_stack(x: np.ndarray, order: int) -> np.ndarray:
    out = np.zeros((order + 1, x.size))
    out[0] = 1.0
    return out


def _gaussian_stack(x: np.ndarray, order: int) -> np.ndarray:
    # y = exp(-x^2):  y^(n+1) = -2x y^(n) - 2n y^(n-1)
    out = np.zeros((order + 1, x.size))
    out[0] = np.exp(-(x**2))
    if order >= 1:
        out[1] = -2.0 * x * out[0]
    for n in range(1, order):
        out[n + 1] = -2.0 * x * out[n] - 2.0 * n * out[n - 1]
    return out


def _rational_stack(x: np.ndarray, order: int, s: float) -> np.ndarray:
    # y = (1+x^2)^(-s):  (1+x^2) y^(n+1) = -(2n+2s) x y^(n) - n(n-1+2s) y^(n-1)
    out = np.zeros((order + 1, x.size))
    w = 1.0 + x**2
    out[0] = w ** (-s)
    if order >= 1:
        out[1] = -2.0 * s * x * out[0] / w
    for n in range(1, order):
        out[n + 1] = -((2.0 * n + 2.0 * s) * x * out[n] + n * (n - 1.0 + 2.0 * s) * out[n - 1]) / w
    return out


def _poly_gaussian_stack(x: np.ndarray, order: int, coeffs: tuple) -> np.ndarray:
    g = derivs_to_jet(_gaussian_stack(x, order))
    pj = np.zeros((order + 1, x.size))
    # Taylor coefficients of the polynomial about each x
    for k in range(min(order, len(coeffs) - 1) + 1):
        acc = np.zeros_like(x)
        for m in range(len(coeffs) - 1, k - 1, -1):
            acc = acc * x + coeffs[m] * math.comb(m, k)
        pj[k] = acc
    return jet_to_derivs(jet_mul(pj, g))


_RATIONAL_RE = re.compile(r"^rational_decay\(\s*([0-9.eE+-]+)\s*\)$")
_POLYGAUSS_RE = re.compile(r"^polynomial\(\s*([0-9.eE+,\s-]+)\)\s*\*\s*gaussian$")

_MAX_ORDER = 60


def builtin(name: str) -> Amplitude:
    """Catalogue lookup: constant_one, gaussian, rational_decay(s),
    polynomial(c0,...,cd)*gaussian."""
    name = name.strip()
    if name == "constant_one":
        return Amplitude("constant_one", 0.0, -1.0, _MAX_ORDER, _constant_stack)
    if name == "gaussian":
        return Amplitude("gaussian", 0.0, -1.0, _MAX_ORDER, _gaussian_stack)
    m = _RATIONAL_RE.match(name)
    if m:
        s = float(m.group(1))
        if s <= 0:
            raise UnknownAmplitude(f"rational_decay needs s > 0, got {s}")
        return Amplitude(
            f"rational_decay({s:g})", -2.0 * s, -1.0, _MAX_ORDER,
            lambda x, order, s=s: _rational_stack(x, order, s),
        )
    m = _POLYGAUSS_RE.match(name)
    if m:
        coeffs = tuple(float(c) for c in m.group(1).split(","))
        deg = len(coeffs) - 1
        return Amplitude(
            f"polynomial({','.join('%g' % c for c in coeffs)})*gaussian",
            float(deg), -1.0, _MAX_ORDER,
            lambda x, order, coeffs=coeffs: _poly_gaussian_stack(x, order, coeffs),
        )
    raise UnknownAmplitude(f"unknown amplitude {name!r}")


def reflected(a: Amplitude) -> Amplitude:
    """Amplitude x -> a(-x); same class parameters and envelope constants."""

    def stack(x, order):
        d = a.deriv_stack(-x, order)
        for k in range(1, order + 1, 2):
            d[k] = -d[k]
        return d

    return Amplitude(f"reflect({a.name})", a.tau, a.delta, a.max_order, stack)


def derivative_shift(a: Amplitude, j: int) -> Amplitude:
    """The amplitude a^(j), living in the class (tau + delta j, delta)."""
    if j == 0:
        return a
    if j > a.max_order:
        raise OrderError(f"amplitude {a.name!r} has no derivative of order {j}")

    def stack(x, order):
        return a.deriv_stack(x, order + j)[j:]

    return Amplitude(
        f"D{j}({a.name})", a.tau + a.delta * j, a.delta, a.max_order - j, stack
    )


# ----------------------------------------------------------------------
# cutoff: smooth bump, phi = 1 on |x|<=1, 0 on |x|>=r, mollifier profile
# ----------------------------------------------------------------------

_CUTOFF_ORDER_CAP = 16


def _mollifier_polys(kmax: int) -> list[np.ndarray]:
    # f(t)=exp(-1/t):  f^(k)(t) = exp(-1/t) R_k(1/t),  R_{k+1} = y^2 (R_k - R_k')
    polys = [np.array([1.0])]
    for _ in range(kmax):
        R = polys[-1]
        dR = R[1:] * np.arange(1, len(R))
        nxt = np.zeros(len(R) + 2)
        nxt[2 : 2 + len(R)] += R
        nxt[2 : 2 + len(dR)] -= dR
        polys.append(nxt)
    return polys


_MOLL_POLYS = _mollifier_polys(_CUTOFF_ORDER_CAP)

# measured sup |bump^(k)| on the unit transition (5% headroom); used for
# conditioning estimates when choosing the tail IBP depth
BUMP_DERIV_SUP = (
    1.0, 2.1, 10.4, 117.0, 2.40e3, 8.11e4, 5.06e6, 4.49e8,
    5.08e10, 7.13e12, 1.22e15, 2.63e17, 7.28e19, 2.2e22, 7.3e24, 2.6e27, 1.0e30,
)


def _mollifier_derivs(t: np.ndarray, kmax: int) -> np.ndarray:
    out = np.zeros((kmax + 1, t.size))
    pos = t > 0
    if np.any(pos):
        y = 1.0 / t[pos]
        e = np.exp(-y)
        for k in range(kmax + 1):
            out[k][pos] = e * np.polyval(_MOLL_POLYS[k][::-1], y)
    return out


def _bump_derivs(u: np.ndarray, kmax: int) -> np.ndarray:
    """Derivatives of g(u) = f(1-u)/(f(u)+f(1-u)) on [0,1]; g(0)=1, g(1)=0."""
    fu = _mollifier_derivs(u, kmax)
    fv = _mollifier_derivs(1.0 - u, kmax)
    sign = (-1.0) ** np.arange(kmax + 1)
    fv = fv * sign[:, None]
    num = derivs_to_jet(fv)
    den = derivs_to_jet(fu + fv)
    return jet_to_derivs(jet_div(num, den))


@dataclass(frozen=True)
class CutoffSpec:
    """Smooth cutoff phi (1 on |x|<=1, 0 on |x|>=r) and its derivatives."""

    r: float

    def phi(self, x):
        return self.phi_stack(x, 0)[0] if np.ndim(x) else float(self.phi_stack([x], 0)[0, 0])

    def phi_deriv(self, t: int, x):
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        out = self.phi_stack(xs, t)[t]
        return float(out[0]) if np.ndim(x) == 0 else out

    def phi_stack(self, x, order: int) -> np.ndarray:
        if order > _CUTOFF_ORDER_CAP:
            raise OrderError(f"cutoff derivatives available up to {_CUTOFF_ORDER_CAP}")
        x = np.asarray(x, dtype=float)
        ax = np.abs(x)
        out = np.zeros((order + 1, x.size))
        out[0][ax <= 1.0] = 1.0
        mid = (ax > 1.0) & (ax < self.r)
        if np.any(mid):
            w = self.r - 1.0
            u = (ax[mid] - 1.0) / w
            d = _bump_derivs(u, order)
            sgn = np.where(x[mid] < 0.0, -1.0, 1.0)
            for k in range(order + 1):
                out[k][mid] = d[k] * sgn**k / w**k
        return out

    def psi_stack(self, x, order: int) -> np.ndarray:
        # psi = 1 - phi
        out = -self.phi_stack(x, order)
        out[0] += 1.0
        return out

    def psi_deriv_sup(self, t: int) -> float:
        if t >= len(BUMP_DERIV_SUP):
            raise OrderError(f"cutoff derivative bounds available up to {len(BUMP_DERIV_SUP) - 1}")
        return BUMP_DERIV_SUP[t] / (self.r - 1.0) ** t if t else 1.0


def default_cutoff(r: float) -> CutoffSpec:
    if not r > 1.0:
        raise DomainError(f"cutoff radius must exceed 1, got {r}")
    return CutoffSpec(float(r))


# ----------------------------------------------------------------------
# regularizer: Schwartz chi with chi(0)=1 defining the Os-integral limit
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class RegularizerSpec:
    """Schwartz-type regularizer chi with chi(0) = 1 and exact derivatives."""

    name: str
    decay_class: str
    max_order: int
    _stack: Callable[[np.ndarray, int], np.ndarray]
    _bound_cache: dict = field(default_factory=dict, compare=False)

    def chi(self, x):
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        out = self._stack(xs, 0)[0]
        return float(out[0]) if np.ndim(x) == 0 else out

    def chi_deriv(self, k: int, x):
        if k > self.max_order:
            raise OrderError(f"regularizer derivatives available up to {self.max_order}")
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        out = self._stack(xs, k)[k]
        return float(out[0]) if np.ndim(x) == 0 else out

    def scaled_stack(self, x, eps: float, order: int) -> np.ndarray:
        """Derivatives in x of chi(eps x): d^k = eps^k chi^(k)(eps x)."""
        d = self._stack(eps * np.asarray(x, dtype=float), order)
        scale = 1.0
        for k in range(order + 1):
            d[k] *= scale
            scale *= eps
        return d

    def uniform_bound(self, u: int) -> float:
        """C_u with |d^u/dx^u chi(eps x)| <= C_u <x>^(-u) for all 0 < eps < 1."""
        if u not in self._bound_cache:
            d = self._stack(_ENVELOPE_GRID, u)[u]
            sup = float(np.max(np.abs(d) * _hypot1(_ENVELOPE_GRID) ** u))
            self._bound_cache[u] = sup * _ENVELOPE_MARGIN
        return self._bound_cache[u]


def default_regularizer() -> RegularizerSpec:
    """chi(x) = exp(-x^2)."""
    return RegularizerSpec("gaussian", "schwartz", _MAX_ORDER, _gaussian_stack)


def rational_regularizer() -> RegularizerSpec:
    """chi(x) = (1+x^2)^(-2); slow polynomial decay, for chi-independence checks."""
    return RegularizerSpec(
        "rational", "polynomial-decay", _MAX_ORDER,
        lambda x, order: _rational_stack(x, order, 2.0),
    )
