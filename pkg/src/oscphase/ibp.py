"""Coefficient algebra of the formal adjoint operator and depth arithmetic.

Repeated application of L* = -(1/(i lam)) d/dx (1/(p x^(p-1))) to
x^(q-1) f(x) produces (i/(lam p))^l sum_j C[l,j] x^(q-1-pl+j) f^(j)(x).
The C table follows a two-term recurrence and is exact in rational
arithmetic; the production path evaluates it in doubles and memoizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .amplitudes import Amplitude, CutoffSpec, RegularizerSpec
from .errors import ClassError, DomainError, OrderError
from .jets import derivs_to_jet, jet_mul, jet_to_derivs

_INT_TOL = 1e-12


def coefficient_rows(p, q, l: int) -> tuple:
    """Rows C[0..l]; works for float or Fraction p, q (exact in the latter).

    C[l,0] = (q-pl) C[l-1,0], C[l,l] = C[l-1,l-1], and for 0 < j < l
    C[l,j] = (q-pl+j) C[l-1,j] + C[l-1,j-1]; C[0,0] = 1.
    """
    if l < 0:
        raise DomainError("table depth must be >= 0")
    one = q - q + 1  # unit of the input arithmetic (Fraction stays Fraction)
    rows = [(one,)]
    for m in range(1, l + 1):
        prev = rows[-1]
        row = [(q - p * m) * prev[0]]
        for j in range(1, m):
            row.append((q - p * m + j) * prev[j] + prev[j - 1])
        row.append(prev[m - 1])
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class IbpTable:
    """Coefficients C[l'][j] for l' <= l at fixed (p, q)."""

    p: float
    q: float
    l: int
    rows: tuple

    def coeff(self, lp: int, j: int):
        return self.rows[lp][j]

    def exponent(self, j: int) -> float:
        # x-power of term j at full depth; equals (q-1)-(p-1)l-(l-j)
        return self.q - 1.0 - self.p * self.l + j


_TABLE_CACHE: dict = {}


def ibp_coefficients(p: float, q: float, l: int) -> IbpTable:
    """Memoized coefficient table for the depth-l transformed integrand."""
    key = (float(p), float(q), int(l))
    tab = _TABLE_CACHE.get(key)
    if tab is None:
        tab = IbpTable(float(p), float(q), int(l), coefficient_rows(float(p), float(q), int(l)))
        _TABLE_CACHE[key] = tab
    return tab


def strict_floor_ratio(q: float, p: float) -> int:
    """Greatest integer strictly smaller than q/p."""
    ratio = q / p
    n = math.floor(ratio)
    if abs(ratio - round(ratio)) <= _INT_TOL * max(1.0, abs(ratio)):
        return int(round(ratio)) - 1
    return int(n)


@dataclass(frozen=True)
class DepthParams:
    """l0: max depth without a tail cutoff; l_pq: depth making the tail integrable."""

    l0: int
    l_pq: int
    tau: float
    delta: float


def ibp_depth(p: float, q: float, tau: float = 0.0, delta: float = -1.0) -> DepthParams:
    if p <= 0:
        raise DomainError(f"phase power must be positive, got {p}")
    if not -1.0 <= delta:
        raise ClassError(f"delta must be >= -1, got {delta}")
    if delta >= p - 1.0:
        raise ClassError(f"amplitude class delta={delta} incompatible with p={p} (needs delta < p-1)")
    l0 = strict_floor_ratio(q, p)
    l_pq = int(math.floor(max(q + tau, 0.0) / (p - 1.0 - delta))) + 1
    return DepthParams(l0=l0, l_pq=l_pq, tau=tau, delta=delta)


@dataclass(frozen=True)
class TailParts:
    """Integrand factors for the transformed tail: x^(q-1) a(x) psi(x) chi(eps x).

    cutoff None means psi == 1 (pure region or no split); regularizer None
    means chi == 1 (the epsilon -> 0 limit already taken).
    """

    q: float
    amplitude: Amplitude
    cutoff: Optional[CutoffSpec] = None
    regularizer: Optional[RegularizerSpec] = None
    eps: float = 0.0


def product_deriv_stack(parts: TailParts, x: np.ndarray, order: int) -> np.ndarray:
    """Derivatives 0..order of a(x) psi(x) chi_eps(x) at the points x."""
    if order > parts.amplitude.max_order:
        raise OrderError(
            f"depth needs amplitude derivatives to order {order}, "
            f"max_order is {parts.amplitude.max_order}"
        )
    jet = derivs_to_jet(parts.amplitude.deriv_stack(x, order))
    if parts.cutoff is not None:
        jet = jet_mul(jet, derivs_to_jet(parts.cutoff.psi_stack(x, order)))
    if parts.regularizer is not None:
        jet = jet_mul(jet, derivs_to_jet(parts.regularizer.scaled_stack(x, parts.eps, order)))
    return jet_to_derivs(jet)


def transformed_integrand(
    table: IbpTable, lam: float, sign: int, parts: TailParts, x: np.ndarray
) -> np.ndarray:
    """(sign L*)^l (x^(q-1) a psi chi_eps) at the points x (without the phase)."""
    x = np.asarray(x, dtype=float)
    l = table.l
    derivs = product_deriv_stack(parts, x, l)
    acc = np.zeros(x.size, dtype=complex)
    for j in range(l + 1):
        c = table.rows[l][j]
        if c != 0.0:
            acc += c * x ** (table.q - 1.0 - table.p * l + j) * derivs[j]
    pref = (sign * 1j / (lam * table.p)) ** l
    return pref * acc


def apply_ibp(table: IbpTable, lam: float, parts: TailParts, x: float) -> complex:
    """Value of L*^l(x^(q-1) a(x) psi(x) chi_eps(x)) at a single point x > 0."""
    if x <= 0:
        raise DomainError("apply_ibp requires x > 0")
    return complex(transformed_integrand(table, lam, +1, parts, np.array([x]))[0])
