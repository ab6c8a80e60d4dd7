"""Numerical oscillatory integrals: cutoff split plus transformed-tail method.

The half-line integral of e^(sign i lam x^p) x^(q-1) a(x) splits as a compact
part (a times the plateau cutoff phi, adaptive panels) plus a tail whose
integrand has been run through the adjoint operator enough times to be
absolutely convergent. Beyond the cutoff support the tail is finished either
by an exact repeated integration-by-parts recursion from a finite abscissa
(boundary terms plus a certified envelope remainder) or, failing that, by
extending the quadrature range until the envelope certifies truncation.

The epsilon-regularization path and the rotated-contour real-integral path
are independent implementations used to cross-validate the closed forms.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .amplitudes import (
    Amplitude,
    CutoffSpec,
    RegularizerSpec,
    default_cutoff,
    derivative_shift,
    reflected,
)
from .errors import (
    BudgetError,
    ClassError,
    ConvergenceError,
    DomainError,
    OrderError,
)
from .ibp import (
    TailParts,
    ibp_coefficients,
    ibp_depth,
    transformed_integrand,
)
from .quadrature import (
    QuadResult,
    adaptive,
    corner_graded,
    osc_power_integral,
    phase_breakpoints,
)

_EPS = 2.2e-16
_CUTOFF_SUP_ORDERS = 16
_CHUNK_MAX_PHASE = 2.0e4 * math.pi  # per quadrature extension chunk
_FAR_STEP_CAP = 70


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    cutoff_radius: float = 2.0
    ibp_depth_override: Optional[int] = None
    tail_truncation_tol: float = 1e-14
    max_nodes: int = 2_000_000
    filon_period_threshold: float = 1.0e4


@dataclass(frozen=True)
class QuadratureReport:
    value: complex
    est_error: float
    nodes_used: int
    ibp_depth_used: int
    tail_cut: float


def _check_common(p: float, lam: float, sign: int, a: Amplitude) -> None:
    if sign not in (+1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign!r}")
    if p <= 0:
        raise DomainError(f"phase power must be positive, got {p}")
    if lam <= 0:
        raise DomainError(f"lambda must be positive, got {lam}")
    if a.delta >= p - 1.0:
        raise ClassError(
            f"amplitude class delta={a.delta} needs delta < p-1 = {p - 1.0}"
        )


def _ensure_finite(z: complex, what: str) -> complex:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise OverflowError(f"{what} overflowed double precision")
    return z


# ----------------------------------------------------------------------
# envelope bounds (all crude upper bounds; used for truncation and skips)
# ----------------------------------------------------------------------


def _pure_tail_bound(
    rows, l: int, p: float, q: float, lam: float, a: Amplitude, X: float,
    chi_c0: float = 1.0,
) -> float:
    """Upper bound for the transformed-tail integral magnitude over [X, inf)."""
    total = 0.0
    pref = (lam * p) ** (-l)
    for j in range(l + 1):
        c = abs(rows[l][j])
        if c == 0.0:
            continue
        ab = a.deriv_bound(j)
        if ab == 0.0:
            continue
        t_env = a.tau + a.delta * j
        e_net = q - 1.0 - p * l + j + t_env
        if e_net >= -1.0:
            return math.inf
        fudge = 2.0 ** (max(t_env, 0.0) / 2.0)
        total += c * ab * fudge * X ** (e_net + 1.0) / (-e_net - 1.0)
    return pref * total * chi_c0


def _transition_bound(
    rows, l: int, p: float, q: float, lam: float, a: Amplitude, cutoff: CutoffSpec,
) -> float:
    """Upper bound for the transformed-tail integral magnitude over [1, r]."""
    r = cutoff.r
    pref = (lam * p) ** (-l)
    total = 0.0
    for j in range(l + 1):
        c = abs(rows[l][j])
        if c == 0.0:
            continue
        pj = 0.0
        for t in range(j + 1):
            ab = a.deriv_bound(j - t)
            if ab == 0.0:
                continue
            t_env = a.tau + a.delta * (j - t)
            env = (1.0 + r * r) ** (t_env / 2.0) if t_env > 0 else 1.0
            pj += math.comb(j, t) * cutoff.psi_deriv_sup(t) * ab * env
        e = q - 1.0 - p * l + j
        xpow = r ** max(e, 0.0)
        total += c * xpow * pj
    return pref * total * (r - 1.0)


# ----------------------------------------------------------------------
# far tail: exact repeated integration by parts from a finite abscissa
# ----------------------------------------------------------------------


class _TermChain:
    """Finite sum of c * x^e * a^(j)(x) * chi_eps^(u)(x) closed under L*.

    Exponents live on the lattice e = e_base + da - p*db, so merging keys
    (da, db, j, u) is exact. chi absent means u fixed at 0 with chi == 1.
    """

    def __init__(self, p, lam, sign, amp, chi, eps, e_base, terms):
        self.p = p
        self.lam = lam
        self.sign = sign
        self.amp = amp
        self.chi = chi
        self.eps = eps
        self.e_base = e_base
        self.terms = terms  # dict[(da, db, j, u)] -> complex

    def exponent(self, key) -> float:
        da, db, _, _ = key
        return self.e_base + da - self.p * db

    def step(self) -> "_TermChain":
        # sign*L* applied to every term
        out: dict = {}
        f = self.sign * 1j / (self.lam * self.p)
        for (da, db, j, u), c in self.terms.items():
            e = self.e_base + da - self.p * db
            base = f * c
            k1 = (da, db + 1, j, u)
            out[k1] = out.get(k1, 0.0) + base * (e + 1.0 - self.p)
            if self.amp.deriv_bound(j + 1) != 0.0:
                k2 = (da + 1, db + 1, j + 1, u)
                out[k2] = out.get(k2, 0.0) + base
            if self.chi is not None:
                k3 = (da + 1, db + 1, j, u + 1)
                out[k3] = out.get(k3, 0.0) + base
        return _TermChain(self.p, self.lam, self.sign, self.amp, self.chi, self.eps,
                          self.e_base, out)

    def max_orders(self):
        jm = max((k[2] for k in self.terms), default=0)
        um = max((k[3] for k in self.terms), default=0)
        return jm, um

    def value_at(self, x: float) -> complex:
        jm, um = self.max_orders()
        ad = self.amp.deriv_stack(np.array([x]), jm)[:, 0]
        cd = None
        if self.chi is not None:
            cd = self.chi.scaled_stack(np.array([x]), self.eps, um)[:, 0]
        acc = 0.0 + 0.0j
        for (da, db, j, u), c in self.terms.items():
            v = c * x ** (self.e_base + da - self.p * db) * ad[j]
            if cd is not None:
                v *= cd[u]
            acc += v
        return acc

    def bound_beyond(self, x: float) -> float:
        total = 0.0
        for (da, db, j, u), c in self.terms.items():
            ab = self.amp.deriv_bound(j)
            if ab == 0.0 or c == 0.0:
                continue
            cb = self.chi.uniform_bound(u) if self.chi is not None else 1.0
            t_env = self.amp.tau + self.amp.delta * j
            e_net = (self.e_base + da - self.p * db) + t_env - u
            if e_net >= -1.0:
                return math.inf
            fudge = 2.0 ** (max(t_env, 0.0) / 2.0)
            total += abs(c) * ab * cb * fudge * x ** (e_net + 1.0) / (-e_net - 1.0)
        return total

    def order_budget_ok(self) -> bool:
        jm, um = self.max_orders()
        if jm + 1 > self.amp.max_order:
            return False
        if self.chi is not None and um + 1 > self.chi.max_order:
            return False
        return True


def _by_parts_from(chain: _TermChain, X: float, tol: float):
    """Boundary-term recursion for the integral of e^(phase) * chain over [X, inf).

    Returns (value, remainder_bound): value carries the accumulated boundary
    terms at the step whose envelope bound was smallest.
    """
    p, lam, s = chain.p, chain.lam, chain.sign
    total = 0.0 + 0.0j
    best_val, best_bound = total, chain.bound_beyond(X)
    phase = cmath.exp(1j * s * lam * X**p)
    for _ in range(_FAR_STEP_CAP):
        b = chain.bound_beyond(X)
        if b < best_bound:
            best_val, best_bound = total, b
        if b <= tol:
            return total, b
        if math.isfinite(best_bound) and b > 10.0 * best_bound:
            break
        if not chain.order_budget_ok():
            break
        total += -phase * chain.value_at(X) / (s * 1j * lam * p * X ** (p - 1.0))
        chain = chain.step()
    return best_val, best_bound


# ----------------------------------------------------------------------
# half-line oscillatory integral
# ----------------------------------------------------------------------


def _compact_part(p, q, sign, lam, a, cutoff, cfg, abs_tol, rel_tol) -> QuadResult:
    r = cutoff.r
    periods = lam * r**p / (2.0 * math.pi)
    if periods > cfg.filon_period_threshold:
        return _filon_compact(p, q, sign, lam, a, cutoff, cfg, abs_tol, rel_tol)

    def weight(x):
        return a.deriv_stack(x, 0)[0] * cutoff.phi_stack(x, 0)[0]

    return osc_power_integral(
        weight, 0.0, r, p, q, lam, sign, abs_tol, rel_tol, cfg.max_nodes,
        extra_breaks=(1.0, r),
    )


def _tail_part(p, q, sign, lam, a, cutoff, cfg, scale_hint, abs_tol, rel_tol):
    """Tail integral over [1, inf); returns (value, err, nodes, depth, X)."""
    dp = ibp_depth(p, q, a.tau, a.delta)
    if dp.l_pq > min(a.max_order, _CUTOFF_SUP_ORDERS):
        raise OrderError(
            f"integrability depth l_pq={dp.l_pq} exceeds the available derivative "
            f"orders (amplitude {a.max_order}, cutoff {_CUTOFF_SUP_ORDERS})"
        )
    l_cap = min(8, a.max_order)
    if cfg.ibp_depth_override is not None:
        l = int(cfg.ibp_depth_override)
        if l < dp.l_pq:
            raise DomainError(
                f"ibp_depth_override={l} below the integrability depth {dp.l_pq}"
            )
        candidates = [l]
    else:
        candidates = list(range(dp.l_pq, max(dp.l_pq, l_cap) + 1))

    tables = {l: ibp_coefficients(p, q, l) for l in candidates}
    psi_sup = lambda l: max(cutoff.psi_deriv_sup(t) for t in range(l + 1))
    max_c = lambda l: max(abs(c) for c in tables[l].rows[l]) or 1.0

    # conditioning proxy: roundoff is eps * (integrand magnitude on [1, r])
    def cond(l):
        return (lam * p) ** (-l) * max_c(l) * psi_sup(l) * max(a.seminorm_bound(l), 1e-30)

    tol_skip = 0.1 * max(abs_tol, rel_tol * scale_hint)
    bounds = {
        l: _transition_bound(tables[l].rows, l, p, q, lam, a, cutoff)
        + _pure_tail_bound(tables[l].rows, l, p, q, lam, a, cutoff.r)
        for l in candidates
    }
    l_best = min(candidates, key=lambda l: bounds[l])
    if bounds[l_best] < tol_skip:
        return 0.0 + 0.0j, bounds[l_best], 0, l_best, cutoff.r

    l = min(candidates, key=cond)
    table = tables[l]
    rows = table.rows
    nodes = 0
    err = 0.0

    # transition zone [1, r]: psi derivatives in play
    parts_mid = TailParts(q, a, cutoff, None, 0.0)

    def f_mid(x):
        return np.exp(1j * sign * lam * x**p) * transformed_integrand(
            table, lam, sign, parts_mid, x
        )

    res_mid = adaptive(
        f_mid, phase_breakpoints(1.0, cutoff.r, p, lam), abs_tol, rel_tol, cfg.max_nodes
    )
    value = res_mid.value
    err += res_mid.est_error + _EPS * cond(l) * (cutoff.r - 1.0)
    nodes += res_mid.nodes_used

    # pure zone [r, inf): boundary-term recursion, extending by quadrature
    # chunks whenever the recursion cannot yet certify the remainder
    tol_far = max(cfg.tail_truncation_tol, 1e-16 * scale_hint)
    parts_pure = TailParts(q, a, None, None, 0.0)

    def f_pure(x):
        return np.exp(1j * sign * lam * x**p) * transformed_integrand(
            table, lam, sign, parts_pure, x
        )

    pref = (sign * 1j / (lam * p)) ** l
    chain0 = _TermChain(
        p, lam, sign, a, None, 0.0, q - 1.0 - p * l,
        {(j, 0, j, 0): pref * rows[l][j] for j in range(l + 1)
         if rows[l][j] != 0.0 and a.deriv_bound(j) != 0.0},
    )
    X = cutoff.r
    for _ in range(60):
        far_val, far_bound = _by_parts_from(chain0, X, tol_far)
        if far_bound <= tol_far:
            return value + far_val, err + far_bound, nodes, l, X
        direct = _pure_tail_bound(rows, l, p, q, lam, a, X)
        if direct <= tol_far:
            return value, err + direct, nodes, l, X
        x_next = min(2.0 * X, (X**p + _CHUNK_MAX_PHASE / lam) ** (1.0 / p))
        if x_next <= X * (1.0 + 1e-9):
            x_next = 2.0 * X
        res = adaptive(
            f_pure, phase_breakpoints(X, x_next, p, lam), abs_tol, rel_tol,
            cfg.max_nodes - nodes,
        )
        value += res.value
        err += res.est_error
        nodes += res.nodes_used
        X = x_next
    raise BudgetError(f"tail truncation did not certify by X={X:.3e}")


def os_integral_halfline(
    p: float, q: float, sign: int, lam: float, a: Amplitude,
    cfg: QuadratureConfig | None = None,
    _reduce_depth: int = 3,
) -> QuadratureReport:
    """Os-integral of e^(sign i lam x^p) x^(q-1) a(x) over (0, inf)."""
    cfg = cfg or QuadratureConfig()
    _check_common(p, lam, sign, a)
    if q <= 0:
        raise DomainError(f"q must be positive, got {q}")
    dp = ibp_depth(p, q, a.tau, a.delta)
    if (
        dp.l_pq > 8
        and dp.l0 >= 1
        and _reduce_depth > 0
        and cfg.ibp_depth_override is None
        and a.max_order >= dp.l0 + 8
    ):
        # exponent too large for a well-conditioned transformed tail: peel it
        # off with the no-cutoff ladder, q -> q - p l0 against a^(j)
        return _reduced_halfline(p, q, sign, lam, a, cfg, dp.l0, _reduce_depth - 1)
    cutoff = default_cutoff(cfg.cutoff_radius)
    abs_tol = 0.3 * cfg.abs_tol
    rel_tol = 0.3 * cfg.rel_tol

    compact = _compact_part(p, q, sign, lam, a, cutoff, cfg, abs_tol, rel_tol)
    scale = max(abs(compact.value), cfg.abs_tol)
    tail_val, tail_err, tail_nodes, depth, X = _tail_part(
        p, q, sign, lam, a, cutoff, cfg, scale, abs_tol, rel_tol
    )
    value = _ensure_finite(compact.value + tail_val, "half-line integral")
    est = compact.est_error + tail_err + 5.0 * _EPS * abs(value)
    return QuadratureReport(
        value=value,
        est_error=est,
        nodes_used=compact.nodes_used + tail_nodes,
        ibp_depth_used=depth,
        tail_cut=max(X, cutoff.r),
    )


def _reduced_halfline(
    p: float, q: float, sign: int, lam: float, a: Amplitude,
    cfg: QuadratureConfig, l0: int, budget: int,
) -> QuadratureReport:
    """Ladder identity: I(p,q)[a] = (s i/(lam p))^l0 sum_j C[l0,j] I(p, q-p l0 + j)[a^(j)]."""
    rows = ibp_coefficients(p, q, l0).rows
    pref = (sign * 1j / (lam * p)) ** l0
    value = 0.0 + 0.0j
    est = 0.0
    nodes = 0
    depth = 0
    cut = cfg.cutoff_radius
    for j in range(l0 + 1):
        c = rows[l0][j]
        if c == 0.0:
            continue
        sub = os_integral_halfline(
            p, q - p * l0 + j, sign, lam, derivative_shift(a, j), cfg,
            _reduce_depth=budget,
        )
        value += c * sub.value
        est += abs(c) * abs(pref) * sub.est_error
        nodes += sub.nodes_used
        depth = max(depth, sub.ibp_depth_used)
        cut = max(cut, sub.tail_cut)
    return QuadratureReport(
        value=_ensure_finite(pref * value, "half-line integral"),
        est_error=est + 5.0 * _EPS * abs(pref * value),
        nodes_used=nodes,
        ibp_depth_used=l0 + depth,
        tail_cut=cut,
    )


def os_integral_fullline(
    m: int, sign: int, lam: float, a: Amplitude,
    cfg: QuadratureConfig | None = None,
) -> QuadratureReport:
    """Os-integral of e^(sign i lam x^m) a(x) over the whole line.

    The reflected half-line carries phase sign * (-1)^m and amplitude a(-x).
    """
    if not (isinstance(m, int) and m >= 1):
        raise DomainError(f"full-line power must be a positive integer, got {m!r}")
    right = os_integral_halfline(float(m), 1.0, sign, lam, a, cfg)
    sign_left = sign * (-1) ** m
    left = os_integral_halfline(float(m), 1.0, sign_left, lam, reflected(a), cfg)
    return QuadratureReport(
        value=right.value + left.value,
        est_error=right.est_error + left.est_error,
        nodes_used=right.nodes_used + left.nodes_used,
        ibp_depth_used=max(right.ibp_depth_used, left.ibp_depth_used),
        tail_cut=max(right.tail_cut, left.tail_cut),
    )


# ----------------------------------------------------------------------
# epsilon-regularization path (independent oracle)
# ----------------------------------------------------------------------


def _eps_single(p, q, sign, lam, a, chi, eps, cfg) -> complex:
    """Absolutely convergent integral with the regularizer chi(eps x) inserted."""
    abs_tol = 0.25 * cfg.abs_tol
    rel_tol = 0.25 * cfg.rel_tol
    # direct zone: oscillation budget ~ 40 phase units minimum for the
    # boundary-term recursion to contract
    X0 = max(4.0, (40.0 / (lam * p)) ** (1.0 / p))

    def weight(x):
        return a.deriv_stack(x, 0)[0] * chi.scaled_stack(x, eps, 0)[0]

    res = osc_power_integral(
        weight, 0.0, X0, p, q, lam, sign, abs_tol, rel_tol, cfg.max_nodes
    )
    value = res.value
    err = res.est_error
    nodes = res.nodes_used

    tol_far = max(cfg.tail_truncation_tol, 1e-16 * max(abs(value), 1.0))
    chain0 = _TermChain(p, lam, sign, a, chi, eps, q - 1.0, {(0, 0, 0, 0): 1.0 + 0.0j})

    def f_far(x):
        ph = np.exp(1j * sign * lam * x**p)
        return ph * x ** (q - 1.0) * a.deriv_stack(x, 0)[0] * chi.scaled_stack(x, eps, 0)[0]

    X = X0
    for _ in range(60):
        far_val, far_bound = _by_parts_from(chain0, X, tol_far)
        if far_bound <= tol_far:
            return value + far_val
        x_next = min(2.0 * X, (X**p + _CHUNK_MAX_PHASE / lam) ** (1.0 / p))
        if x_next <= X * (1.0 + 1e-9):
            x_next = 2.0 * X
        res = adaptive(
            f_far, phase_breakpoints(X, x_next, p, lam), abs_tol, rel_tol,
            cfg.max_nodes - nodes,
        )
        value += res.value
        err += res.est_error
        nodes += res.nodes_used
        X = x_next
    raise BudgetError(f"epsilon-path tail did not certify by X={X:.3e}")


def _neville_at_zero(ts, vs):
    """Polynomial extrapolation to t=0 through the points (ts, vs)."""
    n = len(ts)
    tab = list(vs)
    for m in range(1, n):
        for i in range(n - m):
            tab[i] = tab[i + 1] + (tab[i] - tab[i + 1]) * ts[i + m] / (ts[i + m] - ts[i])
    return tab[0]


def epsilon_regularized(
    p: float, q: float, sign: int, lam: float, a: Amplitude,
    chi: RegularizerSpec, eps_ladder, cfg: QuadratureConfig | None = None,
) -> complex:
    """Regularized limit of the chi(eps x) integrals along a decreasing ladder.

    Polynomial extrapolation in eps of degree min(4, len-1) over the smallest
    rungs, per the empirical convergence of the cutoff family.
    """
    cfg = cfg or QuadratureConfig()
    _check_common(p, lam, sign, a)
    if q <= 0:
        raise DomainError(f"q must be positive, got {q}")
    eps = [float(e) for e in eps_ladder]
    if len(eps) < 2 or any(not 0.0 < e < 1.0 for e in eps) or any(
        e2 >= e1 for e1, e2 in zip(eps, eps[1:])
    ):
        raise DomainError("eps ladder must be strictly decreasing within (0, 1)")

    vals = [_eps_single(p, q, sign, lam, a, chi, e, cfg) for e in eps]
    deg = min(4, len(eps) - 1)
    extr = [
        _neville_at_zero(eps[i - deg : i + 1], vals[i - deg : i + 1])
        for i in range(deg, len(eps))
    ]
    if len(extr) >= 2:
        spread = abs(extr[-1] - extr[-2])
        # the path targets ~1e-4 agreement; treat rel_tol below 1e-6 as 1e-6
        budget = 1e2 * max(cfg.rel_tol, 1e-6) * max(1.0, abs(extr[-1]))
        if spread > budget:
            raise ConvergenceError(
                f"epsilon ladder did not stabilize (spread {spread:.3e} > {budget:.3e})"
            )
    return _ensure_finite(extr[-1], "epsilon-regularized limit")


# geometric, 0.05 down to 0.005; small powers p need the deeper rungs and
# the boundary-term tail recursion keeps every rung equally cheap
DEFAULT_EPS_LADDER = tuple(0.05 * (0.1 ** (k / 7.0)) for k in range(8))


# ----------------------------------------------------------------------
# rotated-contour reference (independent of the Gamma implementation)
# ----------------------------------------------------------------------


def _gamma_real_integral(s0: float, abs_tol: float, max_nodes: int) -> float:
    """Numerical integral of e^(-t) t^(s0-1) over (0, inf)."""
    T = 60.0 + 12.0 * max(s0 - 1.0, 0.0)
    if s0 < 1.0:
        # u = t^s0 removes the endpoint singularity
        def f(u):
            t = np.zeros_like(u)
            pos = u > 0
            t[pos] = u[pos] ** (1.0 / s0)
            return np.exp(-t) / s0

        t_breaks = np.concatenate([[0.0], np.arange(1.0, T, 1.0), [T]])
        u_breaks = t_breaks**s0
        pts = np.unique(np.concatenate([corner_graded(u_breaks[1], 24), u_breaks]))
        res = adaptive(f, pts, abs_tol, 1e-13, max_nodes)
    else:
        def f(t):
            return np.exp(-t) * t ** (s0 - 1.0)

        pts = np.unique(
            np.concatenate([corner_graded(1.0, 24), np.arange(1.0, T, 1.0), [T]])
        )
        res = adaptive(f, pts, abs_tol, 1e-13, max_nodes)
    return res.value.real


def rotated_contour_reference(p: float, q: float, sign: int) -> complex:
    """Closed-form check via the rotated ray: e^(sign i pi q/(2p)) / p times a
    real Gamma-type integral evaluated by quadrature (no Gamma function)."""
    if sign not in (+1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign!r}")
    if p <= 0 or q <= 0:
        raise DomainError(f"rotated contour needs p, q > 0, got p={p}, q={q}")
    s0 = q / p
    g = _gamma_real_integral(s0, 1e-14, 400_000)
    return cmath.exp(sign * 1j * math.pi * q / (2.0 * p)) * g / p


# ----------------------------------------------------------------------
# Filon-type compact part for extreme phase spans
# ----------------------------------------------------------------------

_FILON_DEG = 24


def _sph_jn(nmax: int, x: float) -> np.ndarray:
    """Spherical Bessel j_0..j_nmax at x >= 0."""
    out = np.zeros(nmax + 1)
    if x == 0.0:
        out[0] = 1.0
        return out
    if x < 1.5:
        # power series; Miller's recurrence overflows when (2n+1)/x outruns
        # the rescaling threshold at tiny x
        x2 = -0.5 * x * x
        for n in range(nmax + 1):
            dfact = 1.0
            for i in range(3, 2 * n + 2, 2):
                dfact *= i
            term = x**n / dfact if n else 1.0
            total = term
            k = 1
            while abs(term) > 1e-18 * abs(total) and k < 40:
                term *= x2 / (k * (2.0 * n + 2.0 * k + 1.0))
                total += term
                k += 1
            out[n] = total
        return out
    if x > nmax + 12:
        # upward recurrence is stable for x above the order
        out[0] = math.sin(x) / x
        if nmax >= 1:
            out[1] = math.sin(x) / x**2 - math.cos(x) / x
        for n in range(1, nmax):
            out[n + 1] = (2 * n + 1) / x * out[n] - out[n - 1]
        return out
    # Miller's downward recurrence, normalized by j_0 = sin(x)/x
    m = nmax + 22 + int(1.2 * x)
    jp, jc = 0.0, 1e-280  # j_{n+1}, j_n at n = m
    for n in range(m, 0, -1):
        jm = (2 * n + 1) / x * jc - jp
        jp, jc = jc, jm
        if n - 1 <= nmax:
            out[n - 1] = jc
        if abs(jc) > 1e250:
            jp *= 1e-250
            jc *= 1e-250
            out *= 1e-250
    return out * ((math.sin(x) / x) / out[0])


def _filon_panel(h_vals, nodes_w, t_mid, hw, s_lam):
    """Integral of e^(i s_lam t) h(t) over a panel via Legendre projection."""
    xs, ws, vander = nodes_w
    coeffs = vander.T @ (ws * h_vals)  # c_n = (2n+1)/2 sum w h P_n folded in
    theta = s_lam * hw
    jn = _sph_jn(_FILON_DEG - 1, abs(theta))
    moments = 2.0 * (1j ** np.arange(_FILON_DEG)) * jn
    if theta < 0:
        moments = np.conj(moments)
    val = hw * cmath.exp(1j * s_lam * t_mid) * complex(np.dot(coeffs, moments))
    err = hw * float(np.sum(np.abs(coeffs[-4:]) * np.abs(moments[-4:]))) + 1e-17 * abs(val)
    return val, err


def _filon_compact(p, q, sign, lam, a, cutoff, cfg, abs_tol, rel_tol) -> QuadResult:
    """Compact part after t = x^p: finite Fourier integral with algebraic corner."""
    r = cutoff.r
    s0 = q / p
    T = r**p
    amp_scale = max(abs(float(a.deriv(0, 0.0))), 1.0)
    t_min = (0.02 * max(abs_tol, 1e-15) * s0 / amp_scale) ** (1.0 / s0)
    if t_min < 1e-280:
        raise BudgetError("corner exponent too small for the Filon path")
    xs, ws = np.polynomial.legendre.leggauss(_FILON_DEG)
    vander = np.polynomial.legendre.legvander(xs, _FILON_DEG - 1)
    vander = vander * ((2.0 * np.arange(_FILON_DEG) + 1.0) / 2.0)
    nodes_w = (xs, ws, vander)

    def h(t):
        x = t ** (1.0 / p)
        return (
            t ** (s0 - 1.0) * a.deriv_stack(x, 0)[0] * cutoff.phi_stack(x, 0)[0] / p
        )

    # geometric panels resolve the algebraic corner; growth ratio keeps the
    # Legendre projection of t^(s0-1) at machine precision per panel
    pts = [t_min]
    while pts[-1] < T:
        pts.append(min(T, pts[-1] * 1.6))
    panels = [(lo, hi) for lo, hi in zip(pts[:-1], pts[1:])]
    corner_mass = t_min**s0 / s0 * amp_scale  # unresolved corner
    total = 0.0 + 0.0j
    err_sum = 0.0
    nodes = 0
    for _ in range(16):
        total = 0.0 + 0.0j
        err_panels = []
        for lo, hi in panels:
            mid, hw = 0.5 * (lo + hi), 0.5 * (hi - lo)
            hv = h(mid + hw * xs)
            v, e = _filon_panel(hv, nodes_w, mid, hw, sign * lam)
            total += v
            err_panels.append(e)
            nodes += _FILON_DEG
        err_sum = sum(err_panels)
        if err_sum < max(abs_tol, rel_tol * abs(total)) or nodes > cfg.max_nodes:
            break
        worst = max(err_panels)
        new_panels = []
        for (lo, hi), e in zip(panels, err_panels):
            if e > 0.25 * worst:
                mid = 0.5 * (lo + hi)
                new_panels.extend([(lo, mid), (mid, hi)])
            else:
                new_panels.append((lo, hi))
        panels = new_panels
    return QuadResult(total, corner_mass + err_sum, nodes)
