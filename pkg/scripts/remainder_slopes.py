#!/usr/bin/env python3
"""Empirical remainder orders of the asymptotic expansions.

Reproduces the slope studies: full-line m=2 (gaussian) for several N, the
half-line p=2.5 case, and the super-polynomial m=1 decay. Emits one JSON
line per (case, lambda) with the residual, then the fitted slopes.

    python scripts/remainder_slopes.py
"""

import json
import sys

from oscphase import (
    builtin,
    evaluate_expansion,
    expand_fullline,
    expand_halfline,
    os_integral_fullline,
    os_integral_halfline,
    remainder_slope,
)

FULL_GRID = (10.0, 31.6, 100.0, 316.0, 1000.0, 1.0e4)
M1_GRID = (5.0, 6.0, 7.0, 8.0, 9.0, 10.0)


def main() -> int:
    gauss = builtin("gaussian")
    ok = True

    directs = [os_integral_fullline(2, +1, lam, gauss).value for lam in FULL_GRID]
    for N in (3, 4, 5):
        res = expand_fullline(2, +1, gauss, N)
        for lam, d in zip(FULL_GRID, directs):
            print(json.dumps({
                "case": f"fullline m=2 N={N}", "lambda": lam,
                "residual": abs(d - evaluate_expansion(res, lam)),
            }))
        fit = remainder_slope(2, +1, gauss, N, FULL_GRID, direct_values=directs)
        bound = -(N - 1) / 2.0 + 0.15
        ok &= fit.fitted_slope <= bound
        print(f"m=2 N={N}: slope {fit.fitted_slope:+.3f} (bound {bound:+.3f}, "
              f"r2 {fit.r_squared:.5f})", file=sys.stderr)

    res = expand_halfline(2.5, +1, gauss, 5)
    for lam in FULL_GRID:
        d = os_integral_halfline(2.5, 1.0, +1, lam, gauss).value
        print(json.dumps({
            "case": "halfline p=2.5 N=5", "lambda": lam,
            "residual": abs(d - evaluate_expansion(res, lam)),
        }))
    fit = remainder_slope(2.5, +1, gauss, 5, FULL_GRID)
    bound = -(5 - 2.5 + 1) / 2.5 + 0.2
    ok &= fit.fitted_slope <= bound
    print(f"p=2.5 N=5: slope {fit.fitted_slope:+.3f} (bound {bound:+.3f})",
          file=sys.stderr)

    for lam in M1_GRID:
        d = os_integral_fullline(1, +1, lam, gauss).value
        print(json.dumps({"case": "fullline m=1", "lambda": lam, "residual": abs(d)}))
    fit = remainder_slope(1, +1, gauss, 3, M1_GRID)
    ok &= fit.fitted_slope <= -6.0
    print(f"m=1: slope {fit.fitted_slope:+.2f} (bound -6)", file=sys.stderr)

    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
