"""Scalar line-search helpers: golden-section maximization and monotone
bisection. The throughput surfaces are unimodal per coordinate, so these two
primitives are all the schedulers need."""
from __future__ import annotations

import numpy as np

__all__ = ["golden_section_max", "bisect_largest_feasible"]

_INV_PHI = (np.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(f, lo, hi, tol, max_iters=200):
    """Maximize a unimodal function on [lo, hi].

    Returns (x, f(x)). The bracket endpoints are also candidates, so a
    maximum on the boundary (e.g. a constraint-clipped optimum) is found.
    """
    a, b = float(lo), float(hi)
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    iters = 0
    while (b - a) > tol and iters < max_iters:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
        iters += 1
    candidates = [(fc, c), (fd, d)]
    for x in (lo, hi):
        candidates.append((f(x), x))
    best_val, best_x = max(candidates, key=lambda t: t[0])
    return best_x, best_val


def bisect_largest_feasible(feasible, lo, hi, tol, max_iters=200):
    """Largest x in [lo, hi] with feasible(x) true.

    feasible must be monotone (true below some threshold). Assumes
    feasible(lo); returns lo if even the first probe above fails everywhere.
    """
    if feasible(hi):
        return float(hi)
    a, b = float(lo), float(hi)  # invariant: feasible(a), not feasible(b)
    iters = 0
    while (b - a) > tol and iters < max_iters:
        mid = 0.5 * (a + b)
        if feasible(mid):
            a = mid
        else:
            b = mid
        iters += 1
    return a
