"""Deterministic scalar optimization used by every bound in the package.

Two entry points:

``maximize_min`` maximizes the pointwise minimum of named terms over a closed
interval: a uniform 4097-point grid locates the best bracket, then a
golden-section refinement tightens the argmax.  The refined candidate is only
accepted when it beats the best grid point, so the returned value never falls
below the objective at any grid point.  Ties resolve toward the smallest
argmax.  No randomness anywhere, so equal inputs give bitwise-equal results.

``bisect_root`` is plain interval bisection for monotone crossings.

Term callables must broadcast over numpy arrays of evaluation points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import EmptyInterval, NoSignChange

__all__ = ["GRID_POINTS", "OptimizationResult", "maximize_min", "bisect_root"]

GRID_POINTS = 4097

# Golden-section refinement stops when the bracket is this narrow.
_REFINE_TOL = 1e-12

# A term counts as binding when it sits within this distance of the minimum.
_BINDING_TOL = 1e-9

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

Term = tuple[str, Callable[[np.ndarray], np.ndarray]]


@dataclass(frozen=True)
class OptimizationResult:
    """Argmax, value, and the terms attaining the minimum there."""

    rho: float
    value: float
    binding: tuple[str, ...]


def _min_of_terms(terms: Sequence[Term], rho):
    acc = None
    for _, fn in terms:
        v = np.asarray(fn(rho), dtype=float)
        acc = v if acc is None else np.minimum(acc, v)
    return acc


def _binding_terms(terms: Sequence[Term], rho: float, value: float) -> tuple[str, ...]:
    tol = _BINDING_TOL * max(1.0, abs(value)) if math.isfinite(value) else 0.0
    names = []
    for name, fn in terms:
        v = float(fn(rho))
        if v == value or v <= value + tol:
            names.append(name)
    return tuple(names)


def _golden_max(phi: Callable[[float], float], a: float, b: float) -> tuple[float, float]:
    """Golden-section maximization; returns the best evaluated point."""
    best_x, best_v = a, phi(a)
    for x in (b,):
        v = phi(x)
        if v > best_v:
            best_x, best_v = x, v
    span = b - a
    c = b - _INV_PHI * span
    d = a + _INV_PHI * span
    fc, fd = phi(c), phi(d)
    while b - a > _REFINE_TOL:
        for x, v in ((c, fc), (d, fd)):
            if v > best_v or (v == best_v and x < best_x):
                best_x, best_v = x, v
        if fc >= fd:  # keep the left sub-bracket on ties: smaller argmax
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = phi(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = phi(d)
    return best_x, best_v


def maximize_min(
    terms: Sequence[Term],
    lo: float,
    hi: float,
    grid_points: int = GRID_POINTS,
) -> OptimizationResult:
    """Maximize min over ``terms`` on [lo, hi].

    Guarantees: the result value is never below the objective at any grid
    point; with continuous terms the argmax is located to ~1e-12 within its
    grid bracket; deterministic for identical inputs.
    """
    if not terms:
        raise EmptyInterval("maximize_min needs at least one term")
    if lo > hi:
        raise EmptyInterval(f"empty interval [{lo}, {hi}]")
    if lo == hi:
        value = float(_min_of_terms(terms, lo))
        return OptimizationResult(rho=lo, value=value, binding=_binding_terms(terms, lo, value))

    grid = np.linspace(lo, hi, grid_points)
    on_grid = _min_of_terms(terms, grid)
    i = int(np.argmax(on_grid))  # first occurrence: smallest argmax on plateaus
    best_x = float(grid[i])
    best_v = float(on_grid[i])

    def phi(x: float) -> float:
        return float(_min_of_terms(terms, x))

    a = float(grid[i - 1]) if i > 0 else lo
    b = float(grid[i + 1]) if i + 1 < grid_points else hi
    ref_x, ref_v = _golden_max(phi, a, b)
    if ref_v > best_v or (ref_v == best_v and ref_x < best_x):
        best_x, best_v = ref_x, ref_v

    return OptimizationResult(rho=best_x, value=best_v, binding=_binding_terms(terms, best_x, best_v))


def bisect_root(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-12,
) -> float:
    """Root of ``fn`` on [lo, hi] by bisection, to a bracket width of ``tol``.

    Requires a sign change across the interval (an endpoint sitting exactly
    at zero counts); raises NoSignChange otherwise.
    """
    if lo > hi:
        raise EmptyInterval(f"empty interval [{lo}, {hi}]")
    flo = float(fn(lo))
    fhi = float(fn(hi))
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise NoSignChange(f"no sign change on [{lo}, {hi}]: f(lo)={flo:.6g}, f(hi)={fhi:.6g}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fmid = float(fn(mid))
        if fmid == 0.0:
            return mid
        if (fmid > 0.0) == (flo > 0.0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
