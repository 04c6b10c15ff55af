"""Numerical integration helpers shared across the package.

Adaptive Simpson is the workhorse for one-dimensional integrals of
evaluation-callable integrands; Gauss-Legendre panels are used where the
integrand is smooth and the cost of adaptivity is not warranted (tensorized
quadrature over rectangles, spheres, disks).
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

__all__ = [
    "adaptive_simpson",
    "gauss_legendre_nodes",
    "fixed_gauss",
    "composite_simpson",
    "cumulative_simpson",
]


def _simpson_step(f, a, fa, b, fb, m, fm, whole, tol, depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if depth <= 0 or abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    return _simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) + _simpson_step(
        f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1
    )


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_depth: int = 48,
) -> float:
    """Integrate f over [a, b] to the requested absolute tolerance.

    Classic adaptive Simpson with Richardson correction; recursion stops when
    the local error estimate is below the (bisected) tolerance budget.
    """
    if a == b:
        return 0.0
    sign = 1.0
    if b < a:
        a, b = b, a
        sign = -1.0
    # Seed with two panels so an unlucky symmetric integrand does not
    # terminate on a spurious zero estimate.
    m = 0.5 * (a + b)
    fa, fm, fb = f(a), f(m), f(b)
    whole_l = (m - a) / 6.0 * (fa + 4.0 * f(0.5 * (a + m)) + fm)
    whole_r = (b - m) / 6.0 * (fm + 4.0 * f(0.5 * (m + b)) + fb)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    total = _simpson_step(f, a, fa, m, fm, lm, f(lm), whole_l, 0.5 * tol, max_depth) + _simpson_step(
        f, m, fm, b, fb, rm, f(rm), whole_r, 0.5 * tol, max_depth
    )
    return sign * total


_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def gauss_legendre_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1], cached."""
    got = _GL_CACHE.get(n)
    if got is None:
        got = np.polynomial.legendre.leggauss(n)
        _GL_CACHE[n] = got
    return got


def fixed_gauss(f, a: float, b: float, n: int = 64) -> float:
    """n-point Gauss-Legendre integral of a scalar or vectorized callable."""
    x, w = gauss_legendre_nodes(n)
    xm = 0.5 * (b + a) + 0.5 * (b - a) * x
    try:
        vals = f(xm)
        vals = np.asarray(vals, dtype=float)
        if vals.shape != xm.shape:
            raise TypeError
    except (TypeError, ValueError):
        vals = np.array([f(float(t)) for t in xm])
    return 0.5 * (b - a) * float(np.dot(w, vals))


def composite_simpson(values: np.ndarray, h: float) -> float:
    """Simpson rule over uniformly sampled values (odd count required)."""
    n = len(values) - 1
    if n % 2 != 0:
        raise ValueError("composite_simpson needs an even number of intervals")
    s = values[0] + values[-1] + 4.0 * values[1:-1:2].sum() + 2.0 * values[2:-2:2].sum()
    return float(s * h / 3.0)


def cumulative_simpson(values: np.ndarray, h: float) -> np.ndarray:
    """Cumulative integral at every grid node of uniformly sampled values.

    Interior odd nodes are filled with the three-point Newton-Cotes split so
    the result is O(h^4) accurate at every node, not only the even ones.
    """
    n = len(values)
    out = np.empty(n)
    out[0] = 0.0
    if n == 1:
        return out
    # Pairwise Simpson increments over [x_{2k}, x_{2k+2}].
    for i in range(2, n, 2):
        out[i] = out[i - 2] + h / 3.0 * (values[i - 2] + 4.0 * values[i - 1] + values[i])
    # Odd nodes: integrate over [x_{i-1}, x_i] with the quadratic through
    # (i-1, i, i+1) when available, else through (i-2, i-1, i).
    for i in range(1, n, 2):
        if i + 1 < n:
            out[i] = out[i - 1] + h / 12.0 * (5.0 * values[i - 1] + 8.0 * values[i] - values[i + 1])
        else:
            out[i] = out[i - 1] + h / 12.0 * (-values[i - 2] + 8.0 * values[i - 1] + 5.0 * values[i])
    return out


def erfcx(z: float) -> float:
    """Scaled complementary error function exp(z^2) * erfc(z) for z >= 0."""
    if z < 0.0:
        return 2.0 * math.exp(z * z) - erfcx(-z)
    if z < 25.0:
        return math.exp(z * z) * math.erfc(z)
    # Asymptotic series; first omitted term is far below double precision here.
    inv2 = 1.0 / (2.0 * z * z)
    series = 1.0 - inv2 * (1.0 - 3.0 * inv2 * (1.0 - 5.0 * inv2))
    return series / (z * math.sqrt(math.pi))
