"""Bracketed scalar root finding: bisection with secant acceleration.

All transcendental characteristic equations in the package are solved through
these helpers.  The contract is deliberately conservative: a root is only
reported from a sign-change bracket, and secant steps that leave the bracket
fall back to bisection.
"""

from __future__ import annotations

import math
from typing import Callable, Iterator

__all__ = ["refine_root", "scan_brackets", "nth_root_from_scan"]


def refine_root(
    f: Callable[[float], float],
    a: float,
    b: float,
    ftol: float = 1e-10,
    xtol: float = 0.0,
    max_iter: int = 200,
) -> float:
    """Root of f in the sign-change bracket [a, b].

    Iterates secant steps clipped to the current bracket, with bisection as
    fallback, until |f| <= ftol or the bracket collapses to floating-point
    resolution (or the optional xtol).
    """
    fa = f(a)
    fb = f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0.0:
        raise ValueError(f"no sign change on bracket [{a}, {b}]: f={fa}, {fb}")
    x, fx = (a, fa) if abs(fa) <= abs(fb) else (b, fb)
    for _ in range(max_iter):
        width = b - a
        if width <= xtol or width <= 4.0 * math.ulp(max(abs(a), abs(b), 1.0)):
            break
        # Secant through the bracket endpoints, clipped inside.
        denom = fb - fa
        if denom != 0.0:
            s = a - fa * (b - a) / denom
        else:
            s = 0.5 * (a + b)
        if not (a + 0.01 * width < s < b - 0.01 * width):
            s = 0.5 * (a + b)
        fs = f(s)
        if fs == 0.0 or abs(fs) <= ftol and width <= 1e-9 * max(1.0, abs(s)):
            return s
        if fa * fs < 0.0:
            b, fb = s, fs
        else:
            a, fa = s, fs
        x, fx = (a, fa) if abs(fa) <= abs(fb) else (b, fb)
    return x


def scan_brackets(
    f: Callable[[float], float],
    start: float,
    step: float,
    max_steps: int = 2_000_000,
) -> Iterator[tuple[float, float]]:
    """Yield consecutive sign-change brackets of f walking right from start."""
    x0 = start
    f0 = f(x0)
    for _ in range(max_steps):
        x1 = x0 + step
        f1 = f(x1)
        if f0 == 0.0:
            # Nudge off an exact zero so the bracket logic stays simple.
            x0n = x0 + 1e-13 * max(1.0, abs(x0))
            f0 = f(x0n)
            x0 = x0n
        if f0 * f1 < 0.0:
            yield (x0, x1)
        x0, f0 = x1, f1


def nth_root_from_scan(
    f: Callable[[float], float],
    start: float,
    step: float,
    k: int,
    ftol: float = 1e-12,
) -> float:
    """k-th root of f to the right of start (k >= 1), by scan + refine."""
    if k < 1:
        raise ValueError("root index must be >= 1")
    gen = scan_brackets(f, start, step)
    for _ in range(k - 1):
        next(gen)
    a, b = next(gen)
    return refine_root(f, a, b, ftol=ftol)
