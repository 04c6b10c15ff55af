"""Special functions built from their defining series, recurrences and
large-argument asymptotics: integer-order Bessel and Neumann functions,
spherical Bessel functions, Legendre polynomials and functions of the second
kind, associated Legendre functions, the integral sine, and tables of roots
of the transcendental characteristic equations that accompany them.

Everything here is pure and deterministic; zero tables are immutable once
built and safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from ._quad import adaptive_simpson
from ._rootfind import nth_root_from_scan

__all__ = [
    "SeriesEval",
    "bessel_j",
    "bessel_j_eval",
    "bessel_j_prime",
    "bessel_n",
    "bessel_n_prime",
    "bessel_zero",
    "zero_table",
    "ZeroFamily",
    "ZeroTable",
    "spherical_bessel",
    "spherical_bessel_zero",
    "legendre",
    "assoc_legendre",
    "legendre_norm2",
    "assoc_legendre_norm2",
    "integral_sine",
    "GIBBS_CONSTANT",
]


@dataclass(frozen=True)
class SeriesEval:
    """Value of a series/asymptotic evaluation together with a conservative
    bound on its absolute error (truncation plus rounding of the dominant
    term)."""

    argument: float
    order: int
    value: float
    abs_error_bound: float

_EULER_GAMMA = 0.5772156649015328606


# ----------------------------------------------------------------------
# Bessel functions of integer order
# ----------------------------------------------------------------------

def _bessel_j_series(m: int, x: float) -> float:
    """Power series sum_{s} (-1)^s / (s! (s+m)!) (x/2)^{2s+m}.

    Safe while the largest term stays small relative to double precision;
    callers restrict it to |x| <= max(12, m).
    """
    half = 0.5 * x
    # term at s = 0: (x/2)^m / m!
    term = 1.0
    for i in range(1, m + 1):
        term *= half / i
    total = term
    biggest = abs(term)
    s = 0
    x2 = -half * half
    while s < 400:
        s += 1
        term *= x2 / (s * (s + m))
        total += term
        biggest = max(biggest, abs(term))
        if abs(term) <= 1e-17 * biggest + 1e-300 and s > 2:
            break
    return total


def _hankel_pq(m: int, x: float) -> tuple[float, float]:
    """Optimally truncated asymptotic amplitude series P, Q with
    J_m(x) = sqrt(2/(pi x)) [P cos(chi) - Q sin(chi)],
    N_m(x) = sqrt(2/(pi x)) [P sin(chi) + Q cos(chi)],
    chi = x - pi/4 - m pi/2.

    With u_j = prod_{i<=j} (4m^2 - (2i-1)^2) / (j! (8x)^j):
    P = u_0 - u_2 + u_4 - ..., Q = u_1 - u_3 + u_5 - ...  Summation stops at
    the smallest term (the series is asymptotic, not convergent).
    """
    mu = 4.0 * m * m
    p = 1.0
    q = 0.0
    u = 1.0
    for j in range(1, 80):
        u_next = u * (mu - (2 * j - 1) ** 2) / (j * 8.0 * x)
        if abs(u_next) >= abs(u) and j > 2:
            break
        u = u_next
        if j % 2 == 1:
            q += (-1.0) ** ((j - 1) // 2) * u
        else:
            p += (-1.0) ** (j // 2) * u
        if abs(u) < 1e-19:
            break
    return p, q


def _bessel_asymptotic(m: int, x: float, kind: str) -> float:
    p, q = _hankel_pq(m, x)
    chi = x - 0.25 * math.pi - 0.5 * math.pi * m
    amp = math.sqrt(2.0 / (math.pi * x))
    if kind == "j":
        return amp * (p * math.cos(chi) - q * math.sin(chi))
    return amp * (p * math.sin(chi) + q * math.cos(chi))


def bessel_j(m: int, x: float) -> float:
    """Bessel function J_m(x) for integer order m >= 0 and real x.

    Regime selection: the defining power series wherever its float64
    cancellation stays below ~1e-10 (|x| <= max(12, m)), the large-argument
    asymptotic for orders 0 and 1 beyond that, and the three-term upward
    recurrence (stable for m < x) for higher orders at large argument.
    """
    if m < 0:
        raise ValueError("order must be a non-negative integer")
    if x == 0.0:
        return 1.0 if m == 0 else 0.0
    if x < 0.0:
        v = bessel_j(m, -x)
        return -v if m % 2 else v
    if m <= 1:
        if x <= 12.0:
            return _bessel_j_series(m, x)
        return _bessel_asymptotic(m, x, "j")
    if x <= max(12.0, float(m)):
        return _bessel_j_series(m, x)
    # upward recurrence from orders 0, 1 (x > m keeps it stable)
    jm1 = bessel_j(0, x)
    jm = bessel_j(1, x)
    for k in range(1, m):
        jm1, jm = jm, 2.0 * k / x * jm - jm1
    return jm


def _bessel_j_series_bound(m: int, x: float) -> float:
    """Rounding-dominated error bound of the power series: eps times the
    largest term (truncation is driven far below that)."""
    half = abs(0.5 * x)
    term = 1.0
    for i in range(1, m + 1):
        term *= half / i
    biggest = term
    x2 = half * half
    for s in range(1, 400):
        term *= x2 / (s * (s + m))
        biggest = max(biggest, term)
        if term < 1e-18 * biggest and s > 2:
            break
    return 4.0 * 2.220446049250313e-16 * max(1.0, biggest)


def bessel_j_eval(m: int, x: float) -> SeriesEval:
    """J_m(x) together with a conservative absolute-error bound.

    Series regime: eps times the largest (cancelling) term.  Asymptotic
    regime: the first omitted amplitude term plus rounding.  Recurrence
    regime: the seed bounds amplified by the mild upward growth factor.
    """
    value = bessel_j(m, x)
    ax = abs(x)
    if ax == 0.0:
        return SeriesEval(x, m, value, 0.0)
    if (m <= 1 and ax > 12.0) or (m >= 2 and ax > max(12.0, float(m))):
        # asymptotic/recurrence regime: optimal truncation of the amplitude
        # series stalls near e^{-2x}; the upward recurrence (applied only
        # while m < x) grows seed errors about linearly in the order
        amp = math.sqrt(2.0 / (math.pi * ax))
        # the eps*(4 + x) piece covers the trig argument reduction of chi
        base = amp * (math.exp(-2.0 * min(ax, 300.0)) + (4.0 + ax) * 2.220446049250313e-16)
        return SeriesEval(x, m, value, base * (1.0 + m))
    return SeriesEval(x, m, value, _bessel_j_series_bound(m, ax))


def bessel_j_prime(m: int, x: float) -> float:
    """Derivative J_m'(x); J_0' = -J_1, otherwise J_m' = -J_{m+1} + (m/x) J_m."""
    if m == 0:
        return -bessel_j(1, x)
    if x == 0.0:
        return 0.5 if m == 1 else 0.0
    return -bessel_j(m + 1, x) + m / x * bessel_j(m, x)


def _bessel_n0_series(x: float) -> float:
    """Logarithmic series for N_0 at moderate argument."""
    j0 = bessel_j(0, x)
    half = 0.5 * x
    # sum over s >= 1 of (-1)^s/(s!)^2 (x/2)^(2s) * H_s
    term = 1.0
    hs = 0.0
    total = 0.0
    biggest = 1e-300
    x2 = -half * half
    for s in range(1, 400):
        term *= x2 / (s * s)
        hs += 1.0 / s
        contrib = term * hs
        total += contrib
        biggest = max(biggest, abs(contrib))
        if abs(contrib) <= 1e-17 * biggest and s > 2:
            break
    return 2.0 / math.pi * (j0 * (math.log(0.5 * x) + _EULER_GAMMA) - total)


def _bessel_n1_series(x: float) -> float:
    """N_1 = -N_0'(x), differentiating the N_0 series term by term."""
    j0 = bessel_j(0, x)
    j1 = bessel_j(1, x)
    half = 0.5 * x
    term = 1.0
    hs = 0.0
    dsum = 0.0
    biggest = 1e-300
    x2 = -half * half
    for s in range(1, 400):
        term *= x2 / (s * s)
        hs += 1.0 / s
        contrib = term * hs * (2.0 * s / x)
        dsum += contrib
        biggest = max(biggest, abs(contrib))
        if abs(contrib) <= 1e-17 * biggest and s > 2:
            break
    n0p = 2.0 / math.pi * (-j1 * (math.log(0.5 * x) + _EULER_GAMMA) + j0 / x - dsum)
    return -n0p


def bessel_n(m: int, x: float) -> float:
    """Neumann function N_m(x) for integer m >= 0; requires x > 0.

    N_0 comes from its logarithmic series (asymptotic beyond x = 12), N_1
    from the differentiated series, and higher orders from the upward
    recurrence N_{m+1} = -N_{m-1} + (2m/x) N_m, which is stable because N
    is the growing solution.
    """
    if m < 0:
        raise ValueError("order must be a non-negative integer")
    if x <= 0.0:
        raise ValueError("Neumann function requires x > 0 (logarithmic singularity at 0)")
    if x > 12.0:
        n0 = _bessel_asymptotic(0, x, "n")
        n1 = _bessel_asymptotic(1, x, "n")
    else:
        n0 = _bessel_n0_series(x)
        n1 = _bessel_n1_series(x)
    if m == 0:
        return n0
    if m == 1:
        return n1
    nm1, nm = n0, n1
    for k in range(1, m):
        nm1, nm = nm, 2.0 * k / x * nm - nm1
    return nm


def bessel_n_prime(m: int, x: float) -> float:
    """Derivative N_m'(x) via N_0' = -N_1 and the standard relation."""
    if m == 0:
        return -bessel_n(1, x)
    return -bessel_n(m + 1, x) + m / x * bessel_n(m, x)


# ----------------------------------------------------------------------
# Zero tables
# ----------------------------------------------------------------------

class ZeroFamily(str, Enum):
    BESSEL_J = "bessel_j"
    BESSEL_J_PRIME = "bessel_j_prime"
    BEAM_CC = "beam_cc"
    BEAM_CF = "beam_cf"
    BEAM_CP = "beam_cp"
    RADIAL_TAN = "radial_tan"
    RADIAL_ROBIN = "radial_robin"


@dataclass(frozen=True)
class ZeroTable:
    """Ascending positive roots of a characteristic equation.

    Instances are immutable; request more roots through ``zero_table`` which
    returns a fresh, longer table.  ``param`` carries the real parameter of
    parametrized families (radial_robin), and is None otherwise.
    """

    family: ZeroFamily
    order: int
    roots: tuple[float, ...]
    tol: float = 1e-10
    param: float | None = None

    def root(self, k: int) -> float:
        if k < 1 or k > len(self.roots):
            raise IndexError(f"root index {k} outside table of length {len(self.roots)}")
        return self.roots[k - 1]


def _beam_cc_fn(mu: float) -> float:
    # cosh(mu) cos(mu) = 1, scaled by sech to stay bounded
    return math.cos(mu) - 1.0 / math.cosh(mu)


def _beam_cf_fn(mu: float) -> float:
    # cosh(mu) cos(mu) = -1
    return math.cos(mu) + 1.0 / math.cosh(mu)


def _beam_cp_fn(mu: float) -> float:
    # tan(mu) = tanh(mu), written pole-free and scaled by e^{-mu}
    em = math.exp(-2.0 * mu)
    return math.sin(mu) * (1.0 + em) * 0.5 - math.cos(mu) * (1.0 - em) * 0.5


def _radial_tan_fn(g: float) -> float:
    # tan(g) = g, pole-free form
    return math.sin(g) - g * math.cos(g)


def _characteristic(family: ZeroFamily, order: int, param: float | None) -> Callable[[float], float]:
    if family == ZeroFamily.BESSEL_J:
        return lambda x: bessel_j(order, x)
    if family == ZeroFamily.BESSEL_J_PRIME:
        return lambda x: bessel_j_prime(order, x)
    if family == ZeroFamily.BEAM_CC:
        return _beam_cc_fn
    if family == ZeroFamily.BEAM_CF:
        return _beam_cf_fn
    if family == ZeroFamily.BEAM_CP:
        return _beam_cp_fn
    if family == ZeroFamily.RADIAL_TAN:
        return _radial_tan_fn
    if family == ZeroFamily.RADIAL_ROBIN:
        if param is None:
            raise ValueError("radial_robin family needs the Robin constant h*R as param")
        c = param - 1.0  # equation: g cos g + (hR - 1) sin g = 0
        return lambda g: g * math.cos(g) + c * math.sin(g)
    raise ValueError(f"unknown family {family!r}")


def _scan_start_step(family: ZeroFamily, order: int) -> tuple[float, float]:
    if family == ZeroFamily.BESSEL_J:
        # J_m > 0 on (0, first zero); first zero > m, spacing eventually ~ pi
        return (1e-9 if order == 0 else 0.5 * order), math.pi / 8.0
    if family == ZeroFamily.BESSEL_J_PRIME:
        return max(1e-6, 0.4 * order), math.pi / 8.0
    if family in (ZeroFamily.BEAM_CC, ZeroFamily.BEAM_CF, ZeroFamily.BEAM_CP):
        # cos +- sech and sin*cosh - cos*sinh vanish to high order at 0;
        # start past the degenerate origin
        return 0.3, math.pi / 8.0
    if family in (ZeroFamily.RADIAL_TAN, ZeroFamily.RADIAL_ROBIN):
        return 1e-6, math.pi / 8.0
    raise ValueError(f"unknown family {family!r}")


_ZERO_CACHE: dict[tuple, ZeroTable] = {}


def zero_table(
    family: ZeroFamily | str,
    order: int = 0,
    count: int = 1,
    param: float | None = None,
) -> ZeroTable:
    """First ``count`` positive roots of the requested family, cached.

    Roots are located by a sign-change scan seeded near the origin and
    refined by bisection+secant to |f| <= 1e-10 on the scaled characteristic.
    """
    family = ZeroFamily(family)
    key = (family, order, param)
    cached = _ZERO_CACHE.get(key)
    if cached is not None and len(cached.roots) >= count:
        return cached
    f = _characteristic(family, order, param)
    start, step = _scan_start_step(family, order)
    roots: list[float] = list(cached.roots) if cached is not None else []
    scan_from = roots[-1] + 1e-9 if roots else start
    while len(roots) < count:
        k_rel = 1
        roots.append(nth_root_from_scan(f, scan_from, step, k_rel, ftol=1e-15))
        scan_from = roots[-1] + 0.25 * step
    table = ZeroTable(family=family, order=order, roots=tuple(roots), tol=1e-10, param=param)
    _ZERO_CACHE[key] = table
    return table


def bessel_zero(family: ZeroFamily | str, order: int, k: int, param: float | None = None) -> float:
    """k-th positive root (k >= 1) of the requested characteristic family."""
    if k < 1:
        raise ValueError("root index must be >= 1")
    return zero_table(family, order, k, param=param).root(k)


# ----------------------------------------------------------------------
# Spherical Bessel functions
# ----------------------------------------------------------------------

def _sph_j_small(n: int, x: float) -> float:
    """Series x^n/(2n+1)!! * (1 - x^2/(2(2n+3)) + ...) for small |x|."""
    dfact = 1.0
    for i in range(1, 2 * n + 2, 2):
        dfact *= i
    lead = x**n / dfact
    x2 = 0.5 * x * x
    term = 1.0
    total = 1.0
    for s in range(1, 40):
        term *= -x2 / (s * (2 * n + 2 * s + 1))
        total += term
        if abs(term) < 1e-18:
            break
    return lead * total


def _sph_j_downward(n: int, x: float) -> float:
    """Downward recurrence normalized by j_0; stable for n > x."""
    start = n + int(2.0 * math.sqrt(max(n, 10))) + 20
    jp1 = 0.0
    j = 1e-290
    target = 0.0
    for k in range(start, 0, -1):
        jm1 = (2 * k + 1) / x * j - jp1
        jp1, j = j, jm1
        if k - 1 == n:
            target = j
        # rescale to avoid overflow
        if abs(j) > 1e250:
            j *= 1e-250
            jp1 *= 1e-250
            target *= 1e-250
    # j now holds the recurred j_0 estimate
    return target * (math.sin(x) / x) / j


def spherical_bessel(kind: str, n: int, x: float) -> float:
    """Spherical Bessel functions j_n(x) and y_n(x) for integer n >= 0.

    Orders 0..2 use their closed elementary forms (series-protected near 0);
    higher orders use the three-term recurrence: upward for y and for j when
    x > n, downward (normalized by j_0) otherwise.
    """
    if n < 0:
        raise ValueError("order must be non-negative")
    if kind == "j":
        if x == 0.0:
            return 1.0 if n == 0 else 0.0
        if x < 0.0:
            v = spherical_bessel("j", n, -x)
            return -v if n % 2 else v
        if abs(x) < 0.5 or n > x:
            if n <= 40 and abs(x) < 0.5:
                return _sph_j_small(n, x)
            return _sph_j_downward(n, x)
        j0 = math.sin(x) / x
        if n == 0:
            return j0
        j1 = math.sin(x) / (x * x) - math.cos(x) / x
        jm1, jm = j0, j1
        for k in range(1, n):
            jm1, jm = jm, (2 * k + 1) / x * jm - jm1
        return jm
    if kind == "y":
        if x == 0.0:
            raise ValueError("y_n is singular at x = 0")
        neg = False
        if x < 0.0:
            # y_n(-x) = (-1)^{n+1} y_n(x)
            neg = n % 2 == 0
            x = -x
        y0 = -math.cos(x) / x
        if n == 0:
            val = y0
        else:
            y1 = -math.cos(x) / (x * x) - math.sin(x) / x
            ym1, ym = y0, y1
            for k in range(1, n):
                ym1, ym = ym, (2 * k + 1) / x * ym - ym1
            val = ym
        return -val if neg else val
    raise ValueError("kind must be 'j' or 'y'")


_SPH_ZERO_CACHE: dict[int, list[float]] = {}


def spherical_bessel_zero(n: int, k: int) -> float:
    """k-th positive zero of j_n (equivalently of J_{n+1/2})."""
    if k < 1:
        raise ValueError("root index must be >= 1")
    roots = _SPH_ZERO_CACHE.setdefault(n, [])
    if len(roots) < k:
        f = lambda x: spherical_bessel("j", n, x)
        scan_from = roots[-1] + 1e-9 if roots else max(1e-6, 0.5 * n)
        while len(roots) < k:
            roots.append(nth_root_from_scan(f, scan_from, math.pi / 8.0, 1, ftol=1e-13))
            scan_from = roots[-1] + math.pi / 32.0
    return roots[k - 1]


# ----------------------------------------------------------------------
# Legendre polynomials and relatives
# ----------------------------------------------------------------------

def legendre(kind: str, n: int, x: float) -> float:
    """Legendre polynomial P_n(x) on [-1, 1] or second-kind Q_n(x) on (-1, 1).

    P uses the three-term recurrence seeded by P_0 = 1, P_1 = x.  Q is
    assembled from Q_0 = (1/2) ln((1+x)/(1-x)) and the finite P-sum
    Q_n = P_n Q_0 - sum_s (2n-4s-1)/((2s+1)(n-s)) P_{n-2s-1}.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    if kind == "P":
        if not -1.0 <= x <= 1.0:
            raise ValueError("P_n evaluated only on [-1, 1]")
        return _legendre_p(n, x)
    if kind == "Q":
        if not -1.0 < x < 1.0:
            raise ValueError("Q_n diverges logarithmically at |x| = 1")
        q0 = 0.5 * math.log((1.0 + x) / (1.0 - x))
        if n == 0:
            return q0
        total = _legendre_p(n, x) * q0
        for s in range(0, (n - 1) // 2 + 1):
            total -= (2 * n - 4 * s - 1) / ((2 * s + 1) * (n - s)) * _legendre_p(n - 2 * s - 1, x)
        return total
    raise ValueError("kind must be 'P' or 'Q'")


def _legendre_p(n: int, x: float) -> float:
    if n == 0:
        return 1.0
    pm1, pm = 1.0, x
    for k in range(1, n):
        pm1, pm = pm, ((2 * k + 1) * x * pm - k * pm1) / (k + 1)
    return pm


def legendre_norm2(n: int) -> float:
    """Squared L2 norm of P_n on [-1, 1]: 2/(2n+1)."""
    return 2.0 / (2 * n + 1)


def assoc_legendre(n: int, m: int, x: float) -> float:
    """Associated Legendre function P_n^m(x) = (1-x^2)^{m/2} d^m P_n/dx^m.

    Seeded at P_m^m = (2m-1)!! (1-x^2)^{m/2} and raised in degree by the
    recurrence P_{k+1}^m = ((2k+1) x P_k^m - (k+m) P_{k-1}^m)/(k-m+1).
    Returns 0 for m > n (the m-th derivative of a degree-n polynomial).
    """
    if m < 0:
        raise ValueError("order m must be non-negative")
    if not -1.0 <= x <= 1.0:
        raise ValueError("P_n^m evaluated only on [-1, 1]")
    if m > n:
        return 0.0
    if m == 0:
        return _legendre_p(n, x)
    s2 = max(0.0, 1.0 - x * x)
    pmm = 1.0
    fact = 1.0
    for _ in range(m):
        pmm *= fact
        fact += 2.0
    pmm *= s2 ** (0.5 * m)
    if n == m:
        return pmm
    pmmp1 = (2 * m + 1) * x * pmm
    if n == m + 1:
        return pmmp1
    pk1, pk = pmm, pmmp1
    for k in range(m + 1, n):
        pk1, pk = pk, ((2 * k + 1) * x * pk - (k + m) * pk1) / (k - m + 1)
    return pk


def assoc_legendre_norm2(n: int, m: int) -> float:
    """Integral of [P_n^m]^2 over [-1, 1]: 2 (n+m)! / ((2n+1)(n-m)!)."""
    val = 2.0 / (2 * n + 1)
    for j in range(n - m + 1, n + m + 1):
        val *= j
    return val


# ----------------------------------------------------------------------
# Integral sine
# ----------------------------------------------------------------------

def _sinc(t: float) -> float:
    if abs(t) < 1e-8:
        return 1.0 - t * t / 6.0
    return math.sin(t) / t


def integral_sine(x: float) -> float:
    """Si(x) = integral of sin(t)/t from 0 to x, for x >= 0."""
    if x < 0.0:
        raise ValueError("integral_sine defined for x >= 0")
    if x == 0.0:
        return 0.0
    # Integrate lobe by lobe past the first few periods so the adaptive rule
    # is never handed an interval with many oscillations at once.
    total = 0.0
    a = 0.0
    while a < x:
        b = min(x, a + math.pi)
        total += adaptive_simpson(_sinc, a, b, tol=1e-12)
        a = b
    return total


#: Absolute maximum of Si over x > 0, attained at x = pi.
GIBBS_CONSTANT = 1.8519370519824661
