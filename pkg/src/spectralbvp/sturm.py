"""Sturm-Liouville eigensolver on a finite interval.

Solves -(p u')' + q u = lambda rho u on [0, l] with Robin, Neumann or
Dirichlet conditions at either end.  The machinery follows the classical
initial-value route: integrate the left-normalized solution across the
interval (fixed-step fourth order, with a Picard iteration on the equivalent
Volterra equation available as an independent cross-check), read eigenvalues
off the zeros of the right-end boundary residual, and bracket them through
the oscillation count delivered by the phase equation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ._quad import composite_simpson, cumulative_simpson

__all__ = [
    "BoundaryCondition",
    "SLProblem",
    "EigenBasis",
    "ThetaSolution",
    "solve_theta",
    "characteristic",
    "characteristic_many",
    "node_count",
    "eigen_solve",
    "const_coeff_eigen",
    "rayleigh_quotient",
]


@dataclass(frozen=True)
class BoundaryCondition:
    """End condition u' -+ h u = 0 (Robin); h = 0 is Neumann, and a separate
    flag encodes the Dirichlet (clamped) limit h -> infinity."""

    dirichlet: bool = False
    h: float = 0.0

    def __post_init__(self):
        if not self.dirichlet and (not math.isfinite(self.h) or self.h < 0.0):
            raise ValueError("Robin parameter must be finite and >= 0; use dirichlet() for the clamped limit")

    @classmethod
    def robin(cls, h: float) -> "BoundaryCondition":
        if math.isinf(h):
            return cls(dirichlet=True)
        return cls(h=h)

    @classmethod
    def neumann(cls) -> "BoundaryCondition":
        return cls(h=0.0)

    @classmethod
    def dirichlet_bc(cls) -> "BoundaryCondition":
        return cls(dirichlet=True)


DIRICHLET = BoundaryCondition(dirichlet=True)
NEUMANN = BoundaryCondition(h=0.0)


class SLProblem:
    """Coefficients p > 0 (stiffness), q >= 0 (elastic medium), rho > 0
    (mass density) on [0, l], plus the two end conditions.

    Coefficients are supplied as callables and sampled once on a uniform
    grid (default 4096 steps) that all integrations share; min/max bounds
    used by the eigenvalue window come from the same samples.
    """

    def __init__(
        self,
        p: Callable[[float], float],
        q: Callable[[float], float],
        rho: Callable[[float], float],
        l: float,
        left: BoundaryCondition,
        right: BoundaryCondition,
        grid_size: int = 4096,
    ):
        if l <= 0.0:
            raise ValueError("interval length must be positive")
        if grid_size < 16 or grid_size % 2:
            raise ValueError("grid_size must be an even integer >= 16")
        self.p, self.q, self.rho = p, q, rho
        self.l = float(l)
        self.left = left
        self.right = right
        self.n = int(grid_size)
        # Samples at half-step resolution: index i corresponds to x = i*h/2.
        xs = np.linspace(0.0, self.l, 2 * self.n + 1)
        self._xs_half = xs
        self._p = np.array([float(p(x)) for x in xs])
        self._q = np.array([float(q(x)) for x in xs])
        self._rho = np.array([float(rho(x)) for x in xs])
        if self._p.min() <= 0.0 or self._rho.min() <= 0.0 or self._q.min() < 0.0:
            raise ValueError("need p > 0, rho > 0, q >= 0 on the sampling grid")

    @property
    def h_step(self) -> float:
        return self.l / self.n

    @property
    def grid(self) -> np.ndarray:
        """Node grid of the integrator (n+1 points)."""
        return self._xs_half[::2]

    def coefficient_bounds(self) -> dict[str, float]:
        return {
            "p_min": float(self._p.min()),
            "p_max": float(self._p.max()),
            "q_min": float(self._q.min()),
            "q_max": float(self._q.max()),
            "rho_min": float(self._rho.min()),
            "rho_max": float(self._rho.max()),
        }

    def eigenvalue_window(self, n: int) -> tuple[float, float]:
        """Two-sided estimate for the n-th eigenvalue from the constant-
        coefficient comparison problems (n >= 1)."""
        b = self.coefficient_bounds()
        lo = b["p_min"] * math.pi**2 * (n - 1) ** 2 / (b["rho_max"] * self.l**2) + b["q_min"] / b["rho_max"]
        hi = b["p_max"] * math.pi**2 * n**2 / (b["rho_min"] * self.l**2) + b["q_max"] / b["rho_min"]
        return lo, hi

    def left_initial_data(self) -> tuple[float, float]:
        """Initial data (value, derivative) of the solution satisfying the
        left boundary condition, in the fixed sign convention."""
        if self.left.dirichlet:
            return 0.0, 1.0
        return 1.0, self.left.h


@dataclass(frozen=True)
class ThetaSolution:
    """Dense output of the initial-value integration.

    Stores values and derivatives at the integrator nodes; evaluation between
    nodes is cubic Hermite, matching the fourth-order step accuracy.
    """

    problem: SLProblem
    lam: float
    values: np.ndarray
    derivs: np.ndarray

    def __call__(self, x):
        return self._eval(np.asarray(x, dtype=float), self.values, self.derivs)

    def derivative(self, x):
        # Hermite derivative of the value interpolant.
        x = np.asarray(x, dtype=float)
        h = self.problem.h_step
        idx = np.clip((x / h).astype(int), 0, self.problem.n - 1)
        s = (x - idx * h) / h
        y0, y1 = self.values[idx], self.values[idx + 1]
        d0, d1 = self.derivs[idx], self.derivs[idx + 1]
        dy = (
            (6.0 * s * s - 6.0 * s) * y0
            + (-6.0 * s * s + 6.0 * s) * y1
            + h * (3.0 * s * s - 4.0 * s + 1.0) * d0
            + h * (3.0 * s * s - 2.0 * s) * d1
        ) / h
        return dy if dy.shape else float(dy)

    def _eval(self, x, vals, ders):
        h = self.problem.h_step
        idx = np.clip((x / h).astype(int), 0, self.problem.n - 1)
        s = (x - idx * h) / h
        y0, y1 = vals[idx], vals[idx + 1]
        d0, d1 = ders[idx], ders[idx + 1]
        h00 = 1.0 + s * s * (2.0 * s - 3.0)
        h10 = s * (1.0 + s * (s - 2.0))
        h01 = s * s * (3.0 - 2.0 * s)
        h11 = s * s * (s - 1.0)
        y = h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1
        return y if y.shape else float(y)

    @property
    def end_value(self) -> float:
        return float(self.values[-1])

    @property
    def end_derivative(self) -> float:
        return float(self.derivs[-1])


def _rk4_integrate(problem: SLProblem, lam: float, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Fixed-step RK4 on theta' = w/p, w' = (q - lam*rho) theta."""
    n = problem.n
    h = problem.h_step
    p, q, rho = problem._p, problem._q, problem._rho
    g = q - lam * rho
    theta = np.empty(n + 1)
    w = np.empty(n + 1)
    th = a
    ww = problem._p[0] * b
    theta[0] = th
    w[0] = ww
    for i in range(n):
        i2 = 2 * i
        p0, pm, p1 = p[i2], p[i2 + 1], p[i2 + 2]
        g0, gm, g1 = g[i2], g[i2 + 1], g[i2 + 2]
        k1t = ww / p0
        k1w = g0 * th
        t2 = th + 0.5 * h * k1t
        w2 = ww + 0.5 * h * k1w
        k2t = w2 / pm
        k2w = gm * t2
        t3 = th + 0.5 * h * k2t
        w3 = ww + 0.5 * h * k2w
        k3t = w3 / pm
        k3w = gm * t3
        t4 = th + h * k3t
        w4 = ww + h * k3w
        k4t = w4 / p1
        k4w = g1 * t4
        th += h / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t)
        ww += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)
        theta[i + 1] = th
        w[i + 1] = ww
    derivs = w / p[::2]
    return theta, derivs


def _picard_integrate(problem: SLProblem, lam: float, a: float, b: float, tol: float = 1e-12):
    """Successive approximations on the Volterra form of the initial-value
    problem; converges for every lambda by the factorial bound on iterates."""
    xs = problem.grid
    h = problem.h_step
    p = problem._p[::2]
    g = problem._q[::2] - lam * problem._rho[::2]
    inv_p = 1.0 / p
    big_p = cumulative_simpson(inv_p, h)  # P(x) = int_0^x dx'/p
    f0 = a + b * problem._p[0] * big_p
    f = f0.copy()
    for _ in range(400):
        gf = g * f
        i1 = cumulative_simpson(gf, h)
        i2 = cumulative_simpson(gf * big_p, h)
        f_new = f0 + big_p * i1 - i2
        delta = float(np.max(np.abs(f_new - f)))
        f = f_new
        if delta < tol:
            break
    # derivative from the integrated flux: p f' = p(0) b + int_0^x g f
    derivs = (problem._p[0] * b + cumulative_simpson(g * f, h)) / p
    return f, derivs


def solve_theta(
    problem: SLProblem,
    lam: float,
    a: float,
    b: float,
    method: str = "rk4",
) -> ThetaSolution:
    """Solution of -(p u')' + q u = lam rho u with u(0) = a, u'(0) = b.

    method="rk4" integrates the first-order system with a fixed fourth-order
    step; method="picard" iterates the equivalent Volterra integral equation
    until successive iterates differ by < 1e-12.  The two routes are
    independent implementations of the same contract.  The iteration
    converges for every lambda, but its intermediate iterates grow like
    cosh(l sqrt(|lam| rho_max / p_min)) before cancelling, so the cross-check
    mode is meaningful at moderate spectral parameters only.
    """
    if not math.isfinite(lam):
        raise ValueError("lambda must be finite")
    if method == "rk4":
        vals, ders = _rk4_integrate(problem, lam, a, b)
    elif method == "picard":
        vals, ders = _picard_integrate(problem, lam, a, b)
    else:
        raise ValueError("method must be 'rk4' or 'picard'")
    return ThetaSolution(problem=problem, lam=lam, values=vals, derivs=ders)


def characteristic(problem: SLProblem, lam: float, method: str = "rk4") -> float:
    """Right-end boundary residual of the left-normalized solution.

    Its zeros are exactly the eigenvalues: m(lam) = theta'(l) + h2 theta(l)
    for a Robin right end, theta(l) for a Dirichlet right end.
    """
    a, b = problem.left_initial_data()
    sol = solve_theta(problem, lam, a, b, method=method)
    if problem.right.dirichlet:
        return sol.end_value
    return sol.end_derivative + problem.right.h * sol.end_value


def characteristic_many(problem: SLProblem, lams: Sequence[float]) -> np.ndarray:
    """Vectorized characteristic over an array of lambda values.

    One fixed-step RK4 sweep advances all requested lambda simultaneously;
    used for dense scans.
    """
    lams = np.asarray(lams, dtype=float)
    n = problem.n
    h = problem.h_step
    p, q, rho = problem._p, problem._q, problem._rho
    a, b = problem.left_initial_data()
    th = np.full(lams.shape, a)
    ww = np.full(lams.shape, p[0] * b)
    for i in range(n):
        i2 = 2 * i
        p0, pm, p1 = p[i2], p[i2 + 1], p[i2 + 2]
        g0 = q[i2] - lams * rho[i2]
        gm = q[i2 + 1] - lams * rho[i2 + 1]
        g1 = q[i2 + 2] - lams * rho[i2 + 2]
        k1t = ww / p0
        k1w = g0 * th
        t2 = th + 0.5 * h * k1t
        w2 = ww + 0.5 * h * k1w
        k2t = w2 / pm
        k2w = gm * t2
        t3 = th + 0.5 * h * k2t
        w3 = ww + 0.5 * h * k2w
        k3t = w3 / pm
        k3w = gm * t3
        t4 = th + h * k3t
        w4 = ww + h * k3w
        k4t = w4 / p1
        k4w = g1 * t4
        th = th + h / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t)
        ww = ww + h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)
    if problem.right.dirichlet:
        return th
    return ww / p[-1] + problem.right.h * th


def _phase_scale(problem: SLProblem, lam: float) -> float:
    """Scale S for the Pruefer transform u = r sin(phi), p u' = r S cos(phi).

    S ~ sqrt(lam * rho * p) makes phi' nearly constant (exactly constant for
    constant coefficients), so the integrator never sees the lam-steep risers
    of the unscaled phase."""
    b = problem.coefficient_bounds()
    pm = math.sqrt(b["p_min"] * b["p_max"])
    rm = math.sqrt(b["rho_min"] * b["rho_max"])
    return math.sqrt(max(lam, 1.0) * pm * rm)


def _phase_end(problem: SLProblem, lam: float, scale: float) -> float:
    """Terminal value phi(l) of the scaled phase equation
    phi' = (S/p) cos^2(phi) + ((lam rho - q)/S) sin^2(phi),
    with tan(phi) = S u/(p u') and the left boundary condition built into
    phi(0).  Interior zeros of u sit exactly at multiples of pi."""
    n = problem.n
    h = problem.h_step
    p, q, rho = problem._p, problem._q, problem._rho
    s_inv = 1.0 / scale
    if problem.left.dirichlet:
        th = 0.0
    else:
        th = math.atan2(scale, p[0] * problem.left.h)

    def f(t, pp, gg):
        c = math.cos(t)
        s = math.sin(t)
        return scale * c * c / pp + gg * s_inv * s * s

    for i in range(n):
        i2 = 2 * i
        g0 = lam * rho[i2] - q[i2]
        gm = lam * rho[i2 + 1] - q[i2 + 1]
        g1 = lam * rho[i2 + 2] - q[i2 + 2]
        k1 = f(th, p[i2], g0)
        k2 = f(th + 0.5 * h * k1, p[i2 + 1], gm)
        k3 = f(th + 0.5 * h * k2, p[i2 + 1], gm)
        k4 = f(th + h * k3, p[i2 + 2], g1)
        th += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return th


def node_count(problem: SLProblem, lam: float) -> int:
    """Number of interior zeros on (0, l) of the left-normalized solution."""
    if not math.isfinite(lam):
        raise ValueError("lambda must be finite")
    theta_end = _phase_end(problem, lam, _phase_scale(problem, lam))
    return max(0, int(math.floor(theta_end / math.pi - 1e-10)))


def _phase_target(problem: SLProblem, n: int, scale: float) -> float:
    """phi(l) value at the n-th eigenvalue for the given right end."""
    if problem.right.dirichlet:
        return n * math.pi
    return n * math.pi - math.atan2(scale, problem._p[-1] * problem.right.h)


class BracketingError(RuntimeError):
    """Raised when the eigenvalue window cannot be made to straddle a root."""


@dataclass
class EigenBasis:
    """First eigenpairs of a Sturm-Liouville problem.

    Eigenfunctions are normalized to unit rho-weighted norm, with the sign
    fixed so that the first nonzero of {X(0), X'(0)} is positive; the n-th
    one has exactly n-1 interior sign changes.
    """

    problem: SLProblem
    eigenvalues: list[float]
    norm_constants: list[float]
    _solutions: list[ThetaSolution] = field(repr=False, default_factory=list)
    node_counts: list[int] = field(default_factory=list)

    def eigenfunction(self, n: int) -> Callable[[float], float]:
        """n-th normalized eigenfunction (n >= 1) as a callable."""
        sol = self._solutions[n - 1]
        c = self.norm_constants[n - 1]
        return lambda x: c * sol(x)

    def eigenfunction_derivative(self, n: int) -> Callable[[float], float]:
        sol = self._solutions[n - 1]
        c = self.norm_constants[n - 1]
        return lambda x: c * sol.derivative(x)

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def coefficient(self, f: Callable[[float], float], n: int) -> float:
        """rho-weighted inner product <X_n, f>."""
        xs = self.problem.grid
        rho = self.problem._rho[::2]
        fv = np.array([f(float(x)) for x in xs])
        xn = self.norm_constants[n - 1] * self._solutions[n - 1].values
        return composite_simpson(rho * fv * xn, self.problem.h_step)


def _expand_bracket(fn, lo, hi, max_expand=6):
    flo, fhi = fn(lo), fn(hi)
    width = hi - lo
    for _ in range(max_expand):
        if flo * fhi <= 0.0:
            return lo, hi, flo, fhi
        lo -= width
        hi += width
        width = hi - lo
        flo, fhi = fn(lo), fn(hi)
    if flo * fhi <= 0.0:
        return lo, hi, flo, fhi
    raise BracketingError(f"no sign change after expansion; scanned [{lo}, {hi}]")


def eigen_solve(problem: SLProblem, n_max: int, m_tol: float = 1e-10) -> EigenBasis:
    """First n_max eigenpairs.

    Each eigenvalue is located by solving Theta(l; lam) = target_n on the
    monotone phase (which brackets it between consecutive oscillation-count
    jumps), then polished on the characteristic until |m(lam)| <= m_tol
    times its local scale.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    eigs: list[float] = []
    sols: list[ThetaSolution] = []
    norms: list[float] = []
    counts: list[int] = []
    a0, b0 = problem.left_initial_data()
    rho_nodes = problem._rho[::2]
    for n in range(1, n_max + 1):
        lo, hi = problem.eigenvalue_window(n)
        lo -= 1e-6 + 1e-3 * abs(lo)
        hi += 1e-6 + 1e-3 * abs(hi)
        # one fixed scale per searched eigenvalue keeps the phase condition
        # strictly monotone in lambda across the bracket
        scale_s = _phase_scale(problem, 0.5 * (lo + hi))
        target = _phase_target(problem, n, scale_s)
        fn = lambda lam: _phase_end(problem, lam, scale_s) - target
        lo, hi, flo, fhi = _expand_bracket(fn, lo, hi)
        # bisection + secant on the monotone phase condition
        for _ in range(200):
            if hi - lo <= 1e-13 * max(1.0, abs(hi)):
                break
            mid = 0.5 * (lo + hi)
            denom = fhi - flo
            if denom != 0.0:
                sec = lo - flo * (hi - lo) / denom
                if lo + 0.05 * (hi - lo) < sec < hi - 0.05 * (hi - lo):
                    mid = sec
            fm = fn(mid)
            if fm == 0.0:
                lo = hi = mid
                break
            if flo * fm < 0.0:
                hi, fhi = mid, fm
            else:
                lo, flo = mid, fm
        lam = 0.5 * (lo + hi)
        # polish on the characteristic; the bracket starts tight around the
        # phase root and grows until it straddles the characteristic zero
        # (the two discrete routes carry different O(h^4) biases)
        win_lo, win_hi = problem.eigenvalue_window(n)
        span = max(1e-9, 1e-7 * max(1.0, abs(lam)))
        span_cap = max(1e-6, 0.25 * (win_hi - win_lo))
        g = lambda t: characteristic(problem, t)
        mlo, mhi = lam - span, lam + span
        glo, ghi = g(mlo), g(mhi)
        scale = max(1.0, abs(glo), abs(ghi))
        while glo * ghi > 0.0 and span < span_cap:
            span *= 4.0
            mlo, mhi = lam - span, lam + span
            glo, ghi = g(mlo), g(mhi)
            scale = max(scale, abs(glo), abs(ghi))
        if glo * ghi <= 0.0:
            for _ in range(80):
                if mhi - mlo <= 4.0 * math.ulp(max(abs(mlo), abs(mhi), 1.0)):
                    break
                mid = 0.5 * (mlo + mhi)
                denom = ghi - glo
                if denom != 0.0:
                    sec = mlo - glo * (mhi - mlo) / denom
                    if mlo < sec < mhi:
                        mid = sec
                gm = g(mid)
                if gm == 0.0:
                    mlo = mhi = mid
                    break
                if glo * gm < 0.0:
                    mhi, ghi = mid, gm
                else:
                    mlo, glo = mid, gm
            lam = 0.5 * (mlo + mhi)
        mval = g(lam)
        if abs(mval) > m_tol * scale:
            raise BracketingError(
                f"characteristic residual {mval:.3e} exceeds tolerance at eigenvalue {n} (lam={lam})"
            )
        sol = solve_theta(problem, lam, a0, b0)
        norm2 = composite_simpson(rho_nodes * sol.values**2, problem.h_step)
        c = 1.0 / math.sqrt(norm2)
        eigs.append(lam)
        sols.append(sol)
        norms.append(c)
        counts.append(node_count(problem, lam))
    return EigenBasis(
        problem=problem,
        eigenvalues=eigs,
        norm_constants=norms,
        _solutions=sols,
        node_counts=counts,
    )


def const_coeff_eigen(mu: float, q: float, rho: float, x1: float, x2: float, n_max: int) -> list[float]:
    """Closed-form Dirichlet eigenvalues (mu pi^2 n^2/(x2-x1)^2 + q)/rho."""
    if x2 <= x1:
        raise ValueError("need x2 > x1")
    if rho <= 0.0:
        raise ValueError("need rho > 0")
    ll = x2 - x1
    return [(mu * math.pi**2 * n**2 / ll**2 + q) / rho for n in range(1, n_max + 1)]


def rayleigh_quotient(
    problem: SLProblem,
    f: Callable[[float], float],
    fprime: Callable[[float], float] | None = None,
) -> float:
    """Energy ratio (int p f'^2 + int q f^2 + boundary terms) / int rho f^2.

    Bounds the lowest eigenvalue from above for any admissible f.  When the
    derivative is not supplied it is taken by central differences.
    """
    xs = problem.grid
    h = problem.h_step
    fv = np.array([float(f(x)) for x in xs])
    if fprime is not None:
        fd = np.array([float(fprime(x)) for x in xs])
    else:
        step = (np.finfo(float).eps) ** (1.0 / 3.0) * max(1.0, problem.l)
        fd = np.array(
            [
                (f(min(problem.l, x + step)) - f(max(0.0, x - step)))
                / ((min(problem.l, x + step)) - (max(0.0, x - step)))
                for x in xs
            ]
        )
    p = problem._p[::2]
    q = problem._q[::2]
    rho = problem._rho[::2]
    num = composite_simpson(p * fd**2, h) + composite_simpson(q * fv**2, h)
    if not problem.left.dirichlet:
        num += problem.left.h * p[0] * fv[0] ** 2
    if not problem.right.dirichlet:
        num += problem.right.h * p[-1] * fv[-1] ** 2
    den = composite_simpson(rho * fv**2, h)
    if den <= 0.0:
        raise ValueError("trial function is numerically zero")
    return float(num / den)
