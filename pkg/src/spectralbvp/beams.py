"""Bending vibrations of uniform beams: X'''' = lam X on [0, l].

Natural frequencies follow from the transcendental characteristic equations
of the end-condition pair (cosh*cos = +-1 and tan = tanh families), the mode
shapes from the matching cosh/cos combinations evaluated in overflow-safe
exponential form, and buckling loads from the first zero of the equilibrium
determinant of the compressed beam.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from ._quad import fixed_gauss
from ._rootfind import refine_root
from .specfun import ZeroFamily, zero_table

__all__ = [
    "BeamBC",
    "BeamSpectrum",
    "beam_char_roots",
    "beam_spectrum",
    "beam_mode",
    "beam_mode_norm2_endpoint",
    "beam_response",
    "buckling_critical",
    "free_free_zero_modes",
]


class BeamBC(str, Enum):
    CLAMPED_CLAMPED = "clamped_clamped"
    CLAMPED_FREE = "clamped_free"
    PINNED_PINNED = "pinned_pinned"
    CLAMPED_PINNED = "clamped_pinned"
    FREE_FREE = "free_free"


_FAMILY = {
    BeamBC.CLAMPED_CLAMPED: ZeroFamily.BEAM_CC,
    BeamBC.CLAMPED_FREE: ZeroFamily.BEAM_CF,
    BeamBC.CLAMPED_PINNED: ZeroFamily.BEAM_CP,
    BeamBC.FREE_FREE: ZeroFamily.BEAM_CC,  # same equation cosh*cos = 1
}


def beam_char_roots(bc_pair: BeamBC | str, k_max: int) -> list[float]:
    """First k_max positive roots mu_n of the characteristic equation.

    pinned_pinned is exact (mu_n = n pi); the free_free family shares
    cosh(mu) cos(mu) = 1 with clamped_clamped but additionally owns the
    doubly degenerate root mu = 0, reported by ``free_free_zero_modes``.
    """
    bc = BeamBC(bc_pair)
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    if bc == BeamBC.PINNED_PINNED:
        return [n * math.pi for n in range(1, k_max + 1)]
    table = zero_table(_FAMILY[bc], 0, k_max)
    return list(table.roots[:k_max])


@dataclass(frozen=True)
class BeamSpectrum:
    """Spectrum of a beam: dimensionless roots mu_n, stiffness parameter
    c = sqrt(E J / (rho_V S)) and length l; omega_n = c mu_n^2 / l^2."""

    bc_pair: BeamBC
    roots: tuple[float, ...]
    c: float = 1.0
    l: float = 1.0

    @property
    def zero_mode_multiplicity(self) -> int:
        return 2 if self.bc_pair == BeamBC.FREE_FREE else 0

    def omega(self, n: int) -> float:
        return self.c * self.roots[n - 1] ** 2 / self.l**2


def beam_spectrum(bc_pair: BeamBC | str, k_max: int, c: float = 1.0, l: float = 1.0) -> BeamSpectrum:
    if c <= 0.0 or l <= 0.0:
        raise ValueError("need c > 0 and l > 0")
    return BeamSpectrum(BeamBC(bc_pair), tuple(beam_char_roots(bc_pair, k_max)), c=c, l=l)


# ----------------------------------------------------------------------
# Mode shapes
# ----------------------------------------------------------------------

def _mode_raw(bc: BeamBC, mu: float, z: float) -> float:
    """Dimensionless shape at z = mu x / l, z in [0, mu], unnormalized.

    The textbook combinations (cosh -+ cos) - sigma (sinh -+ sin) are
    rearranged so every exponentially large piece is multiplied by its
    exponentially small partner before evaluation.
    """
    if bc == BeamBC.PINNED_PINNED:
        return math.sin(z)
    ep = math.exp(z - mu)   # e^z / e^mu
    em = math.exp(-z)
    emu = math.exp(-mu)
    if bc in (BeamBC.CLAMPED_CLAMPED, BeamBC.CLAMPED_PINNED):
        # sigma = (cosh mu - cos mu)/(sinh mu - sin mu) = 1 + delta
        num = emu + math.sin(mu) - math.cos(mu)
        den = 0.5 * (1.0 - emu * emu) - math.sin(mu) * emu  # (sinh mu - sin mu) e^{-mu}
        delta_scaled = num / (2.0 * den)  # delta * e^{mu} / 2
        # X = (cosh z - sigma sinh z) - cos z + sigma sin z
        #   = e^{-z}(1+sigma)/2 - delta e^{z}/2 - cos z + sigma sin z
        sigma = 1.0 + emu * num / den
        return 0.5 * em * (1.0 + sigma) - delta_scaled * ep - math.cos(z) + sigma * math.sin(z)
    if bc == BeamBC.CLAMPED_FREE:
        # sigma = (cosh mu + cos mu)/(sinh mu + sin mu) = 1 + delta
        num = emu + math.cos(mu) - math.sin(mu)
        den = 0.5 * (1.0 - emu * emu) + math.sin(mu) * emu
        delta_scaled = num / (2.0 * den)
        sigma = 1.0 + emu * num / den
        return 0.5 * em * (1.0 + sigma) - delta_scaled * ep - math.cos(z) + sigma * math.sin(z)
    if bc == BeamBC.FREE_FREE:
        # X = (cosh z + cos z) - sigma (sinh z + sin z),
        # sigma = (cosh mu - cos mu)/(sinh mu - sin mu)
        num = emu + math.sin(mu) - math.cos(mu)
        den = 0.5 * (1.0 - emu * emu) - math.sin(mu) * emu
        delta_scaled = num / (2.0 * den)
        sigma = 1.0 + emu * num / den
        return 0.5 * em * (1.0 + sigma) - delta_scaled * ep + math.cos(z) - sigma * math.sin(z)
    raise ValueError(f"unsupported end pair {bc}")


_NORM_CACHE: dict[tuple[BeamBC, int], float] = {}


def _mode_norm(bc: BeamBC, mu: float, n: int) -> float:
    """sqrt(int_0^1 X(mu s)^2 ds) of the raw dimensionless shape."""
    key = (bc, n)
    got = _NORM_CACHE.get(key)
    if got is None:
        got = math.sqrt(fixed_gauss(lambda s: _mode_raw(bc, mu, mu * s) ** 2, 0.0, 1.0, n=160))
        _NORM_CACHE[key] = got
    return got


def beam_mode(bc_pair: BeamBC | str, n: int, x: float, l: float = 1.0) -> float:
    """n-th mode shape (n >= 1), normalized to unit L2 norm on [0, l]."""
    bc = BeamBC(bc_pair)
    if n < 1:
        raise ValueError("mode index must be >= 1")
    if not 0.0 <= x <= l:
        raise ValueError("x must lie in [0, l]")
    mu = beam_char_roots(bc, n)[n - 1]
    raw = _mode_raw(bc, mu, mu * x / l)
    return raw / (_mode_norm(bc, mu, n) * math.sqrt(l))


def _mode_derivatives(bc: BeamBC, mu: float, z: float):
    """Value and first three z-derivatives of the raw shape, analytic.

    The hyperbolic part H = cosh - sigma sinh obeys H'' = H, and the trig
    part flips sign under two derivatives, so all four values come from the
    same stable exponential regrouping used by ``_mode_raw``.
    """
    if bc == BeamBC.PINNED_PINNED:
        return math.sin(z), math.cos(z), -math.sin(z), -math.cos(z)
    emu = math.exp(-mu)
    ep = math.exp(z - mu)
    em = math.exp(-z)
    if bc in (BeamBC.CLAMPED_CLAMPED, BeamBC.CLAMPED_PINNED, BeamBC.FREE_FREE):
        num = emu + math.sin(mu) - math.cos(mu)
        den = 0.5 * (1.0 - emu * emu) - math.sin(mu) * emu
    else:  # CLAMPED_FREE
        num = emu + math.cos(mu) - math.sin(mu)
        den = 0.5 * (1.0 - emu * emu) + math.sin(mu) * emu
    sigma = 1.0 + emu * num / den
    delta_scaled = num / (2.0 * den)
    h_val = 0.5 * em * (1.0 + sigma) - delta_scaled * ep
    h_der = -0.5 * em * (1.0 + sigma) - delta_scaled * ep
    t_val = -math.cos(z) + sigma * math.sin(z)
    t_der = math.sin(z) + sigma * math.cos(z)
    if bc == BeamBC.FREE_FREE:
        t_val, t_der = -t_val, -t_der
    return h_val + t_val, h_der + t_der, h_val - t_val, h_der - t_der


def beam_mode_norm2_endpoint(bc_pair: BeamBC | str, n: int) -> float:
    """Norm integral of the raw shape from its endpoint values (unit l):
    int_0^l X^2 dx = (l/4) [X^2 + X''^2 - 2 X' X''']_{z=mu}.

    Derivatives are with respect to the dimensionless argument z; the
    identity follows from differentiating the two-solution boundary bracket
    with respect to the eigenvalue, and every end condition kills the
    off-pattern boundary terms.
    """
    bc = BeamBC(bc_pair)
    mu = beam_char_roots(bc, n)[n - 1]
    v, d1, d2, d3 = _mode_derivatives(bc, mu, mu)
    return 0.25 * (v * v + d2 * d2 - 2.0 * d1 * d3)


def beam_response(
    spectrum: BeamSpectrum,
    u0: Callable[[float], float] | None,
    v0: Callable[[float], float] | None,
    n_modes: int,
    x: float,
    t: float,
) -> float:
    """Free bending vibration u(x, t) = sum q_n(t) X_n(x) from initial shape
    u0 and velocity v0, truncated at n_modes."""
    bc, l, c = spectrum.bc_pair, spectrum.l, spectrum.c
    total = 0.0
    for n in range(1, n_modes + 1):
        mode = lambda xx: beam_mode(bc, n, xx, l)
        a_n = fixed_gauss(lambda xx: u0(xx) * mode(xx), 0.0, l, n=192) if u0 is not None else 0.0
        b_n = fixed_gauss(lambda xx: v0(xx) * mode(xx), 0.0, l, n=192) if v0 is not None else 0.0
        mu = beam_char_roots(bc, n)[n - 1]
        w = c * mu * mu / (l * l)
        q = a_n * math.cos(w * t) + (b_n / w) * math.sin(w * t)
        total += q * mode(x)
    return total


def free_free_zero_modes(l: float = 1.0) -> tuple[Callable[[float], float], Callable[[float], float]]:
    """Orthonormal pair spanning the doubly degenerate zero eigenvalue of the
    fully free beam: uniform translation and rigid rotation about the
    midpoint."""
    c1 = 1.0 / math.sqrt(l)
    c2 = 2.0 * math.sqrt(3.0) / math.sqrt(l)
    return (lambda x: c1), (lambda x: c2 * (x / l - 0.5))


# ----------------------------------------------------------------------
# Buckling
# ----------------------------------------------------------------------

def _buckling_determinant(bc: BeamBC) -> tuple[Callable[[float], float], float, float]:
    """Determinant g(sigma) whose first positive root gives the critical
    load F = sigma^2 E J / l^2, plus a scan bracket for that root."""
    if bc == BeamBC.CLAMPED_CLAMPED:
        return (lambda s: 2.0 * (1.0 - math.cos(s)) - s * math.sin(s)), 5.0, 7.0
    if bc == BeamBC.PINNED_PINNED:
        return (lambda s: math.sin(s)), 2.0, 4.0
    if bc == BeamBC.CLAMPED_FREE:
        return (lambda s: math.cos(s)), 1.0, 2.0
    raise ValueError(f"buckling determinant not available for {bc}")


def buckling_critical(bc_pair: BeamBC | str, e_mod: float, j_mom: float, l: float) -> float:
    """Smallest compressive load at which the straight equilibrium admits a
    nontrivial bent neighbor."""
    if e_mod <= 0.0 or j_mom <= 0.0 or l <= 0.0:
        raise ValueError("need E, J, l > 0")
    bc = BeamBC(bc_pair)
    g, lo, hi = _buckling_determinant(bc)
    sigma = refine_root(g, lo, hi, ftol=1e-14)
    return sigma * sigma * e_mod * j_mom / (l * l)
