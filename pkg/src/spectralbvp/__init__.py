"""Spectral boundary-value-problem toolkit.

Sturm-Liouville eigensolving on an interval, self-contained special
functions with their zero tables, separation-of-variables solvers for wave
and heat problems in 1D/2D/3D separable geometries, exact eigenvalue
counting with its leading asymptotics, and the classic variational
problems, all verifiable at desk scale.
"""

__version__ = "0.1.0"

from .sturm import (
    BoundaryCondition,
    DIRICHLET,
    NEUMANN,
    EigenBasis,
    SLProblem,
    characteristic,
    const_coeff_eigen,
    eigen_solve,
    node_count,
    rayleigh_quotient,
    solve_theta,
)
from .specfun import (
    GIBBS_CONSTANT,
    SeriesEval,
    ZeroFamily,
    ZeroTable,
    assoc_legendre,
    bessel_j,
    bessel_j_eval,
    bessel_j_prime,
    bessel_n,
    bessel_zero,
    integral_sine,
    legendre,
    spherical_bessel,
    zero_table,
)
from .waves1d import (
    ExtensionMode,
    ModalSolution,
    WaveMedium,
    dalembert,
    damped_modes,
    duhamel_forced,
    extend,
    freq_green_string,
    gibbs_partial_sum,
    halfline_eval,
    string_modes,
    time_green_string,
)
from .beams import (
    BeamBC,
    BeamSpectrum,
    beam_char_roots,
    beam_mode,
    beam_response,
    beam_spectrum,
    buckling_critical,
)
from .heat1d import (
    HeatKernel,
    HeatMedium,
    heat_kernel,
    freq_green_heat,
    heat_halfline_eval,
    heat_halfline_kernel,
    heat_interval_modes,
    heat_line_eval,
)
from .geomnd import (
    BallBC,
    BallSpec,
    DiskMembrane,
    RectMembrane,
    ball_radial_modes,
    ball_solution,
    cylinder_cooling,
    disk_axisym_solution,
    disk_membrane_modes,
    expand_series,
    rect_membrane_modes,
)
from .weyl import (
    CountingFunction,
    Domain,
    WallBC,
    count_exact,
    electron_density,
    fermi_energy,
    weyl_estimate,
)
from .varsolve import (
    CycloidFit,
    TranscendentalKind,
    brachistochrone_fit,
    catenoid_alpha_star,
    el_residual,
    geodesic,
    solve_transcendental,
)
