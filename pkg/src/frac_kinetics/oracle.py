"""Independent numerical verification of the closed-form solutions.

Three legs, none of which shares series code with :mod:`.kinetics`:

* a product-trapezoidal quadrature for the Riemann-Liouville integral
  (exact for piecewise-linear integrands against the weakly singular kernel
  ``(t - s)**(upsilon - 1)``, second-order for smooth ones);
* a marching solver for the underlying Volterra equation of the second kind,
  obtained by moving the diagonal quadrature weight to the left-hand side;
* Laplace-domain checks: the closed-form image of the THM1 solution (the
  geometric resummation of its transform series, valid for ``s > d``) and a
  truncated numerical transform with an explicit tail bound.

The quadrature weights come from integrating the hat-function interpolant
exactly:  with ``c_u = h**u / Gamma(u + 2)`` the node weights at step ``i``
are ``c_u`` on the diagonal, ``c_u * ((i-1)**(u+1) - (i-1-u) * i**u)`` at the
origin, and second differences of ``j**(u+1)`` in between.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._compensated import dd_add
from .errors import DomainError, RangeError, SingularStepError
from .kinetics import KineticProblem, SolutionTable, Variant, _thm1_rows
from .special import SeriesControl, k_struve

__all__ = [
    "QuadratureGrid",
    "ResidualReport",
    "Forcing",
    "rl_integral",
    "volterra_solve",
    "residual",
    "laplace_image",
    "laplace_numeric",
]


class Forcing(enum.Enum):
    """Forcing term of the Volterra equation (CONSTANT is a test hook)."""

    STRUVE_T = "struve_t"
    STRUVE_DT = "struve_dt"
    CONSTANT = "constant"


@dataclass(frozen=True)
class QuadratureGrid:
    """Uniform partition of [0, t_max] into n subintervals (n >= 8)."""

    n: int
    t_max: float

    def __post_init__(self) -> None:
        if not (isinstance(self.n, int) and self.n >= 8):
            raise DomainError(f"n must be an integer >= 8, got {self.n!r}")
        if not (isinstance(self.t_max, (int, float)) and math.isfinite(self.t_max) and self.t_max > 0.0):
            raise DomainError(f"t_max must be a positive finite real, got {self.t_max!r}")

    @property
    def h(self) -> float:
        return self.t_max / self.n

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.n + 1)


@dataclass(frozen=True)
class ResidualReport:
    """Defect statistics of a candidate solution in the integral equation."""

    max_defect: float
    mean_defect: float
    argmax_t: float

    def __post_init__(self) -> None:
        if self.max_defect < 0.0 or self.mean_defect < 0.0:
            raise DomainError("defect statistics must be non-negative")
        if self.mean_defect > self.max_defect * (1.0 + 1e-12) + 1e-300:
            raise DomainError("mean_defect cannot exceed max_defect")


@lru_cache(maxsize=64)
def _weight_parts(n: int, upsilon: float) -> tuple[float, np.ndarray, np.ndarray]:
    """(c_u, origin weights a0[i-1] for i = 1..n, interior kernel d[j-1] for lag j = 1..n-1).

    All scaled so that the quadrature at step i is
        h**u * c_u * (a0[i-1] * f0 + sum_j d[j-1] * f_{i-j} + f_i).
    """
    c = 1.0 / math.gamma(upsilon + 2.0)
    m = np.arange(0, n + 1, dtype=float)
    b = m ** (upsilon + 1.0)
    dker = b[2:] - 2.0 * b[1:-1] + b[:-2]
    mm = np.arange(1, n + 1, dtype=float)
    a0 = (mm - 1.0) ** (upsilon + 1.0) - (mm - 1.0 - upsilon) * mm**upsilon
    dker.setflags(write=False)
    a0.setflags(write=False)
    return c, a0, dker


def _node_values(f, grid: QuadratureGrid) -> np.ndarray:
    if callable(f):
        vals = np.array([float(f(t)) for t in grid.nodes])
    else:
        vals = np.asarray(f, dtype=float)
        if vals.shape != (grid.n + 1,):
            raise DomainError(
                f"tabulated input must have {grid.n + 1} node values, got shape {vals.shape}"
            )
    return vals


def rl_integral(f, upsilon: float, grid: QuadratureGrid) -> np.ndarray:
    """Tabulate the Riemann-Liouville integral (I^upsilon f)(t_i) on the grid.

    ``f`` may be a callable on [0, t_max] or an array of node values (so the
    output can be fed straight back in, e.g. for semigroup checks).
    """
    upsilon = float(upsilon)
    if not (math.isfinite(upsilon) and upsilon > 0.0):
        raise DomainError(f"upsilon must be > 0, got {upsilon!r}")
    vals = _node_values(f, grid)
    n = grid.n
    c, a0, dker = _weight_parts(n, upsilon)
    cu = c * grid.h**upsilon
    # interior convolution sum_{j=1..i-1} dker[j-1] * vals[i-j]; the kernel is
    # padded with a zero at lag 0, and the lag-i overshoot (which would touch
    # vals[0], handled separately by a0) is subtracted again.
    w = np.concatenate(([0.0], dker))
    conv = np.convolve(vals, w)[: n + 1]
    overshoot = np.concatenate((w, [0.0]))[: n + 1] * vals[0]
    out = np.empty(n + 1)
    out[0] = 0.0
    out[1:] = cu * (a0 * vals[0] + vals[1:] + conv[1:] - overshoot[1:])
    return out


def _forcing_values(p: KineticProblem, forcing: Forcing, grid: QuadratureGrid, ctl: SeriesControl | None) -> np.ndarray:
    if forcing is Forcing.CONSTANT:
        return np.ones(grid.n + 1)
    if forcing is Forcing.STRUVE_T:
        return np.array([k_struve(p.struve, t, ctl) for t in grid.nodes])
    dpow = p.d**p.upsilon
    return np.array([k_struve(p.struve, dpow * t**p.upsilon, ctl) for t in grid.nodes])


def _variant_forcing(p: KineticProblem) -> Forcing:
    return Forcing.STRUVE_T if p.variant is Variant.THM1 else Forcing.STRUVE_DT


def volterra_solve(
    p: KineticProblem,
    forcing: Forcing,
    grid: QuadratureGrid,
    ctl: SeriesControl | None = None,
) -> SolutionTable:
    """March the Volterra equation N = N0*F - rate**u * I^u N over the grid.

    At each node the diagonal product-trapezoidal weight is moved to the
    left-hand side and the scalar linear equation solved; everything else is
    a convolution over already-computed nodes.
    """
    F = _forcing_values(p, forcing, grid, ctl)
    n = grid.n
    c, a0, dker = _weight_parts(n, p.upsilon)
    cu = c * grid.h**p.upsilon
    lam = p.rate**p.upsilon
    denom = 1.0 + lam * cu
    if denom <= 0.0:
        raise SingularStepError(
            f"1 + rate**u * w_ii = {denom!r} <= 0; marching step is singular"
        )
    N = np.empty(n + 1)
    N[0] = p.n0 * F[0]
    for i in range(1, n + 1):
        conv = a0[i - 1] * N[0]
        if i >= 2:
            conv += np.dot(dker[: i - 1], N[i - 1 : 0 : -1])
        N[i] = (p.n0 * F[i] - lam * cu * conv) / denom
    return SolutionTable(grid.nodes, N)


def residual(p: KineticProblem, sol: SolutionTable, grid: QuadratureGrid, ctl: SeriesControl | None = None) -> ResidualReport:
    """Defect of a tabulated candidate in the variant's integral equation.

    defect_i = N_i - N0*F(t_i) + rate**u * (I^u N)(t_i), with the forcing
    picked by the problem's variant.
    """
    if sol.t.shape != grid.nodes.shape or not np.array_equal(sol.t, grid.nodes):
        raise DomainError("solution table abscissae do not match the grid nodes")
    F = _forcing_values(p, _variant_forcing(p), grid, ctl)
    integ = rl_integral(sol.n, p.upsilon, grid)
    defect = np.abs(sol.n - p.n0 * F + p.rate**p.upsilon * integ)
    imax = int(np.argmax(defect))
    return ResidualReport(
        max_defect=float(defect[imax]),
        mean_defect=float(defect.mean()),
        argmax_t=float(sol.t[imax]),
    )


def laplace_image(p: KineticProblem, s: float, ctl: SeriesControl | None = None) -> float:
    """Closed-form Laplace transform of the THM1 solution, valid for s > d.

    Term-wise transform of the solution series with the inner binomial tail
    resummed geometrically:
        sum_r coef_r * 2**(-e_r) * Gamma(e_r + 1) * s**-(e_r+1) / (1 + d**u s**-u).
    """
    if p.variant is not Variant.THM1:
        raise DomainError(f"laplace_image requires variant THM1, got {p.variant}")
    if ctl is None:
        ctl = SeriesControl()
    s = float(s)
    if not (math.isfinite(s) and s > 0.0):
        raise DomainError(f"s must be a positive finite real, got {s!r}")
    if s <= p.d:
        raise RangeError(
            f"s = {s!r} is outside the geometric convergence region (requires s > d = {p.d!r})"
        )
    st = p.struve
    rows = _thm1_rows(p.n0, p.upsilon, st.nu, st.c, st.k, ctl.max_terms)
    sum_hi, sum_lo = 0.0, 0.0
    for coef, e, _beta in rows:
        term = coef * 0.5**e * s ** (-(e + 1.0))
        sum_hi, sum_lo = dd_add(sum_hi, sum_lo, term)
        if abs(term) <= ctl.rel_tol * abs(sum_hi):
            break
    return (sum_hi + sum_lo) / (1.0 + p.d**p.upsilon * s ** (-p.upsilon))


def laplace_numeric(f, s: float, grid: QuadratureGrid) -> tuple[float, float]:
    """Truncated numerical Laplace transform over [0, t_max] by Simpson's rule.

    ``f`` is a callable or node-value array; ``grid.n`` must be even.
    Returns ``(value, tail_bound)`` where the bound ``exp(-s*t_max)*max|f|``
    estimates the discarded tail and should be added to any error budget.
    """
    s = float(s)
    if not (math.isfinite(s) and s > 0.0):
        raise DomainError(f"s must be a positive finite real, got {s!r}")
    if grid.n % 2 != 0:
        raise DomainError(f"Simpson quadrature requires an even n, got {grid.n}")
    vals = _node_values(f, grid)
    integrand = np.exp(-s * grid.nodes) * vals
    w = np.ones(grid.n + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    value = grid.h / 3.0 * float(np.dot(w, integrand))
    tail = math.exp(-s * grid.t_max) * float(np.abs(vals).max())
    return value, tail
