"""Series evaluators: Struve, k-Struve, and Mittag-Leffler functions.

All four evaluators share the same truncation contract, carried by
:class:`SeriesControl`: terms are summed until the magnitude of the latest
term drops to ``rel_tol`` times the partial sum, or ``max_terms`` terms have
been taken, whichever comes first.  Partial sums are accumulated as
double-double pairs (see :mod:`frac_kinetics._compensated`), because the
interesting parameter regimes (``c > 0``, ``z < 0``) alternate in sign.

Two documented range caps keep the plain power series inside their
numerically trustworthy region (no asymptotic continuation is attempted):

* ``ML_SERIES_CAP`` — Mittag-Leffler argument, ``|z| <= 50``;
* ``STRUVE_SERIES_CAP`` — Struve / k-Struve argument, ``|x| <= 20``.

For positive integer ``alpha`` the Mittag-Leffler term ratio collapses to the
exact rational ``z / ((alpha*n + beta) ... (alpha*n + beta + alpha - 1))``,
so terms themselves are generated in double-double arithmetic.  That is what
makes the exponential identity E_1(z) = e^z hold to a few ulp across
``|z| <= 10`` despite summand magnitudes up to ~2.8e3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from ._compensated import dd_add, dd_div_double, dd_mul_double
from .errors import DomainError, PoleError, RangeError
from .kgamma import k_gamma

__all__ = [
    "SeriesControl",
    "KStruveParams",
    "struve_h",
    "k_struve",
    "mittag_leffler",
    "mittag_leffler2",
    "ML_SERIES_CAP",
    "STRUVE_SERIES_CAP",
]

ML_SERIES_CAP = 50.0
STRUVE_SERIES_CAP = 20.0


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy for every series in the package.

    ``max_terms`` mirrors the 50-term choice used for all shipped parameter
    sweeps; ``rel_tol`` tightens the cut when the tail is already negligible.
    """

    max_terms: int = 50
    rel_tol: float = 1e-14

    def __post_init__(self) -> None:
        if not (isinstance(self.max_terms, int) and self.max_terms >= 1):
            raise DomainError(f"max_terms must be a positive integer, got {self.max_terms!r}")
        if not (0.0 < self.rel_tol < 1.0):
            raise DomainError(f"rel_tol must lie in (0, 1), got {self.rel_tol!r}")


_DEFAULT_CTL = SeriesControl()


@dataclass(frozen=True)
class KStruveParams:
    """Parameter triple (nu, c, k) of the k-Struve function S^k_{nu,c}."""

    nu: float
    c: float
    k: float

    def __post_init__(self) -> None:
        for name in ("nu", "c", "k"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v)):
                raise DomainError(f"{name} must be a finite real, got {v!r}")
        if self.k <= 0.0:
            raise DomainError(f"k must be > 0, got {self.k!r}")
        if self.nu <= -1.5 * self.k:
            raise DomainError(
                f"nu must exceed -(3/2)k (got nu = {self.nu!r} with k = {self.k!r})"
            )


# --------------------------------------------------------------------------
# Mittag-Leffler


@lru_cache(maxsize=512)
def _ml_inv_gammas(alpha: float, beta: float, max_terms: int) -> tuple[float, ...]:
    """Cached 1/Gamma(alpha*n + beta) for n < max_terms.

    Pole checking happens here, across every index the truncation policy may
    reach.  Gamma overflow means the true denominator exceeds the double
    range, so the reciprocal is exactly representable as 0.0.
    """
    out = []
    for n in range(max_terms):
        arg = alpha * n + beta
        if arg <= 0.0 and arg == math.floor(arg):
            raise PoleError(
                f"alpha*n + beta = {arg!r} hits a gamma pole at n = {n} "
                f"(alpha = {alpha!r}, beta = {beta!r})"
            )
        try:
            out.append(1.0 / math.gamma(arg))
        except OverflowError:
            out.append(0.0)
    return tuple(out)


def _ml_eval(alpha: float, beta: float, z: float, ctl: SeriesControl) -> float:
    """Core series for E_{alpha,beta}(z); shared by every public caller."""
    inv_g = _ml_inv_gammas(alpha, beta, ctl.max_terms)
    sum_hi, sum_lo = 0.0, 0.0
    n_int = round(alpha)
    if alpha == n_int and n_int >= 1:
        # exact term recurrence: t_{n+1} = t_n * z / prod(alpha*n + beta + j)
        m = int(n_int)
        t_hi, t_lo = inv_g[0], 0.0
        for n in range(ctl.max_terms):
            sum_hi, sum_lo = dd_add(sum_hi, sum_lo, t_hi, t_lo)
            if abs(t_hi) <= ctl.rel_tol * abs(sum_hi):
                break
            t_hi, t_lo = dd_mul_double(t_hi, t_lo, z)
            for j in range(m):
                t_hi, t_lo = dd_div_double(t_hi, t_lo, alpha * n + beta + j)
    else:
        zn = 1.0
        for n in range(ctl.max_terms):
            term = zn * inv_g[n]
            sum_hi, sum_lo = dd_add(sum_hi, sum_lo, term)
            if abs(term) <= ctl.rel_tol * abs(sum_hi):
                break
            zn *= z
            if math.isinf(zn):
                raise OverflowError(
                    f"Mittag-Leffler series term overflow at n = {n + 1} (z = {z!r})"
                )
    return sum_hi + sum_lo


def mittag_leffler2(alpha: float, beta: float, z: float, ctl: SeriesControl | None = None) -> float:
    """Two-parameter Mittag-Leffler function E_{alpha,beta}(z).

    Truncated series sum of z**n / Gamma(alpha*n + beta) under ``ctl``.
    ``alpha`` must be positive (the series is then entire in z), ``beta`` any
    real avoiding gamma poles at the summed indices, and ``|z|`` is capped at
    ``ML_SERIES_CAP``.
    """
    if ctl is None:
        ctl = _DEFAULT_CTL
    alpha = float(alpha)
    beta = float(beta)
    z = float(z)
    if not (math.isfinite(alpha) and alpha > 0.0):
        raise DomainError(f"alpha must be > 0, got {alpha!r}")
    if not math.isfinite(beta):
        raise DomainError(f"beta must be finite, got {beta!r}")
    if not math.isfinite(z):
        raise DomainError(f"z must be finite, got {z!r}")
    if abs(z) > ML_SERIES_CAP:
        raise RangeError(f"|z| = {abs(z)!r} exceeds the series cap {ML_SERIES_CAP}")
    return _ml_eval(alpha, beta, z, ctl)


def mittag_leffler(alpha: float, z: float, ctl: SeriesControl | None = None) -> float:
    """One-parameter Mittag-Leffler function E_alpha(z) = E_{alpha,1}(z)."""
    return mittag_leffler2(alpha, 1.0, z, ctl)


# --------------------------------------------------------------------------
# Struve


@lru_cache(maxsize=256)
def _struve_coeffs(p: float, max_terms: int) -> tuple[float, ...]:
    out = []
    for m in range(max_terms):
        try:
            denom = math.gamma(m + 1.5) * math.gamma(m + p + 1.5)
        except OverflowError:
            # denominator beyond the double range: coefficient underflows to 0
            out.append(0.0)
            continue
        out.append((-1.0) ** m / denom)
    return tuple(out)


@lru_cache(maxsize=256)
def _k_struve_coeffs(nu: float, c: float, k: float, max_terms: int) -> tuple[float, ...]:
    out = []
    for r in range(max_terms):
        try:
            denom = k_gamma(r * k + nu + 1.5 * k, k) * math.gamma(r + 1.5)
        except OverflowError:
            out.append(0.0)
            continue
        out.append((-c) ** r / denom)
    return tuple(out)


def _power_series(coeffs: tuple[float, ...], half_x: float, exp0: float, ctl: SeriesControl) -> float:
    """Sum coeffs[r] * half_x**(2r + exp0), compensated, with early exit."""
    sum_hi, sum_lo = 0.0, 0.0
    for r, coef in enumerate(coeffs):
        term = coef * half_x ** (2 * r + exp0)
        sum_hi, sum_lo = dd_add(sum_hi, sum_lo, term)
        if abs(term) <= ctl.rel_tol * abs(sum_hi):
            break
    return sum_hi + sum_lo


def struve_h(p: float, x: float, ctl: SeriesControl | None = None) -> float:
    """Struve function H_p(x) by its defining power series.

    Negative ``x`` is accepted only for integer ``p`` (where the powers stay
    real); ``p`` must exceed -3/2 so no denominator crosses a pole.
    """
    if ctl is None:
        ctl = _DEFAULT_CTL
    p = float(p)
    x = float(x)
    if not (math.isfinite(p) and p > -1.5):
        raise DomainError(f"p must be a finite real > -3/2, got {p!r}")
    if not math.isfinite(x):
        raise DomainError(f"x must be finite, got {x!r}")
    if x < 0.0 and p != math.floor(p):
        raise DomainError(f"x must be >= 0 for non-integer p (x = {x!r}, p = {p!r})")
    if abs(x) > STRUVE_SERIES_CAP:
        raise RangeError(f"|x| = {abs(x)!r} exceeds the series cap {STRUVE_SERIES_CAP}")
    if x == 0.0:
        if p > -1.0:
            return 0.0
        if p < -1.0:
            raise DomainError(f"H_p diverges at x = 0 for p < -1 (p = {p!r})")
        # p == -1: the series limit is the r = 0 coefficient, 2/pi
    return _power_series(_struve_coeffs(p, ctl.max_terms), x / 2.0, p + 1.0, ctl)


def k_struve(params: KStruveParams, x: float, ctl: SeriesControl | None = None) -> float:
    """k-Struve function S^k_{nu,c}(x).

    Series sum of (-c)**r / (Gamma_k(r*k + nu + 3k/2) * Gamma(r + 3/2))
    times (x/2)**(2r + nu/k + 1); collapses to ``struve_h(nu, x)`` at
    k = 1, c = 1.
    """
    if ctl is None:
        ctl = _DEFAULT_CTL
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"x must be finite, got {x!r}")
    if x < 0.0:
        raise DomainError(f"x must be >= 0, got {x!r}")
    if x > STRUVE_SERIES_CAP:
        raise RangeError(f"x = {x!r} exceeds the series cap {STRUVE_SERIES_CAP}")
    if x == 0.0:
        ratio = params.nu / params.k
        if ratio > -1.0:
            return 0.0
        if ratio < -1.0:
            raise DomainError(
                f"k-Struve diverges at x = 0 for nu/k < -1 (nu = {params.nu!r}, k = {params.k!r})"
            )
    coeffs = _k_struve_coeffs(params.nu, params.c, params.k, ctl.max_terms)
    return _power_series(coeffs, x / 2.0, params.nu / params.k + 1.0, ctl)
