"""Main-term and exponent formulas, spectral-piece closed forms, growth
fits on vertical lines, and the Perron partial-sum demonstration.

The truncated two-sided L-series L* recovers the partial sum through a
vertical contour integral (Perron); its closed-form companions here are
the regularizer piece (two Gamma-Lambda terms, bounded on vertical
lines), the polynomial-constant-term piece (growing like |t|^(1/2+Re u)
+ |t|^(1/2+Re v)), and the continuous-spectrum piece (an omega-integral
of completed-L ratios, growing like |t|^(1+eps)).  The discrete piece
needs Maass data and is out of scope.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import backend
from .chars import char_conjugate, gauss_sum, trivial_character
from .divsum import ConvolutionParams, divisors, sieve_sigma, sigma
from .errors import AccuracyError, DomainError, PoleError
from .lfun import completed_l, dirichlet_l
from .special import gamma

_TRIVIAL = trivial_character()


# ---------------------------------------------------------------------------
# exponents and the main term
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExponentReport:
    """Exponent bookkeeping of the main asymptotic; field types follow the
    inputs (Fractions stay Fractions, floats stay floats)."""

    alpha: object
    main_exp: object
    error_exp: object
    ratio: object
    gap: object
    in_range: bool


def exponents_from_real_parts(ru, rv) -> ExponentReport:
    """Contour-balance exponent alpha and derived main/error exponents
    from the real parts of u and v; exact under Fraction inputs."""
    alpha = (1 + 2 * abs(ru) + 2 * abs(rv)) / (3 + abs(ru + rv) + abs(ru - rv))
    main_exp = 1 + abs(ru + rv)
    error_exp = 1 + abs(ru) + abs(rv) - alpha
    return ExponentReport(
        alpha=alpha,
        main_exp=main_exp,
        error_exp=error_exp,
        ratio=error_exp / main_exp,
        gap=main_exp - error_exp,
        in_range=bool(abs(ru) + abs(rv) < 0.5),
    )


def theorem_exponents(u: complex, v: complex) -> ExponentReport:
    return exponents_from_real_parts(complex(u).real, complex(v).real)


def main_term(p: ConvolutionParams, X: float) -> complex:
    """The two explicit X^(1-u-v) and X^(1+u+v) terms of the asymptotic."""
    u, v, k = p.u, p.v, p.k
    if abs(1.0 - u - v) < 1e-12 or abs(1.0 + u + v) < 1e-12:
        raise PoleError("main term undefined at u+v = +-1")
    chipsi = p.chipsi
    cpbar = char_conjugate(chipsi)
    chibar = char_conjugate(p.chi)
    psibar = char_conjugate(p.psi)
    l_minus = dirichlet_l(2.0 - 2.0 * u - 2.0 * v, chipsi)
    l_plus = dirichlet_l(2.0 + 2.0 * u + 2.0 * v, cpbar)
    if abs(l_minus) < 1e-12 or abs(l_plus) < 1e-12:
        raise PoleError("L-value zero in a main-term denominator")
    t1 = (
        dirichlet_l(1.0 - 2.0 * u, p.chi)
        * dirichlet_l(1.0 - 2.0 * v, p.psi)
        / l_minus
        * sigma(-1.0 + 2.0 * u + 2.0 * v, k, chipsi)
        * X ** (1.0 - u - v)
        / (1.0 - u - v)
    )
    t2 = (
        gauss_sum(cpbar)
        / (gauss_sum(chibar) * gauss_sum(psibar))
        * dirichlet_l(1.0 + 2.0 * u, chibar)
        * dirichlet_l(1.0 + 2.0 * v, psibar)
        / l_plus
        * sigma(1.0 + 2.0 * u + 2.0 * v, k, chipsi)
        / float(k) ** (1.0 + 2.0 * u + 2.0 * v)
        * X ** (1.0 + u + v)
        / (1.0 + u + v)
    )
    return complex(t1 + t2)


def main_term_plus_coefficient(p: ConvolutionParams) -> complex:
    """Coefficient of X^(1+u+v)/(1+u+v) in the main term."""
    chipsi = p.chipsi
    cpbar = char_conjugate(chipsi)
    chibar = char_conjugate(p.chi)
    psibar = char_conjugate(p.psi)
    return complex(
        gauss_sum(cpbar)
        / (gauss_sum(chibar) * gauss_sum(psibar))
        * dirichlet_l(1.0 + 2.0 * p.u, chibar)
        * dirichlet_l(1.0 + 2.0 * p.v, psibar)
        / dirichlet_l(2.0 + 2.0 * p.u + 2.0 * p.v, cpbar)
        * sigma(1.0 + 2.0 * p.u + 2.0 * p.v, p.k, chipsi)
        / float(p.k) ** (1.0 + 2.0 * p.u + 2.0 * p.v)
    )


# ---------------------------------------------------------------------------
# closed-form spectral pieces
# ---------------------------------------------------------------------------


def _gamma_quad(p: ConvolutionParams, s: complex) -> complex:
    u, v = p.u, p.v
    return (
        gamma((s + u + v) / 2.0)
        * gamma((s + u - v) / 2.0)
        * gamma((s - u + v) / 2.0)
        * gamma((s - u - v) / 2.0)
    )


def gamma_prefactor(p: ConvolutionParams, s: complex) -> complex:
    """The Gamma-quotient that multiplies the L-series in the Mellin
    identity: Gamma-product / (2 pi^s Gamma(s))."""
    s = complex(s)
    return _gamma_quad(p, s) / (2.0 * math.pi**s * gamma(s))


def _r_lambda_prefactors(p: ConvolutionParams):
    chibar = char_conjugate(p.chi)
    psibar = char_conjugate(p.psi)
    chipsi = p.chipsi
    cpbar = char_conjugate(chipsi)
    pref1 = (
        gauss_sum(cpbar)
        / (gauss_sum(chibar) * gauss_sum(psibar))
        * completed_l(1.0 + 2.0 * p.u, chibar)
        * completed_l(1.0 + 2.0 * p.v, psibar)
        / completed_l(2.0 + 2.0 * p.u + 2.0 * p.v, cpbar)
    )
    pref2 = (
        completed_l(1.0 - 2.0 * p.u, p.chi)
        * completed_l(1.0 - 2.0 * p.v, p.psi)
        / completed_l(2.0 - 2.0 * p.u - 2.0 * p.v, chipsi)
    )
    return pref1, pref2


def lk_R(p: ConvolutionParams, s: complex) -> complex:
    """Regularizer piece: two Gamma-Lambda terms, bounded on vertical
    lines; poles on the real axis at s = 1 +- (u+v) - 2m."""
    s = complex(s)
    u, v, k = p.u, p.v, p.k
    pref1, pref2 = _r_lambda_prefactors(p)
    quad = _gamma_quad(p, s)
    t1 = (
        pref1
        * math.sqrt(math.pi)
        * sigma(2.0 * u + 2.0 * v + 1.0, k, p.chipsi)
        / float(k) ** (s + u + v)
        * gamma((s + u + v) / 2.0)
        * gamma((s - 1.0 - u - v) / 2.0)
        * gamma(s)
        / quad
    )
    t2 = (
        pref2
        * math.sqrt(math.pi)
        * sigma(2.0 * u + 2.0 * v - 1.0, k, p.chipsi)
        / float(k) ** (s - 1.0 + u + v)
        * gamma((s - u - v) / 2.0)
        * gamma((s - 1.0 + u + v) / 2.0)
        * gamma(s)
        / quad
    )
    return complex(t1 + t2)


def lk_R_residue_at_plus(p: ConvolutionParams) -> complex:
    """Residue of lk_R at its rightmost pole s0 = 1 + u + v, computed
    analytically from Res Gamma((s - s0)/2) = 2."""
    s0 = 1.0 + p.u + p.v
    pref1, _ = _r_lambda_prefactors(p)
    return complex(
        pref1
        * math.sqrt(math.pi)
        * sigma(2.0 * p.u + 2.0 * p.v + 1.0, p.k, p.chipsi)
        / float(p.k) ** (s0 + p.u + p.v)
        * 2.0
        * gamma((s0 + p.u + p.v) / 2.0)
        * gamma(s0)
        / _gamma_quad(p, s0)
    )


def residue_main_term_link(p: ConvolutionParams) -> tuple[complex, complex]:
    """(coefficient reconstructed from the lk_R residue, coefficient read
    off the main term).  The Perron normalization 1/(4 pi i) against the
    residue theorem's 2 pi i halves the residue."""
    return lk_R_residue_at_plus(p) / 2.0, main_term_plus_coefficient(p)


def lk_V(p: ConvolutionParams, s: complex) -> complex:
    """Polynomial-constant-term piece (two terms, signs included)."""
    s = complex(s)
    u, v, k = p.u, p.v, p.k
    chibar = char_conjugate(p.chi)
    psibar = char_conjugate(p.psi)
    quad = _gamma_quad(p, s)
    sqn = math.sqrt(p.N)
    t1 = (
        -gauss_sum(p.chi)
        / sqn
        * completed_l(1.0 + 2.0 * u, chibar)
        * p.N**u
        * sigma(2.0 * v, k, p.psi)
        / (math.pi**u * float(k) ** (s + u + v))
        * gamma((s + u + v) / 2.0)
        * gamma((s + u - v) / 2.0)
        * gamma(s)
        / quad
    )
    t2 = (
        -gauss_sum(p.psi)
        / sqn
        * completed_l(1.0 + 2.0 * v, psibar)
        * p.N**v
        * sigma(2.0 * u, k, p.chi)
        / (math.pi**v * float(k) ** (s + u + v))
        * gamma((s + u + v) / 2.0)
        * gamma((s - u + v) / 2.0)
        * gamma(s)
        / quad
    )
    return complex(t1 + t2)


@dataclass(frozen=True)
class SpectralTruncation:
    """omega-integral layout: |omega| <= omega_max, nodes_per_unit per
    unit omega; the tail beyond omega_max sits under the exp(-pi
    (omega - |t|) / 2) envelope."""

    omega_max: float
    nodes_per_unit: int = 20

    def __post_init__(self):
        if self.omega_max < 0 or self.nodes_per_unit < 1:
            raise DomainError("need omega_max >= 0 and nodes_per_unit >= 1")


def default_truncation(s: complex) -> SpectralTruncation:
    return SpectralTruncation(abs(complex(s).imag) + 30.0, 20)


def _cont_integrand(p: ConvolutionParams, s: complex, ws: np.ndarray) -> np.ndarray:
    u, v = p.u, p.v
    chipsi = p.chipsi
    cpbar = char_conjugate(chipsi)
    iw = 1j * ws
    lam = (
        completed_l(0.5 + iw + u + v, _TRIVIAL)
        * completed_l(0.5 + iw - u + v, p.chi)
        * completed_l(0.5 + iw + u - v, p.psi)
        * completed_l(0.5 + iw - u - v, chipsi)
    )
    den = completed_l(1.0 + 2.0 * iw, chipsi) * completed_l(1.0 - 2.0 * iw, cpbar)
    sig = np.zeros_like(iw)
    for d in divisors(p.k):
        sig = sig + chipsi(d) * np.exp(-2.0 * iw * math.log(d))
    front = gauss_sum(cpbar) / math.sqrt(p.N)
    npow = np.exp(math.log(p.N) * (0.5 - iw - u - v) / 2.0)
    kpow = np.exp(math.log(p.k) * (s - 0.5 - iw))
    gpair = np.array(
        [
            gamma((s - 0.5 + 1j * w) / 2.0) * gamma((s - 0.5 - 1j * w) / 2.0)
            for w in ws
        ]
    )
    gfac = gpair * gamma(s) / _gamma_quad(p, s)
    return lam / den * front * sig / (2.0 * math.sqrt(math.pi) * npow * kpow) * gfac


def _trapz(vals: np.ndarray, dx: float) -> complex:
    if vals.shape[0] < 2:
        return 0.0 + 0.0j
    return complex(dx * (vals.sum() - 0.5 * (vals[0] + vals[-1])))


def lk_cont(
    p: ConvolutionParams, s: complex, tr: SpectralTruncation | None = None
) -> complex:
    """Continuous-spectrum piece by trapezoid over |omega| <= omega_max,
    self-checked against the doubled range before returning.

    Nonvanishing of the completed L-factors on the real omega line is
    assumed (standard for nontrivial chi psi); a near-zero denominator
    raises PoleError.
    """
    s = complex(s)
    if s.real <= 0.5:
        raise DomainError("need Re(s) > 1/2")
    tr = tr or default_truncation(s)
    if tr.omega_max == 0.0:
        return 0.0 + 0.0j
    n = int(math.ceil(tr.omega_max * tr.nodes_per_unit))
    dx = tr.omega_max / n
    ws = dx * np.arange(-2 * n, 2 * n + 1)
    vals = _cont_integrand(p, s, ws)
    if not np.all(np.isfinite(vals)):
        raise PoleError("continuous-piece integrand not finite on the omega grid")
    inner = _trapz(vals[n : 3 * n + 1], dx)
    outer = _trapz(vals, dx)
    band = np.abs(vals[n : 2 * n + 1])  # omega in [-omega_max, -omega_max/2] band
    env_c = 16.0 * tr.omega_max * float(band.max()) + 1e-300
    bound = math.exp(-math.pi * (tr.omega_max - abs(s.imag)) / 2.0) * env_c
    if abs(outer - inner) > max(bound, 1e-13 * abs(outer)):
        raise AccuracyError(
            f"omega-doubling self-check moved lk_cont by {abs(outer - inner):.3e} "
            f"(> envelope {bound:.3e})"
        )
    return outer


# ---------------------------------------------------------------------------
# log-log fits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    rms_residual: float
    points: tuple

    def refit(self) -> "FitResult":
        xs = np.array([q[0] for q in self.points])
        ys = np.array([q[1] for q in self.points])
        return fit_loglog_points(xs, ys)


def fit_loglog_points(log_x: np.ndarray, log_y: np.ndarray) -> FitResult:
    if log_x.shape[0] < 3:
        raise DomainError("need at least 3 points to fit")
    slope, intercept = np.polyfit(log_x, log_y, 1)
    resid = log_y - (slope * log_x + intercept)
    return FitResult(
        float(slope),
        float(intercept),
        float(np.sqrt(np.mean(resid**2))),
        tuple((float(a), float(b)) for a, b in zip(log_x, log_y)),
    )


def fit_loglog(xs: Sequence[float], values: Sequence[float]) -> FitResult:
    """Least-squares slope of log|value| against log x, dropping exact
    zeros (they carry no logarithm)."""
    keep_x, keep_y = [], []
    dropped = 0
    for x, val in zip(xs, values):
        if val == 0.0:
            dropped += 1
            continue
        keep_x.append(math.log(x))
        keep_y.append(math.log(abs(val)))
    if dropped:
        import logging

        logging.getLogger(__name__).info("fit_loglog dropped %d zero points", dropped)
    return fit_loglog_points(np.array(keep_x), np.array(keep_y))


def residual_fit(p: ConvolutionParams, X_grid: Sequence[int], tables=None) -> FitResult:
    """Slope of log |shifted_sum(X) - main_term(X)| against log X."""
    from .divsum import shifted_sum_grid

    Xs = [int(x) for x in X_grid]
    if len(Xs) < 4:
        raise DomainError("need at least 4 grid points")
    if Xs[-1] < 100 * Xs[0]:
        raise DomainError("grid must span at least two decades")
    sums = shifted_sum_grid(p, Xs, tables=tables)
    residuals = [abs(sv - main_term(p, x)) for sv, x in zip(sums, Xs)]
    return fit_loglog(Xs, residuals)


_GROWTH_COMPONENTS = ("R", "V", "cont", "lk_star")


def vertical_growth_fit(
    component: str,
    p: ConvolutionParams,
    sigma_line: float,
    t_grid: Sequence[float],
    series_T: int = 20000,
) -> FitResult:
    """Fitted growth exponent of a spectral piece along Re(s) = sigma."""
    if component not in _GROWTH_COMPONENTS:
        raise DomainError(f"unknown component {component!r}")
    if component == "lk_star":
        from .divsum import lk_star

        a = sieve_sigma(2.0 * p.u, p.chi, series_T, allow_large=True)
        b = sieve_sigma(2.0 * p.v, p.psi, series_T + p.k, allow_large=True)
    ts, vals, dropped = [], [], 0
    for t in t_grid:
        s = complex(sigma_line, t)
        try:
            if component == "R":
                val = lk_R(p, s)
            elif component == "V":
                val = lk_V(p, s)
            elif component == "cont":
                val = lk_cont(p, s)
            else:
                val = lk_star(p, s, series_T, tables=(a, b)).value
        except PoleError:
            dropped += 1
            continue
        ts.append(t)
        vals.append(val)
    if dropped > 0.3 * len(list(t_grid)):
        raise DomainError(f"{dropped} of {len(list(t_grid))} nodes dropped at poles")
    return fit_loglog(ts, vals)


# ---------------------------------------------------------------------------
# Perron demonstration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PerronResult:
    integral: complex
    sum4pii: complex
    difference: complex

    @property
    def abs_difference(self) -> float:
        return abs(self.difference)


def _lk_star_arrays(p: ConvolutionParams, series_T: int):
    a = sieve_sigma(2.0 * p.u, p.chi, series_T, allow_large=True)
    b = sieve_sigma(2.0 * p.v, p.psi, series_T + p.k, allow_large=True)
    n = np.arange(1, series_T + 1)
    coeff_pos = a.values[n] * b.values[np.abs(n - p.k)]
    if p.k <= series_T:
        coeff_pos[p.k - 1] = 0.0
    coeff_neg = a.values[n] * b.values[n + p.k]
    coeffs = np.concatenate([coeff_pos, coeff_neg])
    logn = np.concatenate([np.log(n), np.log(n)]).astype(np.float64)
    return coeffs, logn


def perron_contour_values(
    p: ConvolutionParams, X: float, T: float, series_T: int, dt: float = 0.05
):
    """Node grid on the line Re(s) = 1 + |Re u| + |Re v| + eps and the
    integrand lk_star(s) X^s / s there, evaluated through one sweep."""
    sigma0 = 1.0 + abs(p.u.real) + abs(p.v.real) + p.epsilon
    n = int(math.ceil(T / dt))
    dt = T / n
    ts = dt * np.arange(-n, n + 1)
    coeffs, logn = _lk_star_arrays(p, series_T)
    w_shift = p.u + p.v  # |n|^-(s+u+v)
    lstar = backend.dirichlet_sweep(
        coeffs, logn, sigma0 + w_shift.real, ts + w_shift.imag
    )
    svals = sigma0 + 1j * ts
    integrand = lstar * np.exp(svals * math.log(X)) / svals
    return ts, integrand, dt


def perron_demo(
    p: ConvolutionParams, X: float, T: float, series_T: int = 30000
) -> PerronResult:
    """Contour integral of lk_star(s) X^s / s against 4 pi i times the
    partial sum; X must be non-integer to dodge the boundary term."""
    from .divsum import shifted_sum

    if float(X) == int(X):
        raise DomainError("X must be non-integer")
    if series_T <= X:
        raise DomainError("series_T must exceed X")
    ts, integrand, dt = perron_contour_values(p, X, T, series_T)
    integral = _trapz(integrand, dt) * 1j
    psum = shifted_sum(p, int(math.floor(X)))
    target = 4.0 * math.pi * 1j * psum
    return PerronResult(integral, target, integral - target)


def perron_ladder(
    p: ConvolutionParams, X: float, Ts: Sequence[float], series_T: int = 30000
) -> list[PerronResult]:
    """perron_demo at several contour heights from one integrand sweep;
    every T must be a node of the finest grid."""
    from .divsum import shifted_sum

    if float(X) == int(X):
        raise DomainError("X must be non-integer")
    Ts = sorted(float(t) for t in Ts)
    t_max = Ts[-1]
    ts, integrand, dt = perron_contour_values(p, X, t_max, series_T)
    mid = (integrand.shape[0] - 1) // 2
    psum = shifted_sum(p, int(math.floor(X)))
    target = 4.0 * math.pi * 1j * psum
    out = []
    for T in Ts:
        m = int(round(T / dt))
        if abs(m * dt - T) > 1e-9:
            raise DomainError(f"T={T} is not on the dt={dt} grid")
        integral = _trapz(integrand[mid - m : mid + m + 1], dt) * 1j
        out.append(PerronResult(integral, target, integral - target))
    return out
