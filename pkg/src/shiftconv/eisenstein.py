"""Completed Eisenstein series at prime level, by truncated Fourier
expansion, and the zero-mode machinery built on top of them.

Two families appear, labelled by which slot carries the trivial mod-1
character: (1, conj psi) and (psi, 1).  Their expansions share the shape

    constant term  +  sum_{n != 0} coeff(n) y^(1/2) K_{s-1/2}(2 pi |n| y) e(nx),

so truncation error decays like exp(-2 pi y T) and the evaluations below
require y >= 0.3 for the documented certificate.  The product V of two
family-one series at s = 1/2+u and 1/2+v has Fourier coefficients
expressible through twisted divisor sums; its zero-mode tail pieces
C_cusp(y) have closed-form Mellin transforms as ratios of completed
L-functions, reproduced and cross-checked here.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .chars import (
    DirichletCharacter,
    char_conjugate,
    gauss_sum,
    trivial_character,
)
from .divsum import ConvolutionParams, sigma
from .errors import CertificateError, DomainError, PoleError
from .lfun import completed_l
from .special import bessel_k_many, bessel_product_mellin_closed, gamma

TWO_PI = 2.0 * math.pi
_TRIVIAL = trivial_character()

FAMILY_ONE_PSIBAR = "1,psibar"
FAMILY_PSI_ONE = "psi,1"


class Cusp(Enum):
    INFINITY = "i-infinity"
    ZERO = "zero"


@dataclass(frozen=True)
class UpperHalfPoint:
    """z = x + iy with y > 0; Fraction coordinates survive the Fricke map
    exactly."""

    x: float | Fraction
    y: float | Fraction

    def __post_init__(self):
        if not self.y > 0:
            raise DomainError("need y > 0")

    @property
    def xf(self) -> float:
        return float(self.x)

    @property
    def yf(self) -> float:
        return float(self.y)


def fricke_map(z: UpperHalfPoint, N: int) -> UpperHalfPoint:
    """sigma_0 z = -1 / (N z); exact when z has Fraction coordinates."""
    den = N * (z.x * z.x + z.y * z.y)
    return UpperHalfPoint(-z.x / den, z.y / den)


@dataclass(frozen=True)
class EisensteinFamily:
    """One of the two completed-series families, holding the mod-N
    character psi of the label."""

    label: str
    psi: DirichletCharacter

    def __post_init__(self):
        if self.label not in (FAMILY_ONE_PSIBAR, FAMILY_PSI_ONE):
            raise DomainError(f"unknown family label {self.label!r}")
        if self.psi.modulus == 1 or self.psi.is_trivial or not self.psi.is_even:
            raise DomainError("family character must be even nontrivial mod prime")


def _tail_envelope(max_coeff: float, y: float, T: int) -> float:
    # documented certificate: first omitted Bessel factor bounded by
    # sqrt(pi / (4 pi y T)) e^(-2 pi y T), conservative prefactor 8
    return 8.0 * max_coeff * math.sqrt(math.pi / (4.0 * math.pi * y * T)) * math.exp(
        -TWO_PI * y * T
    )


def eisenstein_star(
    fam: EisensteinFamily, z: UpperHalfPoint, s: complex, T: int
) -> complex:
    """Truncated Fourier expansion of the completed series E* for the
    chosen family at z, spectral parameter s."""
    s = complex(s)
    x, y = z.xf, z.yf
    if y < 0.3:
        raise CertificateError("truncation certificate requires y >= 0.3")
    psi = fam.psi
    N = psi.modulus
    psibar = char_conjugate(psi)
    if fam.label == FAMILY_ONE_PSIBAR:
        const = N**s / gauss_sum(psibar) * completed_l(2.0 * s, psibar) * y**s
        sig_exp, n_exp = 2.0 * s - 1.0, 0.5 - s
        sig_char = psi
    else:
        const = (
            N ** (1.0 - s)
            / gauss_sum(psibar)
            * completed_l(2.0 - 2.0 * s, psibar)
            * y ** (1.0 - s)
        )
        sig_exp, n_exp = 1.0 - 2.0 * s, s - 0.5
        sig_char = psi
    ns = np.arange(1, T + 1)
    bess = bessel_k_many(s - 0.5, TWO_PI * ns * y)
    total = const
    for n in ns:
        coeff = 2.0 * float(n) ** complex(n_exp) * sigma(sig_exp, int(n), sig_char)
        kv = bess[n - 1] * math.sqrt(y)
        total += coeff * kv * (
            cmath.exp(2j * math.pi * n * x) + cmath.exp(-2j * math.pi * n * x)
        )
    return complex(total)


def eisenstein_tail_bound(
    fam: EisensteinFamily, z: UpperHalfPoint, s: complex, T: int
) -> float:
    """Certified bound on the truncation error of eisenstein_star."""
    s = complex(s)
    sig_exp = 2.0 * s - 1.0 if fam.label == FAMILY_ONE_PSIBAR else 1.0 - 2.0 * s
    n_exp = 0.5 - s if fam.label == FAMILY_ONE_PSIBAR else s - 0.5
    mx = max(
        abs(2.0 * float(n) ** complex(n_exp) * sigma(sig_exp, n, fam.psi))
        for n in range(1, T + 1)
    )
    return _tail_envelope(mx * math.sqrt(z.yf), z.yf, T)


# ---------------------------------------------------------------------------
# V = E*_{1, conj chi}(z, 1/2+u) E*_{1, conj psi}(z, 1/2+v)
# ---------------------------------------------------------------------------


def _lambda_pref(p: ConvolutionParams):
    chibar = char_conjugate(p.chi)
    psibar = char_conjugate(p.psi)
    lam_u = completed_l(1.0 + 2.0 * p.u, chibar)
    lam_v = completed_l(1.0 + 2.0 * p.v, psibar)
    return chibar, psibar, lam_u, lam_v


def c_series(p: ConvolutionParams, y: float, cusp: Cusp, T: int) -> complex:
    """Truncated tail piece C_cusp(y) of the zero-mode of V (cusp i-inf)
    or of V at the other cusp (cusp zero)."""
    if y <= 0:
        raise DomainError("need y > 0")
    ns = np.arange(1, T + 1)
    ku = bessel_k_many(p.u, TWO_PI * ns * y)
    kv = bessel_k_many(p.v, TWO_PI * ns * y)
    if cusp is Cusp.INFINITY:
        coeff = np.array(
            [
                8.0 * sigma(2.0 * p.u, n, p.chi) * sigma(2.0 * p.v, n, p.psi)
                * float(n) ** (-(p.u + p.v))
                for n in range(1, T + 1)
            ]
        )
        return complex((coeff * ku * kv).sum() * y)
    chibar, psibar, _, _ = _lambda_pref(p)
    front = p.N ** (1.0 + p.u + p.v) / (gauss_sum(chibar) * gauss_sum(psibar))
    coeff = np.array(
        [
            8.0 * sigma(-2.0 * p.u, n, chibar) * sigma(-2.0 * p.v, n, psibar)
            * float(n) ** (p.u + p.v)
            for n in range(1, T + 1)
        ]
    )
    return complex(front * (coeff * ku * kv).sum() * y)


def v_fourier_coefficient(
    p: ConvolutionParams, m: int, y: float, T: int
) -> complex:
    """Fourier coefficient of V at frequency m, truncated at T.

    Only the zero mode (m = 0) and the shift mode (m = k) have displayed
    formulas; other m raise DomainError.
    """
    if y < 0.3:
        raise CertificateError("truncation certificate requires y >= 0.3")
    chibar, psibar, lam_u, lam_v = _lambda_pref(p)
    tau_cb, tau_pb = gauss_sum(chibar), gauss_sum(psibar)
    if m == 0:
        poly = (
            p.N ** (1.0 + p.u + p.v)
            / (tau_cb * tau_pb)
            * lam_u
            * lam_v
            * y ** (1.0 + p.u + p.v)
        )
        return complex(poly + c_series(p, y, Cusp.INFINITY, T))
    if m != p.k:
        raise DomainError("only the m = 0 and m = k coefficients are available")
    k = p.k
    kv_k = complex(bessel_k_many(p.v, np.array([TWO_PI * k * y]))[0])
    ku_k = complex(bessel_k_many(p.u, np.array([TWO_PI * k * y]))[0])
    t1 = (
        p.N ** (0.5 + p.u)
        / tau_cb
        * lam_u
        * 2.0
        * float(k) ** (-p.v)
        * sigma(2.0 * p.v, k, p.psi)
        * kv_k
        * y ** (1.0 + p.u)
    )
    t2 = (
        p.N ** (0.5 + p.v)
        / tau_pb
        * lam_v
        * 2.0
        * float(k) ** (-p.u)
        * sigma(2.0 * p.u, k, p.chi)
        * ku_k
        * y ** (1.0 + p.v)
    )
    ns = [n for n in range(-T, T + 1) if n not in (0, k)]
    abs_n = np.array([abs(n) for n in ns], dtype=np.float64)
    abs_nk = np.array([abs(n - k) for n in ns], dtype=np.float64)
    ku = bessel_k_many(p.u, TWO_PI * abs_n * y)
    kv = bessel_k_many(p.v, TWO_PI * abs_nk * y)
    coeff = np.array(
        [
            4.0 * sigma(2.0 * p.u, n, p.chi) * sigma(2.0 * p.v, n - k, p.psi)
            for n in ns
        ]
    )
    series = (
        coeff * abs_n ** (-p.u) * abs_nk ** (-p.v) * ku * kv
    ).sum() * y
    return complex(t1 + t2 + series)


# ---------------------------------------------------------------------------
# Mellin transforms of the zero-mode pieces and of R's k-th coefficient
# ---------------------------------------------------------------------------


def c_mellin_closed(p: ConvolutionParams, s: complex, cusp: Cusp) -> complex:
    """Closed form of integral_0^inf C_cusp(y) y^(s-1) dy/y as a ratio of
    completed L-functions; needs Re(s) > |Re(u)| + |Re(v)|."""
    s = complex(s)
    if s.real <= abs(p.u.real) + abs(p.v.real):
        raise DomainError("need Re(s) > |Re(u)| + |Re(v)|")
    u, v = p.u, p.v
    chipsi = p.chipsi
    if cusp is Cusp.INFINITY:
        num = (
            completed_l(s + u + v, _TRIVIAL)
            * completed_l(s - u + v, p.chi)
            * completed_l(s + u - v, p.psi)
            * completed_l(s - u - v, chipsi)
        )
        den = p.N ** ((s - u - v) / 2.0) * completed_l(2.0 * s, chipsi)
        return complex(num / den)
    chibar, psibar, _, _ = _lambda_pref(p)
    cpbar = char_conjugate(chipsi)
    num = (
        completed_l(s - u - v, _TRIVIAL)
        * completed_l(s + u - v, chibar)
        * completed_l(s - u + v, psibar)
        * completed_l(s + u + v, cpbar)
    )
    den = p.N ** ((s - u - v) / 2.0) * completed_l(2.0 * s, cpbar)
    front = p.N / (gauss_sum(chibar) * gauss_sum(psibar))
    return complex(front * num / den)


def c_mellin_termwise(p: ConvolutionParams, s: complex, cusp: Cusp, T: int) -> complex:
    """Mellin transform of the T-truncated C_cusp series, summed from the
    per-n closed form of the K-Bessel product transform (same truncation
    as c_series, so the two are directly comparable)."""
    s = complex(s)
    if s.real <= abs(p.u.real) + abs(p.v.real):
        raise DomainError("need Re(s) > |Re(u)| + |Re(v)|")
    total = 0.0 + 0.0j
    if cusp is Cusp.INFINITY:
        for n in range(1, T + 1):
            c = (
                8.0
                * sigma(2.0 * p.u, n, p.chi)
                * sigma(2.0 * p.v, n, p.psi)
                * float(n) ** (-(p.u + p.v))
            )
            total += c * bessel_product_mellin_closed(
                TWO_PI * n, TWO_PI * n, s, p.u, p.v
            )
        return complex(total)
    chibar, psibar, _, _ = _lambda_pref(p)
    front = p.N ** (1.0 + p.u + p.v) / (gauss_sum(chibar) * gauss_sum(psibar))
    for n in range(1, T + 1):
        c = (
            8.0
            * sigma(-2.0 * p.u, n, chibar)
            * sigma(-2.0 * p.v, n, psibar)
            * float(n) ** (p.u + p.v)
        )
        total += c * bessel_product_mellin_closed(TWO_PI * n, TWO_PI * n, s, p.u, p.v)
    return complex(front * total)


def r_fourier_coefficient(p: ConvolutionParams, y: float) -> complex:
    """k-th Fourier coefficient of the regularizer R: two K-Bessel terms
    of orders u+v+1/2 and u+v-1/2 at 2 pi k y."""
    if y <= 0:
        raise DomainError("need y > 0")
    pref1, pref2 = _r_prefactors(p)
    k = p.k
    arg = np.array([TWO_PI * k * y])
    k_plus = complex(bessel_k_many(p.u + p.v + 0.5, arg)[0])
    k_minus = complex(bessel_k_many(p.u + p.v - 0.5, arg)[0])
    t1 = (
        pref1
        * 2.0
        * float(k) ** (-(p.u + p.v) - 0.5)
        * sigma(2.0 * p.u + 2.0 * p.v + 1.0, k, p.chipsi)
        * k_plus
        * math.sqrt(y)
    )
    t2 = (
        pref2
        * 2.0
        * float(k) ** (-(p.u + p.v) + 0.5)
        * sigma(2.0 * p.u + 2.0 * p.v - 1.0, k, p.chipsi)
        * k_minus
        * math.sqrt(y)
    )
    return complex(t1 + t2)


def _r_prefactors(p: ConvolutionParams):
    chibar, psibar, lam_u, lam_v = _lambda_pref(p)
    chipsi = p.chipsi
    cpbar = char_conjugate(chipsi)
    den1 = completed_l(2.0 + 2.0 * p.u + 2.0 * p.v, cpbar)
    den2 = completed_l(2.0 - 2.0 * p.u - 2.0 * p.v, chipsi)
    if abs(den1) < 1e-12 or abs(den2) < 1e-12:
        raise PoleError("completed L-function zero in a regularizer denominator")
    pref1 = gauss_sum(cpbar) / (gauss_sum(chibar) * gauss_sum(psibar)) * lam_u * lam_v / den1
    pref2 = (
        completed_l(1.0 - 2.0 * p.u, p.chi)
        * completed_l(1.0 - 2.0 * p.v, p.psi)
        / den2
    )
    return pref1, pref2


def r_coeff_mellin_closed(p: ConvolutionParams, s: complex) -> complex:
    """Closed form of the Mellin transform of R's k-th coefficient; needs
    Re(s) > 1 + |Re(u+v)|."""
    s = complex(s)
    if s.real <= 1.0 + abs((p.u + p.v).real):
        raise DomainError("need Re(s) > 1 + |Re(u+v)|")
    pref1, pref2 = _r_prefactors(p)
    u, v, k = p.u, p.v, p.k
    t1 = (
        pref1
        * sigma(2.0 * u + 2.0 * v + 1.0, k, p.chipsi)
        / (2.0 * math.pi ** (s - 0.5) * float(k) ** (s + u + v))
        * gamma((s + u + v) / 2.0)
        * gamma((s - 1.0 - u - v) / 2.0)
    )
    t2 = (
        pref2
        * sigma(2.0 * u + 2.0 * v - 1.0, k, p.chipsi)
        / (2.0 * math.pi ** (s - 0.5) * float(k) ** (s - 1.0 + u + v))
        * gamma((s - u - v) / 2.0)
        * gamma((s - 1.0 + u + v) / 2.0)
    )
    return complex(t1 + t2)
