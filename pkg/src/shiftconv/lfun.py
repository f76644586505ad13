"""Hurwitz zeta, Dirichlet L-functions, and their completed forms.

Continuation is by Euler-Maclaurin on the Hurwitz zeta decomposition
L(s, chi) = N^(-s) sum_a chi(a) zeta(s, a/N), never by the functional
equation itself, so the functional-equation defect below is a genuine
two-sided check.

The completed function Lambda(w, chi) = pi^(-w/2) N^(w/2) Gamma(w/2)
L(w, chi) is entire for even nontrivial primitive chi: the Gamma poles
at w = 0, -2, -4, ... meet trivial zeros of L.  Those removable points
(and the removable w = -2m of the completed zeta) are evaluated by a
Richardson-extrapolated ring average; the true poles of the completed
zeta at w = 0, 1 raise PoleError.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .chars import DirichletCharacter, char_conjugate, gauss_sum
from .errors import DomainError, PoleError
from .special import gamma

# B_2 .. B_30 as exact rationals, converted once.
_BERNOULLI = tuple(
    float(Fraction(p, q))
    for p, q in (
        (1, 6),
        (-1, 30),
        (1, 42),
        (-1, 30),
        (5, 66),
        (-691, 2730),
        (7, 6),
        (-3617, 510),
        (43867, 798),
        (-174611, 330),
        (854513, 138),
        (-236364091, 2730),
        (8553103, 6),
        (-23749461029, 870),
        (8615841276005, 14322),
    )
)

_FACTORIALS = [1.0]
for _i in range(1, 32):
    _FACTORIALS.append(_FACTORIALS[-1] * _i)


@dataclass(frozen=True)
class EulerMaclaurinSpec:
    """Euler-Maclaurin layout: direct terms up to `shift`, then the tail
    integral plus `correction_order`/2 Bernoulli corrections."""

    shift: int = 40
    correction_order: int = 20

    def __post_init__(self):
        if self.shift < 10:
            raise DomainError("shift must be >= 10")
        if self.correction_order % 2 or not 2 <= self.correction_order <= 30:
            raise DomainError("correction_order must be even, in [2, 30]")

    def error_bound(self, s: complex, a: float) -> float:
        """Magnitude of the first omitted Bernoulli correction."""
        k = self.correction_order
        m = self.shift + a
        poch = 1.0
        for i in range(k + 1):
            poch *= abs(s + i)
        b = abs(_BERNOULLI[k // 2]) / _FACTORIALS[k + 2]
        return 2.0 * b * poch * m ** (-(s.real + k + 1))


_DEFAULT_EM = EulerMaclaurinSpec()


def _cexpm1(w):
    """exp(w) - 1 for complex arrays, stable for small |w|."""
    re, im = w.real, w.imag
    return (
        np.expm1(re) * np.cos(im)
        - 2.0 * np.sin(im / 2.0) ** 2
        + 1j * np.exp(re) * np.sin(im)
    )


def _hurwitz_core(s, a: float, spec: EulerMaclaurinSpec, deflate: bool):
    """Euler-Maclaurin sum over a complex ndarray s.

    With deflate=True returns zeta(s, a) - 1/(s-1), finite at s = 1.
    """
    shape = s.shape
    s = np.atleast_1d(s)
    m = spec.shift
    base = np.log(np.arange(m) + a)
    direct = np.exp(-np.multiply.outer(s, base)).sum(axis=-1)
    ltop = np.log(m + a)
    if deflate:
        # ((M+a)^(1-s) - 1) / (s - 1), continuous through s = 1
        num = _cexpm1((1.0 - s) * ltop)
        den = np.where(np.abs(s - 1.0) < 1e-12, 1.0, s - 1.0)
        tail = np.where(np.abs(s - 1.0) < 1e-12, -ltop, num / den)
    else:
        tail = np.exp((1.0 - s) * ltop) / (s - 1.0)
    total = direct + tail + 0.5 * np.exp(-s * ltop)
    poch = s.copy()  # (s)(s+1)...(s+2j-2), built incrementally
    for j in range(1, spec.correction_order // 2 + 1):
        if j > 1:
            poch = poch * (s + (2 * j - 3)) * (s + (2 * j - 2))
        total = total + (
            _BERNOULLI[j - 1]
            / _FACTORIALS[2 * j]
            * poch
            * np.exp(-(s + (2 * j - 1)) * ltop)
        )
    return total.reshape(shape)


def hurwitz_zeta(s, a: float, spec: EulerMaclaurinSpec | None = None):
    """Analytic continuation of sum_{n>=0} (n+a)^(-s) for a in (0, 1].

    Accepts a complex scalar or ndarray for s; raises PoleError within
    1e-8 of s = 1.
    """
    spec = spec or _DEFAULT_EM
    if not 0.0 < a <= 1.0:
        raise DomainError(f"a must lie in (0, 1], got {a}")
    arr = np.asarray(s, dtype=np.complex128)
    if np.any(np.abs(arr - 1.0) < 1e-8):
        raise PoleError("hurwitz_zeta pole at s = 1")
    out = _hurwitz_core(arr, a, spec, deflate=False)
    return complex(out) if np.asarray(s).ndim == 0 else out


def hurwitz_zeta_deflated(s, a: float, spec: EulerMaclaurinSpec | None = None):
    """zeta(s, a) - 1/(s-1): entire in s, stable through s = 1."""
    spec = spec or _DEFAULT_EM
    if not 0.0 < a <= 1.0:
        raise DomainError(f"a must lie in (0, 1], got {a}")
    arr = np.asarray(s, dtype=np.complex128)
    out = _hurwitz_core(arr, a, spec, deflate=True)
    return complex(out) if np.asarray(s).ndim == 0 else out


def zeta(s, spec: EulerMaclaurinSpec | None = None):
    return hurwitz_zeta(s, 1.0, spec)


def dirichlet_l(s, chi: DirichletCharacter, spec: EulerMaclaurinSpec | None = None):
    """L(s, chi) = N^(-s) sum_a chi(a) zeta(s, a/N); the zeta function for
    the character mod 1.  Pole (s = 1) only for the trivial character."""
    spec = spec or _DEFAULT_EM
    arr = np.asarray(s, dtype=np.complex128)
    scalar = np.asarray(s).ndim == 0
    n = chi.modulus
    if n == 1:
        out = hurwitz_zeta(arr, 1.0, spec)
        return complex(out) if scalar else out
    near_pole = np.abs(arr - 1.0) < 0.05
    total = np.zeros_like(arr)
    for a in range(1, n):
        c = chi(a)
        if np.any(near_pole):
            # the deflation terms cancel exactly: sum_a chi(a) = 0
            total = total + c * _hurwitz_core(arr, a / n, spec, deflate=True)
        else:
            total = total + c * _hurwitz_core(arr, a / n, spec, deflate=False)
    out = np.exp(-arr * np.log(n)) * total
    return complex(out) if scalar else out


_RING_RADIUS = 0.06


def _completed_raw(w: complex, chi: DirichletCharacter, spec) -> complex:
    n = chi.modulus
    val = gamma(w / 2.0) * dirichlet_l(w, chi, spec)
    return np.pi ** (-w / 2.0) * n ** (w / 2.0) * val


def _ring_average(w: complex, chi, spec, radius: float) -> complex:
    pts = (w + radius, w - radius, w + 1j * radius, w - 1j * radius)
    return sum(_completed_raw(p, chi, spec) for p in pts) / 4.0


def completed_l(s, chi: DirichletCharacter, spec: EulerMaclaurinSpec | None = None):
    """Completed L-function Lambda(w, chi).

    Even nontrivial chi: entire; Gamma-pole points are removable and
    evaluated by ring-average extrapolation.  Trivial character mod 1:
    the completed zeta, with PoleError at w = 0 and w = 1 and removable
    points at the negative even integers.  Vectorized over ndarray s.
    """
    spec = spec or _DEFAULT_EM
    arr = np.atleast_1d(np.asarray(s, dtype=np.complex128))
    scalar = np.asarray(s).ndim == 0
    trivial = chi.modulus == 1
    if trivial and np.any((np.abs(arr) < 1e-8) | (np.abs(arr - 1.0) < 1e-8)):
        raise PoleError("completed zeta pole at w = 0 or w = 1")
    gamma_pole = (
        (arr.imag == 0.0)
        & (arr.real <= (0.5 if not trivial else -1.5))
        & (np.abs(arr.real / 2.0 - np.round(arr.real / 2.0)) < 1e-12)
    )
    out = np.empty_like(arr)
    plain = np.nonzero(~gamma_pole)[0]
    if plain.shape[0]:
        w = arr[plain]
        gam = np.array([gamma(complex(x) / 2.0) for x in w])
        out[plain] = (
            np.pi ** (-w / 2.0)
            * float(chi.modulus) ** (w / 2.0)
            * gam
            * dirichlet_l(w, chi, spec)
        )
    for i in np.nonzero(gamma_pole)[0]:
        w0 = complex(arr[i])
        a1 = _ring_average(w0, chi, spec, _RING_RADIUS)
        a2 = _ring_average(w0, chi, spec, _RING_RADIUS / np.sqrt(2.0))
        out[i] = (4.0 * a2 - a1) / 3.0
    return complex(out[0]) if scalar else out


def functional_equation_defect(s: complex, chi: DirichletCharacter) -> float:
    """| Lambda(s, chi) - (tau(chi)/sqrt(N)) Lambda(1-s, conj chi) |,
    normalized by max(|Lambda(s, chi)|, 1).  Even nontrivial chi only."""
    if chi.modulus == 1 or chi.is_trivial or not chi.is_even:
        raise DomainError("functional-equation defect needs an even nontrivial character")
    s = complex(s)
    left = completed_l(s, chi)
    right = gauss_sum(chi) / np.sqrt(chi.modulus) * completed_l(1.0 - s, char_conjugate(chi))
    return abs(left - right) / max(abs(left), 1.0)
