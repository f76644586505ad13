"""Twisted divisor sums: sieves, the main partial sum, and the L-series.

sigma_s(n, chi) = sum_{d | n, d > 0} chi(d) d^s, extended evenly to
negative n and zero at n = 0.  The sieve builds a full table for n <= X
in O(X log X) complex operations; every consumer of truncated series
here returns a (value, tail_bound) pair whose bound comes from the
dominated-integral comparison with d(n) <= 4 n^0.1.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, NamedTuple

import numpy as np

from . import backend
from .chars import DirichletCharacter, char_conjugate, char_product, character
from .errors import DomainError, ResourceError

SIEVE_LIMIT_DEFAULT = 20_000_000
_MAGIC = b"SGT1"


@dataclass(frozen=True)
class ConvolutionParams:
    """Full parameter tuple (N, chi, psi, u, v, k, epsilon) with the
    hypothesis checks of the shifted-convolution asymptotic."""

    N: int
    chi: DirichletCharacter
    psi: DirichletCharacter
    u: complex
    v: complex
    k: int
    epsilon: float = 0.25

    def __post_init__(self):
        if self.chi.modulus != self.N or self.psi.modulus != self.N:
            raise DomainError("chi and psi must live mod N")
        for name, c in (("chi", self.chi), ("psi", self.psi)):
            if c.is_trivial or not c.is_even:
                raise DomainError(f"{name} must be even and nontrivial")
        if char_product(self.chi, self.psi).is_trivial:
            raise DomainError("chi * psi must be nontrivial")
        if self.u == 0 or self.v == 0:
            raise DomainError("u and v must be nonzero")
        ru, rv = abs(self.u.real), abs(self.v.real)
        if ru + rv >= 0.5:
            raise DomainError("need |Re(u)| + |Re(v)| < 1/2")
        if not 0.0 < self.epsilon < 0.5 - ru - rv:
            raise DomainError("need 0 < epsilon < 1/2 - |Re(u)| - |Re(v)|")
        if self.k < 1:
            raise DomainError("k must be a positive integer")
        object.__setattr__(self, "u", complex(self.u))
        object.__setattr__(self, "v", complex(self.v))

    @property
    def chipsi(self) -> DirichletCharacter:
        return char_product(self.chi, self.psi)


def default_params(**overrides) -> ConvolutionParams:
    """The package's reference configuration (also the CLI default)."""
    base = dict(
        N=7,
        chi=character(7, 2),
        psi=character(7, 2),
        u=0.10j,
        v=0.07j,
        k=1,
        epsilon=0.25,
    )
    base.update(overrides)
    return ConvolutionParams(**base)


def divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def sigma(s: complex, n: int, chi: DirichletCharacter) -> complex:
    """sigma_s(n, chi) by direct divisor enumeration; 0 at n = 0."""
    if n == 0:
        return 0.0 + 0.0j
    s = complex(s)
    total = 0.0 + 0.0j
    for d in divisors(n):
        total += chi(d) * d**s
    return total


@dataclass
class SigmaTable:
    """Sieved sigma_s(n, chi) for 0 <= n <= limit; values[0] = 0."""

    exponent: complex
    character: DirichletCharacter
    limit: int
    values: np.ndarray

    def __getitem__(self, n: int) -> complex:
        return complex(self.values[abs(n)])

    def dump(self, path) -> None:
        path = Path(path)
        with open(path, "wb") as fh:
            fh.write(_MAGIC)
            fh.write(
                struct.pack(
                    "<QQddQ",
                    self.character.modulus,
                    self.character.index,
                    self.exponent.real,
                    self.exponent.imag,
                    self.limit,
                )
            )
            fh.write(self.values.astype("<c16").tobytes())

    @classmethod
    def load(cls, path) -> "SigmaTable":
        path = Path(path)
        with open(path, "rb") as fh:
            if fh.read(4) != _MAGIC:
                raise DomainError(f"{path} is not a sigma-table dump")
            modulus, index, sre, sim, limit = struct.unpack("<QQddQ", fh.read(40))
            values = np.frombuffer(fh.read(), dtype="<c16").astype(np.complex128)
        if values.shape[0] != limit + 1:
            raise DomainError(f"{path}: expected {limit + 1} values, got {values.shape[0]}")
        return cls(complex(sre, sim), character(modulus, index), limit, values)


def sieve_sigma(
    s: complex,
    chi: DirichletCharacter,
    limit: int,
    allow_large: bool = False,
) -> SigmaTable:
    """Table of sigma_s(n, chi) for n <= limit via the divisor sieve."""
    if limit < 1:
        raise DomainError("limit must be >= 1")
    if limit > SIEVE_LIMIT_DEFAULT and not allow_large:
        need = 40 * (limit + 1)
        raise ResourceError(
            f"sieve at X={limit} needs ~{need} bytes; pass allow_large=True",
            required_bytes=need,
        )
    s = complex(s)
    d = np.arange(limit + 1, dtype=np.float64)
    d[0] = 1.0
    coef = chi.values(limit + 1) * np.exp(s * np.log(d))
    coef[0] = 0.0
    values = backend.divisor_sieve(coef, limit + 1)
    return SigmaTable(s, chi, limit, values)


# ---------------------------------------------------------------------------
# the main partial sum
# ---------------------------------------------------------------------------


def _sum_tables(p: ConvolutionParams, X: int):
    a = sieve_sigma(2.0 * p.u, p.chi, X, allow_large=True)
    b = sieve_sigma(2.0 * p.v, p.psi, max(X, p.k), allow_large=True)
    return a, b


def _shifted_terms(p: ConvolutionParams, X: int, a: SigmaTable, b: SigmaTable):
    n = np.arange(1, X + 1)
    terms = (
        a.values[n]
        * b.values[np.abs(n - p.k)]
        * np.exp(-(p.u + p.v) * np.log(n.astype(np.float64)))
    )
    return terms


def shifted_sum(p: ConvolutionParams, X: int, tables=None) -> complex:
    """sum_{n=1}^{X} sigma_{2u}(n, chi) sigma_{2v}(n-k, psi) / n^{u+v}.

    Exact truncated sum from two sieve tables; the n = k term vanishes
    through sigma(0) = 0.
    """
    if X < 1:
        raise DomainError("X must be >= 1")
    a, b = tables if tables is not None else _sum_tables(p, X)
    return complex(_shifted_terms(p, X, a, b).sum())


def shifted_sum_grid(p: ConvolutionParams, Xs, tables=None) -> list[complex]:
    """shifted_sum at each X in the increasing grid Xs, one sieve pass."""
    Xs = [int(x) for x in Xs]
    if any(x2 <= x1 for x1, x2 in zip(Xs, Xs[1:])) or Xs[0] < 1:
        raise DomainError("Xs must be strictly increasing positive integers")
    top = Xs[-1]
    a, b = tables if tables is not None else _sum_tables(p, top)
    run = np.cumsum(_shifted_terms(p, top, a, b))
    return [complex(run[x - 1]) for x in Xs]


# ---------------------------------------------------------------------------
# the two classical identities, as truncated defects
# ---------------------------------------------------------------------------


def ramanujan_defect(
    s: complex,
    u2: complex,
    v2: complex,
    chi: DirichletCharacter,
    psi: DirichletCharacter,
    T: int,
) -> float:
    """|truncated Dirichlet series of sigma_{u2} sigma_{v2} minus its
    zeta/L closed form| at s; requires absolute convergence with margin."""
    from .lfun import dirichlet_l, zeta

    s, u2, v2 = complex(s), complex(u2), complex(v2)
    if s.real <= 1.0 + max(u2.real, 0.0) + max(v2.real, 0.0):
        raise DomainError("need Re(s) > 1 + max(Re u2, 0) + max(Re v2, 0)")
    a = sieve_sigma(u2, chi, T, allow_large=True)
    b = sieve_sigma(v2, psi, T, allow_large=True)
    n = np.arange(1, T + 1, dtype=np.float64)
    lhs = complex((a.values[1:] * b.values[1:] * np.exp(-s * np.log(n))).sum())
    chipsi = char_product(chi, psi)
    rhs = (
        zeta(s)
        * dirichlet_l(s - u2, chi)
        * dirichlet_l(s - v2, psi)
        * dirichlet_l(s - u2 - v2, chipsi)
        / dirichlet_l(2.0 * s - u2 - v2, chipsi)
    )
    return abs(lhs - rhs)


def _smallest_prime_factors(limit: int) -> np.ndarray:
    spf = np.zeros(limit + 1, dtype=np.int64)
    for i in range(2, limit + 1):
        if spf[i] == 0:
            spf[i::i][spf[i::i] == 0] = i
    return spf


def hecke_sequence(
    chi: DirichletCharacter, a_p: Mapping[int, complex], limit: int
) -> np.ndarray:
    """Multiplicative sequence from prime data via the standard recursion
    a(p^(j+1)) = a(p) a(p^j) - chi(p) a(p^(j-1)); a[0] is unused (0)."""
    spf = _smallest_prime_factors(limit)
    a = np.zeros(limit + 1, dtype=np.complex128)
    a[1] = 1.0
    for n in range(2, limit + 1):
        p = int(spf[n])
        if p == n:
            try:
                a[n] = a_p[p]
            except KeyError:
                raise DomainError(f"missing Hecke input at prime {p}") from None
            continue
        q, m = p, n // p
        while m % p == 0:
            q *= p
            m //= p
        if m > 1:
            a[n] = a[q] * a[m]  # coprime split
        else:
            a[n] = a[p] * a[n // p] - chi(p) * a[n // (p * p)]
    return a


def seeded_hecke_coefficients(limit: int, seed: int, bound: float = 2.0) -> dict[int, complex]:
    """Reproducible prime inputs with |a_p| <= bound (formal data; no
    cusp form is implied)."""
    rng = np.random.default_rng(seed)
    spf = _smallest_prime_factors(limit)
    out = {}
    for pidx in range(2, limit + 1):
        if spf[pidx] == pidx:
            out[pidx] = complex(bound * (2.0 * rng.random() - 1.0))
    return out


def sigma_series_defect(
    s: complex,
    v2: complex,
    psi: DirichletCharacter,
    chi: DirichletCharacter,
    a: np.ndarray,
    T: int,
) -> float:
    """Defect of the sigma-times-Hecke series identity, all four series
    truncated at T:
        sum sigma_{v2}(n, psi) a(n) n^-s  vs  L(s-v2, psi x f) L(s, f) / L(2s-v2, chi psi).
    """
    s, v2 = complex(s), complex(v2)
    if s.real < 3.0:
        raise DomainError("need Re(s) >= 3 for the dominated-tail regime")
    if a.shape[0] < T + 1:
        raise DomainError("Hecke sequence shorter than truncation")
    spf = _smallest_prime_factors(T)
    primes = np.nonzero(spf[2:] == np.arange(2, T + 1))[0] + 2
    if np.max(np.abs(a[primes])) > 2.0 + 1e-12:
        raise DomainError("need |a_p| <= 2")
    sig = sieve_sigma(v2, psi, T, allow_large=True)
    n = np.arange(1, T + 1, dtype=np.float64)
    ln = np.log(n)
    an = a[1 : T + 1]
    lhs = complex((sig.values[1:] * an * np.exp(-s * ln)).sum())
    psi_vals = psi.values(T + 1)[1:]
    cp_vals = char_product(chi, psi).values(T + 1)[1:]
    l_psi_f = complex((psi_vals * an * np.exp(-(s - v2) * ln)).sum())
    l_f = complex((an * np.exp(-s * ln)).sum())
    l_cp = complex((cp_vals * np.exp(-(2.0 * s - v2) * ln)).sum())
    return abs(lhs - l_psi_f * l_f / l_cp)


# ---------------------------------------------------------------------------
# truncated L-series (with and without the hypergeometric factor)
# ---------------------------------------------------------------------------


class TruncatedValue(NamedTuple):
    value: complex
    tail_bound: float


def _series_tail_bound(p: ConvolutionParams, s: complex, T: int, factor_cap: float) -> float:
    """Dominated-integral tail bound with d(n) <= 4 n^0.1."""
    mu = max(2.0 * p.u.real, 0.0)
    mv = max(2.0 * p.v.real, 0.0)
    beta = (s + p.u + p.v).real - 0.2 - mu - mv
    if beta <= 1.0:
        return math.inf  # formal truncation: no certificate on this line
    const = 2.0 * 16.0 * 2.0 ** (0.1 + mv) * factor_cap
    return const * T ** (1.0 - beta) / (beta - 1.0)


def lk_star(p: ConvolutionParams, s: complex, T: int, tables=None) -> TruncatedValue:
    """Two-sided truncated series sum_{0 < |n| <= T, n != k}
    sigma_{2u}(n, chi) sigma_{2v}(n-k, psi) / |n|^(s+u+v)."""
    s = complex(s)
    if T < 1:
        return TruncatedValue(0.0 + 0.0j, _series_tail_bound(p, s, 1, 1.0))
    a, b = tables if tables is not None else (
        sieve_sigma(2.0 * p.u, p.chi, T, allow_large=True),
        sieve_sigma(2.0 * p.v, p.psi, T + p.k, allow_large=True),
    )
    n = np.arange(1, T + 1)
    npow = np.exp(-(s + p.u + p.v) * np.log(n.astype(np.float64)))
    pos = a.values[n] * b.values[np.abs(n - p.k)] * npow
    if p.k <= T:
        pos[p.k - 1] = 0.0
    neg = a.values[n] * b.values[n + p.k] * npow
    return TruncatedValue(
        complex(pos.sum() + neg.sum()), _series_tail_bound(p, s, T, 1.0)
    )


def _hyp_ratio_cap(aa: complex, bb: complex, cc: complex, z0: float) -> float:
    """sup_m |(a+m)(b+m) / ((c+m)(1+m))| for the 2F1 tail certificate."""
    top = int(abs(aa) + abs(bb) + abs(cc)) + 3
    worst = 1.0
    for m in range(top):
        worst = max(worst, abs((aa + m) * (bb + m) / ((cc + m) * (1.0 + m))))
    return worst


def lk_series(p: ConvolutionParams, s: complex, T: int, tables=None) -> TruncatedValue:
    """lk_star with each term carrying the Gauss hypergeometric factor
    2F1((s+u+v)/2, (s+u-v)/2; s; 2k/n - k^2/n^2)."""
    from .special import hyp2f1

    s = complex(s)
    aa = (s + p.u + p.v) / 2.0
    bb = (s + p.u - p.v) / 2.0
    if T < 1:
        return TruncatedValue(0.0 + 0.0j, _series_tail_bound(p, s, 1, 1.0))
    a, b = tables if tables is not None else (
        sieve_sigma(2.0 * p.u, p.chi, T, allow_large=True),
        sieve_sigma(2.0 * p.v, p.psi, T + p.k, allow_large=True),
    )
    k = p.k
    total = 0.0 + 0.0j
    for n in range(-T, T + 1):
        if n == 0 or n == k:
            continue
        z = 2.0 * k / n - (k * k) / (n * n)
        term = (
            a.values[abs(n)]
            * b.values[abs(n - k)]
            * abs(n) ** (-(s + p.u + p.v))
            * hyp2f1(aa, bb, s, z)
        )
        total += term
    z0 = 2.0 * k / (T + 1) + (k * k) / ((T + 1) * (T + 1))
    ratio = _hyp_ratio_cap(aa, bb, s, z0)
    cap = 1.0 / (1.0 - ratio * z0) if ratio * z0 < 1.0 else math.inf
    return TruncatedValue(complex(total), _series_tail_bound(p, s, T, cap))
