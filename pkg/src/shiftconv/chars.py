"""Dirichlet characters modulo a prime, in discrete-log form.

A character mod prime N is pinned down by an integer index j in
[0, N-2]: with g the smallest primitive root mod N, the character sends
g to e(j/(N-1)).  Products and conjugates are then index arithmetic, and
parity is the parity of j.  The trivial character mod 1 (constant 1,
including at 0) is the degenerate modulus-1 case.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError

TWO_PI = 2.0 * math.pi


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def smallest_primitive_root(p: int) -> int:
    """Least primitive root of a prime p (p >= 3)."""
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise ValueError(f"no primitive root found mod {p}")


@lru_cache(maxsize=None)
def _log_table(p: int) -> tuple[int, ...]:
    """table[n] = discrete log of n base the least primitive root; table[0] = -1."""
    g = smallest_primitive_root(p)
    table = [-1] * p
    acc = 1
    for e in range(p - 1):
        table[acc] = e
        acc = acc * g % p
    return tuple(table)


@dataclass(frozen=True)
class DirichletCharacter:
    """Character mod 1 or mod a prime N, identified by its index.

    chi(g) = e(index / (N-1)) for the stored primitive root g.  Immutable
    and safe for concurrent use.
    """

    modulus: int
    index: int
    primitive_root: int
    log_table: tuple[int, ...]

    def __call__(self, n: int) -> complex:
        return char_eval(self, n)

    @property
    def is_trivial(self) -> bool:
        return self.index == 0

    @property
    def is_even(self) -> bool:
        return self.index % 2 == 0

    def conjugate(self) -> "DirichletCharacter":
        return char_conjugate(self)

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        return char_product(self, other)

    def residue_values(self) -> np.ndarray:
        """chi on residues 0..N-1 as a complex array."""
        n = self.modulus
        if n == 1:
            return np.ones(1, dtype=np.complex128)
        out = np.zeros(n, dtype=np.complex128)
        for a in range(1, n):
            out[a] = _unit_root(self.index * self.log_table[a], n - 1)
        return out

    def values(self, length: int) -> np.ndarray:
        """chi(n) for n = 0..length-1 (period-N lookup)."""
        table = self.residue_values()
        return table[np.arange(length) % self.modulus]


def _unit_root(k: int, order: int) -> complex:
    # exact rational angle each time so |chi(n)| = 1 to machine precision;
    # quarter turns resolved in integer arithmetic so parity is exact
    k = k % order
    if k == 0:
        return 1.0 + 0.0j
    if 2 * k == order:
        return -1.0 + 0.0j
    if 4 * k == order:
        return 0.0 + 1.0j
    if 4 * k == 3 * order:
        return 0.0 - 1.0j
    angle = TWO_PI * k / order
    return complex(math.cos(angle), math.sin(angle))


def character(modulus: int, index: int) -> DirichletCharacter:
    """Build the character of the given index mod 1 or mod a prime."""
    if modulus == 1:
        if index != 0:
            raise DomainError("modulus 1 admits only index 0")
        return DirichletCharacter(1, 0, 1, ())
    if not is_prime(modulus):
        raise DomainError(f"modulus {modulus} is neither 1 nor prime")
    if not 0 <= index < modulus - 1:
        raise DomainError(f"index {index} outside [0, {modulus - 2}]")
    return DirichletCharacter(
        modulus, index, smallest_primitive_root(modulus), _log_table(modulus)
    )


def trivial_character() -> DirichletCharacter:
    """The Dirichlet character mod 1 (constant 1, including at 0)."""
    return character(1, 0)


def char_eval(chi: DirichletCharacter, n: int) -> complex:
    """chi(n): 0 off units mod N, a root of unity otherwise."""
    if chi.modulus == 1:
        return 1.0 + 0.0j
    r = n % chi.modulus
    if r == 0:
        return 0.0 + 0.0j
    return _unit_root(chi.index * chi.log_table[r], chi.modulus - 1)


def char_product(
    chi: DirichletCharacter, psi: DirichletCharacter
) -> DirichletCharacter:
    """Pointwise product character; indices add mod N-1.  The mod-1
    character acts as the identity; other modulus mixes are errors."""
    if chi.modulus == 1:
        return psi
    if psi.modulus == 1:
        return chi
    if chi.modulus != psi.modulus:
        raise DomainError(
            f"modulus mismatch: {chi.modulus} vs {psi.modulus}"
        )
    return character(chi.modulus, (chi.index + psi.index) % (chi.modulus - 1))


def char_conjugate(chi: DirichletCharacter) -> DirichletCharacter:
    """Complex-conjugate character; index negates mod N-1."""
    if chi.modulus == 1:
        return chi
    return character(chi.modulus, (-chi.index) % (chi.modulus - 1))


def gauss_sum(chi: DirichletCharacter) -> complex:
    """tau(chi) = sum_{a=1}^{N} chi(a) e(a/N); equals 1 for the mod-1 character."""
    n = chi.modulus
    if n == 1:
        return 1.0 + 0.0j
    total = 0.0 + 0.0j
    for a in range(1, n):
        total += char_eval(chi, a) * cmath.exp(2j * math.pi * a / n)
    return total


def even_nontrivial_characters(n: int) -> list[DirichletCharacter]:
    """All even nontrivial characters mod a prime n; count (n-1)/2 - 1."""
    if not is_prime(n):
        raise DomainError(f"{n} is not prime")
    return [character(n, j) for j in range(2, n - 1, 2)]
