"""Integer and rational building blocks: primality, residue classes, valuations.

Everything here is deterministic and exact.  These routines sit underneath
congruence verification, where a probabilistic primality answer or a float
could silently corrupt a report.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, inf, isqrt

__all__ = [
    "NonInvertibleError",
    "NegativeValuationError",
    "PrimeResidueClass",
    "binomial",
    "is_prime",
    "mod_inverse",
    "padic_valuation",
    "primes_below",
    "primes_in_class",
    "rational_residue",
]


class NonInvertibleError(ValueError):
    """x shares a factor with the modulus, so no inverse exists."""


class NegativeValuationError(ValueError):
    """The rational has p in its denominator, so it has no residue mod p**k."""


def binomial(n: int, k: int) -> int:
    """C(n, k) as an exact integer.  Zero when k > n, like the convention
    used in finite binomial identities."""
    if n < 0 or k < 0:
        raise ValueError("binomial expects non-negative arguments")
    return comb(n, k)


# Sufficient witness set for a deterministic Miller-Rabin test of every
# n < 3.3e24, comfortably past the 2**64 bound enforced below.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_PRIME_BOUND = 1 << 64


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n < 2**64.

    Larger inputs raise rather than fall back to a probabilistic answer.
    """
    if n >= _PRIME_BOUND:
        raise ValueError(f"is_prime is only certified below 2**64, got {n}")
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_below(limit: int) -> list[int]:
    """All primes p <= limit, ascending."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i in range(2, limit + 1) if sieve[i]]


@dataclass(frozen=True, slots=True)
class PrimeResidueClass:
    """The residue class ``residue`` mod ``modulus``, used to select primes."""

    modulus: int
    residue: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if not 0 <= self.residue < self.modulus:
            raise ValueError("residue must lie in [0, modulus)")

    def contains(self, n: int) -> bool:
        return n % self.modulus == self.residue


def primes_in_class(limit: int, cls: PrimeResidueClass) -> list[int]:
    """Primes p <= limit with p in the given residue class, ascending."""
    return [p for p in primes_below(limit) if cls.contains(p)]


def mod_inverse(x: int, m: int) -> int:
    """The inverse of x modulo m, in [0, m)."""
    if m < 1:
        raise ValueError("modulus must be positive")
    try:
        return pow(x, -1, m)
    except ValueError:
        raise NonInvertibleError(f"{x} is not invertible mod {m}") from None


def _int_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def padic_valuation(q: Fraction | int, p: int):
    """v_p(q) as an int; the zero input returns math.inf."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    q = Fraction(q)
    if q == 0:
        return inf
    return _int_valuation(q.numerator, p) - _int_valuation(q.denominator, p)


def rational_residue(q: Fraction | int, p: int, k: int = 1) -> int:
    """The residue of a p-integral rational modulo p**k, in [0, p**k).

    The denominator is inverted mod p**k, so q may have any prime-to-p
    denominator.  A rational with negative p-valuation has no residue and
    raises NegativeValuationError.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    q = Fraction(q)
    if padic_valuation(q, p) < 0:
        raise NegativeValuationError(f"{q} has a factor {p} in its denominator")
    pk = p**k
    return q.numerator % pk * mod_inverse(q.denominator % pk, pk) % pk
