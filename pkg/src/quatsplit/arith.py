"""Exact integer and modular arithmetic primitives.

Everything here is a pure function on Python ints, so intermediate products
never overflow. Inputs are expected to stay below 2**63 in magnitude; the
primality test is deterministic on that whole range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError

__all__ = [
    "Factorization",
    "mod_pow",
    "is_prime",
    "factorize",
    "prime_divisors",
    "legendre",
    "kronecker",
    "p_adic_valuation",
    "is_squarefree",
]

TRIAL_DIVISION_BOUND = 10**6

# Strong-pseudoprime bases sufficient for every n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class Factorization:
    """Signed prime factorization ``value = sign * prod(p**e)``."""

    value: int
    sign: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise DomainError("primes must be strictly increasing")
        if any(e < 1 for _, e in self.factors):
            raise DomainError("exponents must be positive")
        if self.expand() != self.value:
            raise DomainError("factorization does not reproduce its value")

    def expand(self) -> int:
        out = self.sign
        for p, e in self.factors:
            out *= p**e
        return out

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "sign": self.sign,
            "factors": [[p, e] for p, e in self.factors],
        }

    @classmethod
    def from_dict(cls, data: dict) -> Factorization:
        return cls(
            value=data["value"],
            sign=data["sign"],
            factors=tuple((p, e) for p, e in data["factors"]),
        )


def mod_pow(base: int, exp: int, m: int) -> int:
    """Return ``base**exp mod m`` by square-and-multiply."""
    if m < 2:
        raise DomainError(f"modulus must be >= 2, got {m}")
    if exp < 0:
        raise DomainError(f"exponent must be nonnegative, got {exp}")
    return pow(base, exp, m)


def _strong_probable_prime(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """True iff ``|n|`` is prime."""
    n = abs(n)
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    return all(_strong_probable_prime(n, a) for a in _MR_BASES)


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    # Eratosthenes up to the trial-division bound, built once.
    limit = TRIAL_DIVISION_BOUND
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite ``n``.

    Constants c = 1, 2, 3, ... are tried in order, so the output is
    deterministic.
    """
    for c in range(1, n):
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"Pollard rho failed on {n}")  # pragma: no cover


def _split_large(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split_large(r, out)
        _split_large(r, out)
        return
    f = _pollard_brent(n)
    _split_large(f, out)
    _split_large(n // f, out)


def factorize(n: int) -> Factorization:
    """Complete prime factorization of a nonzero integer.

    Trial division by primes below 10**6, then Pollard-Brent on whatever
    cofactor remains.
    """
    if n == 0:
        raise DomainError("cannot factor 0")
    sign = 1 if n > 0 else -1
    m = abs(n)
    found: dict[int, int] = {}
    for p in _small_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
            if m > 1 and is_prime(m):
                break
    _split_large(m, found)
    return Factorization(n, sign, tuple(sorted(found.items())))


def prime_divisors(n: int) -> tuple[int, ...]:
    """Distinct positive prime divisors of ``n``, increasing."""
    return factorize(n).primes


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for _, e in factorize(n).factors)


def legendre(a: int, p: int) -> int:
    """Legendre symbol ``(a/p)`` for an odd prime ``p`` via Euler's criterion."""
    if p < 3 or not is_prime(p):
        raise DomainError(f"legendre symbol needs an odd prime, got {p}")
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol ``(a/n)`` for any nonzero ``n``.

    Binary algorithm: strip factors of 2 and the sign off ``n`` first, then run
    the Jacobi-symbol reciprocity loop on the odd part.
    """
    if n == 0:
        raise DomainError("kronecker symbol undefined for n = 0")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/n), n odd positive.
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def p_adic_valuation(a: int, p: int) -> int:
    """Largest ``e`` with ``p**e | a``."""
    if a == 0:
        raise DomainError("valuation of 0 is infinite")
    if p < 2 or not is_prime(p):
        raise DomainError(f"{p} is not prime")
    a = abs(a)
    e = 0
    while a % p == 0:
        a //= p
        e += 1
    return e
