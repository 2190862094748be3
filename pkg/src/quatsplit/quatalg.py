"""Quaternion algebras H(a, b) over Q.

Local behaviour is measured with Hilbert symbols: H(a, b) ramifies at the
place v exactly when (a, b)_v = -1. Only places v = infinity and primes
dividing 2ab can ramify, so those are the only candidates we evaluate.

Splitting over a quadratic field K follows from the local-global principle:
K splits H iff every ramified place of H has local degree 2 in K, i.e. no
ramified place splits in K.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, total_ordering
from typing import Optional

import numpy as np

from .arith import factorize, is_prime, kronecker, legendre, p_adic_valuation
from .errors import CapacityError, DomainError
from .quadfield import (
    InfinitePlaceType,
    QuadraticField,
    SplittingType,
    infinite_place_type,
    splitting_type,
)

__all__ = [
    "QuaternionAlgebra",
    "Place",
    "INFINITE",
    "RamificationData",
    "LocalAnalysis",
    "QuadraticSplitting",
    "SufficiencyResult",
    "hilbert_symbol",
    "hilbert_symbol_oracle",
    "ramified_places",
    "splits_over_Q",
    "analyze_over_quadratic",
    "splits_over_quadratic",
    "theorem31_sufficient",
    "corollary31_sufficient",
    "ORACLE_BUDGET",
]

ORACLE_BUDGET = 10**7

# Reason codes for negative verdicts.
REASON_D_MOD8 = "hypothesis_d_mod8"
REASON_LEGENDRE_P = "legendre_p"
REASON_LEGENDRE_Q = "legendre_q"
REASON_RAMIFIED_SPLITS = "ramified_prime_splits_in_K"


@dataclass(frozen=True)
class QuaternionAlgebra:
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a == 0 or self.b == 0:
            raise DomainError("quaternion algebra parameters must be nonzero")

    def __str__(self) -> str:
        return f"H({self.a},{self.b})"

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b}

    @classmethod
    def from_dict(cls, data: dict) -> QuaternionAlgebra:
        return cls(data["a"], data["b"])


@total_ordering
@dataclass(frozen=True)
class Place:
    """A place of Q: ``Place(p)`` for a finite prime, ``Place(None)`` for infinity.

    Finite places sort by their prime and come before the infinite place.
    """

    p: Optional[int] = None

    def __post_init__(self) -> None:
        if self.p is not None and not (self.p >= 2 and is_prime(self.p)):
            raise DomainError(f"finite place needs a prime, got {self.p}")

    @property
    def is_infinite(self) -> bool:
        return self.p is None

    def _key(self) -> tuple[int, int]:
        return (1, 0) if self.p is None else (0, self.p)

    def __lt__(self, other: Place) -> bool:
        return self._key() < other._key()

    def __str__(self) -> str:
        return "inf" if self.p is None else str(self.p)

    def to_json(self) -> int | str:
        return "inf" if self.p is None else self.p

    @classmethod
    def from_json(cls, value: int | str) -> Place:
        return cls(None) if value == "inf" else cls(int(value))


INFINITE = Place(None)


def _split_off(a: int, p: int) -> tuple[int, int]:
    # a = p**v * u with p not dividing u
    v = p_adic_valuation(a, p)
    return v, a // p**v


def hilbert_symbol(a: int, b: int, v: Place | int | None) -> int:
    """Local Hilbert symbol ``(a, b)_v`` in {-1, 1}.

    ``v`` may be a Place, a prime, or None for the infinite place.
    """
    if a == 0 or b == 0:
        raise DomainError("Hilbert symbol needs nonzero arguments")
    if not isinstance(v, Place):
        v = Place(v)
    if v.is_infinite:
        return -1 if (a < 0 and b < 0) else 1
    p = v.p
    alpha, u = _split_off(a, p)
    beta, w = _split_off(b, p)
    if p == 2:
        def eps(x: int) -> int:
            return ((x - 1) // 2) % 2

        def omega(x: int) -> int:
            return ((x * x - 1) // 8) % 2

        e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    return sign * legendre(u, p) ** beta * legendre(w, p) ** alpha


@lru_cache(maxsize=128)
def _square_table(modulus: int) -> np.ndarray:
    # table[r] is True iff r = z^2 (mod modulus) for some z
    z = np.arange(modulus, dtype=np.int64)
    table = np.zeros(modulus, dtype=bool)
    table[z * z % modulus] = True
    return table


def _lifts_to_top(c0: int, c1: int, t: np.ndarray, k: int, p: int, m: int) -> bool:
    """Is some lift of a residue in ``t`` (mod p^k) a solution mod p^m?

    ``t`` holds residues mod p^k with c0 + c1*t^2 a square mod p^k. Any
    solution mod p^m reduces to one mod p^k, so depth-first lifting one
    power of p at a time visits every solution while pruning dead branches.
    """
    if k == m:
        return t.size > 0
    step, modulus = p**k, p ** (k + 1)
    table = _square_table(modulus)
    digits = np.arange(p, dtype=np.int64) * step
    for start in range(0, t.size, _CHUNK):
        lifted = (t[start : start + _CHUNK, None] + digits[None, :]).ravel()
        values = (c0 + c1 * (lifted * lifted % modulus)) % modulus
        survivors = lifted[table[values]]
        if survivors.size and _lifts_to_top(c0, c1, survivors, k + 1, p, m):
            return True
    return False


_CHUNK = 4096


def hilbert_symbol_oracle(a: int, b: int, p: int, budget: int = ORACLE_BUDGET) -> int:
    """Brute-force Hilbert symbol at the prime ``p``.

    Decides whether ``z^2 = a x^2 + b y^2 (mod p^m)`` has a primitive solution,
    where ``m = v_p(4ab) + 3``. A primitive solution has x or y a unit (if both
    are divisible by p then so is z, mod p), and rescaling by that unit
    normalises it to 1. So the search covers x = 1 with y free, then y = 1
    with p | x, testing every residue against an enumerated table of squares.
    """
    if a == 0 or b == 0:
        raise DomainError("Hilbert symbol needs nonzero arguments")
    if not (p >= 2 and is_prime(p)):
        raise DomainError(f"{p} is not a prime")
    m = p_adic_valuation(4 * a * b, p) + 3
    modulus = p**m
    if modulus > budget:
        raise CapacityError(f"search modulus {p}^{m} = {modulus} exceeds budget {budget}")
    a_r, b_r = a % modulus, b % modulus
    square_mod_p = _square_table(p)

    # x = 1, y arbitrary
    y = np.arange(p, dtype=np.int64)
    y = y[square_mod_p[(a_r + b_r * y * y) % p]]
    if y.size and _lifts_to_top(a_r, b_r, y, 1, p, m):
        return 1
    # y = 1, x = 0 (mod p)
    x = np.zeros(1, dtype=np.int64)
    if square_mod_p[b_r % p] and _lifts_to_top(b_r, a_r, x, 1, p, m):
        return 1
    return -1


@dataclass(frozen=True)
class RamificationData:
    algebra: QuaternionAlgebra
    ramified: tuple[Place, ...]
    candidates_checked: tuple[Place, ...]

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra.to_dict(),
            "ramified": [v.to_json() for v in self.ramified],
            "candidates_checked": [v.to_json() for v in self.candidates_checked],
        }

    @classmethod
    def from_dict(cls, data: dict) -> RamificationData:
        return cls(
            algebra=QuaternionAlgebra.from_dict(data["algebra"]),
            ramified=tuple(Place.from_json(v) for v in data["ramified"]),
            candidates_checked=tuple(Place.from_json(v) for v in data["candidates_checked"]),
        )


def candidate_places(alg: QuaternionAlgebra) -> tuple[Place, ...]:
    primes = factorize(2 * alg.a * alg.b).primes
    return tuple(Place(p) for p in primes) + (INFINITE,)


def ramified_places(alg: QuaternionAlgebra) -> RamificationData:
    candidates = candidate_places(alg)
    ramified = tuple(v for v in candidates if hilbert_symbol(alg.a, alg.b, v) == -1)
    # Hilbert reciprocity; a failure here means a bug in the local symbol.
    assert len(ramified) % 2 == 0, f"odd ramification set for {alg}: {ramified}"
    return RamificationData(alg, ramified, candidates)


def splits_over_Q(alg: QuaternionAlgebra) -> bool:
    return not ramified_places(alg).ramified


@dataclass(frozen=True)
class LocalAnalysis:
    """One candidate place of H viewed from K."""

    place: Place
    hilbert: int
    decomposition: str
    local_degree: int

    @property
    def blocks_splitting(self) -> bool:
        return self.hilbert == -1 and self.local_degree == 1

    def to_dict(self) -> dict:
        return {
            "place": self.place.to_json(),
            "hilbert": self.hilbert,
            "decomposition": self.decomposition,
            "local_degree": self.local_degree,
        }

    @classmethod
    def from_dict(cls, data: dict) -> LocalAnalysis:
        return cls(
            Place.from_json(data["place"]),
            data["hilbert"],
            data["decomposition"],
            data["local_degree"],
        )


@dataclass(frozen=True)
class QuadraticSplitting:
    algebra: QuaternionAlgebra
    d: int
    places: tuple[LocalAnalysis, ...]
    splits: bool
    reason: Optional[str]

    def __bool__(self) -> bool:
        return self.splits

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra.to_dict(),
            "d": self.d,
            "splits": self.splits,
            "reason": self.reason,
            "places": [loc.to_dict() for loc in self.places],
        }

    @classmethod
    def from_dict(cls, data: dict) -> QuadraticSplitting:
        return cls(
            algebra=QuaternionAlgebra.from_dict(data["algebra"]),
            d=data["d"],
            places=tuple(LocalAnalysis.from_dict(x) for x in data["places"]),
            splits=data["splits"],
            reason=data["reason"],
        )


def _local_view(K: QuadraticField, v: Place) -> tuple[str, int]:
    if v.is_infinite:
        kind = infinite_place_type(K)
        return kind.value, 1 if kind is InfinitePlaceType.REAL_SPLIT else 2
    kind = splitting_type(K, v.p)
    return kind.value, 1 if kind is SplittingType.SPLIT else 2


def analyze_over_quadratic(alg: QuaternionAlgebra, K: QuadraticField) -> QuadraticSplitting:
    """Per-place analysis of H tensored up to K, plus the splitting verdict."""
    rows = []
    for v in candidate_places(alg):
        decomposition, degree = _local_view(K, v)
        rows.append(LocalAnalysis(v, hilbert_symbol(alg.a, alg.b, v), decomposition, degree))
    splits = not any(r.blocks_splitting for r in rows)
    return QuadraticSplitting(alg, K.d, tuple(rows), splits, None if splits else REASON_RAMIFIED_SPLITS)


def splits_over_quadratic(alg: QuaternionAlgebra, K: QuadraticField) -> bool:
    return analyze_over_quadratic(alg, K).splits


@dataclass(frozen=True)
class SufficiencyResult:
    """Outcome of a sufficient-condition check; truthy iff the condition holds.

    On failure ``reason`` names the first condition that failed and
    ``prime`` the prime it failed at, if any.
    """

    holds: bool
    reason: Optional[str] = None
    prime: Optional[int] = None

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        return {"holds": self.holds, "reason": self.reason, "prime": self.prime}

    @classmethod
    def from_dict(cls, data: dict) -> SufficiencyResult:
        return cls(data["holds"], data["reason"], data["prime"])


def theorem31_sufficient(p: int, q: int, d: int) -> SufficiencyResult:
    """Sufficient condition for H(p, q) to split over Q(sqrt(d)), p, q prime.

    Requires d != 1 (mod 8) and (disc/q) != 1, plus (disc/p) != 1 when p is
    odd. The condition is not necessary: H(5, 29) splits over Q(i) although
    (-4/5) = 1.
    """
    if not (p >= 2 and is_prime(p)):
        raise DomainError(f"p = {p} is not a prime")
    if not (q >= 3 and is_prime(q)):
        raise DomainError(f"q = {q} must be an odd prime")
    if p == q:
        raise DomainError("p and q must be distinct")
    K = QuadraticField(d)
    if d % 8 == 1:
        return SufficiencyResult(False, REASON_D_MOD8)
    if p != 2 and kronecker(K.discriminant, p) == 1:
        return SufficiencyResult(False, REASON_LEGENDRE_P, p)
    if kronecker(K.discriminant, q) == 1:
        return SufficiencyResult(False, REASON_LEGENDRE_Q, q)
    return SufficiencyResult(True)


def corollary31_sufficient(alpha: int, p: int, d: int) -> SufficiencyResult:
    """Sufficient condition for H(alpha, p) to split over Q(sqrt(d)).

    Same shape as the two-prime test, with q running over every odd prime
    divisor of ``alpha``.
    """
    if alpha == 0:
        raise DomainError("alpha must be nonzero")
    if not (p >= 3 and is_prime(p)):
        raise DomainError(f"p = {p} must be an odd prime")
    K = QuadraticField(d)
    if d % 8 == 1:
        return SufficiencyResult(False, REASON_D_MOD8)
    if kronecker(K.discriminant, p) == 1:
        return SufficiencyResult(False, REASON_LEGENDRE_P, p)
    for q in factorize(alpha).primes:
        if q != 2 and kronecker(K.discriminant, q) == 1:
            return SufficiencyResult(False, REASON_LEGENDRE_Q, q)
    return SufficiencyResult(True)
