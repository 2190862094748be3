"""Quadratic fields Q(sqrt(d)) and how rational places decompose in them."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .arith import is_prime, is_squarefree, kronecker
from .errors import DomainError

__all__ = [
    "QuadraticField",
    "SplittingType",
    "InfinitePlaceType",
    "make_field",
    "splitting_type",
    "infinite_place_type",
]


class SplittingType(str, enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


class InfinitePlaceType(str, enum.Enum):
    REAL_SPLIT = "real_split"
    COMPLEX = "complex"


@dataclass(frozen=True)
class QuadraticField:
    """The field Q(sqrt(d)) for squarefree ``d`` not in {0, 1}."""

    d: int
    discriminant: int = field(init=False)

    def __post_init__(self) -> None:
        if self.d in (0, 1):
            raise DomainError("excluded by hypothesis d != 0,1")
        if not is_squarefree(self.d):
            raise DomainError(f"free squares integer required, got d = {self.d}")
        disc = self.d if self.d % 4 == 1 else 4 * self.d
        object.__setattr__(self, "discriminant", disc)

    def __str__(self) -> str:
        return f"Q(sqrt({self.d}))"


def make_field(d: int) -> QuadraticField:
    return QuadraticField(d)


def splitting_type(K: QuadraticField, p: int) -> SplittingType:
    """Decomposition type of the rational prime ``p`` in ``K``.

    For odd p this is read off the Kronecker symbol (disc/p); for p = 2 it is
    read off d mod 8 directly.
    """
    if not (p >= 2 and is_prime(p)):
        raise DomainError(f"{p} is not a prime")
    if K.discriminant % p == 0:
        return SplittingType.RAMIFIED
    if p == 2:
        return SplittingType.SPLIT if K.d % 8 == 1 else SplittingType.INERT
    if kronecker(K.discriminant, p) == 1:
        return SplittingType.SPLIT
    return SplittingType.INERT


def infinite_place_type(K: QuadraticField) -> InfinitePlaceType:
    return InfinitePlaceType.REAL_SPLIT if K.d > 0 else InfinitePlaceType.COMPLEX
