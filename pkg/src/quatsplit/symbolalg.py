"""Non-split certificates for the symbol algebra (alpha, p / Q(xi), xi) of degree n.

Setting: n >= 3, p prime with p = 1 (mod n), so Q_p contains the n-th
roots of unity and Q(xi) embeds in Q_p. If alpha is not an l-th power
residue mod p for any prime l | n, then x^n - alpha is irreducible mod p,
Q_p(alpha^(1/n)) is unramified of degree n, and p is not a norm from it.
Hence the algebra does not split over Q_p, and therefore not over Q(xi).

Everything is computed in F_p and F_p[x]; xi is never written down. For
composite n a non-split algebra need not be a division algebra, so a
certificate only ever claims "NonSplit" or "Inconclusive".
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

from .arith import is_prime, prime_divisors
from .errors import DomainError
from .fppoly import extension_degree

__all__ = [
    "SymbolAlgebraSpec",
    "NonSplitCertificate",
    "Verdict",
    "is_l_power_residue",
    "residue_conditions_hold",
    "find_alpha",
    "kummer_unramified",
    "nonsplit_certificate",
]


class Verdict(str, enum.Enum):
    NON_SPLIT = "NonSplit"
    INCONCLUSIVE = "Inconclusive"


def _require_congruence(n: int, p: int) -> None:
    if not (p >= 2 and is_prime(p)):
        raise DomainError(f"p = {p} is not a prime")
    if p % n != 1:
        raise DomainError(f"hypothesis p = 1 (mod n) violated: p = {p}, n = {n}")


@dataclass(frozen=True)
class SymbolAlgebraSpec:
    n: int
    p: int
    alpha: int

    def __post_init__(self) -> None:
        if self.n < 3:
            raise DomainError(f"degree n must be >= 3, got {self.n}")
        _require_congruence(self.n, self.p)
        if self.alpha % self.p == 0:
            raise DomainError(f"p = {self.p} divides alpha = {self.alpha}")


def is_l_power_residue(alpha: int, l: int, p: int) -> bool:
    """True iff alpha is an l-th power mod p (l must divide p - 1)."""
    if not (p >= 2 and is_prime(p)):
        raise DomainError(f"p = {p} is not a prime")
    if alpha % p == 0:
        raise DomainError(f"p = {p} divides alpha = {alpha}")
    if l < 2 or (p - 1) % l:
        raise DomainError(f"l = {l} must be >= 2 and divide p - 1 = {p - 1}")
    return pow(alpha, (p - 1) // l, p) == 1


def residue_conditions_hold(alpha: int, n: int, p: int) -> bool:
    """True iff alpha is not an l-th power residue mod p for any l > 1 dividing n.

    Only prime l are checked: an l-th power is also an l'-th power for every
    prime l' | l.
    """
    _require_congruence(n, p)
    return not any(is_l_power_residue(alpha, l, p) for l in prime_divisors(n))


def find_alpha(n: int, p: int) -> int:
    """Smallest alpha >= 2 meeting the residue conditions for (n, p).

    Exists because x -> x^l is not onto F_p^* for l | p - 1; a generator of
    F_p^* always qualifies, so the scan stops below p.
    """
    _require_congruence(n, p)
    for alpha in range(2, p):
        if residue_conditions_hold(alpha, n, p):
            return alpha
    raise AssertionError(f"no admissible alpha below p = {p}")  # unreachable


def kummer_unramified(p: int, n: int, a: int) -> bool:
    """p is unramified in Q(xi)(a^(1/n)) when p does not divide n*a."""
    return (n * a) % p != 0


@dataclass(frozen=True)
class NonSplitCertificate:
    spec: SymbolAlgebraSpec
    residue_checks: tuple[tuple[int, int], ...]
    unramified: bool
    congruence_ok: bool
    extension_degree: int
    verdict: Verdict

    def to_dict(self) -> dict:
        return {
            "n": self.spec.n,
            "p": self.spec.p,
            "alpha": self.spec.alpha,
            "residue_checks": [{"l": l, "value": v} for l, v in self.residue_checks],
            "unramified": self.unramified,
            "congruence_ok": self.congruence_ok,
            "extension_degree": self.extension_degree,
            "verdict": self.verdict.value,
        }

    @classmethod
    def from_dict(cls, data: dict) -> NonSplitCertificate:
        return cls(
            spec=SymbolAlgebraSpec(data["n"], data["p"], data["alpha"]),
            residue_checks=tuple((r["l"], r["value"]) for r in data["residue_checks"]),
            unramified=data["unramified"],
            congruence_ok=data["congruence_ok"],
            extension_degree=data["extension_degree"],
            verdict=Verdict(data["verdict"]),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def nonsplit_certificate(spec: SymbolAlgebraSpec) -> NonSplitCertificate:
    n, p, alpha = spec.n, spec.p, spec.alpha
    checks = tuple((l, pow(alpha, (p - 1) // l, p)) for l in prime_divisors(n))
    congruence_ok = p % n == 1
    degree = extension_degree(alpha, n, p).minimum
    ok = congruence_ok and all(v != 1 for _, v in checks) and degree == n
    return NonSplitCertificate(
        spec=spec,
        residue_checks=checks,
        unramified=kummer_unramified(p, n, alpha),
        congruence_ok=congruence_ok,
        extension_degree=degree,
        verdict=Verdict.NON_SPLIT if ok else Verdict.INCONCLUSIVE,
    )
