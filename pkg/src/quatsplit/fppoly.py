"""Univariate polynomials over the prime field F_p.

Coefficients are stored lowest degree first as least nonnegative residues,
with trailing zeros stripped; the zero polynomial has no coefficients. The
module supplies Rabin's irreducibility test and a deterministic
squarefree / distinct-degree / equal-degree factorization. Binomials
x^n - a use these to report the degree of F_p(beta) for a root beta.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import count

from .arith import is_prime, prime_divisors
from .errors import DomainError

__all__ = [
    "FpPolynomial",
    "ExtensionDegree",
    "poly_binomial",
    "parse_poly",
    "is_irreducible",
    "factor",
    "extension_degree",
]


def _strip(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


@dataclass(frozen=True)
class FpPolynomial:
    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if not (self.p >= 2 and is_prime(self.p)):
            raise DomainError(f"modulus {self.p} is not prime")
        reduced = _strip([c % self.p for c in self.coeffs])
        object.__setattr__(self, "coeffs", tuple(reduced))

    @classmethod
    def from_list(cls, p: int, coeffs) -> FpPolynomial:
        return cls(p, tuple(coeffs))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.leading == 1

    def monic(self) -> FpPolynomial:
        return FpPolynomial(self.p, tuple(_monic(list(self.coeffs), self.p)))

    def _wrap(self, c: list[int]) -> FpPolynomial:
        return FpPolynomial(self.p, tuple(c))

    def _check(self, other: FpPolynomial) -> None:
        if other.p != self.p:
            raise DomainError("polynomials over different fields")

    def __add__(self, other: FpPolynomial) -> FpPolynomial:
        self._check(other)
        return self._wrap(_add(list(self.coeffs), list(other.coeffs), self.p))

    def __sub__(self, other: FpPolynomial) -> FpPolynomial:
        self._check(other)
        return self._wrap(_sub(list(self.coeffs), list(other.coeffs), self.p))

    def __mul__(self, other: FpPolynomial) -> FpPolynomial:
        self._check(other)
        return self._wrap(_mul(list(self.coeffs), list(other.coeffs), self.p))

    def __pow__(self, e: int) -> FpPolynomial:
        out = FpPolynomial(self.p, (1,))
        for _ in range(e):
            out = out * self
        return out

    def __divmod__(self, other: FpPolynomial) -> tuple[FpPolynomial, FpPolynomial]:
        self._check(other)
        q, r = _divmod(list(self.coeffs), list(other.coeffs), self.p)
        return self._wrap(q), self._wrap(r)

    def __floordiv__(self, other: FpPolynomial) -> FpPolynomial:
        return divmod(self, other)[0]

    def __mod__(self, other: FpPolynomial) -> FpPolynomial:
        return divmod(self, other)[1]

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.degree, self.coeffs)

    def render(self, signed: bool = False, var: str = "x") -> str:
        """Text form, highest degree first: ``x^6 + 5``.

        With ``signed`` each coefficient c > p/2 is shown as -(p - c), so
        x^6 + 5 over F_7 reads ``x^6 - 2``.
        """
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            neg = signed and c > self.p // 2
            mag = self.p - c if neg else c
            mono = "" if k == 0 else var if k == 1 else f"{var}^{k}"
            body = str(mag) if (mag != 1 or k == 0) else ""
            terms.append(("-" if neg else "+", body + mono))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, t in terms[1:]:
            out += f" {sign} {t}"
        return out

    def __str__(self) -> str:
        return self.render()

    def to_dict(self) -> dict:
        return {"p": self.p, "coeffs": list(self.coeffs)}

    @classmethod
    def from_dict(cls, data: dict) -> FpPolynomial:
        return cls(data["p"], tuple(data["coeffs"]))


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(?:([a-zA-Z])(?:\s*\^\s*(\d+))?)?")


def parse_poly(text: str, p: int) -> FpPolynomial:
    """Parse ``"x^6 - 2"``-style text (one variable, integer coefficients)."""
    if re.search(r"\w\s+\w", text):
        raise DomainError(f"missing operator in {text!r}")
    s = re.sub(r"\s+", "", text)
    if not s:
        raise DomainError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos, var = 0, None
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise DomainError(f"cannot parse polynomial {text!r} at offset {pos}")
        if pos > 0 and not m.group(1):
            raise DomainError(f"missing operator in {text!r} at offset {pos}")
        sign, digits, v, exp = m.groups()
        if v is not None:
            if var is not None and v != var:
                raise DomainError("only univariate polynomials are supported")
            var = v
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        k = 0 if v is None else int(exp) if exp else 1
        coeffs[k] = coeffs.get(k, 0) + c
        pos = m.end()
    deg = max(coeffs)
    return FpPolynomial(p, tuple(coeffs.get(k, 0) for k in range(deg + 1)))


# ---------------------------------------------------------------------------
# list-level arithmetic; every helper returns a stripped list

def _add(a: list[int], b: list[int], p: int) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = a[:]
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _strip(out)


def _sub(a: list[int], b: list[int], p: int) -> list[int]:
    return _add(a, [(-c) % p for c in b], p)


def _mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _strip([c % p for c in out])


def _divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = a[:]
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(r) <= db:
        return [], _strip(r)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] * inv % p
        if c:
            q[k - db] = c
            for j in range(db + 1):
                r[k - db + j] = (r[k - db + j] - c * b[j]) % p
    return _strip(q), _strip(r[:db])


def _rem(a: list[int], b: list[int], p: int) -> list[int]:
    return _divmod(a, b, p)[1]


def _monic(a: list[int], p: int) -> list[int]:
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _gcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _rem(a, b, p)
    return _monic(a, p)


def _powmod(base: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _rem(base, f, p)
    while e:
        if e & 1:
            result = _rem(_mul(result, base, p), f, p)
        e >>= 1
        if e:
            base = _rem(_mul(base, base, p), f, p)
    return result


def _frobenius_iter(k: int, f: list[int], p: int) -> list[int]:
    # x^(p^k) mod f by k successive p-th powers
    h = _rem([0, 1], f, p)
    for _ in range(k):
        h = _powmod(h, p, f, p)
    return h


def _derivative(a: list[int], p: int) -> list[int]:
    return _strip([(i * c) % p for i, c in enumerate(a)][1:])


def _require_positive_degree(f: FpPolynomial) -> None:
    if f.degree < 1:
        raise DomainError("operation needs a polynomial of degree >= 1")


# ---------------------------------------------------------------------------

def poly_binomial(n: int, a: int, p: int) -> FpPolynomial:
    """x^n - a over F_p."""
    if n < 1:
        raise DomainError(f"binomial degree must be >= 1, got {n}")
    c = [0] * (n + 1)
    c[0] = -a
    c[n] = 1
    return FpPolynomial(p, tuple(c))


def is_irreducible(f: FpPolynomial) -> bool:
    """Rabin's test.

    f of degree n is irreducible iff x^(p^n) = x mod f and
    gcd(x^(p^(n/l)) - x, f) = 1 for every prime l dividing n.
    """
    _require_positive_degree(f)
    n, p = f.degree, f.p
    g = _monic(list(f.coeffs), p)
    if n == 1:
        return True
    x = _rem([0, 1], g, p)
    if _frobenius_iter(n, g, p) != x:
        return False
    for l in prime_divisors(n):
        h = _sub(_frobenius_iter(n // l, g, p), [0, 1], p)
        if len(_gcd(g, h, p)) != 1:
            return False
    return True


def _squarefree_decomposition(f: list[int], p: int) -> list[tuple[list[int], int]]:
    # Monic f -> pairwise coprime squarefree parts with multiplicities.
    out: list[tuple[list[int], int]] = []
    c = _gcd(f, _derivative(f, p), p)
    w = _divmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = _gcd(w, c, p)
        part = _divmod(w, y, p)[0]
        if len(part) > 1:
            out.append((part, i))
        w = y
        c = _divmod(c, y, p)[0]
        i += 1
    if len(c) > 1:
        root = c[::p]  # Frobenius is the identity on F_p
        out.extend((g, j * p) for g, j in _squarefree_decomposition(root, p))
    return out


def _distinct_degree(f: list[int], p: int) -> list[tuple[list[int], int]]:
    # Squarefree monic f -> (product of all irreducible factors of degree d, d).
    out = []
    h = [0, 1]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = _powmod(h, p, f, p)
        g = _gcd(f, _sub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, d))
            f = _divmod(f, g, p)[0]
            h = _rem(h, f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _trial_elements(p: int):
    # Every nonconstant polynomial over F_p exactly once, ordered by the
    # integer whose base-p digits are its coefficients.
    for k in count(p):
        c, digits = k, []
        while c:
            c, r = divmod(c, p)
            digits.append(r)
        yield digits


def _equal_degree(f: list[int], d: int, p: int) -> list[list[int]]:
    # Squarefree monic f whose irreducible factors all have degree d.
    r = (len(f) - 1) // d
    if r == 1:
        return [f]
    pieces = [f]
    for g in _trial_elements(p):
        if len(pieces) == r:
            break
        nxt = []
        for h in pieces:
            if len(h) - 1 == d or len(g) >= len(h):
                nxt.append(h)
                continue
            if p == 2:
                # trace map g + g^2 + ... + g^(2^(d-1))
                t, acc = _rem(g, h, p), []
                for _ in range(d):
                    acc = _add(acc, t, p)
                    t = _rem(_mul(t, t, p), h, p)
                s = acc
            else:
                s = _sub(_powmod(g, (p**d - 1) // 2, h, p), [1], p)
            u = _gcd(h, s, p)
            if 1 < len(u) < len(h):
                nxt.extend([u, _divmod(h, u, p)[0]])
            else:
                nxt.append(h)
        pieces = nxt
    return pieces


def factor(f: FpPolynomial) -> list[tuple[FpPolynomial, int]]:
    """Monic irreducible factors of ``f`` with multiplicities.

    ``f`` equals ``f.leading`` times the product of the returned powers.
    Factors are sorted by degree, then by coefficient list (lowest first).
    """
    _require_positive_degree(f)
    p = f.p
    found: dict[tuple[int, ...], int] = {}
    for part, mult in _squarefree_decomposition(_monic(list(f.coeffs), p), p):
        for block, d in _distinct_degree(part, p):
            for g in _equal_degree(block, d, p):
                key = tuple(g)
                found[key] = found.get(key, 0) + mult
    result = [(FpPolynomial(p, key), e) for key, e in found.items()]
    result.sort(key=lambda fe: fe[0].sort_key())
    return result


@dataclass(frozen=True)
class ExtensionDegree:
    """Degrees of the irreducible factors of x^n - a, with repetition."""

    degrees: tuple[int, ...]

    @property
    def minimum(self) -> int:
        return min(self.degrees)

    def to_dict(self) -> dict:
        return {"degrees": list(self.degrees), "minimum": self.minimum}

    @classmethod
    def from_dict(cls, data: dict) -> ExtensionDegree:
        return cls(tuple(data["degrees"]))


def extension_degree(a: int, n: int, p: int) -> ExtensionDegree:
    """Possible degrees [F_p(beta) : F_p] for roots beta of x^n - a.

    A root of an irreducible factor of degree k generates F_{p^k}, so the
    factor degrees list every option; ``minimum`` is the smallest.
    """
    if a % p == 0:
        raise DomainError(f"p = {p} divides a = {a}")
    degrees = []
    for g, e in factor(poly_binomial(n, a, p)):
        degrees.extend([g.degree] * e)
    return ExtensionDegree(tuple(sorted(degrees)))
