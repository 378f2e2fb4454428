"""Exact scalar domains: integers, rationals and prime fields.

A :class:`RingDomain` does arithmetic on *raw* values (``int`` for the
integers, :class:`fractions.Fraction` for the rationals, ``int`` residues in
``[0, p)`` for GF(p)).  Matrix kernels work on raw values directly because
boxing every intermediate is expensive; :class:`Scalar` is the boxed, public
form that carries its domain and refuses to mix with other domains.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

__all__ = [
    "DomainMismatchError",
    "InexactDivisionError",
    "RingDomain",
    "Scalar",
    "INTEGERS",
    "RATIONALS",
    "prime_field",
    "is_prime",
    "add",
    "sub",
    "mul",
    "neg",
    "div_exact",
    "parse_scalar",
    "parse_domain",
]

Raw = Union[int, Fraction]


class DomainMismatchError(TypeError):
    """Raised when scalars from two different domains are combined."""


class InexactDivisionError(ArithmeticError):
    """Integer division left a nonzero remainder."""


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin.

    The fixed witness set is exact for every n < 3.3 * 10**24, which is far
    beyond any modulus a determinant campaign would use.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class RingDomain:
    """One of ``integers``, ``rationals`` or ``prime_field`` (with modulus)."""

    kind: str
    modulus: int | None = None

    def __post_init__(self):
        if self.kind not in ("integers", "rationals", "prime_field"):
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if self.kind == "prime_field":
            if self.modulus is None or self.modulus < 2 or not is_prime(self.modulus):
                raise ValueError(f"modulus must be a prime, got {self.modulus!r}")
        elif self.modulus is not None:
            raise ValueError(f"{self.kind} take no modulus")

    # -- raw arithmetic -------------------------------------------------

    @property
    def is_field(self) -> bool:
        return self.kind != "integers"

    @property
    def zero(self) -> Raw:
        return Fraction(0) if self.kind == "rationals" else 0

    @property
    def one(self) -> Raw:
        return Fraction(1) if self.kind == "rationals" else 1

    def convert(self, value: Any) -> Raw:
        """Coerce an int (or Fraction, for rationals) into a raw element."""
        if isinstance(value, Scalar):
            if value.domain != self:
                raise DomainMismatchError(f"{value.domain} element given to {self}")
            return value.value
        if isinstance(value, bool):
            value = int(value)
        if self.kind == "integers":
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise ValueError(f"{value} is not an integer")
                value = value.numerator
            if not isinstance(value, int):
                raise TypeError(f"cannot convert {value!r} to an integer")
            return value
        if self.kind == "rationals":
            if not isinstance(value, (int, Fraction)):
                raise TypeError(f"cannot convert {value!r} to a rational")
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.modulus == 0:
                raise ZeroDivisionError(f"{value} has no image mod {self.modulus}")
            return value.numerator * pow(value.denominator, -1, self.modulus) % self.modulus
        if not isinstance(value, int):
            raise TypeError(f"cannot convert {value!r} to GF({self.modulus})")
        return value % self.modulus

    def add(self, a: Raw, b: Raw) -> Raw:
        if self.modulus:
            return (a + b) % self.modulus
        return a + b

    def sub(self, a: Raw, b: Raw) -> Raw:
        if self.modulus:
            return (a - b) % self.modulus
        return a - b

    def neg(self, a: Raw) -> Raw:
        if self.modulus:
            return -a % self.modulus
        return -a

    def mul(self, a: Raw, b: Raw) -> Raw:
        if self.modulus:
            return a * b % self.modulus
        return a * b

    def inv(self, a: Raw) -> Raw:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "integers":
            if a not in (1, -1):
                raise InexactDivisionError(f"{a} is not a unit in the integers")
            return a
        if self.modulus:
            return pow(a, -1, self.modulus)
        return 1 / a

    def div_exact(self, a: Raw, b: Raw) -> Raw:
        """Exact quotient ``a / b``.

        Over the integers a nonzero remainder raises
        :class:`InexactDivisionError` instead of promoting to a rational.
        """
        if not b:
            raise ZeroDivisionError("division by zero")
        if self.kind == "integers":
            q, r = divmod(a, b)
            if r:
                raise InexactDivisionError(f"{a} is not divisible by {b}")
            return q
        if self.modulus:
            return a * pow(b, -1, self.modulus) % self.modulus
        return a / b

    def is_zero(self, a: Raw) -> bool:
        return not a

    # -- text -----------------------------------------------------------

    def format(self, a: Raw) -> str:
        if self.kind == "prime_field":
            return f"{a} mod {self.modulus}"
        return str(a)

    def parse(self, text: str) -> Raw:
        kind, value, modulus = _lex_scalar(text)
        if kind == "prime_field":
            if self.kind != "prime_field" or modulus != self.modulus:
                raise DomainMismatchError(f"{text!r} is not an element of {self}")
            return value % modulus
        return self.convert(value)

    def scalar(self, value: Any) -> "Scalar":
        return Scalar(self.convert(value), self)

    def __str__(self) -> str:
        if self.kind == "prime_field":
            return f"fp {self.modulus}"
        return self.kind


INTEGERS = RingDomain("integers")
RATIONALS = RingDomain("rationals")


def prime_field(p: int) -> RingDomain:
    return RingDomain("prime_field", p)


def parse_domain(text: str) -> RingDomain:
    """Parse ``integers``, ``rationals``, ``fp 7``, ``fp:7`` or ``gf7``."""
    t = text.strip().lower()
    if t in ("integers", "int", "zz", "z"):
        return INTEGERS
    if t in ("rationals", "rat", "qq", "q"):
        return RATIONALS
    m = re.fullmatch(r"(?:fp|gf|prime_field)[\s:(]*(\d+)\)?", t)
    if m:
        return prime_field(int(m.group(1)))
    raise ValueError(f"unrecognised domain {text!r}")


_SCALAR_RE = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?(?:\s+mod\s+(\d+))?\s*")


def _lex_scalar(text: str):
    m = _SCALAR_RE.fullmatch(text)
    if not m:
        raise ValueError(f"malformed scalar {text!r}")
    num, den, mod = m.groups()
    if mod is not None:
        if den is not None:
            raise ValueError(f"malformed scalar {text!r}")
        return "prime_field", int(num), int(mod)
    if den is not None:
        if int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return "rationals", Fraction(int(num), int(den)), None
    return "integers", int(num), None


def parse_scalar(text: str, domain: RingDomain | None = None) -> "Scalar":
    """Parse ``-12``, ``3/4`` or ``2 mod 5``.

    Without an explicit domain it is inferred from the spelling; ``3/1`` is
    still a rational.
    """
    if domain is not None:
        return Scalar(domain.parse(text), domain)
    kind, value, modulus = _lex_scalar(text)
    if kind == "prime_field":
        dom = prime_field(modulus)
        return Scalar(value % modulus, dom)
    if kind == "rationals":
        return Scalar(value, RATIONALS)
    return Scalar(value, INTEGERS)


@dataclass(frozen=True)
class Scalar:
    """An immutable element of a :class:`RingDomain`."""

    value: Raw
    domain: RingDomain

    def __post_init__(self):
        # normalise so that equal elements compare and hash equal
        object.__setattr__(self, "value", self.domain.convert(self.value))

    def _other(self, other) -> Raw:
        if isinstance(other, Scalar):
            if other.domain != self.domain:
                raise DomainMismatchError(f"cannot combine {self.domain} with {other.domain}")
            return other.value
        if isinstance(other, int):
            return self.domain.convert(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar(self.domain.add(self.value, b), self.domain)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar(self.domain.sub(self.value, b), self.domain)

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar(self.domain.sub(b, self.value), self.domain)

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar(self.domain.mul(self.value, b), self.domain)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.domain.neg(self.value), self.domain)

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar(self.domain.div_exact(self.value, b), self.domain)

    def __bool__(self) -> bool:
        return not self.domain.is_zero(self.value)

    def is_zero(self) -> bool:
        return self.domain.is_zero(self.value)

    def __str__(self) -> str:
        return self.domain.format(self.value)

    def __repr__(self) -> str:
        return f"Scalar({self})"


def add(a: Scalar, b: Scalar) -> Scalar:
    return a + _require_scalar(b)


def sub(a: Scalar, b: Scalar) -> Scalar:
    return a - _require_scalar(b)


def mul(a: Scalar, b: Scalar) -> Scalar:
    return a * _require_scalar(b)


def neg(a: Scalar) -> Scalar:
    return -a


def div_exact(a: Scalar, b: Scalar) -> Scalar:
    """Exact quotient; raises on a zero divisor or (integers) a remainder."""
    return a / _require_scalar(b)


def _require_scalar(x) -> Scalar:
    if not isinstance(x, Scalar):
        raise TypeError(f"expected a Scalar, got {type(x).__name__}")
    return x
