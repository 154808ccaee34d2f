"""Exact scalar fields: the rationals and prime fields GF(p).

Rational scalars are :class:`fractions.Fraction`; prime-field scalars are
:class:`Residue`. Both support the usual arithmetic operators and mix with
plain ``int``, so the rest of the package writes ``a * b + c`` regardless of
which field is in use.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import FormatError, NonPrimeCharacteristic

RATIONALS = "Rationals"
PRIME_FIELD = "PrimeField"

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")
_RESIDUE_RE = re.compile(r"^[+-]?\d+$")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


class Residue:
    """An element of GF(p), stored as its least non-negative residue."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.p != self.p:
                raise ValueError(f"mixing GF({self.p}) and GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Residue(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Residue(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Residue(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Residue(self.value * v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.p)

    def inverse(self) -> "Residue":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return Residue(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = Residue(other, self.p)
        if not isinstance(other, Residue):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Residue(v, self.p) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return (other - self.value) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Residue({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


Scalar = Union[Fraction, Residue]


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == RATIONALS:
            if self.characteristic != 0:
                raise ValueError("the rationals have characteristic 0")
        elif self.kind == PRIME_FIELD:
            if not is_prime(self.characteristic) or self.characteristic >= 2**31:
                raise NonPrimeCharacteristic(
                    f"characteristic {self.characteristic} is not a prime below 2^31"
                )
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse the CLI/file notation: ``q`` or ``fp:<p>``."""
        text = text.strip().lower()
        if text in ("q", "rationals"):
            return cls(RATIONALS)
        if text.startswith("fp:"):
            try:
                p = int(text[3:])
            except ValueError:
                raise FormatError(f"bad prime in field {text!r}") from None
            return cls(PRIME_FIELD, p)
        raise FormatError(f"unknown field {text!r} (expected 'q' or 'fp:<p>')")

    def render(self) -> str:
        return "q" if self.kind == RATIONALS else f"fp:{self.characteristic}"


class Field:
    """Arithmetic context for one scalar domain."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.characteristic = spec.characteristic
        if spec.kind == RATIONALS:
            self.zero: Scalar = Fraction(0)
            self.one: Scalar = Fraction(1)
        else:
            self.zero = Residue(0, spec.characteristic)
            self.one = Residue(1, spec.characteristic)

    @property
    def is_rational(self) -> bool:
        return self.spec.kind == RATIONALS

    def __call__(self, x) -> Scalar:
        """Coerce an int, Fraction, Residue or literal string into this field."""
        if isinstance(x, str):
            return self.parse(x)
        if self.is_rational:
            if isinstance(x, Residue):
                raise TypeError("cannot coerce a residue into the rationals")
            return Fraction(x)
        if isinstance(x, Residue):
            if x.p != self.characteristic:
                raise TypeError(f"residue mod {x.p} in GF({self.characteristic})")
            return x
        if isinstance(x, Fraction):
            return Residue(x.numerator, self.characteristic) / x.denominator
        return Residue(int(x), self.characteristic)

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return a + b

    def neg(self, a: Scalar) -> Scalar:
        return -a

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return a * b

    def inv(self, a: Scalar) -> Scalar:
        if self.is_rational:
            if a == 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 / Fraction(a)
        return self(a).inverse()

    def eq(self, a: Scalar, b: Scalar) -> bool:
        return a == b

    def parse(self, text: str) -> Scalar:
        text = text.strip()
        if self.is_rational:
            if not _RATIONAL_RE.match(text):
                raise FormatError(f"bad rational literal {text!r}")
            if "/" in text and int(text.split("/")[1]) == 0:
                raise FormatError(f"zero denominator in {text!r}")
            return Fraction(text)
        if not _RESIDUE_RE.match(text):
            raise FormatError(f"bad GF({self.characteristic}) literal {text!r}")
        return Residue(int(text), self.characteristic)

    def format(self, a: Scalar) -> str:
        if self.is_rational:
            a = Fraction(a)
            return f"{a.numerator}/{a.denominator}"
        return str(self(a).value)

    def __eq__(self, other):
        return isinstance(other, Field) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"Field({self.spec.render()})"


def make_field(spec: FieldSpec | str = "q", characteristic: int | None = None) -> Field:
    """Build a field from a spec, a kind name, or the ``q`` / ``fp:p`` notation.

    >>> F = make_field("fp:5")
    >>> F.inv(F(3))
    Residue(2, 5)
    """
    if isinstance(spec, str):
        if spec == PRIME_FIELD:
            spec = FieldSpec(PRIME_FIELD, characteristic or 0)
        elif spec == RATIONALS:
            spec = FieldSpec(RATIONALS)
        else:
            spec = FieldSpec.parse(spec)
    return Field(spec)


QQ = make_field("q")
