"""Exact coefficient fields: the rationals and prime fields F_p.

Polynomials store *raw* field elements for speed: ``gmpy2.mpq`` values over Q
and canonical ``int`` residues ``0 <= v < p`` over F_p.  :class:`Scalar` wraps a
raw value together with its field for the public, field-checked arithmetic.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpq

from .errors import DivisionByZero, FieldMismatch

_MAX_CHAR = 2 ** 31


def _is_prime(n: int) -> bool:
    return n >= 2 and bool(gmpy2.is_prime(n, 50))


class Field:
    """A coefficient field, either Q (``characteristic == 0``) or F_p."""

    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int = 0):
        if characteristic != 0:
            if not _is_prime(characteristic) or characteristic >= _MAX_CHAR:
                raise ValueError(f"characteristic must be 0 or a prime < 2^31, got {characteristic}")
        self.characteristic = characteristic

    # -- identity -----------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return f"Field({self.text})"

    @property
    def text(self) -> str:
        return "Q" if self.characteristic == 0 else f"Fp:{self.characteristic}"

    # -- raw element handling ----------------------------------------------
    @property
    def zero(self):
        return mpq(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return mpq(1) if self.characteristic == 0 else 1

    def __call__(self, value):
        """Coerce an int, Fraction, mpq or ``"a/b"`` string into a raw element."""
        p = self.characteristic
        if isinstance(value, str):
            value = Fraction(value.strip())
        if p == 0:
            if isinstance(value, Fraction):
                return mpq(value.numerator, value.denominator)
            return mpq(value)
        if isinstance(value, (Fraction, type(mpq(0)))):
            num, den = int(value.numerator), int(value.denominator)
            if den % p == 0:
                raise DivisionByZero(f"denominator {den} vanishes in F_{p}")
            return num * pow(den, -1, p) % p
        return int(value) % p

    def add(self, a, b):
        return a + b if self.characteristic == 0 else (a + b) % self.characteristic

    def sub(self, a, b):
        return a - b if self.characteristic == 0 else (a - b) % self.characteristic

    def mul(self, a, b):
        return a * b if self.characteristic == 0 else a * b % self.characteristic

    def neg(self, a):
        return -a if self.characteristic == 0 else (-a) % self.characteristic

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero")
        if self.characteristic == 0:
            return 1 / a
        return pow(a, -1, self.characteristic)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def to_text(self, a) -> str:
        return str(a)

    def random_nonzero(self, rng: random.Random, bound: int = 50):
        """Uniform draw from {-bound..bound}\\{0} over Q, from F_p\\{0} otherwise."""
        if self.characteristic == 0:
            v = rng.randint(1, bound)
            return mpq(v if rng.random() < 0.5 else -v)
        return rng.randint(1, self.characteristic - 1)


QQ = Field(0)


def parse_field(text: str) -> Field:
    """Parse ``"Q"`` or ``"Fp:<prime>"``."""
    t = text.strip()
    if t in ("Q", "QQ"):
        return QQ
    if t.startswith("Fp:"):
        return Field(int(t[3:]))
    raise ValueError(f"unknown field {text!r}; expected 'Q' or 'Fp:<prime>'")


@dataclass(frozen=True)
class Scalar:
    """A field element that remembers its field.  Always canonical."""

    field: Field
    value: object

    @classmethod
    def of(cls, field: Field, value) -> "Scalar":
        return cls(field, field(value))

    def _check(self, other: "Scalar"):
        if not isinstance(other, Scalar) or other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {getattr(other, 'field', other)}")

    def __add__(self, other):
        self._check(other)
        return Scalar(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other):
        self._check(other)
        return Scalar(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other):
        self._check(other)
        return Scalar(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other):
        self._check(other)
        return Scalar(self.field, self.field.div(self.value, other.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def is_zero(self) -> bool:
        return not self.value

    def __str__(self):
        return str(self.value)


def field_arithmetic(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Apply ``op`` in {add, sub, mul, div} to two scalars of the same field."""
    try:
        fn = {"add": Scalar.__add__, "sub": Scalar.__sub__,
              "mul": Scalar.__mul__, "div": Scalar.__truediv__}[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return fn(a, b)
