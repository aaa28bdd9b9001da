"""Exact scalar fields.

Elements are plain Python values: ``Fraction`` for the rationals and an
``int`` residue in ``[0, p)`` for a prime field.  Ring operations are done
with the ordinary operators and pushed back into canonical form with
``field(x)``; only division needs the field object.

    >>> F = GF(7)
    >>> F(3 * 5)
    1
    >>> F.div(1, 3)
    5
    >>> QQ("6/4")
    Fraction(3, 2)
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import BadField, FieldMismatch

__all__ = ["Field", "Rationals", "PrimeField", "QQ", "GF", "common_field"]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    for d in range(3, isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


class Field:
    """Common interface of :class:`Rationals` and :class:`PrimeField`."""

    characteristic: int

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self(a * self.inv(b))

    def neg(self, a):
        return self(-a)

    def half(self, a):
        return self.div(a, 2)

    def to_json(self, a):
        raise NotImplementedError

    def from_json(self, s):
        raise NotImplementedError

    def random_element(self, rng: random.Random):
        raise NotImplementedError

    def random_nonzero(self, rng: random.Random):
        while True:
            x = self.random_element(rng)
            if x != 0:
                return x

    def spec(self):
        """The field part of the JSON matrix schema."""
        raise NotImplementedError


@dataclass(frozen=True)
class Rationals(Field):
    characteristic: int = 0

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, str):
            return Fraction(x.strip())
        if isinstance(x, float):
            raise TypeError("floating point values are not exact field elements")
        return Fraction(x)

    def inv(self, a):
        a = self(a)
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return self(a) * self.inv(b)

    def to_json(self, a) -> str:
        a = self(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def from_json(self, s):
        if isinstance(s, bool) or isinstance(s, float):
            raise ValueError(f"not an exact rational: {s!r}")
        return self(s)

    def random_element(self, rng, bound=9, max_den=5):
        """Small random rational ``num/den`` with ``|num| <= bound``."""
        return Fraction(rng.randint(-bound, bound), rng.randint(1, max_den))

    def random_integer(self, rng, lo=-9, hi=9):
        return Fraction(rng.randint(lo, hi))

    def spec(self):
        return "Q"

    def __repr__(self):
        return "QQ"


@dataclass(frozen=True)
class PrimeField(Field):
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise BadField(f"{self.p!r} is not prime")
        if self.p == 2:
            raise BadField("characteristic 2 is not supported")

    @property
    def characteristic(self):
        return self.p

    def __call__(self, x) -> int:
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, str):
            return self(Fraction(x.strip()))
        raise TypeError(f"cannot convert {x!r} to GF({self.p})")

    def inv(self, a):
        a = self(a)
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def to_json(self, a) -> int:
        return self(a)

    def from_json(self, s):
        if isinstance(s, bool) or not isinstance(s, int):
            raise ValueError(f"prime-field entries must be integers, got {s!r}")
        if not 0 <= s < self.p:
            raise ValueError(f"entry {s} outside [0, {self.p})")
        return s

    def random_element(self, rng):
        return rng.randrange(self.p)

    def random_nonzero(self, rng):
        return rng.randrange(1, self.p)

    def spec(self):
        return {"p": self.p}

    def __repr__(self):
        return f"GF({self.p})"


QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec) -> Field:
    """Inverse of :meth:`Field.spec` (``"Q"`` or ``{"p": p}``)."""
    if spec == "Q":
        return QQ
    if isinstance(spec, dict) and set(spec) == {"p"}:
        return PrimeField(spec["p"])
    raise ValueError(f"bad field spec {spec!r}")


def common_field(*fields: Field) -> Field:
    first = fields[0]
    for f in fields[1:]:
        if f != first:
            raise FieldMismatch(f"{first!r} vs {f!r}")
    return first
