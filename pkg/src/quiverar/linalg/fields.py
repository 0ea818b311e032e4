"""
Scalar fields for exact linear algebra.

This module provides the rationals and the prime fields F_p behind a small
field interface, so that every matrix routine works unchanged over both.
"""

import logging
import random
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Union

import sympy

from quiverar.errors import InputError

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


class Field(ABC):
    """Abstraction for the fields quiverar computes over.

    Field elements are plain Python numbers: ``Fraction`` for the rationals and
    ``int`` in ``range(p)`` for F_p. Operations go through the field object,
    e.g. ``field.add(x, y)``.
    """

    characteristic: int = 0

    @abstractmethod
    def coerce(self, value: Any) -> Scalar:
        """Convert an int, Fraction or numeric string into a field element."""

    def zero(self) -> Scalar:
        return self.coerce(0)

    def one(self) -> Scalar:
        return self.coerce(1)

    @abstractmethod
    def add(self, x: Scalar, y: Scalar) -> Scalar:
        ...

    @abstractmethod
    def negate(self, x: Scalar) -> Scalar:
        ...

    @abstractmethod
    def subtract(self, x: Scalar, y: Scalar) -> Scalar:
        ...

    @abstractmethod
    def multiply(self, x: Scalar, y: Scalar) -> Scalar:
        ...

    @abstractmethod
    def reciprocal(self, x: Scalar) -> Scalar:
        ...

    def is_zero(self, x: Scalar) -> bool:
        return x == 0

    def dot(self, xs: Any, ys: Any) -> Scalar:
        """Inner product of two equal-length sequences of field elements."""
        total = self.zero()
        for x, y in zip(xs, ys):
            total = self.add(total, self.multiply(x, y))
        return total

    @abstractmethod
    def random_element(self, rng: random.Random, spread: int = 3) -> Scalar:
        """Draw a random element; over Q integers in [-spread, spread]."""

    @abstractmethod
    def descriptor(self) -> str:
        """Return the workspace-file spelling of this field (``Q`` or ``F p``)."""

    def format(self, x: Scalar) -> str:
        return str(x)

    def __repr__(self) -> str:
        return self.descriptor()


class RationalField(Field):
    """The field of rational numbers with exact ``Fraction`` arithmetic."""

    characteristic = 0

    def coerce(self, value: Any) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, bool):
            raise InputError(f"not a rational number: {value!r}")
        if isinstance(value, (int, str)):
            try:
                return Fraction(value)
            except (ValueError, ZeroDivisionError) as e:
                raise InputError(f"not a rational number: {value!r}") from e
        raise InputError(f"not a rational number: {value!r}")

    def add(self, x: Scalar, y: Scalar) -> Fraction:
        return Fraction(x + y)

    def negate(self, x: Scalar) -> Fraction:
        return Fraction(-x)

    def subtract(self, x: Scalar, y: Scalar) -> Fraction:
        return Fraction(x - y)

    def multiply(self, x: Scalar, y: Scalar) -> Fraction:
        return Fraction(x * y)

    def reciprocal(self, x: Scalar) -> Fraction:
        if x == 0:
            raise ZeroDivisionError("reciprocal of zero")
        return 1 / Fraction(x)

    def dot(self, xs: Any, ys: Any) -> Fraction:
        return Fraction(sum(x * y for x, y in zip(xs, ys)))

    def random_element(self, rng: random.Random, spread: int = 3) -> Fraction:
        return Fraction(rng.randint(-spread, spread))

    def descriptor(self) -> str:
        return "Q"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("Q")


class PrimeField(Field):
    """The prime field F_p, elements stored as ints in ``range(p)``."""

    def __init__(self, p: int):
        """Initialize the prime field.

        Args:
            p: The characteristic; must be prime.
        """
        if p < 2 or not sympy.isprime(p):
            raise InputError(f"F {p} is not a prime field")
        self.p = p
        self.characteristic = p

    def coerce(self, value: Any) -> int:
        if isinstance(value, bool):
            raise InputError(f"not an element of F {self.p}: {value!r}")
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, str):
            value = RationalField().coerce(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise InputError(f"{value} has no image in F {self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        raise InputError(f"not an element of F {self.p}: {value!r}")

    def add(self, x: Scalar, y: Scalar) -> int:
        return (x + y) % self.p

    def negate(self, x: Scalar) -> int:
        return -x % self.p

    def subtract(self, x: Scalar, y: Scalar) -> int:
        return (x - y) % self.p

    def multiply(self, x: Scalar, y: Scalar) -> int:
        return x * y % self.p

    def reciprocal(self, x: Scalar) -> int:
        if x % self.p == 0:
            raise ZeroDivisionError("reciprocal of zero")
        return pow(int(x), -1, self.p)

    def dot(self, xs: Any, ys: Any) -> int:
        return sum(x * y for x, y in zip(xs, ys)) % self.p

    def random_element(self, rng: random.Random, spread: int = 3) -> int:
        return rng.randrange(self.p)

    def descriptor(self) -> str:
        return f"F {self.p}"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("F", self.p))


QQ = RationalField()


def field_from_descriptor(text: str) -> Field:
    """Build a field from its descriptor, ``Q`` or ``F <p>``.

    Args:
        text: The descriptor.

    Returns:
        The field.
    """
    parts = text.split()
    if parts == ["Q"]:
        return QQ
    if len(parts) == 2 and parts[0] == "F" and parts[1].isdigit():
        return PrimeField(int(parts[1]))
    raise InputError(f"unknown field descriptor: {text!r}")
