"""Coefficient fields: arbitrary-precision rationals and prime fields F_p.

Coefficients are stored as plain Python values (``Fraction`` over the
rationals, ``int`` in ``0..p-1`` over a prime field) and all arithmetic is
routed through the field object, so polynomial code is field-agnostic.
Field objects are immutable and compare by value.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BadPrimeError


def is_prime(p: int) -> bool:
    """Trial-division primality test, adequate for moduli below 2^31."""
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class RationalField:
    """The field Q with exact Fraction coefficients, always normalized."""

    kind = "rationals"

    def coerce(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        raise TypeError(f"cannot coerce {value!r} into the rationals")

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def pow(self, a: Fraction, e: int) -> Fraction:
        return a**e

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash(self.kind)

    def __repr__(self) -> str:
        return "QQ"


class PrimeField:
    """The prime field F_p; elements are ints reduced into 0..p-1."""

    kind = "prime"

    def __init__(self, p: int):
        if not isinstance(p, int) or not 2 <= p < 2**31:
            raise ValueError(f"prime field modulus out of range: {p!r}")
        if not is_prime(p):
            raise ValueError(f"prime field modulus is not prime: {p}")
        self.p = p

    def coerce(self, value) -> int:
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise BadPrimeError(
                    f"denominator of {value} vanishes modulo {self.p}"
                )
            num = value.numerator % self.p
            den = value.denominator % self.p
            return num * pow(den, -1, self.p) % self.p
        raise TypeError(f"cannot coerce {value!r} into F_{self.p}")

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def pow(self, a: int, e: int) -> int:
        return pow(a, e, self.p)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash((self.kind, self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})"


QQ = RationalField()


def GF(p: int) -> PrimeField:
    """Return the prime field with ``p`` elements."""
    return PrimeField(p)
