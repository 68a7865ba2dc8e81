"""Exact combinatorial coefficients.

Python integers and :class:`fractions.Fraction` carry every scalar in the
package; nothing here ever rounds.
"""
import math
from fractions import Fraction
from typing import List, Union

from core.exceptions import InputError

BigInt = int
BigRat = Fraction
Number = Union[int, Fraction]


def binomial(n: int, k: int) -> BigInt:
    """C(n, k), and 0 whenever k < 0, k > n or n < 0."""
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def half_binomial(n: int, twice_k: int) -> BigInt:
    """C(n, twice_k / 2), zero when the lower argument is a half-integer."""
    if twice_k % 2:
        return 0
    return binomial(n, twice_k // 2)


def multinomial(p: int, q: int, r: int) -> BigInt:
    if p < 0 or q < 0 or r < 0:
        return 0
    return math.comb(p + q + r, p) * math.comb(q + r, q)


def catalan(i: int) -> BigInt:
    if i < 0:
        raise InputError(f"Catalan index must be nonnegative, got {i}")
    return math.comb(2 * i, i) // (i + 1)


def exact_integer(value: Number) -> BigInt:
    """Return ``value`` as an int, refusing anything with a denominator."""
    value = Fraction(value)
    if value.denominator != 1:
        raise ArithmeticError(f"expected an integer, got {value}")
    return value.numerator


def format_rational(value: Number) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


class FactorialTable:
    """Factorials cached up to a bound that grows on demand."""

    def __init__(self, bound: int = 0):
        self._values: List[int] = [1]
        self.ensure(bound)

    def ensure(self, bound: int) -> None:
        values = self._values
        for n in range(len(values), bound + 1):
            values.append(values[-1] * n)

    def factorial(self, n: int) -> BigInt:
        if n < 0:
            raise InputError(f"factorial of negative number {n}")
        self.ensure(n)
        return self._values[n]

    def binomial(self, n: int, k: int) -> BigInt:
        if n < 0 or k < 0 or k > n:
            return 0
        self.ensure(n)
        values = self._values
        return values[n] // (values[k] * values[n - k])

    def multinomial(self, p: int, q: int, r: int) -> BigInt:
        if p < 0 or q < 0 or r < 0:
            return 0
        self.ensure(p + q + r)
        values = self._values
        return values[p + q + r] // (values[p] * values[q] * values[r])
