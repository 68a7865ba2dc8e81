import itertools
from fractions import Fraction

import pytest

from core.exceptions import InputError
from core.numerics import (
    FactorialTable,
    binomial,
    catalan,
    exact_integer,
    format_rational,
    half_binomial,
    multinomial,
    parse_rational,
)


@pytest.mark.parametrize("n, k, expected", [(5, 2, 10), (0, 0, 1), (3, 5, 0), (4, -1, 0), (-1, 0, 0)])
def test_binomial(n, k, expected):
    assert binomial(n, k) == expected


def test_half_binomial_vanishes_on_half_integers():
    assert half_binomial(4, 2) == 4
    assert half_binomial(4, 3) == 0


def test_multinomial():
    assert multinomial(1, 1, 1) == 6
    assert multinomial(2, 0, 1) == 3
    assert multinomial(-1, 2, 2) == 0


def test_catalan_numbers():
    assert [catalan(i) for i in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]
    with pytest.raises(InputError):
        catalan(-1)


def test_binomial_symmetry_and_factorizations():
    for n in range(16):
        for k in range(n + 1):
            assert binomial(n, k) == binomial(n, n - k)
    for p, q, r in itertools.product(range(7), repeat=3):
        assert multinomial(p, q, r) == binomial(p + q + r, p) * binomial(q + r, q)
    for i in range(25):
        assert catalan(i) * (i + 1) == binomial(2 * i, i)


def test_exact_integer_refuses_fractions():
    assert exact_integer(Fraction(6, 3)) == 2
    with pytest.raises(ArithmeticError):
        exact_integer(Fraction(1, 2))


def test_rational_text_forms():
    assert format_rational(Fraction(-3, 4)) == "-3/4"
    assert format_rational(Fraction(8, 4)) == "2"
    assert parse_rational(" 7/2 ") == Fraction(7, 2)


def test_factorial_table_grows_on_demand():
    table = FactorialTable()
    assert table.factorial(10) == 3628800
    assert table.binomial(30, 15) == binomial(30, 15)
    assert table.multinomial(3, 4, 5) == multinomial(3, 4, 5)
    assert table.binomial(3, 4) == 0
    with pytest.raises(InputError):
        table.factorial(-2)
