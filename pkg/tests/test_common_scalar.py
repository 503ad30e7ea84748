import math
from fractions import Fraction

import numpy
import pytest
from sympy import Rational

from pyadams.common_errors import ConfigError, InputError, ValidationError
from pyadams.common_scalar import (
    cross_annihilator_exponent,
    plocal_p,
    prime_check,
    reduce_mod,
    scalar,
    scalar_format,
    scalar_parse,
    twist_scalar,
    valuation,
    weight_of_eigenvalue,
)

np = numpy


def test_scalar_conversions():
    assert scalar("3/4") == Rational(3, 4)
    assert scalar(Fraction(6, 8)) == Rational(3, 4)
    assert scalar(5) == 5
    assert scalar_format(Rational(-3, 4)) == "-3/4"
    assert scalar_format(Rational(8, 4)) == "2"

    with pytest.raises(ValidationError):
        scalar("1/3", p=3)
    assert scalar("1/2", p=3) == Rational(1, 2)


def test_scalar_parse_errors():
    assert scalar_parse(7) == 7
    with pytest.raises(InputError):
        scalar_parse("1/0")
    with pytest.raises(InputError):
        scalar_parse("x/2")
    with pytest.raises(InputError):
        scalar_parse(1.5)


def test_prime_check():
    assert prime_check(3) == 3
    for bad in (2, 4, 1, True, 9):
        with pytest.raises(ConfigError):
            prime_check(bad)


def test_valuation():
    assert valuation(Rational(18, 5), 3) == 2
    assert valuation(Rational(1, 9), 3) == -2
    assert valuation(Fraction(27, 2), 3) == 3
    assert valuation(0, 3) == math.inf

    assert plocal_p(Rational(1, 2), 3)
    assert not plocal_p(Rational(1, 6), 3)


def test_reduce_mod():
    #: 1/2 ≡ 5 (mod 9)
    assert reduce_mod(Rational(1, 2), 3, 2) == 5
    assert reduce_mod(-1, 5, 1) == 4


def test_twist_scalar_and_weights():
    p = 3
    assert twist_scalar(p, 0) == 1
    assert twist_scalar(p, 1) == 16
    assert twist_scalar(p, -1) == Rational(1, 16)
    for j in range(-4, 5):
        assert weight_of_eigenvalue(twist_scalar(p, j), p) == j

    #: psi = 1 + p is not a weight at p = 3: 4 is not 4^(2j)
    assert weight_of_eigenvalue(4, 3) is None
    assert weight_of_eigenvalue(-16, 3) is None


def test_cross_annihilator_small():
    assert cross_annihilator_exponent(0, 3) is None
    assert cross_annihilator_exponent(1, 3) == 1
    assert cross_annihilator_exponent(3, 3) == 2
    assert cross_annihilator_exponent(-18, 3) == 3


##
def _pow_mod(base, exponent, modulus):
    """Elementwise base**exponent mod modulus for an int64 array."""
    res = np.ones_like(base)
    base = base % modulus
    while exponent:
        if exponent & 1:
            res = (res * base) % modulus
        base = (base * base) % modulus
        exponent >>= 1
    return res


def _valuations(values, p, cap):
    res = np.zeros_like(values)
    for t in range(1, cap + 1):
        res += (values % p**t == 0).astype(values.dtype)
    return res


def _brute_force_exponent(d, p, units, cap=6):
    modulus = p**cap
    powers = _pow_mod(units, d * (p - 1), modulus)
    return int(_valuations((powers - 1) % modulus, p, cap).min())


@pytest.mark.parametrize("p", [3, 5, 7])
def test_cross_annihilator_oracle(p):
    ks = np.arange(2, p**6, dtype=np.int64)
    units = ks[ks % p != 0]
    for d in range(1, p**3 + 1):
        assert cross_annihilator_exponent(d, p) == _brute_force_exponent(d, p, units)
