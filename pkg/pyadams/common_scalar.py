"""
Scalars of the local ring Z_(p).

A p-local scalar is an exact rational a/b with p not dividing b. Scalars are
sympy `Rational`s in every public value; the Smith normal form kernel works on
`fractions.Fraction`s internally for speed and converts at its boundary.
"""
import math
import re
from fractions import Fraction
from functools import lru_cache

import sympy
from sympy import Integer, Rational

from pyadams.common_debugging import fn_name_current
from pyadams.common_errors import ConfigError, InputError, ValidationError


##
def prime_check(p):
    if not isinstance(p, int) or isinstance(p, bool):
        raise ConfigError(f"{fn_name_current()}: p must be an integer, got {p!r}")
    if p == 2 or not sympy.isprime(p):
        raise ConfigError(f"{fn_name_current()}: p must be an odd prime, got {p}")
    return p


def generator(p):
    """The fixed topological generator g = 1 + p of the p-part of the units."""
    return p + 1


##
def scalar(x, p=None):
    """
    Converts `x` (int, str "a/b", Fraction, sympy number) to a sympy Rational.

    If `p` is given, the result must lie in Z_(p).
    """
    if isinstance(x, str):
        res = scalar_parse(x)
    elif isinstance(x, Fraction):
        res = Rational(x.numerator, x.denominator)
    else:
        res = sympy.nsimplify(x) if isinstance(x, float) else sympy.sympify(x)
        if not res.is_Rational:
            raise ValidationError(
                f"{fn_name_current()}: not an exact rational: {x!r}"
            )
        res = Rational(res)

    if p is not None and not plocal_p(res, p):
        raise ValidationError(
            f"{fn_name_current()}: {res} is not {p}-local (denominator divisible by {p})"
        )

    return res


_scalar_re = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def scalar_parse(text, *, path=None):
    if isinstance(text, int) and not isinstance(text, bool):
        return Integer(text)
    if not isinstance(text, str):
        raise InputError(f"expected an 'a/b' scalar string, got {text!r}", path=path)

    m = _scalar_re.match(text)
    if not m:
        raise InputError(f"malformed scalar {text!r} (expected 'a/b')", path=path)

    numerator = int(m.group(1))
    denominator = int(m.group(2)) if m.group(2) is not None else 1
    if denominator == 0:
        raise InputError(f"zero denominator in {text!r}", path=path)

    return Rational(numerator, denominator)


def scalar_format(x):
    x = Rational(x)
    if x.q == 1:
        return f"{x.p}"
    return f"{x.p}/{x.q}"


##
def valuation(x, p):
    """The p-adic valuation v_p(x); `math.inf` for zero."""
    if isinstance(x, Fraction):
        numerator, denominator = x.numerator, x.denominator
    else:
        x = Rational(x)
        numerator, denominator = int(x.p), int(x.q)

    if numerator == 0:
        return math.inf

    return sympy.multiplicity(p, abs(numerator)) - sympy.multiplicity(p, denominator)


def plocal_p(x, p):
    x = Rational(x)
    return int(x.q) % p != 0


def reduce_mod(x, p, e):
    """The representative of the p-local `x` modulo p^e, in [0, p^e)."""
    modulus = p**e
    if isinstance(x, Fraction):
        numerator, denominator = x.numerator, x.denominator
    else:
        x = Rational(x)
        numerator, denominator = int(x.p), int(x.q)

    return Integer((numerator * pow(denominator, -1, modulus)) % modulus)


##
@lru_cache(maxsize=None)
def twist_scalar(p, n):
    """g^{n(p-1)} for g = 1 + p, exact. Memoized, and safe for concurrent reads."""
    return Rational(generator(p)) ** (n * (p - 1))


def weight_of_eigenvalue(r, p):
    """
    The integer j with r = g^{j(p-1)}, or None when r has no such form.
    """
    r = Rational(r)
    if r == 1:
        return 0
    if r <= 0:
        return None

    base = generator(p) ** (p - 1)
    if r.q == 1:
        j = sympy.multiplicity(base, int(r.p))
        if base**j == int(r.p):
            return j
    elif r.p == 1:
        j = sympy.multiplicity(base, int(r.q))
        if base**j == int(r.q):
            return -j

    return None


def cross_annihilator_exponent(d, p):
    """
    The exponent of the annihilator of a cross-weight morphism component
    between weights differing by `d`: 1 + v_p(d) = v_p(g^{d(p-1)} - 1).

    Returns None for d = 0, where g^0 - 1 = 0 imposes no constraint.
    """
    if d == 0:
        return None

    return 1 + sympy.multiplicity(p, abs(d))


##
def to_fraction(x):
    if isinstance(x, Fraction):
        return x
    x = Rational(x)
    return Fraction(int(x.p), int(x.q))


def from_fraction(x):
    return Rational(x.numerator, x.denominator)


##
