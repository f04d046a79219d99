"""Exact scalars: rationals and p-adic valuations.

Rationals are :class:`fractions.Fraction`, which is always stored in lowest
terms with a positive denominator, so equality is structural.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import Union

from gmpy2 import mpq as _mpq, mpz as _mpz, remove as _remove

Rat = Fraction

RatLike = Union[Fraction, int, str]


@functools.total_ordering
class _Infinity:
    """Valuation of zero.  Larger than every integer; absorbs addition."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("abelscope.INFINITY")

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __add__(self, other):
        if isinstance(other, (int, _Infinity)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

Valuation = Union[int, _Infinity]


@functools.lru_cache(maxsize=256)
def is_prime(n: int) -> bool:
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_prime(p) -> int:
    if not is_prime(p):
        raise ValueError(f"expected a prime, got {p!r}")
    return p


def rat(x: RatLike, den: int = 1) -> Fraction:
    """Coerce ``x`` (int, Fraction, gmpy2 mpq/mpz or "num/den" string) to a Fraction."""
    if isinstance(x, str):
        return Fraction(x.strip()) / den
    if isinstance(x, (_mpq, _mpz)):
        x = Fraction(int(x.numerator), int(x.denominator))
    elif isinstance(x, bool) or not isinstance(x, (int, Fraction)):
        raise TypeError(f"not an exact rational: {x!r}")
    return Fraction(x, den) if den != 1 else Fraction(x)


def _num_den(x: RatLike):
    if isinstance(x, (_mpq, _mpz)) or (isinstance(x, (int, Fraction)) and not isinstance(x, bool)):
        return x.numerator, x.denominator
    x = rat(x)
    return x.numerator, x.denominator


def vp(x: RatLike, p: int) -> Valuation:
    """p-adic valuation of a rational; ``INFINITY`` for zero."""
    check_prime(p)
    n, d = _num_den(x)
    if n == 0:
        return INFINITY
    return int(_remove(n, p)[1]) - int(_remove(d, p)[1])


def is_p_local(x: RatLike, p: int) -> bool:
    """True iff ``x`` lies in Z[1/p], i.e. its denominator is a power of p."""
    check_prime(p)
    return _remove(_num_den(x)[1], p)[0] == 1


def in_scaled_lattice(x: RatLike, p: int, k: int) -> bool:
    """True iff ``x`` lies in p^k Z (k may be negative)."""
    return is_p_local(x, p) and vp(x, p) >= k


def rat_to_str(x: RatLike) -> str:
    x = rat(x)
    return f"{x.numerator}/{x.denominator}"


def rat_from_str(s) -> Fraction:
    """Parse "num/den" or a bare integer (string or int).  Rejects floats."""
    if isinstance(s, bool):
        raise ValueError(f"malformed rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ValueError(f"malformed rational: {s!r}")
    parts = s.strip().split("/")
    try:
        if len(parts) == 1:
            return Fraction(int(parts[0]))
        if len(parts) == 2:
            den = int(parts[1])
            if den == 0:
                raise ValueError
            return Fraction(int(parts[0]), den)
    except ValueError:
        pass
    raise ValueError(f"malformed rational: {s!r}")
