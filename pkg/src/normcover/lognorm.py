"""Exact log-ratio values, for norms such as log|g^G| / log|G|.

A :class:`LogNorm` is ``sum(c_i * log(a_i)) / log(base)`` with rational
coefficients ``c_i`` and positive integers ``a_i``.  Sums, rational scaling and
comparisons (also against plain rationals) are decided exactly by comparing
integer products; floats only appear in :meth:`LogNorm.__float__` and the
12-digit string form.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from numbers import Rational

DIGITS = 12


@total_ordering
class LogNorm:
    __slots__ = ("terms", "base")

    def __init__(self, terms, base: int):
        if base < 2:
            raise ValueError("log base must be at least 2")
        acc: dict[int, Fraction] = {}
        for arg, coef in (terms.items() if isinstance(terms, dict) else terms):
            arg, coef = int(arg), Fraction(coef)
            if arg < 1:
                raise ValueError("log argument must be a positive integer")
            if arg == 1 or coef == 0:
                continue
            acc[arg] = acc.get(arg, Fraction(0)) + coef
        self.terms = tuple(sorted((a, c) for a, c in acc.items() if c != 0))
        self.base = int(base)

    @classmethod
    def ratio(cls, arg: int, base: int) -> "LogNorm":
        """log(arg) / log(base)."""
        return cls([(arg, 1)], base)

    def _lift(self, other) -> "LogNorm":
        if isinstance(other, LogNorm):
            if other.base != self.base:
                raise ValueError("cannot mix LogNorm values with different bases")
            return other
        if isinstance(other, (int, Rational)):
            # q == q * log(base) / log(base)
            return LogNorm([(self.base, Fraction(other))], self.base)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return LogNorm(list(self.terms) + list(o.terms), self.base)

    __radd__ = __add__

    def __neg__(self) -> "LogNorm":
        return LogNorm([(a, -c) for a, c in self.terms], self.base)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, factor):
        if not isinstance(factor, (int, Rational)):
            return NotImplemented
        f = Fraction(factor)
        return LogNorm([(a, c * f) for a, c in self.terms], self.base)

    __rmul__ = __mul__

    def sign(self) -> int:
        if not self.terms:
            return 0
        lcm = math.lcm(*(c.denominator for _, c in self.terms))
        pos, neg = 1, 1
        for a, c in self.terms:
            e = int(c * lcm)
            if e > 0:
                pos *= a**e
            else:
                neg *= a ** (-e)
        return (pos > neg) - (pos < neg)

    def _cmp(self, other) -> int | None:
        o = self._lift(other)
        if o is NotImplemented:
            return None
        return (self - o).sign()

    def __eq__(self, other) -> bool:
        c = self._cmp(other)
        return c == 0 if c is not None else NotImplemented

    def __lt__(self, other) -> bool:
        c = self._cmp(other)
        return c < 0 if c is not None else NotImplemented

    def __hash__(self) -> int:
        if not self.terms:
            return hash(0)
        return hash((self.terms, self.base))

    def __bool__(self) -> bool:
        return self.sign() != 0

    def __float__(self) -> float:
        return sum(float(c) * math.log(a) for a, c in self.terms) / math.log(self.base)

    def __str__(self) -> str:
        return f"{float(self):.{DIGITS}f}"

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*log({a})" for a, c in self.terms) or "0"
        return f"LogNorm(({body}) / log({self.base}))"


def norm_to_json(value) -> str:
    """Rationals as lowest-terms 'p/q'; log ratios as 12-digit decimals."""
    if isinstance(value, LogNorm):
        return str(value)
    f = Fraction(value)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
