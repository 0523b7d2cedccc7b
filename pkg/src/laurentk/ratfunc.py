"""Rational functions over Q with Laurent numerators.

A ``RationalFunction`` is kept reduced: numerator and denominator share no
non-unit factor and the denominator is a canonical generator (monic
polynomial, nonzero constant term).  Powers of the variable are units, so
they always live in the numerator.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ZeroPolynomial
from .laurent import ONE, ZERO, LaurentPoly, canonical_associate, exact_div, gcd


class RationalFunction:
    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=None):
        num = LaurentPoly.coerce(numerator)
        den = ONE if denominator is None else LaurentPoly.coerce(denominator)
        if den.is_zero:
            raise ZeroPolynomial("rational function with zero denominator")
        if num.is_zero:
            num, den = ZERO, ONE
        else:
            g = gcd(num, den)
            num = exact_div(num, g)
            den = exact_div(den, g)
            # fold the unit part of den into num so den is canonical
            canon = canonical_associate(den)
            unit = exact_div(den, canon)
            num = num * unit.inverse_unit()
            den = canon
        self.numerator = num
        self.denominator = den

    @classmethod
    def coerce(cls, value) -> RationalFunction:
        if isinstance(value, RationalFunction):
            return value
        return cls(value)

    @property
    def is_polynomial(self) -> bool:
        return self.denominator == ONE

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero

    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RationalFunction(self.numerator * o.denominator + o.numerator * self.denominator,
                                self.denominator * o.denominator)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RationalFunction(self.numerator * o.numerator, self.denominator * o.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero:
            raise ZeroPolynomial("division by zero rational function")
        return RationalFunction(self.numerator * o.denominator, self.denominator * o.numerator)

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.numerator == o.numerator and self.denominator == o.denominator

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def constant_term_normalized(self) -> tuple[LaurentPoly, LaurentPoly]:
        """``(num, den)`` rescaled so that ``den(0) == 1``.

        Suited to series-style rational functions such as ``det(1-tA)``
        quotients, which are conventionally written with unit constant term.
        """
        c0 = self.denominator.coeff(0)
        return self.numerator.scale(1 / c0), self.denominator.scale(1 / c0)

    def format(self, var: str = "X", ascending: bool = False, normalize_constant: bool = False) -> str:
        num, den = (self.constant_term_normalized() if normalize_constant
                    else (self.numerator, self.denominator))
        n = num.format(var, ascending)
        if den == ONE:
            return n
        d = den.format(var, ascending)
        if len(num.terms()) > 1:
            n = f"({n})"
        if len(den.terms()) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RationalFunction({self.format()!r})"


def _coerce(value):
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, (LaurentPoly, int, Fraction)):
        return RationalFunction(value)
    return NotImplemented
