"""Truncated formal power series in ``t`` with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NonzeroConstantTerm, ZeroPolynomial
from .laurent import LaurentPoly

DEFAULT_ORDER = 20


class TruncatedSeries:
    """``c_0 + c_1 t + ... + c_N t^N``; everything above ``t^N`` is discarded."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable = (), order: int = DEFAULT_ORDER):
        if order < 1:
            raise ValueError("series order must be positive")
        c = [Fraction(x) for x in coeffs][: order + 1]
        c += [Fraction(0)] * (order + 1 - len(c))
        self.order = order
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def from_poly(cls, p: LaurentPoly, order: int = DEFAULT_ORDER) -> TruncatedSeries:
        if p and p.low < 0:
            raise ValueError("negative powers of t have no power series expansion")
        return cls((p.coeff(i) for i in range(order + 1)), order)

    @classmethod
    def from_rational(cls, num: LaurentPoly, den: LaurentPoly, order: int = DEFAULT_ORDER) -> TruncatedSeries:
        """Expand ``num/den`` around ``t = 0``; requires ``den(0) != 0``."""
        if den.is_zero:
            raise ZeroPolynomial("zero denominator")
        if den.coeff(0) == 0 or (den.low < 0):
            raise ValueError("denominator must be an ordinary polynomial with nonzero constant term")
        return cls.from_poly(num, order) * cls.from_poly(den, order).reciprocal()

    def _check(self, other: TruncatedSeries):
        if self.order != other.order:
            raise ValueError(f"series orders differ: {self.order} vs {other.order}")

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        return TruncatedSeries((a + b for a, b in zip(self.coeffs, other.coeffs)), self.order)

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries((-a for a in self.coeffs), self.order)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        return self + (-other)

    def __mul__(self, other) -> TruncatedSeries:
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries((a * other for a in self.coeffs), self.order)
        self._check(other)
        n = self.order
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (n + 1)
        for i, ai in enumerate(a):
            if ai:
                for j in range(n + 1 - i):
                    out[i + j] += ai * b[j]
        return TruncatedSeries(out, n)

    __rmul__ = __mul__

    def reciprocal(self) -> TruncatedSeries:
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroPolynomial("series with zero constant term is not invertible")
        n = self.order
        inv = [Fraction(0)] * (n + 1)
        inv[0] = 1 / c0
        for k in range(1, n + 1):
            s = sum((self.coeffs[j] * inv[k - j] for j in range(1, k + 1)), Fraction(0))
            inv[k] = -s / c0
        return TruncatedSeries(inv, n)

    def derivative(self) -> TruncatedSeries:
        """Formal d/dt; the top coefficient becomes zero (order is kept)."""
        return TruncatedSeries((k * self.coeffs[k] for k in range(1, self.order + 1)), self.order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def to_poly(self) -> LaurentPoly:
        return LaurentPoly.from_ascending(self.coeffs)

    def format(self, var: str = "t") -> str:
        body = self.to_poly().format(var, ascending=True)
        return f"{body} + O({var}^{self.order + 1})"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"TruncatedSeries({list(map(str, self.coeffs))}, order={self.order})"


def series_exp(s: TruncatedSeries) -> TruncatedSeries:
    """``exp(s)`` for ``s(0) == 0`` via ``n g_n = sum_k k s_k g_{n-k}``."""
    if s.coeffs[0] != 0:
        raise NonzeroConstantTerm("exp needs a series with zero constant term")
    n = s.order
    g = [Fraction(0)] * (n + 1)
    g[0] = Fraction(1)
    for m in range(1, n + 1):
        acc = Fraction(0)
        for k in range(1, m + 1):
            if s.coeffs[k]:
                acc += k * s.coeffs[k] * g[m - k]
        g[m] = acc / m
    return TruncatedSeries(g, n)


def series_log(s: TruncatedSeries) -> TruncatedSeries:
    """``log(s)`` for ``s(0) == 1``."""
    if s.coeffs[0] != 1:
        raise NonzeroConstantTerm("log needs a series with constant term 1")
    n = s.order
    # f' = s'/s, integrated term by term
    q = s.derivative() * s.reciprocal()
    f = [Fraction(0)] + [q.coeffs[k - 1] / k for k in range(1, n + 1)]
    return TruncatedSeries(f, n)


def power_sum_series(values: Sequence, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """``sum_{n>=1} values[n-1] t^n / n`` truncated at ``order``."""
    c = [Fraction(0)] + [Fraction(values[k - 1]) / k for k in range(1, order + 1)]
    return TruncatedSeries(c, order)
