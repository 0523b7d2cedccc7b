"""Exact Laurent polynomials in one variable over the rationals.

``LaurentPoly`` is an immutable element of Q[X, X^-1].  Units of the ring
are the monomials ``c*X^n`` with ``c != 0``; every nonzero element has a
unique *canonical associate*: an ordinary polynomial that is monic and has
nonzero constant term.  All ideal-level comparisons in this package go
through that form.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

import numpy as np

from .errors import ParseError, ZeroEvaluationPoint, ZeroPolynomial

__all__ = [
    "LaurentPoly",
    "X",
    "ONE",
    "ZERO",
    "canonical_associate",
    "gcd",
    "lcm",
    "squarefree_part",
    "laurent_divmod",
    "divides",
    "exact_div",
    "evaluate",
    "numeric_roots",
    "cyclotomic",
    "parse_poly",
]


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"exact rational coefficient expected, got {type(c).__name__}")


class LaurentPoly:
    """Element of Q[X, X^-1] stored as ``{exponent: Fraction}``.

    Zero coefficients are never stored, so the zero polynomial is the empty
    mapping and equality is plain dict equality.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                v = _frac(v)
                if v:
                    c[int(e)] = v
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> LaurentPoly:
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c=1) -> LaurentPoly:
        return cls({e: c})

    @classmethod
    def from_ascending(cls, coeffs: Iterable, shift: int = 0) -> LaurentPoly:
        """Build ``sum coeffs[i] * X^(i+shift)``."""
        return cls({i + shift: c for i, c in enumerate(coeffs)})

    @classmethod
    def coerce(cls, value) -> LaurentPoly:
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, str):
            return parse_poly(value)
        return cls.constant(value)

    # -- inspection -------------------------------------------------------

    def terms(self) -> list[tuple[int, Fraction]]:
        """``(exponent, coefficient)`` pairs, exponents ascending."""
        return sorted(self._c.items())

    def coeff(self, e: int) -> Fraction:
        return self._c.get(e, Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    @property
    def low(self) -> int:
        if not self._c:
            raise ZeroPolynomial("zero polynomial has no lowest exponent")
        return min(self._c)

    @property
    def high(self) -> int:
        if not self._c:
            raise ZeroPolynomial("zero polynomial has no highest exponent")
        return max(self._c)

    @property
    def span(self) -> int:
        """Euclidean norm of the ring: ``high - low`` (units have span 0)."""
        return self.high - self.low

    @property
    def leading_coefficient(self) -> Fraction:
        return self._c[self.high]

    @property
    def is_unit(self) -> bool:
        return len(self._c) == 1

    @property
    def is_monomial(self) -> bool:
        return len(self._c) == 1

    @property
    def is_polynomial(self) -> bool:
        return all(e >= 0 for e in self._c)

    @property
    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self._c.values())

    def ascending(self) -> list[Fraction]:
        """Dense coefficients from ``low`` to ``high``."""
        if not self._c:
            return []
        lo, hi = self.low, self.high
        return [self._c.get(e, Fraction(0)) for e in range(lo, hi + 1)]

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> LaurentPoly:
        other = _coerce_operand(other)
        if other is NotImplemented:
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other) -> LaurentPoly:
        other = _coerce_operand(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        other = _coerce_operand(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> LaurentPoly:
        other = _coerce_operand(other)
        if other is NotImplemented:
            return NotImplemented
        c: dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPoly._raw({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if not self.is_unit:
                raise ValueError("only units can be raised to negative powers")
            (e, v), = self._c.items()
            return LaurentPoly._raw({e * k: v ** k})
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other) -> LaurentPoly:
        """Exact division; raises ``ValueError`` if ``other`` does not divide."""
        other = _coerce_operand(other)
        if other is NotImplemented:
            return NotImplemented
        return exact_div(self, other)

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``X^k``."""
        return LaurentPoly._raw({e + k: v for e, v in self._c.items()})

    def scale(self, c) -> LaurentPoly:
        c = _frac(c)
        if not c:
            return ZERO
        return LaurentPoly._raw({e: v * c for e, v in self._c.items()})

    def inverse_unit(self) -> LaurentPoly:
        if not self.is_unit:
            raise ValueError(f"{self} is not a unit")
        (e, v), = self._c.items()
        return LaurentPoly._raw({-e: 1 / v})

    def derivative(self) -> LaurentPoly:
        return LaurentPoly._raw({e - 1: v * e for e, v in self._c.items() if e})

    def bar(self) -> LaurentPoly:
        """Substitute ``X -> X^-1`` (complex conjugation on characters)."""
        return LaurentPoly._raw({-e: v for e, v in self._c.items()})

    def __call__(self, z):
        return evaluate(self, z)

    # -- comparison / display --------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def format(self, var: str = "X", ascending: bool = False) -> str:
        """Render in the text grammar accepted by :func:`parse_poly`."""
        if not self._c:
            return "0"
        items = sorted(self._c.items(), reverse=not ascending)
        out = []
        for i, (e, v) in enumerate(items):
            neg = v < 0
            a = -v if neg else v
            if e == 0:
                body = str(a)
            else:
                mono = var if e == 1 else f"{var}^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.format()!r})"


def _coerce_operand(other):
    if isinstance(other, LaurentPoly):
        return other
    if isinstance(other, (int, Fraction)):
        return LaurentPoly.constant(other)
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
X = LaurentPoly({1: 1})


# -- ideal-level operations ---------------------------------------------------


def canonical_associate(f: LaurentPoly) -> LaurentPoly:
    """Unique monic associate with only nonnegative exponents and nonzero constant term."""
    if f.is_zero:
        raise ZeroPolynomial("canonical associate of the zero polynomial")
    lo = f.low
    lead = f.leading_coefficient
    return LaurentPoly._raw({e - lo: v / lead for e, v in f._c.items()})


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Ordinary polynomial division on ascending dense coefficient lists."""
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(a) - 1 < db:
        return [], a
    q = [Fraction(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if not c:
            continue
        c = c / lead
        q[i - db] = c
        for j in range(db + 1):
            a[i - db + j] -= c * b[j]
    return q, a[:db]


def laurent_divmod(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Euclidean division with respect to ``span``.

    Returns ``(q, r)`` with ``a = q*b + r`` and ``r == 0`` or
    ``r.span < b.span``.
    """
    if b.is_zero:
        raise ZeroPolynomial("division by zero")
    if a.is_zero:
        return ZERO, ZERO
    if b.is_unit:
        return a * b.inverse_unit(), ZERO
    lo_a, lo_b = a.low, b.low
    q, r = _poly_divmod(a.ascending(), b.ascending())
    return LaurentPoly.from_ascending(q, lo_a - lo_b), LaurentPoly.from_ascending(r, lo_a)


def divides(d: LaurentPoly, a: LaurentPoly) -> bool:
    if d.is_zero:
        return a.is_zero
    return laurent_divmod(a, d)[1].is_zero


def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    q, r = laurent_divmod(a, b)
    if r:
        raise ValueError(f"{b} does not divide {a}")
    return q


def _monic_poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    while b:
        _, r = _poly_divmod(a, b)
        while r and not r[-1]:
            r.pop()
        a, b = b, r
    lead = a[-1]
    return [c / lead for c in a]


def gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Canonical generator of the ideal ``(f) + (g)``."""
    if f.is_zero and g.is_zero:
        raise ZeroPolynomial("gcd(0, 0) is undefined")
    if f.is_zero:
        return canonical_associate(g)
    if g.is_zero:
        return canonical_associate(f)
    a = canonical_associate(f).ascending()
    b = canonical_associate(g).ascending()
    if len(a) < len(b):
        a, b = b, a
    return canonical_associate(LaurentPoly.from_ascending(_monic_poly_gcd(a, b)))


def lcm(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Canonical generator of ``(f) ∩ (g)``; zero if either is zero."""
    if f.is_zero or g.is_zero:
        return ZERO
    return canonical_associate(exact_div(f * g, gcd(f, g)))


def squarefree_part(f: LaurentPoly) -> LaurentPoly:
    """Canonical polynomial with the same zeros in C* as ``f``, all simple."""
    if f.is_zero:
        raise ZeroPolynomial("squarefree part of the zero polynomial")
    p = canonical_associate(f)
    if p.span == 0:
        return p
    return canonical_associate(exact_div(p, gcd(p, p.derivative())))


def evaluate(f: LaurentPoly, z):
    """Evaluate at ``z != 0``: exact for rationals, complex for floats."""
    if z == 0:
        raise ZeroEvaluationPoint("0 is not a point of C*")
    if isinstance(z, (int, Fraction)):
        z = Fraction(z)
        return sum((v * z ** e for e, v in f._c.items()), Fraction(0))
    z = complex(z)
    return sum((complex(v) * z ** e for e, v in f._c.items()), 0j)


def numeric_roots(f: LaurentPoly, polish: int = 3) -> list[complex]:
    """Roots in C* of ``f`` (display only), sorted by real then imaginary part.

    Companion-matrix eigenvalues, followed by a few Newton steps.
    """
    p = canonical_associate(f)
    if p.span == 0:
        return []
    desc = [float(c) for c in reversed(p.ascending())]
    roots = np.roots(desc).astype(complex)
    dp = np.polyder(desc)
    polished = []
    for r in roots:
        for _ in range(polish):
            d = np.polyval(dp, r)
            if d == 0:
                break
            step = np.polyval(desc, r) / d
            if not np.isfinite(step):
                break
            r = r - step
        scale = max(1.0, abs(r))
        if abs(r.imag) < 1e-13 * scale:
            r = complex(r.real, 0.0)
        if abs(r.real) < 1e-13 * scale:
            r = complex(0.0, r.imag)
        polished.append(complex(r))
    return sorted(polished, key=lambda r: (round(r.real, 9), round(r.imag, 9)))


def root_residual_ok(f: LaurentPoly, root: complex) -> bool:
    """Residual bound ``|f(root)| < 1e-9 * (1+|root|)^deg`` on the canonical form."""
    p = canonical_associate(f)
    return abs(evaluate(p, root)) < 1e-9 * (1 + abs(root)) ** p.span


def cyclotomic(d: int) -> LaurentPoly:
    """The d-th cyclotomic polynomial (minimal polynomial of a primitive d-th root of 1)."""
    if d < 1:
        raise ValueError("cyclotomic index must be positive")
    return _cyclotomic_cached(d)


_CYCLO: dict[int, LaurentPoly] = {}


def _cyclotomic_cached(d: int) -> LaurentPoly:
    if d in _CYCLO:
        return _CYCLO[d]
    p = X ** d - ONE
    for e in range(1, d):
        if d % e == 0:
            p = exact_div(p, _cyclotomic_cached(e))
    _CYCLO[d] = p
    return p


def format_root(z: complex, digits: int = 10) -> str:
    """10-significant-digit rendering used by reports."""
    def g(x):
        s = f"{x:.{digits}g}"
        return "0" if s in ("-0", "0") else s

    if z.imag == 0:
        return g(z.real)
    if z.real == 0:
        return f"{g(z.imag)}i"
    sign = "-" if z.imag < 0 else "+"
    return f"{g(z.real)}{sign}{g(abs(z.imag))}i"


# -- parsing ------------------------------------------------------------------


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, msg: str) -> ParseError:
        return ParseError(msg, column=self.pos + 1, text=self.text)

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def digits(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected digits")
        return int(self.text[start:self.pos])

    def signed_int(self) -> int:
        sign = 1
        if self.take("-"):
            sign = -1
        elif self.take("+"):
            pass
        return sign * self.digits()


def parse_poly(text: str, var: str = "X") -> LaurentPoly:
    """Parse the Laurent polynomial text grammar.

    ``poly := term (('+'|'-') term)*``, ``term := coeff ['*'] [X['^'int]] | X['^'int]``,
    ``coeff := int ['/' posint]``.  A leading sign is accepted.  Raises
    :class:`ParseError` carrying the 1-based column of the offending character.
    """
    s = _Scanner(text)
    if not s.peek():
        raise s.error("empty polynomial")
    acc: dict[int, Fraction] = {}
    sign = 1
    if s.take("-"):
        sign = -1
    else:
        s.take("+")
    while True:
        e, c = _parse_term(s, var)
        acc[e] = acc.get(e, Fraction(0)) + sign * c
        ch = s.peek()
        if not ch:
            break
        if ch == "+":
            sign = 1
        elif ch == "-":
            sign = -1
        else:
            raise s.error(f"unexpected character {ch!r}")
        s.pos += 1
    return LaurentPoly(acc)


def _parse_term(s: _Scanner, var: str) -> tuple[int, Fraction]:
    ch = s.peek()
    coeff = Fraction(1)
    if ch.isdigit():
        num = s.digits()
        den = 1
        if s.take("/"):
            s.skip_ws()
            start = s.pos
            den = s.digits()
            if den == 0:
                s.pos = start
                raise s.error("zero denominator")
        coeff = Fraction(num, den)
        if s.take("*"):
            if s.peek() != var:
                raise s.error(f"expected {var!r} after '*'")
        elif s.peek() != var:
            return 0, coeff
    elif ch != var:
        raise s.error(f"expected coefficient or {var!r}" if ch else "unexpected end of input")
    s.take(var)
    exp = 1
    if s.take("^"):
        exp = s.signed_int()
    return exp, coeff
