"""Module-level models of equivariant K-theory examples.

Evaluation modules at points of the unit circle, slices ``T x_H Y`` for
finite ``H = Omega_n``, the Baum-Connes decomposition for finite
subgroups, the ring ``K^0_T(CP^1)`` and fixed-point Euler numbers.

Roots of unity are carried exactly.  Because the coefficient field is Q, a
set of roots can only be represented when it is a union of full Galois
orbits (all primitive d-th roots at once); each orbit contributes summands
``Laur/(Phi_d)`` where ``Phi_d`` is the d-th cyclotomic polynomial.
"""

from __future__ import annotations

import cmath
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import GaloisOrbitMismatch, GammaOffCircle, ParseError
from .laurent import ONE, ZERO, LaurentPoly, X, cyclotomic, parse_poly
from .localize import EVEN_MINUS_ODD, GradedModuleMap, graded_trace, module_trace
from .matrix import mat_pow
from .modules import GradedModule, PresentedModule, Support


@dataclass(frozen=True, order=True)
class RootOfUnity:
    """``exp(2*pi*i*j/n)``, normalized so that ``n`` is the exact order."""

    n: int
    j: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("root-of-unity order must be positive")
        g = math.gcd(self.j % self.n, self.n)
        object.__setattr__(self, "j", (self.j % self.n) // g)
        object.__setattr__(self, "n", self.n // g)

    @property
    def order(self) -> int:
        return self.n

    @property
    def value(self) -> complex:
        if self.n == 1:
            return 1 + 0j
        if self.n == 2:
            return -1 + 0j
        return cmath.exp(2j * math.pi * self.j / self.n)

    def minimal_polynomial(self) -> LaurentPoly:
        return cyclotomic(self.n)

    def galois_orbit(self) -> list[RootOfUnity]:
        return [RootOfUnity(self.n, k) for k in range(self.n) if math.gcd(k, self.n) == 1]

    def __str__(self):
        if self.n <= 2:
            return "1" if self.n == 1 else "-1"
        return f"exp(2πi·{self.j}/{self.n})"


def _as_root(gamma) -> RootOfUnity:
    if isinstance(gamma, RootOfUnity):
        return gamma
    if isinstance(gamma, tuple):
        return RootOfUnity(*gamma)
    if isinstance(gamma, (int, Fraction)):
        gamma = X - gamma
    p = LaurentPoly.coerce(gamma)
    if p.is_zero or p.span != 1:
        raise ValueError(f"gamma must be a degree-one factor X - c, got {p}")
    c = -p.coeff(p.low) / p.coeff(p.high)
    if c == 1:
        return RootOfUnity(1, 0)
    if c == -1:
        return RootOfUnity(2, 1)
    raise GammaOffCircle(f"{c} is not on the unit circle")


@dataclass(frozen=True)
class EvaluationComponent:
    """``dim0`` copies of ``C_gamma`` in degree 0 and ``dim1`` in degree 1."""

    gamma: RootOfUnity
    dim0: int = 0
    dim1: int = 0

    def __post_init__(self):
        object.__setattr__(self, "gamma", _as_root(self.gamma))
        if self.dim0 < 0 or self.dim1 < 0:
            raise ValueError("dimensions must be nonnegative")


def _diag_module(factors: Sequence[LaurentPoly]) -> PresentedModule:
    k = len(factors)
    rows = tuple(tuple(f if i == j else ZERO for j in range(k)) for i, f in enumerate(factors))
    return PresentedModule(k, rows, k)


def _evaluation_modules(components: Iterable[EvaluationComponent]) -> tuple[GradedModule, Support]:
    dims: dict[RootOfUnity, list[int]] = defaultdict(lambda: [0, 0])
    for c in components:
        dims[c.gamma][0] += c.dim0
        dims[c.gamma][1] += c.dim1
    orders = sorted({g.n for g, d in dims.items() if d[0] or d[1]})
    factors: tuple[list, list] = ([], [])
    supp = Support.empty()
    for d in orders:
        orbit = RootOfUnity(d, 1 if d > 1 else 0).galois_orbit()
        seen = {tuple(dims.get(g, (0, 0))) for g in orbit}
        if len(seen) != 1:
            raise GaloisOrbitMismatch(
                f"multiplicities differ across the primitive {d}-th roots of unity; "
                "such data has no presentation over Q")
        d0, d1 = seen.pop()
        phi = cyclotomic(d)
        factors[0].extend([phi] * d0)
        factors[1].extend([phi] * d1)
        supp = supp.union(Support.finite(phi))
    return GradedModule(_diag_module(factors[0]), _diag_module(factors[1])), supp


def fixed_point_sheaf_module(components: Iterable[EvaluationComponent]) -> tuple[GradedModule, Support]:
    """Direct sum of evaluation modules and its support (the gammas that occur)."""
    return _evaluation_modules(components)


def _dims_pair(v) -> tuple[int, int]:
    if isinstance(v, int):
        return v, 0
    d0, d1 = v
    return int(d0), int(d1)


def baum_connes_module(n: int, dims: Mapping[int, object]) -> tuple[GradedModule, Support]:
    """``K^*_H(Y) = sum_h K^*(Y^h)`` for ``H = Omega_n``, with each summand placed at ``h``.

    ``dims`` maps ``j`` (for ``h = exp(2*pi*i*j/n)``) to a degree-0
    dimension or a ``(dim0, dim1)`` pair.
    """
    if n < 1:
        raise ValueError("group order must be positive")
    comps = [EvaluationComponent(RootOfUnity(n, j), *_dims_pair(v)) for j, v in sorted(dims.items())]
    return _evaluation_modules(comps)


def slice_module(n: int, multiplicities: Sequence[int] | None = None,
                 multiplicities1: Sequence[int] | None = None) -> GradedModule:
    """Module of the slice ``T x_{Omega_n} Y`` through ``Rep(Omega_n) = Laur/(X^n - 1)``.

    ``multiplicities[j]`` is the multiplicity at ``exp(2*pi*i*j/n)``; the
    default (all ones) is the regular representation.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    m0 = [1] * n if multiplicities is None else list(multiplicities)
    m1 = [0] * n if multiplicities1 is None else list(multiplicities1)
    if len(m0) != n or len(m1) != n:
        raise ValueError(f"expected {n} multiplicities, one per point of Omega_{n}")
    comps = [EvaluationComponent(RootOfUnity(n, j), a, b) for j, (a, b) in enumerate(zip(m0, m1))]
    return _evaluation_modules(comps)[0]


# -- CP^1 -----------------------------------------------------------------------

_S = X + X ** -1  # X + X^-1


@dataclass(frozen=True)
class CP1Element:
    """``a + b[H]`` in ``K^0_T(CP^1)``, where ``[H]^2 = (X + X^-1)[H] - 1``."""

    a: LaurentPoly = ONE
    b: LaurentPoly = ZERO

    def __post_init__(self):
        object.__setattr__(self, "a", LaurentPoly.coerce(self.a))
        object.__setattr__(self, "b", LaurentPoly.coerce(self.b))

    def __mul__(self, other: CP1Element) -> CP1Element:
        a, b, c, d = self.a, self.b, other.a, other.b
        return CP1Element(a * c - b * d, a * d + b * c + b * d * _S)

    def __pow__(self, k: int) -> CP1Element:
        out = CP1Element(ONE, ZERO)
        for _ in range(k):
            out = out * self
        return out


H_CLASS = CP1Element(ZERO, ONE)


def cp1_multiplication_matrix(xi: CP1Element) -> list[list[LaurentPoly]]:
    """Matrix of multiplication by ``xi`` on the basis ``{1, [H]}`` (columns are images)."""
    a, b = xi.a, xi.b
    return [[a, -b], [b, a + b * _S]]


def cp1_module() -> GradedModule:
    """``K^*_T(CP^1)``: free of rank 2 in degree 0, zero in degree 1."""
    return GradedModule(PresentedModule.free(2), PresentedModule.free(0))


def cp1_map(k: int) -> GradedModuleMap:
    return GradedModuleMap.even(mat_pow(cp1_multiplication_matrix(H_CLASS), k), [])


def cp1_twisted_trace(k: int) -> LaurentPoly:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return module_trace(PresentedModule.free(2), mat_pow(cp1_multiplication_matrix(H_CLASS), k))


# -- fixed-point data -------------------------------------------------------------


@dataclass(frozen=True)
class FixedPointComponent:
    """A component ``P`` of the stationary set with Euler characteristic and
    the characters ``X^e`` (with multiplicities) of the bundle restricted to ``P``."""

    euler_characteristic: int
    characters: tuple = ()

    def __post_init__(self):
        chars = tuple((int(e), int(m)) for e, m in self.characters)
        if any(m < 1 for _, m in chars):
            raise ValueError("character multiplicities must be positive")
        object.__setattr__(self, "characters", chars)

    @property
    def rank(self) -> int:
        return sum(m for _, m in self.characters)


@dataclass(frozen=True)
class FixedPointData:
    components: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    @classmethod
    def isolated(cls, restrictions: Iterable) -> FixedPointData:
        """Isolated stationary points, one restriction ``xi_P`` per point."""
        comps = []
        for xi in restrictions:
            p = LaurentPoly.coerce(xi)
            chars = []
            for e, c in p.terms():
                if c.denominator != 1 or c < 1:
                    raise ValueError(f"{p} is not the character of a genuine representation")
                chars.append((e, int(c)))
            comps.append(FixedPointComponent(1, tuple(chars)))
        return cls(tuple(comps))


def cp1_fixed_point_data(k: int) -> FixedPointData:
    """Two stationary points; ``H^k`` restricts to ``X^k`` and ``X^-k``."""
    return FixedPointData((FixedPointComponent(1, ((k, 1),)), FixedPointComponent(1, ((-k, 1),))))


def euler_number(fp: FixedPointData) -> LaurentPoly:
    """``sum_P chi(P) sum_lambda dim(E_lambda) X^lambda``."""
    acc: dict[int, int] = defaultdict(int)
    for comp in fp.components:
        for e, m in comp.characters:
            acc[e] += comp.euler_characteristic * m
    return LaurentPoly(acc)


def nonequivariant_euler_number(fp: FixedPointData) -> int:
    return sum(c.euler_characteristic * c.rank for c in fp.components)


def lefschetz_crosscheck(fp: FixedPointData, gm: GradedModule, L: GradedModuleMap) -> bool:
    """Fixed-point side against the graded module trace (degree 0 minus degree 1)."""
    return euler_number(fp) == graded_trace(gm, L, EVEN_MINUS_ODD).value


def parse_fixed_point_data(text: str) -> FixedPointData:
    """One component per line: ``euler=<int> characters: X^2:1, X^-2:3``."""
    comps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            comps.append(_parse_component(line))
        except ParseError as exc:
            raise exc.at_line(lineno, raw) from None
    return FixedPointData(tuple(comps))


def _parse_component(line: str) -> FixedPointComponent:
    head, sep, tail = line.partition("characters:")
    if not sep:
        raise ParseError("expected 'characters:'", column=1, text=line)
    key, eq, val = head.strip().partition("=")
    if key.strip() != "euler" or not eq:
        raise ParseError("expected 'euler=<int>'", column=1, text=line)
    try:
        chi = int(val.strip())
    except ValueError:
        raise ParseError(f"bad Euler characteristic {val.strip()!r}", column=line.index("=") + 2, text=line) from None
    chars = []
    offset = len(head) + len(sep)
    for item in tail.split(","):
        col = offset + 1 + (len(item) - len(item.lstrip()))
        offset += len(item) + 1
        if not item.strip():
            continue
        mono, colon, mult = item.strip().rpartition(":")
        if not colon:
            raise ParseError("expected 'character:multiplicity'", column=col, text=line)
        try:
            p = parse_poly(mono)
        except ParseError as exc:
            raise ParseError(exc.message, column=col + (exc.column or 1) - 1, text=line) from None
        if not p.is_monomial or p.coeff(p.low) != 1:
            raise ParseError(f"character {mono!r} is not a monomial X^e", column=col, text=line)
        try:
            m = int(mult)
        except ValueError:
            raise ParseError(f"bad multiplicity {mult!r}", column=col, text=line) from None
        chars.append((p.low, m))
    return FixedPointComponent(chi, tuple(chars))
