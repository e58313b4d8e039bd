"""Exact arithmetic for finite sums of monomials in z and conj(z).

An expression is a finite sum of terms ``c * z**a * zb**b`` where the
coefficient ``c`` is a complex number with rational real and imaginary parts
and the exponents ``a``, ``b`` are rationals (``zb`` stands for the complex
conjugate of ``z``).  All ring operations, differentiation and conjugation
are exact; equality is structural.  The only floating-point operation is
:meth:`ZExpr.evaluate`, which uses the principal branch of ``z**a`` on the
cut plane ``C \\ (-inf, 0]``.

Terms are keyed by the exponent pair ``(a, b)``.  Normalization merges like
terms, drops zero coefficients and sorts terms by exponent pair, so two
expressions are equal iff their term tuples are equal.

The module also provides first-order differential operators ``d/dz + s(z)``
with holomorphic monomial-sum shifts ``s``, their exact composition into a
single higher-order operator, and exact application of operators to
expressions.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence, Union

RatLike = Union[int, Fraction]


class BranchCutError(ValueError):
    """Evaluation point lies on the cut (-inf, 0] and a fractional exponent occurs."""


class OriginError(ValueError):
    """Evaluation at the origin with a negative exponent."""


class NotASquareError(ValueError):
    """Exact square root requested of a rational that is not a perfect square."""


def as_fraction(x: RatLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


def sqrt_fraction(q: Fraction) -> Fraction:
    """Exact square root of a nonnegative rational, or NotASquareError."""
    if q < 0:
        raise NotASquareError(f"negative radicand {q}")
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn != n or rd * rd != d:
        raise NotASquareError(f"{q} is not the square of a rational")
    return Fraction(rn, rd)


@dataclass(frozen=True, slots=True)
class ExactScalar:
    """Complex number with rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(re: RatLike, im: RatLike = 0) -> ExactScalar:
        return ExactScalar(as_fraction(re), as_fraction(im))

    def __add__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return ExactScalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return ExactScalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self) -> ExactScalar:
        return ExactScalar(-self.re, -self.im)

    def __mul__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return ExactScalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        n = other.norm2()
        if n == 0:
            raise ZeroDivisionError("division by zero ExactScalar")
        return ExactScalar(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def conjugate(self) -> ExactScalar:
        return ExactScalar(self.re, -self.im)

    def norm2(self) -> Fraction:
        """Squared modulus, an exact rational."""
        return self.re * self.re + self.im * self.im

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"ExactScalar({self.re!r}, {self.im!r})"


SCALAR_ZERO = ExactScalar()
SCALAR_ONE = ExactScalar(Fraction(1))
SCALAR_I = ExactScalar(Fraction(0), Fraction(1))


def _coerce_scalar(x):
    if isinstance(x, ExactScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return ExactScalar(as_fraction(x))
    return NotImplemented


def format_fraction(q: Fraction) -> str:
    """Render a rational as "p" or "p/q"."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(s: ExactScalar) -> str:
    """Render like "1/2+3i/4", "-i", "2"."""
    if s.is_zero:
        return "0"
    parts = []
    if s.re != 0:
        parts.append(format_fraction(s.re))
    if s.im != 0:
        num, den = s.im.numerator, s.im.denominator
        sign = "-" if num < 0 else ("+" if parts else "")
        mag = abs(num)
        body = "i" if mag == 1 else f"{mag}i"
        if den != 1:
            body += f"/{den}"
        parts.append(sign + body)
    return "".join(parts)


@dataclass(frozen=True, slots=True)
class Monomial:
    """One term c * z**exp_z * zb**exp_zbar."""

    coeff: ExactScalar
    exp_z: Fraction = Fraction(0)
    exp_zbar: Fraction = Fraction(0)

    @property
    def total_degree(self) -> Fraction:
        return self.exp_z + self.exp_zbar


class ZExpr:
    """Finite sum of monomials in z and conj(z) with rational exponents.

    Immutable; supports +, -, *, unary -, scalar multiplication and exact
    division by a nonzero scalar.  Construct through the factory class
    methods or arithmetic rather than the raw constructor.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: tuple[Monomial, ...]):
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("ZExpr is immutable")

    # -- construction -------------------------------------------------

    @staticmethod
    def from_terms(terms: Iterable[Monomial]) -> ZExpr:
        acc: dict[tuple[Fraction, Fraction], ExactScalar] = {}
        for t in terms:
            key = (t.exp_z, t.exp_zbar)
            cur = acc.get(key)
            acc[key] = t.coeff if cur is None else cur + t.coeff
        return ZExpr._from_dict(acc)

    @staticmethod
    def _from_dict(acc: dict[tuple[Fraction, Fraction], ExactScalar]) -> ZExpr:
        items = [
            Monomial(c, a, b) for (a, b), c in acc.items() if not c.is_zero
        ]
        items.sort(key=lambda t: (t.exp_z, t.exp_zbar))
        return ZExpr(tuple(items))

    @staticmethod
    def zero() -> ZExpr:
        return _ZERO

    @staticmethod
    def one() -> ZExpr:
        return _ONE

    @staticmethod
    def const(value) -> ZExpr:
        c = _coerce_scalar(value)
        if c is NotImplemented:
            raise TypeError(f"cannot build constant from {type(value).__name__}")
        if c.is_zero:
            return _ZERO
        return ZExpr((Monomial(c),))

    @staticmethod
    def monomial(coeff, exp_z: RatLike = 0, exp_zbar: RatLike = 0) -> ZExpr:
        c = _coerce_scalar(coeff)
        if c is NotImplemented:
            raise TypeError(f"bad coefficient {coeff!r}")
        if c.is_zero:
            return _ZERO
        return ZExpr((Monomial(c, as_fraction(exp_z), as_fraction(exp_zbar)),))

    @staticmethod
    def z_pow(exp: RatLike) -> ZExpr:
        return ZExpr.monomial(1, exp, 0)

    @staticmethod
    def zbar_pow(exp: RatLike) -> ZExpr:
        return ZExpr.monomial(1, 0, exp)

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        other = _coerce_expr(other)
        if other is NotImplemented:
            return NotImplemented
        acc = {(t.exp_z, t.exp_zbar): t.coeff for t in self.terms}
        for t in other.terms:
            key = (t.exp_z, t.exp_zbar)
            cur = acc.get(key)
            acc[key] = t.coeff if cur is None else cur + t.coeff
        return ZExpr._from_dict(acc)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_expr(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_expr(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __neg__(self) -> ZExpr:
        return ZExpr(tuple(Monomial(-t.coeff, t.exp_z, t.exp_zbar) for t in self.terms))

    def __mul__(self, other):
        other = _coerce_expr(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict[tuple[Fraction, Fraction], ExactScalar] = {}
        for s in self.terms:
            for t in other.terms:
                key = (s.exp_z + t.exp_z, s.exp_zbar + t.exp_zbar)
                c = s.coeff * t.coeff
                cur = acc.get(key)
                acc[key] = c if cur is None else cur + c
        return ZExpr._from_dict(acc)

    __rmul__ = __mul__

    def scale_div(self, divisor) -> ZExpr:
        """Exact division by a nonzero scalar."""
        d = _coerce_scalar(divisor)
        if d is NotImplemented:
            raise TypeError(f"bad divisor {divisor!r}")
        if d.is_zero:
            raise ZeroDivisionError("division of ZExpr by zero scalar")
        return ZExpr(tuple(Monomial(t.coeff / d, t.exp_z, t.exp_zbar) for t in self.terms))

    # -- structure ----------------------------------------------------

    def conjugate(self) -> ZExpr:
        """Swap z and conj(z) and conjugate coefficients; an involution."""
        return ZExpr.from_terms(
            Monomial(t.coeff.conjugate(), t.exp_zbar, t.exp_z) for t in self.terms
        )

    def diff_z(self) -> ZExpr:
        return ZExpr.from_terms(
            Monomial(t.coeff * t.exp_z, t.exp_z - 1, t.exp_zbar)
            for t in self.terms
            if t.exp_z != 0
        )

    def diff_zbar(self) -> ZExpr:
        return ZExpr.from_terms(
            Monomial(t.coeff * t.exp_zbar, t.exp_z, t.exp_zbar - 1)
            for t in self.terms
            if t.exp_zbar != 0
        )

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_real(self) -> bool:
        """True iff the expression equals its own conjugate."""
        return self == self.conjugate()

    @property
    def is_holomorphic(self) -> bool:
        return all(t.exp_zbar == 0 for t in self.terms)

    def single_monomial(self) -> Monomial:
        """The unique term of a one-term expression (zero not allowed)."""
        if len(self.terms) != 1:
            raise ValueError(f"expected a single monomial, got {len(self.terms)} terms")
        return self.terms[0]

    def constant_value(self) -> ExactScalar:
        """Value of a constant expression (zero or a single degree-0 term)."""
        if self.is_zero:
            return SCALAR_ZERO
        t = self.single_monomial()
        if t.exp_z != 0 or t.exp_zbar != 0:
            raise ValueError(f"not a constant: {self}")
        return t.coeff

    def min_total_degree(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero expression has no degree")
        return min(t.total_degree for t in self.terms)

    def max_total_degree(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero expression has no degree")
        return max(t.total_degree for t in self.terms)

    # -- numeric evaluation -------------------------------------------

    def evaluate(self, point: complex) -> complex:
        """Principal-branch value at ``point``.

        Raises BranchCutError on the cut (-inf, 0] when a fractional
        exponent occurs, and OriginError at 0 with a negative exponent.
        """
        z = complex(point)
        fractional = any(
            t.exp_z.denominator != 1 or t.exp_zbar.denominator != 1 for t in self.terms
        )
        if z == 0:
            if any(t.exp_z < 0 or t.exp_zbar < 0 for t in self.terms):
                raise OriginError("negative exponent at the origin")
            total = 0j
            for t in self.terms:
                if t.exp_z == 0 and t.exp_zbar == 0:
                    total += complex(t.coeff)
            return total
        if z.imag == 0 and z.real < 0 and fractional:
            raise BranchCutError(f"{z} lies on the branch cut")
        powers: dict[Fraction, complex] = {}

        def zpow(a: Fraction) -> complex:
            val = powers.get(a)
            if val is None:
                if a.denominator == 1:
                    val = z ** a.numerator
                else:
                    val = cmath.exp(float(a) * cmath.log(z))
                powers[a] = val
            return val

        total = 0j
        for t in self.terms:
            total += complex(t.coeff) * zpow(t.exp_z) * zpow(t.exp_zbar).conjugate()
        return total

    # -- comparison / display -----------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, ZExpr) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        bits = []
        for t in self.terms:
            factors = []
            if t.exp_z != 0:
                factors.append(f"z^({format_fraction(t.exp_z)})")
            if t.exp_zbar != 0:
                factors.append(f"zb^({format_fraction(t.exp_zbar)})")
            coeff = format_scalar(t.coeff)
            if factors and coeff == "1":
                bits.append("*".join(factors))
            elif factors:
                bits.append(f"({coeff})*" + "*".join(factors))
            else:
                bits.append(f"({coeff})")
        return " + ".join(bits)

    def __repr__(self) -> str:
        return f"ZExpr({self})"


_ZERO = ZExpr(())
_ONE = ZExpr((Monomial(SCALAR_ONE),))


def _coerce_expr(x):
    if isinstance(x, ZExpr):
        return x
    if isinstance(x, (int, Fraction, ExactScalar)):
        return ZExpr.const(x)
    return NotImplemented


@dataclass(frozen=True)
class FirstOrderOp:
    """The operator d/dz + shift with a holomorphic monomial-sum shift."""

    shift: ZExpr

    def __post_init__(self):
        if not self.shift.is_holomorphic:
            raise ValueError("first-order shift must be holomorphic (no conj(z) terms)")

    def apply(self, f: ZExpr) -> ZExpr:
        return f.diff_z() + self.shift * f


@dataclass(frozen=True)
class OrdinaryOp:
    """Operator sum(coefficients[j] * d^(order-j)/dz^(order-j)), leading coefficient 1."""

    coefficients: tuple[ZExpr, ...]

    def __post_init__(self):
        if not self.coefficients or self.coefficients[0] != _ONE:
            raise ValueError("leading coefficient must be the constant 1")

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def apply(self, f: ZExpr) -> ZExpr:
        # Derivatives from highest to lowest order, matching coefficient order.
        derivs = [f]
        for _ in range(self.order):
            derivs.append(derivs[-1].diff_z())
        total = ZExpr.zero()
        for j, c in enumerate(self.coefficients):
            total = total + c * derivs[self.order - j]
        return total


def compose(ops: Sequence[FirstOrderOp]) -> OrdinaryOp:
    """Expand a left-to-right product of first-order factors exactly.

    The rightmost factor acts first; the result has leading coefficient 1.
    """
    coeffs: list[ZExpr] = [ZExpr.one()]
    for op in reversed(ops):
        s = op.shift
        m = len(coeffs) - 1
        new: list[ZExpr] = []
        for j in range(m + 2):
            c_j = coeffs[j] if j <= m else ZExpr.zero()
            c_prev = coeffs[j - 1] if 1 <= j <= m + 1 else ZExpr.zero()
            new.append(c_j + c_prev.diff_z() + s * c_prev)
        coeffs = new
    return OrdinaryOp(tuple(coeffs))
