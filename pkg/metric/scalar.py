"""
Exact arithmetic over the rationals and real quadratic fields Q(√d).

A :class:`Scalar` is ``a + b·√d`` with rational ``a``, ``b`` and a squarefree
radicand ``d``.  Every coordinate and every squared distance handled by the
package is a Scalar, so equality of distance classes is decided exactly.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

import mpmath

from utils.errors import InputError, ParamError, PolyhomError

logger = logging.getLogger(__name__)

# Rationals are plain fractions: lowest terms, positive denominator, unbounded.
Rational = Fraction

Number = Union[int, Fraction, "Scalar"]


class RadicandMismatch(PolyhomError, ValueError):
    """Two irrational Scalars with different radicands were combined."""

    def __init__(self, left: int, right: int):
        super().__init__(f"Cannot combine sqrt({left}) with sqrt({right})")
        self.left = left
        self.right = right


class DivisionByZero(PolyhomError, ZeroDivisionError):
    """Inverse of zero requested."""


class ScalarParseError(InputError):
    """Text could not be read as a Scalar."""


def squarefree_part(n: int) -> Tuple[int, int]:
    """Split ``n`` as ``outer² · core`` with ``core`` squarefree.

    Returns:
        ``(outer, core)``
    """
    if n < 0:
        raise ParamError(f"Radicand must be non-negative, got {n}", "d")
    if n < 4:
        return 1, n
    outer, core, f = 1, n, 2
    while f * f <= core:
        while core % (f * f) == 0:
            core //= f * f
            outer *= f
        f += 1
    return outer, core


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


@dataclass(frozen=True, eq=False)
class Scalar:
    """Element ``a + b·√d`` of Q(√d) in canonical form.

    Canonical form: ``d`` squarefree, and ``b = 0, d = 0`` whenever the value is
    rational.  Construction normalizes any input to this form, so re-normalizing
    an operation result never changes it.
    """

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    d: int = 0

    def __post_init__(self):
        a = Fraction(self.a)
        b = Fraction(self.b)
        d = int(self.d)
        if d < 0:
            raise ParamError(f"Radicand must be non-negative, got {d}", "d")
        if b != 0 and d > 1:
            outer, d = squarefree_part(d)
            b *= outer
        if d == 1:
            a += b
            b = Fraction(0)
        if d == 0 or b == 0:
            b = Fraction(0)
            d = 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    # -- construction helpers -------------------------------------------

    @classmethod
    def sqrt(cls, n: int) -> "Scalar":
        """√n as a Scalar (n ≥ 0)."""
        return cls(0, 1, n)

    @classmethod
    def coerce(cls, value: Number) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        raise TypeError(f"Cannot convert {type(value).__name__} to Scalar")

    # -- predicates -----------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def sign(self) -> int:
        """Exact sign of ``a + b√d`` in {-1, 0, +1}."""
        sa, sb = _sign(self.a), _sign(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a² with b²d
        return sa * _sign(self.a * self.a - self.b * self.b * self.d)

    # -- arithmetic -----------------------------------------------------

    def _common_radicand(self, other: "Scalar") -> int:
        if self.b == 0:
            return other.d
        if other.b == 0 or other.d == self.d:
            return self.d
        raise RadicandMismatch(self.d, other.d)

    def __add__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        other = Scalar.coerce(other)
        d = self._common_radicand(other)
        return Scalar(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        other = Scalar.coerce(other)
        d = self._common_radicand(other)
        return Scalar(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise DivisionByZero("Inverse of zero")
        norm = self.a * self.a - self.b * self.b * self.d
        return Scalar(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        return self * Scalar.coerce(other).inverse()

    def __rtruediv__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = Scalar(1), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def conjugate(self) -> "Scalar":
        return Scalar(self.a, -self.b, self.d)

    # -- comparison -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.d == other.d

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def _compare(self, other) -> int:
        return (self - Scalar.coerce(other)).sign()

    def __lt__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        return self._compare(other) < 0

    def __le__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        return self._compare(other) <= 0

    def __gt__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        return self._compare(other) > 0

    def __ge__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        return self._compare(other) >= 0

    # -- conversion -----------------------------------------------------

    def __float__(self):
        if self.b == 0:
            return float(self.a)
        return float(self.to_mpf(30))

    def to_mpf(self, digits: int = 50) -> mpmath.mpf:
        """High-precision evaluation (display and cross-checks only)."""
        with mpmath.workdps(digits):
            value = mpmath.mpf(self.a.numerator) / self.a.denominator
            if self.b:
                value += mpmath.mpf(self.b.numerator) / self.b.denominator * mpmath.sqrt(self.d)
            return +value

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        op = "+" if self.b > 0 else "-"
        return f"{self.a}{op}{abs(self.b)}*sqrt({self.d})"

    def __repr__(self):
        return f"Scalar({self})"


PHI = Scalar(Fraction(1, 2), Fraction(1, 2), 5)
"""The golden ratio (1 + √5)/2."""

ZERO = Scalar(0)
ONE = Scalar(1)


_RATIONAL = r"\d+(?:/\d+)?"
_RATIONAL_ONLY = re.compile(rf"^\s*([+-]?{_RATIONAL})\s*$")
_RADICAL_ONLY = re.compile(rf"^\s*([+-])?\s*(?:({_RATIONAL})\s*\*\s*)?sqrt\(\s*(\d+)\s*\)\s*$")
_FULL = re.compile(
    rf"^\s*([+-]?{_RATIONAL})\s*([+-])\s*(?:({_RATIONAL})\s*\*\s*)?sqrt\(\s*(\d+)\s*\)\s*$"
)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ScalarParseError(f"Invalid rational '{text}': {e}")


def parse_scalar(text: str) -> Scalar:
    """Read ``"p/q"`` or ``"p/q+r/s*sqrt(d)"`` (and the shorthands ``"sqrt(d)"``,
    ``"-r/s*sqrt(d)"``).

    Raises:
        ScalarParseError: unreadable text.
    """
    if not isinstance(text, str):
        raise ScalarParseError(f"Expected scalar text, got {type(text).__name__}")

    match = _RATIONAL_ONLY.match(text)
    if match:
        return Scalar(_fraction(match.group(1)))

    match = _RADICAL_ONLY.match(text)
    if match:
        sign, coefficient, radicand = match.groups()
        b = _fraction(coefficient) if coefficient else Fraction(1)
        if sign == "-":
            b = -b
        return Scalar(0, b, int(radicand))

    match = _FULL.match(text)
    if match:
        a_text, sign, coefficient, radicand = match.groups()
        b = _fraction(coefficient) if coefficient else Fraction(1)
        if sign == "-":
            b = -b
        return Scalar(_fraction(a_text), b, int(radicand))

    raise ScalarParseError(f"Cannot parse scalar '{text}'")


def format_scalar(value: Scalar) -> str:
    """Canonical text; ``parse_scalar(format_scalar(x)) == x``."""
    return str(Scalar.coerce(value))


def scalar_arith(x: Number, y: Number = None, op: str = "add") -> Scalar:
    """Functional front end for the five field operations.

    Args:
        x: left operand.
        y: right operand (ignored for ``neg`` and ``inv``).
        op: one of ``add``, ``sub``, ``mul``, ``neg``, ``inv``.

    Raises:
        RadicandMismatch: incompatible radicands.
        DivisionByZero: ``inv`` of zero.
        ParamError: unknown op.
    """
    x = Scalar.coerce(x)
    if op == "neg":
        return -x
    if op == "inv":
        return x.inverse()
    if y is None:
        raise ParamError(f"Operation '{op}' needs two operands", "y")
    y = Scalar.coerce(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ParamError(f"Unknown scalar operation '{op}'", "op")


def scalar_sign(x: Number) -> int:
    return Scalar.coerce(x).sign()


def common_radicand(values) -> int:
    """Shared radicand of an iterable of Scalars (0 when all are rational).

    Raises:
        RadicandMismatch: two different irrational radicands occur.
    """
    radicand = 0
    for value in values:
        value = Scalar.coerce(value)
        if value.b == 0:
            continue
        if radicand == 0:
            radicand = value.d
        elif value.d != radicand:
            raise RadicandMismatch(radicand, value.d)
    return radicand
