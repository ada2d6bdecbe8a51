"""Coefficient fields: exact rationals, binary64 floats and nested series.

Towers and series never inspect coefficient types directly.  Plain Python
numbers are used as values (``fractions.Fraction`` or ``int`` for the exact
field, ``float`` for binary64); the ``Field`` objects below supply what the
operators alone cannot: typed zero and one, IEEE-style division, integer
embedding, rendering and the value of elementary functions at a point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any

from .errors import FieldMismatch, SingularDivision, ZeroDenominator

__all__ = [
    "Field",
    "RationalField",
    "Binary64Field",
    "SeriesRing",
    "RATIONAL",
    "BINARY64",
    "rational",
    "field_of",
    "fdiv",
    "felem",
    "render",
    "ELEMENTARY_TAGS",
]

ELEMENTARY_TAGS = ("exp", "log", "sqrt", "sin", "cos", "tan", "atan", "asin", "acos")


def rational(p: int, q: int = 1) -> Fraction:
    """Exact rational ``p/q`` in lowest terms with a positive denominator."""
    if q == 0:
        raise ZeroDenominator(f"rational({p}, 0)")
    return Fraction(p, q)


class Field:
    name = "abstract"
    zero: Any
    one: Any

    def from_int(self, n: int):
        raise NotImplementedError

    def coerce(self, x):
        return x

    def div(self, a, b):
        raise NotImplementedError

    def recip(self, a):
        return self.div(self.one, a)

    def is_zero(self, a) -> bool:
        return a == 0

    def elementary(self, tag: str, x):
        raise FieldMismatch(f"{tag} is not available over the {self.name} field")

    def render(self, a) -> str:
        return str(a)

    def __repr__(self) -> str:
        return f"<{self.name} field>"


class RationalField(Field):
    name = "rat"
    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def coerce(self, x) -> Fraction:
        return Fraction(x)

    def div(self, a, b):
        if b == 0:
            raise SingularDivision(f"exact division of {a} by zero")
        if isinstance(a, int):
            a = Fraction(a)
        return a / b

    def elementary(self, tag: str, x):
        """Exact value at the few points where it is rational.

        exp(0), log(1), sin(0), cos(0), tan(0), atan(0), asin(0), acos(1) and
        square roots of rational squares; anything else is a FieldMismatch.
        """
        x = Fraction(x)
        if tag == "sqrt" and x >= 0:
            num = math.isqrt(x.numerator)
            den = math.isqrt(x.denominator)
            if num * num == x.numerator and den * den == x.denominator:
                return Fraction(num, den)
        exact = {
            ("exp", 0): 1,
            ("log", 1): 0,
            ("sin", 0): 0,
            ("cos", 0): 1,
            ("tan", 0): 0,
            ("atan", 0): 0,
            ("asin", 0): 0,
            ("acos", 1): 0,
        }
        key = (tag, x)
        if key in exact:
            return Fraction(exact[key])
        raise FieldMismatch(f"{tag}({x}) is not an exact rational; use the f64 field")

    def render(self, a) -> str:
        return str(Fraction(a))


def _nan_on_domain_error(fn):
    def wrapped(x):
        try:
            return fn(x)
        except ValueError:
            return math.nan
        except OverflowError:
            return math.inf

    return wrapped


def _signed_inf(a) -> float:
    return math.inf if a > 0 else -math.inf


def _tan(x):
    return math.tan(x) if math.isfinite(x) else math.nan


class Binary64Field(Field):
    name = "f64"
    zero = 0.0
    one = 1.0
    _functions = {
        "exp": _nan_on_domain_error(math.exp),
        "log": _nan_on_domain_error(math.log),
        "sqrt": _nan_on_domain_error(math.sqrt),
        "sin": _nan_on_domain_error(math.sin),
        "cos": _nan_on_domain_error(math.cos),
        "tan": _nan_on_domain_error(_tan),
        "atan": _nan_on_domain_error(math.atan),
        "asin": _nan_on_domain_error(math.asin),
        "acos": _nan_on_domain_error(math.acos),
    }

    def from_int(self, n: int) -> float:
        try:
            return float(n)
        except OverflowError:
            return math.inf if n > 0 else -math.inf

    def coerce(self, x) -> float:
        return float(x)

    def div(self, a, b):
        try:
            return a / b
        except ZeroDivisionError:
            if a == 0 or a != a:
                return math.nan
            return _signed_inf(a) * math.copysign(1.0, b)
        except OverflowError:
            # huge exact integer against a float
            return _signed_inf(a) * math.copysign(1.0, b)

    def elementary(self, tag: str, x):
        try:
            fn = self._functions[tag]
        except KeyError:
            raise FieldMismatch(f"unknown elementary function {tag!r}") from None
        return fn(float(x))

    def render(self, a) -> str:
        return repr(float(a))


class SeriesRing(Field):
    """Series over ``inner`` used as coefficients of another series.

    Only ring operations and division by nonzero integers are needed for the
    nested exponential; zero tests look at a bounded prefix.
    """

    ZERO_PROBE = 16

    def __init__(self, inner: Field):
        self.inner = inner
        self.name = f"series[{inner.name}]"

    @property
    def zero(self):
        from .series import szero

        return szero(self.inner)

    @property
    def one(self):
        from .series import const_series

        return const_series(self.inner.one)

    def from_int(self, n: int):
        from .series import const_series

        return const_series(self.inner.from_int(n))

    def div(self, a, b):
        return a / b

    def is_zero(self, a) -> bool:
        from .stream import take

        return all(self.inner.is_zero(c) for c in take(self.ZERO_PROBE, a))

    def render(self, a) -> str:
        from .stream import take

        shown = ", ".join(self.inner.render(c) for c in take(6, a))
        return f"[{shown}, ...]"

    def __eq__(self, other):
        return isinstance(other, SeriesRing) and other.inner == self.inner

    def __hash__(self):
        return hash(("series", self.inner))


RATIONAL = RationalField()
BINARY64 = Binary64Field()


def field_of(value) -> Field:
    if isinstance(value, float):
        return BINARY64
    if isinstance(value, (int, Fraction)):
        return RATIONAL
    getter = getattr(value, "coefficient_field", None)
    if getter is not None:
        return getter()
    raise TypeError(f"no coefficient field for {type(value).__name__}")


def fdiv(a, b):
    """Division with the semantics of the operands' field.

    Exact operands raise ``SingularDivision`` on a zero divisor; as soon as a
    float is involved, IEEE infinities and NaNs are produced instead.
    """
    if isinstance(a, float) or isinstance(b, float):
        return BINARY64.div(a, b)
    if isinstance(b, (int, Fraction)) and isinstance(a, (int, Fraction)):
        return RATIONAL.div(a, b)
    return a / b


def felem(tag: str, x):
    """Value of an elementary function at a scalar point."""
    return field_of(x).elementary(tag, x)


def render(value) -> str:
    return field_of(value).render(value)
