"""Exact rational arithmetic and fractional-linear reparametrizations.

Rational values throughout the package are stdlib ``fractions.Fraction``
objects: always reduced, denominator always positive, with exact comparison
and arithmetic.  The type is re-exported here as ``Rational``.  This module
adds the "p/q" string codec used on every JSON surface and implements
fractional-linear (Moebius) maps x -> (a*x + b)/(c*x + d) with a canonical
integer-coefficient form, which the wall registries use to translate between
coefficient scales.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DegenerateMapError, PoleError

Rational = Fraction

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(-?\d+))?$")


def parse_rational(value: int | str | Fraction) -> Fraction:
    """Parse an integer or a "p/q" string into a Fraction.

    The denominator part is optional; "2/11", "-3", 7 are all accepted.
    Strings in any other shape (floats, whitespace inside, empty) are
    rejected so malformed registry files fail loudly.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value.strip())
        if m:
            p = int(m.group(1))
            q = int(m.group(2)) if m.group(2) is not None else 1
            if q == 0:
                raise ValueError(f"zero denominator in rational literal {value!r}")
            return Fraction(p, q)
    raise ValueError(f"not a rational literal: {value!r}")


def format_rational(value: Fraction) -> str:
    """Render a Fraction as "p/q", omitting the denominator when it is 1."""
    return str(Fraction(value))


@dataclass(frozen=True)
class MoebiusMap:
    """The map x -> (a*x + b)/(c*x + d) with integer coefficients.

    Canonical form, enforced at construction: gcd(a, b, c, d) = 1 and the
    first nonzero coefficient is positive, so equal maps compare and hash
    equal.  The determinant a*d - b*c must be nonzero; composition of
    nondegenerate maps is automatically nondegenerate (determinants
    multiply), and the constructor re-checks anyway.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        coeffs = (self.a, self.b, self.c, self.d)
        if not all(isinstance(v, int) for v in coeffs):
            raise TypeError(f"integer coefficients required, got {coeffs!r}")
        if self.a * self.d - self.b * self.c == 0:
            raise DegenerateMapError(f"vanishing determinant: {coeffs!r}")
        g = gcd(*coeffs)
        lead = next(v for v in coeffs if v != 0)
        if lead < 0:
            g = -g
        if g != 1:
            for name, v in zip("abcd", coeffs):
                object.__setattr__(self, name, v // g)

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1, 0, 0, 1)

    @property
    def determinant(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    def coefficients(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __call__(self, x: Fraction | int) -> Fraction:
        x = Fraction(x)
        den = self.c * x + self.d
        if den == 0:
            raise PoleError(f"{self} has a pole at {format_rational(x)}")
        return (self.a * x + self.b) / den

    def inverse(self) -> "MoebiusMap":
        """The inverse map; adjugate coefficients, re-canonicalized."""
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def compose(self, other: "MoebiusMap") -> "MoebiusMap":
        """self after other: (self.compose(other))(x) = self(other(x))."""
        a, b, c, d = self.coefficients()
        e, f, g, h = other.coefficients()
        return MoebiusMap(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def __str__(self) -> str:
        return f"({_linear_str(self.a, self.b)})/({_linear_str(self.c, self.d)})"


def _linear_str(p: int, q: int) -> str:
    """Render p*x + q compactly, e.g. "9x", "x + 8", "-x", "3"."""
    if p == 0:
        return str(q)
    xterm = {1: "x", -1: "-x"}.get(p, f"{p}x")
    if q == 0:
        return xterm
    sign = "+" if q > 0 else "-"
    return f"{xterm} {sign} {abs(q)}"
