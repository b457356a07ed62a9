"""Numerical invariants of Fano factors and their products.

A factor is summarized by its dimension n, its anticanonical volume V, and
the Hilbert polynomial chi(m) = h^0(-m K); the three are tied together by
chi(0) = 1 and n! * lead(chi) = V.  Products combine by

    dimension:  n1 + n2
    volume:     binomial(n1 + n2, n1) * V1 * V2
    hilbert:    chi1 * chi2   (polynomial product)

The volume rule is the top self-intersection of p1*(-K1) + p2*(-K2) on the
product: only the mixed term binomial(n1+n2, n1) * (-K1)^n1 * (-K2)^n2
survives.  The Hilbert rule is the Kuenneth factorization of sections of the
anticanonical powers.  Both rules are cross-checked against each other here:
lead(chi1 * chi2) = (V1/n1!) * (V2/n2!) forces the binomial in the volume.

Polynomials are tuples of Fractions, constant term first, no trailing zeros.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .exactq import format_rational, parse_rational

Polynomial = tuple[Fraction, ...]


def poly_trim(coeffs) -> Polynomial:
    """Normalize to a tuple of Fractions with no trailing zero coefficients."""
    out = [Fraction(v) for v in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out) if out else (Fraction(0),)


def poly_eval(coeffs, x) -> Fraction:
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(tuple(coeffs)):
        acc = acc * x + c
    return acc


def poly_mul(f, g) -> Polynomial:
    f, g = poly_trim(f), poly_trim(g)
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return poly_trim(out)


def poly_degree(coeffs) -> int:
    return len(poly_trim(coeffs)) - 1


def poly_lead(coeffs) -> Fraction:
    return poly_trim(coeffs)[-1]


def parse_poly(values) -> Polynomial:
    """Parse a constant-first list of "p/q" strings or ints."""
    return poly_trim([parse_rational(v) for v in values])


def format_poly(coeffs) -> list[str]:
    """Constant-first list of "p/q" strings, the JSON form of a polynomial."""
    return [format_rational(c) for c in poly_trim(coeffs)]


@dataclass(frozen=True)
class FanoNumerics:
    """Dimension, anticanonical volume, and Hilbert polynomial of one factor.

    Construction checks only shape (dimension >= 0, volume > 0); whether the
    polynomial actually matches the pair (n, V) is the job of
    consistency_check, so deliberately broken inputs can be examined.
    """

    dimension: int
    volume: Fraction
    hilbert: Polynomial

    def __post_init__(self) -> None:
        if self.dimension < 0:
            raise ValueError(f"negative dimension {self.dimension}")
        object.__setattr__(self, "volume", Fraction(self.volume))
        if self.volume <= 0:
            raise ValueError(f"volume must be positive, got {self.volume}")
        object.__setattr__(self, "hilbert", poly_trim(self.hilbert))


def consistency_check(x: FanoNumerics) -> list[str]:
    """Return the violated invariants of x; empty list means pass."""
    problems = []
    if poly_eval(x.hilbert, 0) != 1:
        problems.append(
            f"hilbert(0) = {format_rational(poly_eval(x.hilbert, 0))}, expected 1"
        )
    if poly_degree(x.hilbert) != x.dimension:
        problems.append(
            f"hilbert degree {poly_degree(x.hilbert)}, expected {x.dimension}"
        )
    lead = poly_lead(x.hilbert)
    if factorial(x.dimension) * lead != x.volume:
        problems.append(
            f"{x.dimension}! * lead = "
            f"{format_rational(factorial(x.dimension) * lead)}, "
            f"expected volume {format_rational(x.volume)}"
        )
    return problems


def product_volume(a: FanoNumerics, b: FanoNumerics) -> tuple[int, Fraction]:
    """Dimension and volume of the product factor."""
    n = a.dimension + b.dimension
    return n, comb(n, a.dimension) * a.volume * b.volume


def product_hilbert(a: FanoNumerics, b: FanoNumerics) -> Polynomial:
    """Hilbert polynomial of the product: the product of the polynomials."""
    return poly_mul(a.hilbert, b.hilbert)


def product_numerics(a: FanoNumerics, b: FanoNumerics) -> FanoNumerics:
    """Combine two factors; the result satisfies the FanoNumerics invariants
    whenever the inputs do (leading coefficients multiply, so n! * lead
    reproduces exactly the binomial-weighted volume)."""
    n, vol = product_volume(a, b)
    return FanoNumerics(n, vol, product_hilbert(a, b))
