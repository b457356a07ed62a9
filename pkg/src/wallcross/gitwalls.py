"""Slope walls for pairs (degree-d hypersurface in P^n, hyperplane) by the
Hilbert-Mumford criterion.

Stability of a pair (f, h) at slope t in (0, 1) is probed by diagonal
one-parameter subgroups.  A weight vector is a primitive integer tuple
r = (r_0 >= r_1 >= ... >= r_n), not all zero, with sum zero; a degree-d
monomial m = x^e has weight <m, r> = sum e_i r_i, and the variable x_j has
weight r_j.  The convention used throughout this module:

    (f, h) is t-semistable  iff  for every choice of coordinates and every
    normalized r:   min over supp(f) of <m, r>  +  t * (min over supp(h)
    of the variable weight)  <=  0.

Equivalently, (r, j) destabilizes every pair with supp(f) inside

    M+(r, t, j) = { m : <m, r> + t * r_j > 0 }

and supp(h) inside {x_0, ..., x_j}.  Sign conventions for pair stability
differ across the literature; this one is pinned by the acceptance suite,
which requires the degree-3 computation to reproduce the registered slope
walls {1/5, 1/3, 3/7, 5/9, 9/13} exactly.

The finite probe set R comes from maximal-rank linear systems: together with
the sum-zero normalization, n - 1 equations chosen among monomial-difference
hyperplanes <m - m', r> = 0 and consecutive ties r_i = r_{i+1} cut out a ray,
whose primitive descending generator (when one exists) joins R.  Candidate
walls are the values t = -<m, r>/r_j landing in (0, 1).  A candidate is a
wall when the family of inclusion-maximal pairs (M+, j) differs on its two
sides.  Completeness of R is not proved here; it is backed empirically by
the bounded exhaustive refinement check (test suite) and by the acceptance
comparison against the registered tables.

Open question, recorded: whether thresholds j with r_j = 0 can ever carry a
wall under this convention.  They contribute t-independent supports only,
so they never create a candidate value, but they do participate in the
maximal family; we keep them for faithfulness.

Only (n, d) = (3, 3) is a supported target; other small (n, d) run in
exploratory mode with no acceptance claim.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd

from .errors import DimensionMismatchError, UnsupportedError
from .exactq import format_rational
from .wallsets import WallSet

Monomial = tuple[int, ...]
WeightVector = tuple[int, ...]

# candidate_weights refuses configurations with more monomials than this;
# the system enumeration is quadratic-to-cubic in the direction count.
MAX_MONOMIALS = 56

SUPPORTED = (3, 3)


def monomials(n: int, d: int) -> tuple[Monomial, ...]:
    """All degree-d exponent tuples in n + 1 variables, x_0-dominant first."""
    if n < 1 or d < 1:
        raise UnsupportedError(f"need n >= 1 and d >= 1, got ({n}, {d})")
    return tuple(
        sorted(
            (
                e
                for e in itertools.product(range(d + 1), repeat=n + 1)
                if sum(e) == d
            ),
            reverse=True,
        )
    )


def monomial_weight(m: Monomial, r: WeightVector) -> int:
    """<m, r> = sum of exponent times weight."""
    if len(m) != len(r):
        raise DimensionMismatchError(f"monomial {m} vs weight vector {r}")
    return sum(e * w for e, w in zip(m, r))


def is_weight_vector(r: tuple[int, ...]) -> bool:
    """Normalized probe: integer, descending, sum zero, nonzero, primitive."""
    return (
        len(r) >= 2
        and all(isinstance(v, int) for v in r)
        and all(a >= b for a, b in zip(r, r[1:]))
        and sum(r) == 0
        and any(v != 0 for v in r)
        and gcd(*r) == 1
    )


def _primitive(vec: tuple[int, ...]) -> tuple[int, ...]:
    g = gcd(*vec)
    return tuple(v // g for v in vec) if g > 1 else vec


def _sign_canonical(vec: tuple[int, ...]) -> tuple[int, ...]:
    lead = next((v for v in vec if v != 0), 0)
    return tuple(-v for v in vec) if lead < 0 else vec


def _int_det(rows: tuple[tuple[int, ...], ...]) -> int:
    """Determinant of a small square integer matrix, Laplace expansion."""
    k = len(rows)
    if k == 1:
        return rows[0][0]
    if k == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = 0
    rest = rows[1:]
    for col, v in enumerate(rows[0]):
        if v == 0:
            continue
        minor = tuple(tuple(row[c] for c in range(k) if c != col) for row in rest)
        term = v * _int_det(minor)
        total += term if col % 2 == 0 else -term
    return total


def _equation_directions(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Primitive sign-canonical normals: monomial differences and ties."""
    dirs = set()
    mons = monomials(n, d)
    for m1, m2 in itertools.combinations(mons, 2):
        diff = tuple(a - b for a, b in zip(m1, m2))
        dirs.add(_sign_canonical(_primitive(diff)))
    for i in range(n):
        tie = tuple(1 if k == i else -1 if k == i + 1 else 0 for k in range(n + 1))
        dirs.add(tie)
    return tuple(sorted(dirs))


@lru_cache(maxsize=None)
def candidate_weights(n: int, d: int) -> tuple[WeightVector, ...]:
    """Probe vectors from all maximal-rank (n - 1)-equation systems.

    Each system is the sum-zero row plus n - 1 chosen direction rows; when
    the rank is full the integer cross product yields the solution ray, and
    the primitive generator is kept if descending (one orientation only;
    vectors constant on all coordinates die against sum zero).
    """
    mons = monomials(n, d)
    if len(mons) > MAX_MONOMIALS:
        raise UnsupportedError(
            f"({n}, {d}) has {len(mons)} monomials, above the bound {MAX_MONOMIALS}"
        )
    dirs = _equation_directions(n, d)
    ones = tuple([1] * (n + 1))
    found = set()
    for chosen in itertools.combinations(dirs, n - 1):
        rows = (ones, *chosen)
        # generalized cross product: v_i = (-1)^i det(rows minus column i)
        v = tuple(
            (-1 if i % 2 else 1)
            * _int_det(tuple(tuple(row[c] for c in range(n + 1) if c != i) for row in rows))
            for i in range(n + 1)
        )
        if all(x == 0 for x in v):
            continue  # rank below n: no ray
        v = _primitive(v)
        for cand in (v, tuple(-x for x in v)):
            if all(a >= b for a, b in zip(cand, cand[1:])):
                found.add(cand)
                break
    assert all(is_weight_vector(r) for r in found)
    return tuple(sorted(found))


def exhaustive_weights(n: int, bound: int) -> tuple[WeightVector, ...]:
    """Every normalized weight vector with all |r_i| <= bound, for the
    refinement robustness check; grows fast with n and bound."""

    def rec(prefix: list[int], remaining: int) -> None:
        if remaining == 0:
            if sum(prefix) == 0 and any(prefix) and gcd(*prefix) == 1:
                out.add(tuple(prefix))
            return
        hi = prefix[-1] if prefix else bound
        # the remaining entries cannot push the sum back to zero otherwise
        for v in range(hi, -bound - 1, -1):
            s = sum(prefix) + v
            if s + (remaining - 1) * (-bound) > 0:
                continue
            if s + (remaining - 1) * v < 0:
                break
            prefix.append(v)
            rec(prefix, remaining - 1)
            prefix.pop()

    out: set[WeightVector] = set()
    rec([], n + 1)
    return tuple(sorted(out))


def max_destabilized_support(r: WeightVector, t: Fraction, j: int, d: int = 3) -> frozenset[Monomial]:
    """M+(r, t, j): monomials of degree d with <m, r> + t * r_j > 0."""
    t = Fraction(t)
    if not 0 <= j < len(r):
        raise DimensionMismatchError(f"variable index {j} out of range for {r}")
    p, q = t.numerator, t.denominator
    return frozenset(
        m
        for m in monomials(len(r) - 1, d)
        if monomial_weight(m, r) * q + p * r[j] > 0
    )


@dataclass(frozen=True)
class SupportPair:
    """One maximal destabilizing datum: a hypersurface support M and the
    largest variable index j allowed in the hyperplane."""

    support: frozenset[Monomial]
    threshold: int

    def sort_key(self):
        return (self.threshold, len(self.support), tuple(sorted(self.support)))


@dataclass(frozen=True)
class Witness:
    """A triple (r, m, j) with -<m, r>/r_j equal to a candidate wall."""

    r: WeightVector
    m: Monomial
    j: int

    def to_json(self) -> dict:
        return {"r": list(self.r), "m": list(self.m), "j": self.j}


class _Search:
    """Shared exact machinery for one (n, d, extra probe vectors) instance.

    Supports are bitmasks over the canonical monomial order; profiles
    (per-monomial weights, r_j, j) are deduplicated up to positive scaling,
    keeping the largest j per scaled profile (larger thresholds dominate).
    """

    def __init__(self, n: int, d: int, extra: tuple[WeightVector, ...] = ()):
        self.n, self.d = n, d
        self.mons = monomials(n, d)
        weights = set(candidate_weights(n, d))
        for r in extra:
            if not is_weight_vector(r):
                raise ValueError(f"not a normalized weight vector: {r}")
            if len(r) != n + 1:
                raise DimensionMismatchError(f"weight vector {r} not of length {n + 1}")
            weights.add(r)
        self.weights = tuple(sorted(weights))
        profiles: dict[tuple[tuple[int, ...], int], int] = {}
        for r in self.weights:
            wvec = tuple(monomial_weight(m, r) for m in self.mons)
            for j in range(n + 1):
                g = gcd(*wvec, r[j])
                key = (tuple(w // g for w in wvec), r[j] // g) if g > 1 else (wvec, r[j])
                prev = profiles.get(key)
                if prev is None or prev < j:
                    profiles[key] = j
        self.profiles = tuple((w, rj, j) for (w, rj), j in sorted(profiles.items()))

    def candidates(self) -> dict[Fraction, list[Witness]]:
        out: dict[Fraction, list[Witness]] = {}
        for r in self.weights:
            for j in range(self.n + 1):
                if r[j] == 0:
                    continue
                for m in self.mons:
                    w = monomial_weight(m, r)
                    t = Fraction(-w, r[j])
                    if 0 < t < 1:
                        out.setdefault(t, []).append(Witness(r, m, j))
        for t in out:
            out[t].sort(key=lambda w: (w.r, w.m, w.j))
        return out

    def fingerprint(self, t: Fraction) -> frozenset[tuple[int, int]]:
        """Deduplicated, inclusion-maximalized family {(support mask, j)}."""
        p, q = t.numerator, t.denominator
        best_j: dict[int, int] = {}
        for wvec, rj, j in self.profiles:
            shift = p * rj
            mask = 0
            bit = 1
            for w in wvec:
                if w * q + shift > 0:
                    mask |= bit
                bit <<= 1
            if mask and best_j.get(mask, -1) < j:
                best_j[mask] = j
        members = sorted(best_j.items(), key=lambda kv: -kv[0].bit_count())
        kept: list[tuple[int, int]] = []
        for mask, j in members:
            if not any(mask & ~km == 0 and j <= kj for km, kj in kept):
                kept.append((mask, j))
        return frozenset(kept)

    def family(self, t: Fraction) -> tuple[SupportPair, ...]:
        pairs = [
            SupportPair(
                frozenset(m for i, m in enumerate(self.mons) if mask >> i & 1), j
            )
            for mask, j in self.fingerprint(t)
        ]
        return tuple(sorted(pairs, key=SupportPair.sort_key))

    def walls(self) -> tuple[tuple[Fraction, ...], dict[Fraction, list[Witness]]]:
        cands = self.candidates()
        ts = sorted(cands)
        if not ts:
            return (), cands
        bounds = [Fraction(0), *ts, Fraction(1)]
        eps = min(b - a for a, b in zip(bounds, bounds[1:])) / 2
        walls = tuple(t for t in ts if self.fingerprint(t - eps) != self.fingerprint(t + eps))
        return walls, cands


_SEARCHES: dict = {}


def _search(n: int, d: int, extra: tuple[WeightVector, ...] = ()) -> _Search:
    key = (n, d, extra)
    if key not in _SEARCHES:
        _SEARCHES[key] = _Search(n, d, extra)
    return _SEARCHES[key]


def candidate_twalls(n: int, d: int) -> tuple[Fraction, ...]:
    """Sorted candidate slope values -<m, r>/r_j inside (0, 1)."""
    return tuple(sorted(_search(n, d).candidates()))


def semistable_support_families(n: int, d: int, t) -> tuple[SupportPair, ...]:
    """The family of inclusion-maximal (M+, j) at slope t, canonically ordered.

    Constant in t on each open chamber between consecutive candidate values;
    a wall is precisely a candidate where it jumps.
    """
    return _search(n, d).family(Fraction(t))


def compute_walls(
    n: int = 3,
    d: int = 3,
    *,
    exploratory: bool = False,
    extra_weights: tuple[WeightVector, ...] = (),
) -> WallSet:
    """Slope walls: candidates where the maximal family differs between
    t - eps and t + eps, eps being half the minimal candidate gap (interval
    endpoints included as virtual bounds, so samples stay inside (0, 1)).

    Only (3, 3) is supported; pass exploratory=True to run other small
    configurations with no acceptance claim.
    """
    if (n, d) != SUPPORTED and not exploratory:
        raise UnsupportedError(f"({n}, {d}) is not a supported target; (3, 3) is")
    walls, _ = _search(n, d, tuple(extra_weights)).walls()
    return WallSet(walls)


def wall_report(n: int = 3, d: int = 3, *, exploratory: bool = False) -> dict:
    """JSON-ready report: walls, candidates, and per-wall witness triples."""
    if (n, d) != SUPPORTED and not exploratory:
        raise UnsupportedError(f"({n}, {d}) is not a supported target; (3, 3) is")
    search = _search(n, d)
    walls, cands = search.walls()
    return {
        "walls": [format_rational(t) for t in walls],
        "candidates": [format_rational(t) for t in sorted(cands)],
        "witnesses": {
            format_rational(t): [w.to_json() for w in cands[t]] for t in walls
        },
    }


def expected_monomial_count(n: int, d: int) -> int:
    """Stars and bars, for sanity checks: C(n + d, d)."""
    return comb(n + d, d)
