"""Symbolic moduli descriptors for products, with finite groupoid models.

A product of registered families has a moduli descriptor assembled from the
factors: isomorphic factors (the iso-relation is caller-supplied, defaulting
to id equality) collapse into a symmetric quotient [M^s / S_s], point-moduli
factors drop out entirely, and the rest multiply.  The class representative
is the lexicographically least id of its class, a naming convention only.

Two-slot products are classified by the map to the product of the factor
moduli: an isomorphism when the slots are non-isomorphic, and an S2-gerbe
over the symmetric quotient when they coincide (the same structure is
sometimes called an S2-torsor; this module reports "s2-gerbe").

The quotient-stack identities behind the algebra are exercised at finite
scale by permutation groupoids [X/G]: orbits of a product action are pairs
of orbits, stabilizers multiply, symmetric k-fold quotients count multisets,
and the groupoid cardinality sum(1/|stab|) over orbits equals |X|/|G|.
Groups are materialized by generator closure, capped by an order bound.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import ArityError, BoundExceededError, GroupTooLargeError
from .wallsets import load_registry

DEFAULT_ORDER_BOUND = 100_000
SYM_ENUMERATION_BOUND = 1_000_000


# -- descriptors -------------------------------------------------------------


class Descriptor:
    """Base class; concrete kinds are Atom, Point, Product, SymQuotient, Named."""

    def to_json(self) -> dict:
        raise NotImplementedError

    def sort_key(self) -> tuple:
        """Total order: atoms, then named spaces, then symmetric quotients,
        then products, then points; ties by payload, recursively."""
        raise NotImplementedError


@dataclass(frozen=True)
class Atom(Descriptor):
    """The moduli of one registered family, named by its id."""

    id: str

    def to_json(self) -> dict:
        return {"kind": "atom", "id": self.id}

    def sort_key(self) -> tuple:
        return (0, self.id)

    def __str__(self) -> str:
        return self.id


@dataclass(frozen=True)
class Point(Descriptor):
    """A single reduced point."""

    def to_json(self) -> dict:
        return {"kind": "point"}

    def sort_key(self) -> tuple:
        return (9,)

    def __str__(self) -> str:
        return "pt"


@dataclass(frozen=True)
class Product(Descriptor):
    """At least two factors, canonically sorted, never Point, never nested."""

    children: tuple[Descriptor, ...]

    def __post_init__(self) -> None:
        if len(self.children) < 2:
            raise ValueError("Product needs at least 2 children")
        if any(isinstance(c, (Point, Product)) for c in self.children):
            raise ValueError("Product children must be elided/flattened first")
        if list(self.children) != sorted(self.children, key=lambda c: c.sort_key()):
            raise ValueError("Product children must be canonically sorted")

    def to_json(self) -> dict:
        return {"kind": "product", "children": [c.to_json() for c in self.children]}

    def sort_key(self) -> tuple:
        return (3, tuple(c.sort_key() for c in self.children))

    def __str__(self) -> str:
        return " x ".join(str(c) for c in self.children)


@dataclass(frozen=True)
class SymQuotient(Descriptor):
    """The symmetric quotient [base^power / S_power], power >= 2."""

    base: Descriptor
    power: int

    def __post_init__(self) -> None:
        if self.power < 2:
            raise ValueError(f"symmetric power must be >= 2, got {self.power}")
        if isinstance(self.base, Point):
            raise ValueError("symmetric quotients of a point are elided")

    def to_json(self) -> dict:
        return {"kind": "sym", "base": self.base.to_json(), "power": self.power}

    def sort_key(self) -> tuple:
        return (2, self.base.sort_key(), self.power)

    def __str__(self) -> str:
        return f"[{self.base}^{self.power}/S{self.power}]"


@dataclass(frozen=True)
class Named(Descriptor):
    """An explicit space referenced by name, e.g. "P(1,2,3)"."""

    name: str

    def to_json(self) -> dict:
        return {"kind": "named", "name": self.name}

    def sort_key(self) -> tuple:
        return (1, self.name)

    def __str__(self) -> str:
        return self.name


def product_of(children) -> Descriptor:
    """Smart constructor: flatten nested products, drop points, sort."""
    flat: list[Descriptor] = []
    stack = list(children)
    while stack:
        c = stack.pop()
        if isinstance(c, Product):
            stack.extend(c.children)
        elif isinstance(c, Point):
            continue
        else:
            flat.append(c)
    flat.sort(key=lambda c: c.sort_key())
    if not flat:
        return Point()
    if len(flat) == 1:
        return flat[0]
    return Product(tuple(flat))


# -- factor multisets and canonicalization -----------------------------------


@dataclass(frozen=True)
class FactorMultiset:
    """Family ids with multiplicities, plus an iso-relation on the ids.

    The iso-relation is an explicit partition (ids not mentioned form
    singleton classes); it is the caller's assertion of which families are
    isomorphic, defaulting to id equality.
    """

    entries: tuple[tuple[str, int], ...]
    iso: tuple[frozenset[str], ...] = field(default=())

    def __post_init__(self) -> None:
        counts: dict[str, int] = {}
        for fid, mult in self.entries:
            if mult < 1:
                raise ValueError(f"multiplicity of {fid} must be >= 1, got {mult}")
            counts[str(fid)] = counts.get(str(fid), 0) + int(mult)
        object.__setattr__(self, "entries", tuple(sorted(counts.items())))
        classes = [frozenset(cls) for cls in self.iso if len(cls) >= 2]
        seen: set[str] = set()
        for cls in classes:
            if seen & cls:
                raise ValueError("iso classes must be disjoint")
            seen |= cls
        object.__setattr__(self, "iso", tuple(sorted(classes, key=sorted)))

    @classmethod
    def of(cls, factors, iso=()) -> "FactorMultiset":
        """Accept a mapping id -> multiplicity or an iterable of ids/pairs."""
        if isinstance(factors, FactorMultiset):
            return factors
        if isinstance(factors, dict):
            entries = tuple(factors.items())
        else:
            items = list(factors)
            if items and isinstance(items[0], tuple):
                entries = tuple(items)
            else:
                entries = tuple((fid, 1) for fid in items)
        return cls(entries, tuple(frozenset(c) for c in iso))

    def total(self) -> int:
        return sum(mult for _, mult in self.entries)

    def class_of(self, fid: str) -> frozenset[str]:
        for cls in self.iso:
            if fid in cls:
                return cls
        return frozenset((fid,))

    def grouped(self) -> tuple[tuple[str, int], ...]:
        """(class representative, total multiplicity) per iso class present,
        sorted by representative; the representative is the least present id."""
        present = {fid for fid, _ in self.entries}
        groups: dict[frozenset[str], int] = {}
        for fid, mult in self.entries:
            cls = self.class_of(fid)
            groups[cls] = groups.get(cls, 0) + mult
        return tuple(
            sorted((min(cls & present), mult) for cls, mult in groups.items())
        )


def default_point_ids() -> frozenset[str]:
    """Ids whose registered moduli is a single point."""
    return frozenset(fid for fid, rec in load_registry().items() if rec.is_point)


def canonicalize(factors, iso=(), point_ids: frozenset[str] | None = None) -> Descriptor:
    """Canonical descriptor of a product of factors.

    Point factors are elided; each iso class contributes its representative
    atom, raised to a symmetric quotient when the class multiplicity is 2 or
    more.  Idempotent and invariant under permutation of the input.
    """
    fm = FactorMultiset.of(factors, iso)
    if point_ids is None:
        point_ids = default_point_ids()
    nodes: list[Descriptor] = []
    groups: dict[frozenset[str], list] = {}
    for fid, mult in fm.entries:
        if fid in point_ids:
            continue
        cls = fm.class_of(fid)
        groups.setdefault(cls, [set(), 0])
        groups[cls][0].add(fid)
        groups[cls][1] += mult
    for cls, (present, mult) in groups.items():
        rep = Atom(min(present))
        nodes.append(rep if mult == 1 else SymQuotient(rep, mult))
    return product_of(nodes)


class MapKind(enum.Enum):
    """Classification of the two-slot product map."""

    ISOMORPHISM = "isomorphism"
    S2_GERBE = "s2-gerbe"


def classify_product_map(factors, iso=()) -> MapKind:
    """Classify the map from the two-slot product moduli.

    Exactly two factor slots are required (ArityError otherwise).  The map
    is an isomorphism when the slots are non-isomorphic and an S2-gerbe over
    the symmetric quotient when they are isomorphic; symmetric in the slots
    by construction.
    """
    fm = FactorMultiset.of(factors, iso)
    if fm.total() != 2:
        raise ArityError(f"need exactly 2 factor slots, got {fm.total()}")
    if len(fm.entries) == 1:
        return MapKind.S2_GERBE
    (a, _), (b, _) = fm.entries
    return MapKind.S2_GERBE if fm.class_of(a) == fm.class_of(b) else MapKind.ISOMORPHISM


# -- finite groupoid models ---------------------------------------------------


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """(p after q)(i) = p[q[i]]."""
    return tuple(p[v] for v in q)


@lru_cache(maxsize=256)
def _closure(
    generators: tuple[tuple[int, ...], ...], n: int, bound: int
) -> frozenset[tuple[int, ...]]:
    """Generated permutation group by breadth-first products."""
    identity = tuple(range(n))
    elements = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for gen in generators:
                h = _compose(gen, g)
                if h not in elements:
                    if len(elements) >= bound:
                        raise GroupTooLargeError(
                            f"generated group exceeds order bound {bound}"
                        )
                    elements.add(h)
                    nxt.append(h)
        frontier = nxt
    return frozenset(elements)


@dataclass(frozen=True)
class Orbit:
    """One orbit: points in carrier order, first point as representative."""

    points: tuple
    stabilizer_order: int

    @property
    def representative(self):
        return self.points[0]

    @property
    def size(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class FiniteGroupoidModel:
    """A finite carrier with a permutation action given by generators.

    Generators are one-line arrays over carrier indices.  The group is the
    generator closure, materialized on demand and capped by order_bound.
    """

    carrier: tuple
    generators: tuple[tuple[int, ...], ...]
    order_bound: int = DEFAULT_ORDER_BOUND

    def __post_init__(self) -> None:
        object.__setattr__(self, "carrier", tuple(self.carrier))
        gens = tuple(tuple(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        n = len(self.carrier)
        for g in gens:
            if sorted(g) != list(range(n)):
                raise ValueError(f"not a permutation of 0..{n - 1}: {g}")

    def elements(self) -> frozenset[tuple[int, ...]]:
        return _closure(self.generators, len(self.carrier), self.order_bound)

    def group_order(self) -> int:
        return len(self.elements())

    def orbit_partition(self) -> tuple[tuple[int, ...], ...]:
        """Orbits as sorted index tuples, by least element; generators only."""
        n = len(self.carrier)
        seen = [False] * n
        orbits = []
        for start in range(n):
            if seen[start]:
                continue
            block = {start}
            frontier = [start]
            seen[start] = True
            while frontier:
                nxt = []
                for i in frontier:
                    for g in self.generators:
                        if not seen[g[i]]:
                            seen[g[i]] = True
                            block.add(g[i])
                            nxt.append(g[i])
                frontier = nxt
            orbits.append(tuple(sorted(block)))
        return tuple(orbits)

    def to_json(self) -> dict:
        return {
            "carrier": list(self.carrier),
            "generators": [list(g) for g in self.generators],
        }


def orbit_space(model: FiniteGroupoidModel) -> tuple[Orbit, ...]:
    """Orbits with stabilizer orders counted directly over group elements;
    the orbit-stabilizer identity |orbit| * |stab| = |G| is asserted."""
    elements = model.elements()
    order = len(elements)
    out = []
    for block in model.orbit_partition():
        rep = block[0]
        stab = sum(1 for g in elements if g[rep] == rep)
        assert stab * len(block) == order, "orbit-stabilizer identity failed"
        out.append(Orbit(tuple(model.carrier[i] for i in block), stab))
    return tuple(out)


def product_model(
    a: FiniteGroupoidModel, b: FiniteGroupoidModel, order_bound: int | None = None
) -> FiniteGroupoidModel:
    """The direct product acting coordinatewise on pairs.

    The generated group is exactly G x H (order the product of the orders),
    checked against the bound before any closure of the product is taken.
    """
    bound = order_bound if order_bound is not None else max(a.order_bound, b.order_bound)
    if a.group_order() * b.group_order() > bound:
        raise GroupTooLargeError(
            f"product group order {a.group_order() * b.group_order()} "
            f"exceeds bound {bound}"
        )
    na, nb = len(a.carrier), len(b.carrier)
    carrier = tuple(itertools.product(a.carrier, b.carrier))

    def lift_a(g):
        return tuple(g[i] * nb + j for i in range(na) for j in range(nb))

    def lift_b(h):
        return tuple(i * nb + h[j] for i in range(na) for j in range(nb))

    gens = tuple(lift_a(g) for g in a.generators) + tuple(lift_b(h) for h in b.generators)
    return FiniteGroupoidModel(carrier, gens, bound)


def sym_quotient_model(model: FiniteGroupoidModel, k: int) -> int:
    """Number of S_k-orbits of k-tuples of G-orbits.

    Counted by brute-force enumeration (canonical sorted tuples) and checked
    against the multiset formula C(N + k - 1, k); the two must agree.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    n_orbits = len(model.orbit_partition())
    if n_orbits**k > SYM_ENUMERATION_BOUND:
        raise BoundExceededError(
            f"{n_orbits}^{k} tuples exceed the enumeration bound"
        )
    seen = {
        tuple(sorted(t)) for t in itertools.product(range(n_orbits), repeat=k)
    }
    count = len(seen)
    assert count == comb(n_orbits + k - 1, k), "multiset count mismatch"
    return count


def groupoid_cardinality(model: FiniteGroupoidModel) -> Fraction:
    """sum over orbits of 1/|stabilizer|; equals |carrier| / |G|."""
    return sum(
        (Fraction(1, orbit.stabilizer_order) for orbit in orbit_space(model)),
        Fraction(0),
    )
