"""Per-family wall registries and single-interval chamber bookkeeping.

A family record carries the rational walls of a one-parameter moduli problem
on the open interval (0, 1), in two coordinate scales: the pair-coefficient
scale c and the slope scale t, linked by a fractional-linear reparametrization
t = reparam(c).  Records also carry the numerical invariants (dimension,
anticanonical volume, Hilbert polynomial) used by the product calculus.

Walls are always stored strictly increasing and strictly inside (0, 1); the
interval endpoints are never walls.  Families without an established wall
table store None there, and operations that need walls raise
MissingDataError rather than guessing.
"""

from __future__ import annotations

import json
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import MissingDataError, OutOfRangeError
from .exactq import MoebiusMap, format_rational, parse_rational
from .invariants import FanoNumerics, consistency_check, parse_poly, poly_trim

KIND_CHAMBER = "chamber"
KIND_WALL = "wall"


@dataclass(frozen=True)
class Coord:
    """Position of a point relative to one wall set: a chamber or a wall.

    Chamber i is the open interval between wall i-1 and wall i (with the
    unit-interval endpoints at the extremes); wall i is the i-th wall itself,
    counting from 0 in increasing order.
    """

    kind: str
    index: int

    def __post_init__(self) -> None:
        if self.kind not in (KIND_CHAMBER, KIND_WALL):
            raise ValueError(f"bad coord kind {self.kind!r}")
        if self.index < 0:
            raise ValueError(f"negative coord index {self.index}")

    @classmethod
    def chamber(cls, index: int) -> "Coord":
        return cls(KIND_CHAMBER, index)

    @classmethod
    def wall(cls, index: int) -> "Coord":
        return cls(KIND_WALL, index)

    @property
    def is_wall(self) -> bool:
        return self.kind == KIND_WALL

    @property
    def position(self) -> int:
        # left-to-right rank along the interval: chamber 0, wall 0, chamber 1, ...
        return 2 * self.index + (1 if self.is_wall else 0)

    def to_json(self) -> dict:
        return {"kind": self.kind, "index": self.index}

    def __str__(self) -> str:
        return f"{self.kind} {self.index}"


@dataclass(frozen=True)
class Chamber:
    """Open interval between consecutive walls (or interval endpoints)."""

    index: int
    lower: Fraction
    upper: Fraction

    def __contains__(self, x) -> bool:
        return self.lower < Fraction(x) < self.upper

    def __str__(self) -> str:
        return (
            f"chamber {self.index} "
            f"({format_rational(self.lower)}, {format_rational(self.upper)})"
        )


@dataclass(frozen=True)
class WallSet:
    """Strictly increasing rationals in the open interval (0, 1)."""

    walls: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        walls = tuple(Fraction(w) for w in self.walls)
        object.__setattr__(self, "walls", walls)
        for w in walls:
            if not 0 < w < 1:
                raise ValueError(f"wall {format_rational(w)} outside (0, 1)")
        if any(a >= b for a, b in zip(walls, walls[1:])):
            raise ValueError(f"walls not strictly increasing: {walls}")

    def __len__(self) -> int:
        return len(self.walls)

    def __iter__(self):
        return iter(self.walls)

    def chambers(self) -> tuple[Chamber, ...]:
        """The len(walls) + 1 open chambers tiling (0, 1)."""
        bounds = (Fraction(0), *self.walls, Fraction(1))
        return tuple(
            Chamber(i, lo, hi) for i, (lo, hi) in enumerate(zip(bounds, bounds[1:]))
        )

    def locate(self, x) -> Coord:
        """Chamber or wall containing x; x must lie strictly inside (0, 1)."""
        x = Fraction(x)
        if not 0 < x < 1:
            raise OutOfRangeError(f"{format_rational(x)} outside the open interval (0, 1)")
        i = bisect_left(self.walls, x)
        if i < len(self.walls) and self.walls[i] == x:
            return Coord.wall(i)
        return Coord.chamber(i)

    def map(self, m: MoebiusMap) -> "WallSet":
        """Elementwise image; construction re-checks order and range."""
        return WallSet(tuple(m(w) for w in self.walls))

    def to_json(self) -> list[str]:
        return [format_rational(w) for w in self.walls]

    def __str__(self) -> str:
        return " ".join(format_rational(w) for w in self.walls)


@dataclass(frozen=True)
class FamilyRecord:
    """Wall tables and numerical invariants for one registered family.

    Invariants, enforced at construction:
      * when c_walls, reparam, and t_walls are all present, the image of
        c_walls under reparam equals t_walls wall by wall;
      * hilbert(0) = 1 and dimension! * lead(hilbert) = volume.
    """

    id: str
    dimension: int
    volume: Fraction
    moduli_note: str
    hilbert: tuple[Fraction, ...]
    c_walls: WallSet | None = None
    t_walls: WallSet | None = None
    reparam: MoebiusMap | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("empty family id")
        object.__setattr__(self, "volume", Fraction(self.volume))
        object.__setattr__(self, "hilbert", poly_trim(self.hilbert))
        problems = consistency_check(self.numerics())
        if problems:
            raise ValueError(f"family {self.id}: " + "; ".join(problems))
        if self.c_walls is not None and self.reparam is not None and self.t_walls is not None:
            image = self.c_walls.map(self.reparam)
            if image != self.t_walls:
                raise ValueError(
                    f"family {self.id}: reparam image {image} != t_walls {self.t_walls}"
                )

    @property
    def is_point(self) -> bool:
        """True when the family's moduli is a single reduced point."""
        return self.moduli_note == "point"

    def numerics(self) -> FanoNumerics:
        return FanoNumerics(self.dimension, self.volume, self.hilbert)

    def walls(self, space: str) -> WallSet:
        """The wall set in scale "c" or "t"; MissingDataError when absent."""
        if space not in ("c", "t"):
            raise ValueError(f"unknown wall space {space!r}")
        ws = self.c_walls if space == "c" else self.t_walls
        if ws is None:
            raise MissingDataError(f"family {self.id} has no registered {space}-walls")
        return ws


def c_to_t_walls(rec: FamilyRecord) -> WallSet:
    """Image of the c-scale walls under the family's reparametrization.

    Raises MissingDataError when the record lacks c_walls or reparam; raises
    ValueError when a stored t-wall table disagrees with the computed image
    (a corrupt record, never a silent fallback).
    """
    if rec.c_walls is None or rec.reparam is None:
        raise MissingDataError(f"family {rec.id} lacks c-walls or a reparametrization")
    image = rec.c_walls.map(rec.reparam)
    if rec.t_walls is not None and image != rec.t_walls:
        raise ValueError(f"family {rec.id}: stored t-walls disagree with reparam image")
    return image


def _ws(*values: str) -> WallSet:
    return WallSet(tuple(parse_rational(v) for v in values))


def _compiled_registry() -> dict[str, FamilyRecord]:
    # Hilbert polynomials: chi(m) = 1 + d*m(m+1)/2 for a degree-d del Pezzo
    # surface, chi(m) = 2m + 1 for the line; constant-first coefficients.
    return {
        rec.id: rec
        for rec in (
            FamilyRecord(
                id="dp1",
                dimension=2,
                volume=Fraction(1),
                moduli_note="degree-1 del Pezzo pairs; no explicit global description registered",
                hilbert=parse_poly(["1", "1/2", "1/2"]),
            ),
            FamilyRecord(
                id="dp2",
                dimension=2,
                volume=Fraction(2),
                moduli_note=(
                    "Kirwan blow-up of the plane-quartic GIT quotient "
                    "at the double-conic point"
                ),
                hilbert=parse_poly(["1", "1", "1"]),
            ),
            FamilyRecord(
                id="dp3",
                dimension=2,
                volume=Fraction(3),
                moduli_note="weighted projective space P(1,2,3,4,5) (cubic-surface GIT)",
                hilbert=parse_poly(["1", "3/2", "3/2"]),
                c_walls=_ws("2/11", "4/13", "2/5", "10/19", "2/3"),
                t_walls=_ws("1/5", "1/3", "3/7", "5/9", "9/13"),
                reparam=MoebiusMap(9, 0, 1, 8),
            ),
            FamilyRecord(
                id="dp4",
                dimension=2,
                volume=Fraction(4),
                moduli_note="weighted projective space P(1,2,3) (quartic del Pezzo GIT)",
                hilbert=parse_poly(["1", "2", "2"]),
                c_walls=_ws("1/7", "1/4", "1/3", "1/2", "5/8"),
                t_walls=_ws("1/6", "2/7", "3/8", "6/11", "2/3"),
                reparam=MoebiusMap(6, 0, 1, 5),
            ),
            FamilyRecord(
                id="p1",
                dimension=1,
                volume=Fraction(2),
                moduli_note="point",
                hilbert=parse_poly(["1", "2"]),
                c_walls=WallSet(()),
                t_walls=WallSet(()),
                reparam=MoebiusMap.identity(),
            ),
        )
    }


def _record_from_json(family_id: str, data: dict) -> FamilyRecord:
    if not isinstance(data, dict):
        raise ValueError(f"registry record {family_id!r} must be a JSON object")
    missing = [k for k in ("dimension", "volume", "moduli_note", "hilbert") if k not in data]
    if missing:
        raise ValueError(
            f"registry record {family_id!r} missing field(s): " + ", ".join(missing)
        )

    def maybe_walls(key: str) -> WallSet | None:
        if data.get(key) is None:
            return None
        return WallSet(tuple(parse_rational(v) for v in data[key]))

    c_walls = maybe_walls("c_walls")
    t_walls = maybe_walls("t_walls")
    reparam = None
    if data.get("reparam") is not None:
        reparam = MoebiusMap(*(int(v) for v in data["reparam"]))
    if t_walls is None and c_walls is not None and reparam is not None:
        t_walls = c_walls.map(reparam)
    return FamilyRecord(
        id=family_id,
        dimension=int(data["dimension"]),
        volume=parse_rational(data["volume"]),
        moduli_note=str(data["moduli_note"]),
        hilbert=parse_poly(data["hilbert"]),
        c_walls=c_walls,
        t_walls=t_walls,
        reparam=reparam,
    )


def load_registry(overlay_path: str | Path | None = None) -> dict[str, FamilyRecord]:
    """Compiled-in families, optionally extended or overridden by a JSON file.

    The overlay maps family ids to objects with fields {dimension, volume,
    c_walls, t_walls, reparam, hilbert, moduli_note}; rationals are "p/q"
    strings, reparam is the coefficient list [a, b, c, d], hilbert is
    constant-first.  An overlay record replaces a compiled record of the
    same id wholesale.  A missing t_walls is derived from c_walls and
    reparam when both are present.
    """
    registry = _compiled_registry()
    if overlay_path is not None:
        raw = json.loads(Path(overlay_path).read_text())
        if not isinstance(raw, dict):
            raise ValueError("registry overlay must be a JSON object keyed by family id")
        for family_id in sorted(raw):
            registry[family_id] = _record_from_json(family_id, raw[family_id])
    return registry
