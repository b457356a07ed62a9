"""Axis-parallel product chamber complexes on the unit k-cube.

A product arrangement is a tuple of factors, each a family id with a wall
set on (0, 1).  Cells are index tuples: per factor either a chamber index or
a wall index, with codimension the number of wall coordinates.  With w_i
walls in factor i there are prod(w_i + 1) top cells, prod(2 w_i + 1) cells
in total, and the codim-j count is the elementary symmetric sum pairing j
wall choices with chamber choices elsewhere.

The crossing graph has the top cells as nodes and one edge per codim-1 cell,
joining the two chambers adjacent across that wall; it is the box product of
per-factor path graphs.

Folding quotients the arrangement by permutations of factor positions whose
wall sets agree exactly (wall-set equality is the computable proxy for
isomorphic factors; the caller asserts the isomorphism).  Orbit
representatives follow the lexicographically-least-cell convention, a
labeling choice, not canon.  Orbit counts are exposed two independent ways:
direct enumeration by canonical form, and the Burnside average of
fixed-cell counts, which agree on every codimension.

Renderers: "svg" and "ascii" for k <= 2 (exact-fraction tick labels; SVG
positions are rationals rounded to 6 decimal digits, half up, so output is
byte-identical across runs), "json" for any k.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import (
    BadCodimError,
    BoundExceededError,
    DimensionMismatchError,
    MismatchedWallSetsError,
    UnsupportedDimensionError,
)
from .exactq import format_rational
from .wallsets import Coord, FamilyRecord, WallSet

# Burnside iterates the whole position group; folding refuses groups
# larger than this.
MAX_FOLD_GROUP = 100_000

RENDER_FORMATS = ("svg", "ascii", "json")


@dataclass(frozen=True)
class Cell:
    """A product cell: one chamber-or-wall coordinate per factor."""

    coords: tuple[Coord, ...]

    @property
    def codim(self) -> int:
        return sum(1 for c in self.coords if c.is_wall)

    @property
    def sort_key(self) -> tuple[int, ...]:
        return tuple(c.position for c in self.coords)

    def to_json(self) -> dict:
        return {"coords": [c.to_json() for c in self.coords], "codim": self.codim}

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class ProductArrangement:
    """Factors as (family id, wall set) pairs, in fixed order."""

    factors: tuple[tuple[str, WallSet], ...]

    @property
    def k(self) -> int:
        return len(self.factors)

    @property
    def wall_counts(self) -> tuple[int, ...]:
        return tuple(len(ws) for _, ws in self.factors)

    def factor_coords(self, i: int) -> tuple[Coord, ...]:
        """All coords of factor i in left-to-right interval order."""
        w = self.wall_counts[i]
        coords = []
        for idx in range(w):
            coords.append(Coord.chamber(idx))
            coords.append(Coord.wall(idx))
        coords.append(Coord.chamber(w))
        return tuple(coords)

    def cells(self, codim: int) -> tuple[Cell, ...]:
        """All cells of the given codimension, lexicographically ordered."""
        if not 0 <= codim <= self.k:
            raise BadCodimError(f"codim {codim} outside 0..{self.k}")
        out = [
            Cell(coords)
            for coords in itertools.product(
                *(self.factor_coords(i) for i in range(self.k))
            )
            if sum(1 for c in coords if c.is_wall) == codim
        ]
        out.sort(key=lambda cell: cell.sort_key)
        return tuple(out)

    def all_cells(self) -> tuple[Cell, ...]:
        return tuple(
            cell for codim in range(self.k + 1) for cell in self.cells(codim)
        )

    def locate(self, point) -> Cell:
        """Cell containing a point with one (0, 1)-coordinate per factor."""
        point = tuple(point)
        if len(point) != self.k:
            raise DimensionMismatchError(
                f"point of length {len(point)} in a {self.k}-factor arrangement"
            )
        return Cell(
            tuple(ws.locate(x) for (_, ws), x in zip(self.factors, point))
        )


def build_product(families, space: str = "c") -> ProductArrangement:
    """Arrangement whose factors are the families' wall sets in the given
    scale.  Accepts FamilyRecord objects or raw (id, WallSet) pairs; records
    without the requested walls raise MissingDataError."""
    factors = []
    for fam in families:
        if isinstance(fam, FamilyRecord):
            factors.append((fam.id, fam.walls(space)))
        else:
            fid, ws = fam
            factors.append((str(fid), ws))
    return ProductArrangement(tuple(factors))


def enumerate_cells(arr: ProductArrangement, codim: int) -> tuple[Cell, ...]:
    return arr.cells(codim)


def locate_point(arr: ProductArrangement, point) -> Cell:
    return arr.locate(point)


@dataclass(frozen=True)
class CrossingGraph:
    """Top cells as nodes; one labeled edge per codim-1 cell."""

    nodes: tuple[Cell, ...]
    edges: tuple[tuple[Cell, Cell, Cell], ...]  # (side, side, codim-1 label)

    def is_connected(self) -> bool:
        if not self.nodes:
            return True
        adj: dict[Cell, list[Cell]] = {node: [] for node in self.nodes}
        for a, b, _ in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        seen = {self.nodes[0]}
        frontier = [self.nodes[0]]
        while frontier:
            nxt = []
            for node in frontier:
                for other in adj[node]:
                    if other not in seen:
                        seen.add(other)
                        nxt.append(other)
            frontier = nxt
        return len(seen) == len(self.nodes)

    def to_json(self) -> dict:
        return {
            "nodes": [n.to_json() for n in self.nodes],
            "edges": [
                {"sides": [a.to_json(), b.to_json()], "label": lab.to_json()}
                for a, b, lab in self.edges
            ],
            "connected": self.is_connected(),
        }


def crossing_graph(arr: ProductArrangement) -> CrossingGraph:
    """Adjacency of top cells across codim-1 cells.

    The two sides of a codim-1 cell replace its unique wall coordinate,
    index i, by chambers i and i + 1; every codim-1 cell labels exactly one
    edge, so the graph is the box product of per-factor paths.
    """
    edges = []
    for label in arr.cells(1):
        pos = next(i for i, c in enumerate(label.coords) if c.is_wall)
        idx = label.coords[pos].index
        sides = tuple(
            Cell(
                label.coords[:pos] + (Coord.chamber(idx + step),) + label.coords[pos + 1 :]
            )
            for step in (0, 1)
        )
        edges.append((*sides, label))
    return CrossingGraph(arr.cells(0), tuple(edges))


@dataclass(frozen=True)
class CellOrbit:
    """An orbit of cells under the folding group; the representative is the
    lexicographically least member."""

    representative: Cell
    cells: tuple[Cell, ...]

    @property
    def size(self) -> int:
        return len(self.cells)


@dataclass(frozen=True)
class SymmetricFolding:
    """Quotient bookkeeping for an arrangement and a position partition."""

    arrangement: ProductArrangement
    grouping: tuple[tuple[int, ...], ...]

    def canonical(self, cell: Cell) -> Cell:
        """Orbit representative: within each group, coords sorted in place."""
        coords = list(cell.coords)
        for part in self.grouping:
            for pos, coord in zip(
                part, sorted((coords[p] for p in part), key=lambda c: c.position)
            ):
                coords[pos] = coord
        return Cell(tuple(coords))

    def orbits(self, codim: int) -> tuple[CellOrbit, ...]:
        buckets: dict[Cell, list[Cell]] = {}
        for cell in self.arrangement.cells(codim):
            buckets.setdefault(self.canonical(cell), []).append(cell)
        return tuple(
            CellOrbit(rep, tuple(sorted(members, key=lambda c: c.sort_key)))
            for rep, members in sorted(
                buckets.items(), key=lambda kv: kv[0].sort_key
            )
        )

    def orbit_count(self, codim: int) -> int:
        """Direct enumeration by canonical form."""
        return len(self.orbits(codim))

    def orbit_index(self, cell: Cell) -> int:
        """Position of the cell's orbit in the orbits() order for its codim."""
        rep = self.canonical(cell)
        for i, orbit in enumerate(self.orbits(cell.codim)):
            if orbit.representative == rep:
                return i
        raise KeyError(str(cell))

    def group_order(self) -> int:
        order = 1
        for part in self.grouping:
            order *= factorial(len(part))
        return order

    def burnside_orbit_count(self, codim: int) -> int:
        """Burnside average of per-element fixed-cell counts.

        A cell is fixed by a position permutation iff its coords are
        constant on cycles; fixed cells are counted by a small product
        DP over cycles, no cell enumeration involved.
        """
        order = self.group_order()
        if order > MAX_FOLD_GROUP:
            raise BoundExceededError(f"folding group of order {order}")
        k = self.arrangement.k
        wall_counts = self.arrangement.wall_counts
        total = 0
        for parts_perm in itertools.product(
            *(itertools.permutations(part) for part in self.grouping)
        ):
            sigma = list(range(k))
            for part, image in zip(self.grouping, parts_perm):
                for pos, target in zip(part, image):
                    sigma[pos] = target
            # cycle decomposition; each cycle stays inside one group part
            seen = [False] * k
            counts = [1] + [0] * k  # counts[j] = fixed cells of codim j so far
            for start in range(k):
                if seen[start]:
                    continue
                length = 0
                pos = start
                while not seen[pos]:
                    seen[pos] = True
                    pos = sigma[pos]
                    length += 1
                w = wall_counts[start]
                nxt = [0] * (k + 1)
                for j, val in enumerate(counts):
                    if not val:
                        continue
                    nxt[j] += val * (w + 1)  # a shared chamber coordinate
                    if j + length <= k and w:
                        nxt[j + length] += val * w  # a shared wall coordinate
                counts = nxt
            total += counts[codim]
        assert total % order == 0, "Burnside sum not divisible by group order"
        return total // order


def fold_symmetric(arr: ProductArrangement, grouping) -> SymmetricFolding:
    """Validate a position partition and return the folding.

    Positions inside one group must carry identical wall sets
    (MismatchedWallSetsError otherwise); singleton groups leave the
    arrangement unfolded.
    """
    grouping = tuple(tuple(part) for part in grouping)
    flat = [pos for part in grouping for pos in part]
    if sorted(flat) != list(range(arr.k)) or any(not part for part in grouping):
        raise ValueError(f"grouping {grouping} is not a partition of 0..{arr.k - 1}")
    for part in grouping:
        sets = {arr.factors[pos][1] for pos in part}
        if len(sets) > 1:
            ids = [arr.factors[pos][0] for pos in part]
            raise MismatchedWallSetsError(
                f"grouped factors {ids} carry different wall sets"
            )
    return SymmetricFolding(arr, grouping)


def grouping_by_id(arr: ProductArrangement) -> tuple[tuple[int, ...], ...]:
    """Positions grouped by equal family id, in first-appearance order."""
    order: dict[str, list[int]] = {}
    for pos, (fid, _) in enumerate(arr.factors):
        order.setdefault(fid, []).append(pos)
    return tuple(tuple(v) for v in order.values())


# -- rendering ---------------------------------------------------------------

BOX = 720  # unit square in SVG user units
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 72, 24, 24, 48
ASCII_COLS, ASCII_ROWS = 60, 30


def _fmt6(value: Fraction) -> str:
    """Nonnegative rational to a fixed 6-decimal string, rounding half up."""
    q = Fraction(value)
    scaled = q * 10**6
    n = (2 * scaled.numerator + scaled.denominator) // (2 * scaled.denominator)
    return f"{n // 10**6}.{n % 10**6:06d}"


def render(arr: ProductArrangement, fmt: str, folding: SymmetricFolding | None = None) -> str:
    """Render the arrangement; "svg" and "ascii" accept at most 2 factors."""
    if fmt not in RENDER_FORMATS:
        raise ValueError(f"unknown render format {fmt!r}; choose from {RENDER_FORMATS}")
    if fmt == "json":
        return _render_json(arr, folding)
    if arr.k > 2:
        raise UnsupportedDimensionError(
            f"{fmt} diagrams support at most 2 factors, got {arr.k}"
        )
    return _render_svg(arr, folding) if fmt == "svg" else _render_ascii(arr)


def _render_json(arr: ProductArrangement, folding: SymmetricFolding | None) -> str:
    doc = {
        "factors": [
            {"id": fid, "walls": ws.to_json()} for fid, ws in arr.factors
        ],
        "cell_counts": {str(j): len(arr.cells(j)) for j in range(arr.k + 1)},
        "cells": [cell.to_json() for cell in arr.all_cells()],
    }
    if folding is not None:
        doc["folding"] = {
            "grouping": [list(part) for part in folding.grouping],
            "orbit_counts": {
                str(j): folding.orbit_count(j) for j in range(arr.k + 1)
            },
            "orbits": [
                {
                    "codim": j,
                    "representative": orbit.representative.to_json(),
                    "size": orbit.size,
                }
                for j in range(arr.k + 1)
                for orbit in folding.orbits(j)
            ],
        }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _svg_x(value: Fraction) -> str:
    return _fmt6(MARGIN_LEFT + Fraction(value) * BOX)


def _svg_y(value: Fraction) -> str:
    # unit interval runs bottom to top
    return _fmt6(MARGIN_TOP + (1 - Fraction(value)) * BOX)


def _render_svg(arr: ProductArrangement, folding: SymmetricFolding | None) -> str:
    width = MARGIN_LEFT + BOX + MARGIN_RIGHT
    height = MARGIN_TOP + BOX + MARGIN_BOTTOM
    x_walls = tuple(arr.factors[0][1]) if arr.k >= 1 else ()
    y_walls = tuple(arr.factors[1][1]) if arr.k >= 2 else ()
    left, right = _svg_x(Fraction(0)), _svg_x(Fraction(1))
    bottom, top = _svg_y(Fraction(0)), _svg_y(Fraction(1))
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="{left}" y="{top}" width="{BOX}" height="{BOX}" '
        'fill="white" stroke="black" stroke-width="1.5"/>',
    ]
    for w in x_walls:
        x = _svg_x(w)
        parts.append(
            f'<line x1="{x}" y1="{top}" x2="{x}" y2="{bottom}" '
            'stroke="black" stroke-width="1"/>'
        )
    for w in y_walls:
        y = _svg_y(w)
        parts.append(
            f'<line x1="{left}" y1="{y}" x2="{right}" y2="{y}" '
            'stroke="black" stroke-width="1"/>'
        )
    label_y = _fmt6(MARGIN_TOP + BOX + 20)
    for w in (Fraction(0), *x_walls, Fraction(1)):
        parts.append(
            f'<text x="{_svg_x(w)}" y="{label_y}" font-family="monospace" '
            f'font-size="13" text-anchor="middle">{format_rational(w)}</text>'
        )
    label_x = _fmt6(Fraction(MARGIN_LEFT - 8))
    if arr.k >= 2:
        for w in (Fraction(0), *y_walls, Fraction(1)):
            parts.append(
                f'<text x="{label_x}" y="{_fmt6(MARGIN_TOP + (1 - w) * BOX + 4)}" '
                'font-family="monospace" font-size="13" '
                f'text-anchor="end">{format_rational(w)}</text>'
            )
    if folding is not None and arr.k == 2:
        parts.append(
            f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{top}" '
            'stroke="black" stroke-width="0.75" stroke-dasharray="6 4"/>'
        )
        chambers_x = arr.factors[0][1].chambers()
        chambers_y = arr.factors[1][1].chambers()
        for cell in arr.cells(0):
            cx = chambers_x[cell.coords[0].index]
            cy = chambers_y[cell.coords[1].index]
            parts.append(
                f'<text x="{_svg_x((cx.lower + cx.upper) / 2)}" '
                f'y="{_fmt6(MARGIN_TOP + (1 - (cy.lower + cy.upper) / 2) * BOX + 4)}" '
                'font-family="monospace" font-size="12" text-anchor="middle">'
                f"{folding.orbit_index(cell)}</text>"
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _render_ascii(arr: ProductArrangement) -> str:
    if arr.k == 0:
        return "(no factors: a single chamber)\n"
    if arr.k == 1:
        fid, ws = arr.factors[0]
        canvas = ["-"] * (ASCII_COLS + 1)
        for w in ws:
            canvas[round(w * ASCII_COLS)] = "|"
        lines = [
            f"0 {''.join(canvas)} 1",
            f"{fid} walls: {ws}" if len(ws) else f"{fid} walls: (none)",
        ]
        return "\n".join(lines) + "\n"
    (fid_x, ws_x), (fid_y, ws_y) = arr.factors
    cols = {round(w * ASCII_COLS) for w in ws_x}
    rows = {round(w * ASCII_ROWS) for w in ws_y}
    grid = []
    for row in range(ASCII_ROWS + 1):
        y_hit = (ASCII_ROWS - row) in rows  # row 0 is the top of the square
        line = []
        for col in range(ASCII_COLS + 1):
            x_hit = col in cols
            border_x = col in (0, ASCII_COLS)
            border_y = row in (0, ASCII_ROWS)
            if border_x and border_y:
                line.append("+")
            elif border_y:
                line.append("+" if x_hit else "-")
            elif border_x:
                line.append("+" if y_hit else "|")
            elif x_hit and y_hit:
                line.append("+")
            elif x_hit:
                line.append("|")
            elif y_hit:
                line.append("-")
            else:
                line.append(" ")
        grid.append("".join(line))
    grid.append(f"x ({fid_x}) walls: {ws_x}")
    grid.append(f"y ({fid_y}) walls: {ws_y}")
    return "\n".join(grid) + "\n"
