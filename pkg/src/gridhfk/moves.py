"""Grid moves: commutations, stabilizations, destabilizations.

A commutation exchanges two adjacent columns (or rows) whose marker
intervals are strictly nested or strictly disjoint.  Pairs sharing an
endpoint row/column are not offered: they have no two-crossing curve
diagram, hence no induced chain map, and they factor through a
(de)stabilization pair anyway.

A stabilization at a marker splits its column and row in two and
replaces the marker by three new ones filling an L in the 2x2 block.
``corner`` names the block cell that receives the new marker of the
*opposite* kind; the two new markers of the original kind occupy the
block diagonal avoiding that cell.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import IllegalMove
from .grids import ClassicalInvariants, GridDiagram, classical_invariants

CORNERS = ("NW", "NE", "SW", "SE")


@dataclass(frozen=True)
class Commutation:
    axis: str  # "col" | "row"
    index: int  # commutes index and index+1 (no wrap)


@dataclass(frozen=True)
class Stabilization:
    marker: str  # "X" | "O"
    column: int  # column of the marker being stabilized
    corner: str  # NW | NE | SW | SE


@dataclass(frozen=True)
class Destabilization:
    column: int  # south-west corner cell of the 2x2 block
    row: int


@dataclass(frozen=True)
class Rotation180:
    """The Z/2 diagram symmetry; allowed in move scripts as "R"."""


GridMove = Union[Commutation, Stabilization, Destabilization, Rotation180]


# ---------------------------------------------------------------------------
# commutation legality


def _strictly_compatible(a: tuple[int, int], b: tuple[int, int]) -> bool:
    """Closed intervals strictly nested or strictly disjoint."""
    (a0, a1), (b0, b1) = sorted(a), sorted(b)
    if len({a0, a1, b0, b1}) < 4:
        return False
    if a1 < b0 or b1 < a0:
        return True
    return (a0 < b0 and b1 < a1) or (b0 < a0 and a1 < b1)


def commutation_legal(g: GridDiagram, m: Commutation) -> bool:
    i = m.index
    if i < 0 or i >= g.n - 1:
        return False
    if m.axis == "col":
        return _strictly_compatible(
            (g.x_perm[i], g.o_perm[i]), (g.x_perm[i + 1], g.o_perm[i + 1])
        )
    if m.axis == "row":
        return _strictly_compatible(
            (g.x_inv[i], g.o_inv[i]), (g.x_inv[i + 1], g.o_inv[i + 1])
        )
    return False


def _apply_commutation(g: GridDiagram, m: Commutation) -> GridDiagram:
    i = m.index
    if m.axis == "col":
        xs, os_ = list(g.x_perm), list(g.o_perm)
        xs[i], xs[i + 1] = xs[i + 1], xs[i]
        os_[i], os_[i + 1] = os_[i + 1], os_[i]
        return GridDiagram(g.n, tuple(xs), tuple(os_))
    swap = {i: i + 1, i + 1: i}
    xs = tuple(swap.get(r, r) for r in g.x_perm)
    os_ = tuple(swap.get(r, r) for r in g.o_perm)
    return GridDiagram(g.n, xs, os_)


# ---------------------------------------------------------------------------
# stabilization


def _stab_layout(marker: str, corner: str, c: int, r: int):
    """Positions of the three new markers in the split block.

    Returns (single, pair) where ``single`` is the lone marker of the
    opposite kind at the ``corner`` cell and ``pair`` are the two
    same-kind markers on the complementary block diagonal.
    """
    cells = {
        "SW": (c, r),
        "SE": (c + 1, r),
        "NW": (c, r + 1),
        "NE": (c + 1, r + 1),
    }
    single = cells[corner]
    diag = {"SW": ("NW", "SE"), "NE": ("NW", "SE"), "NW": ("SW", "NE"), "SE": ("SW", "NE")}
    pair = tuple(cells[k] for k in diag[corner])
    return single, pair


def stabilization_target(g: GridDiagram, m: Stabilization) -> GridDiagram:
    if m.marker not in ("X", "O") or m.corner not in CORNERS:
        raise IllegalMove(f"malformed stabilization {m}")
    if not (0 <= m.column < g.n):
        raise IllegalMove(f"column {m.column} out of range")
    c = m.column
    r = g.x_perm[c] if m.marker == "X" else g.o_perm[c]
    west = m.corner in ("SW", "NW")
    south = m.corner in ("SW", "SE")

    # partner markers sharing the stabilized marker's column / row
    col_partner_row = g.o_perm[c] if m.marker == "X" else g.x_perm[c]
    row_partner_col = g.o_inv[r] if m.marker == "X" else g.x_inv[r]

    def shift_col(k: int) -> int:
        return k + 1 if k > c else k

    def shift_row(s: int) -> int:
        return s + 1 if s > r else s

    n2 = g.n + 1
    xs: list[int | None] = [None] * n2
    os_: list[int | None] = [None] * n2

    def put(kind: str, col: int, row: int):
        arr = xs if kind == "X" else os_
        if arr[col] is not None:
            raise IllegalMove(f"stabilization collision at column {col}")
        arr[col] = row

    for k in range(g.n):
        for kind, row in (("X", g.x_perm[k]), ("O", g.o_perm[k])):
            if (k, row) == (c, r) and kind == m.marker:
                continue  # replaced by the new block
            if k == c and kind != m.marker and row == col_partner_row:
                put(kind, c + 1 if west else c, shift_row(row))
            elif row == r and kind != m.marker and k == row_partner_col:
                put(kind, shift_col(k), r + 1 if south else r)
            else:
                put(kind, shift_col(k), shift_row(row))

    single, pair = _stab_layout(m.marker, m.corner, c, r)
    opposite = "O" if m.marker == "X" else "X"
    put(opposite, *single)
    for cell in pair:
        put(m.marker, *cell)

    if any(v is None for v in xs) or any(v is None for v in os_):
        raise IllegalMove("stabilization produced an incomplete grid")
    return GridDiagram(n2, tuple(xs), tuple(os_))  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# destabilization


def destab_pattern(g: GridDiagram, c: int, r: int):
    """Recognize a destabilizable 2x2 block with SW cell (c, r).

    Returns (marker, corner) of the stabilization this undoes, or None.
    """
    if not (0 <= c < g.n - 1 and 0 <= r < g.n - 1):
        return None
    block = {}
    for kind, cols in (("X", g.x_perm), ("O", g.o_perm)):
        for cc in (c, c + 1):
            if cols[cc] in (r, r + 1):
                block[(cc, cols[cc])] = kind
    if len(block) != 3:
        return None
    cells = {
        (c, r): "SW",
        (c + 1, r): "SE",
        (c, r + 1): "NW",
        (c + 1, r + 1): "NE",
    }
    empty = [cell for cell in cells if cell not in block]
    if len(empty) != 1:
        return None
    kinds = sorted(block.values())
    if kinds not in (["O", "X", "X"], ["O", "O", "X"]):
        return None
    single_kind = "O" if kinds == ["O", "X", "X"] else "X"
    pair_kind = "X" if single_kind == "O" else "O"
    single_cells = [cell for cell, k in block.items() if k == single_kind]
    if len(single_cells) != 1:
        return None
    single = single_cells[0]
    # single must sit diagonally opposite the empty cell
    if (single[0] + empty[0][0] != 2 * c + 1) or (single[1] + empty[0][1] != 2 * r + 1):
        return None
    return pair_kind, cells[single]


def destabilization_target(g: GridDiagram, m: Destabilization) -> GridDiagram:
    pat = destab_pattern(g, m.column, m.row)
    if pat is None:
        raise IllegalMove(f"no destabilizable block at ({m.column}, {m.row})")
    marker, _corner = pat
    c, r = m.column, m.row
    n2 = g.n - 1
    xs: list[int | None] = [None] * n2
    os_: list[int | None] = [None] * n2
    block_cells = {(c, r), (c + 1, r), (c, r + 1), (c + 1, r + 1)}

    def put(kind: str, col: int, row: int):
        arr = xs if kind == "X" else os_
        if arr[col] is not None:
            raise IllegalMove("destabilization collision")
        arr[col] = row

    put(marker, c, r)
    for k in range(g.n):
        for kind, row in (("X", g.x_perm[k]), ("O", g.o_perm[k])):
            if (k, row) in block_cells:
                continue
            col2 = c if k in (c, c + 1) else (k - 1 if k > c else k)
            row2 = r if row in (r, r + 1) else (row - 1 if row > r else row)
            put(kind, col2, row2)

    if any(v is None for v in xs) or any(v is None for v in os_):
        raise IllegalMove("destabilization produced an incomplete grid")
    return GridDiagram(n2, tuple(xs), tuple(os_))  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# public API


def legal_moves(g: GridDiagram) -> list[GridMove]:
    out: list[GridMove] = []
    for axis in ("col", "row"):
        for i in range(g.n - 1):
            m = Commutation(axis, i)
            if commutation_legal(g, m):
                out.append(m)
    for marker in ("X", "O"):
        for c in range(g.n):
            for corner in CORNERS:
                out.append(Stabilization(marker, c, corner))
    for c in range(g.n - 1):
        for r in range(g.n - 1):
            if destab_pattern(g, c, r) is not None:
                out.append(Destabilization(c, r))
    return out


def apply_move(g: GridDiagram, m: GridMove) -> GridDiagram:
    from .grids import rotate180

    if isinstance(m, Commutation):
        if not commutation_legal(g, m):
            raise IllegalMove(f"illegal commutation {m.axis} {m.index}")
        return _apply_commutation(g, m)
    if isinstance(m, Stabilization):
        return stabilization_target(g, m)
    if isinstance(m, Destabilization):
        return destabilization_target(g, m)
    if isinstance(m, Rotation180):
        return rotate180(g)
    raise IllegalMove(f"unknown move {m!r}")


def classify_stabilization(g: GridDiagram, m: Stabilization) -> str:
    """Bucket a stabilization by its effect on (tb, rot)."""
    if not isinstance(m, Stabilization):
        raise IllegalMove("classification applies to stabilizations only")
    before = classical_invariants(g)
    after = classical_invariants(apply_move(g, m))
    delta = (after.tb - before.tb, after.rot - before.rot)
    return {
        (0, 0): "LegendrianIsotopy",
        (-1, 1): "PositiveStab",
        (-1, -1): "NegativeStab",
    }.get(delta, "TransverseNontrivial")


def inverse_move(g: GridDiagram, m: GridMove) -> GridMove:
    """The move undoing ``m`` on apply_move(g, m)."""
    if isinstance(m, Commutation):
        return m
    if isinstance(m, Rotation180):
        return m
    if isinstance(m, Stabilization):
        c = m.column
        r = g.x_perm[c] if m.marker == "X" else g.o_perm[c]
        return Destabilization(c, r)
    if isinstance(m, Destabilization):
        pat = destab_pattern(g, m.column, m.row)
        if pat is None:
            raise IllegalMove("not a destabilizable block")
        marker, corner = pat
        return Stabilization(marker, m.column, corner)
    raise IllegalMove(f"unknown move {m!r}")
