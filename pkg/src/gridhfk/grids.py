"""Grid diagrams, their validation, and classical Legendrian invariants.

Conventions (pinned here once; everything else in the package derives
from them):

* A grid of size n lives on the square [0, n]^2.  Cell (c, r) is the
  unit square with south-west corner (c, r); the marker in cell (c, r)
  is drawn at its center (c + 1/2, r + 1/2).  ``x_perm[c]`` / ``o_perm[c]``
  give the row of the X / O marker in column c.
* Orientation: in each column the strand runs from the O marker to the
  X marker, in each row from the X marker to the O marker.
* Planar diagram: vertical segments always cross over horizontal ones.
  The chain complex built from the grid computes invariants of this
  planar knot.
* Legendrian front: rotate the grid 45 degrees clockwise.  Corners of
  type NE and SW become cusps, NW and SE corners are smoothed.  Under
  this rotation the front's over-strand convention is the opposite of
  the planar one, so the Legendrian knot represented by the front is
  the mirror of the planar knot.  tb and rot below are invariants of
  the front (the Legendrian knot); homology and signature are
  invariants of the planar knot.  This matches the usual pairing of a
  Legendrian L with homology of its mirror.
* Crossing sign: det[over_dir | under_dir] > 0 is a positive crossing.
  The writhe entering tb is the front writhe (horizontal over
  vertical); it is the negative of the planar writhe.
* A cusp's direction is the common vertical sense of its two branches
  after the clockwise rotation: traversals {S->E, E->S} give down
  cusps, {W->N, N->W} give up cusps.  rot = (#down - #up) / 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    MultiComponentLink,
    NotAPermutation,
    SharedCell,
    GridInputError,
)

DEFAULT_MAX_GRID_SIZE = 12


def _check_permutation(values: Sequence[int], n: int, label: str) -> tuple[int, ...]:
    vals = tuple(int(v) for v in values)
    if len(vals) != n:
        raise NotAPermutation(f"{label} has length {len(vals)}, expected {n}")
    if sorted(vals) != list(range(n)):
        raise NotAPermutation(f"{label} is not a permutation of 0..{n - 1}: {vals}")
    return vals


@dataclass(frozen=True)
class GridDiagram:
    """An n x n grid diagram of a knot.

    Immutable; all derived quantities are pure functions of the two
    permutations.
    """

    n: int
    x_perm: tuple[int, ...]
    o_perm: tuple[int, ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 2:
            raise GridInputError(f"grid size must be at least 2, got {self.n}")
        object.__setattr__(self, "x_perm", _check_permutation(self.x_perm, self.n, "x_perm"))
        object.__setattr__(self, "o_perm", _check_permutation(self.o_perm, self.n, "o_perm"))
        for c in range(self.n):
            if self.x_perm[c] == self.o_perm[c]:
                raise SharedCell(f"column {c} has X and O in the same cell (row {self.x_perm[c]})")
        if not self._is_single_component():
            raise MultiComponentLink("X/O cycle does not visit all 2n markers")

    def _is_single_component(self) -> bool:
        # Follow column O->X then row X->O; the induced permutation on
        # columns must be a single n-cycle.
        o_inv = self.o_inv
        seen = 1
        c = o_inv[self.x_perm[0]]
        while c != 0:
            seen += 1
            if seen > self.n:
                return False
            c = o_inv[self.x_perm[c]]
        return seen == self.n

    @property
    def x_inv(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for c, r in enumerate(self.x_perm):
            inv[r] = c
        return tuple(inv)

    @property
    def o_inv(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for c, r in enumerate(self.o_perm):
            inv[r] = c
        return tuple(inv)

    def content_key(self) -> str:
        """Stable text key identifying the diagram (used for caching)."""
        xs = ",".join(map(str, self.x_perm))
        os_ = ",".join(map(str, self.o_perm))
        return f"n={self.n};x={xs};o={os_}"

    def markers(self) -> list[tuple[str, int, int]]:
        """All markers as (kind, column, row) triples."""
        out = [("X", c, r) for c, r in enumerate(self.x_perm)]
        out += [("O", c, r) for c, r in enumerate(self.o_perm)]
        return out

    def ascii_art(self) -> str:
        rows = []
        for r in range(self.n - 1, -1, -1):
            cells = []
            for c in range(self.n):
                if self.x_perm[c] == r:
                    cells.append("X")
                elif self.o_perm[c] == r:
                    cells.append("O")
                else:
                    cells.append(".")
            rows.append(" ".join(cells))
        return "\n".join(rows)

    def __str__(self) -> str:
        label = self.name or "grid"
        return f"<{label} {self.n}x{self.n}>"


def new_grid(n: int, xs: Iterable[int], os: Iterable[int], name: str | None = None) -> GridDiagram:
    """Validated constructor; raises on any malformed input."""
    return GridDiagram(n=int(n), x_perm=tuple(xs), o_perm=tuple(os), name=name)


# ---------------------------------------------------------------------------
# grid file format: line 1 "n", line 2 x_perm, line 3 o_perm, '#' comments


def grid_to_text(g: GridDiagram) -> str:
    lines = []
    if g.name:
        lines.append(f"# {g.name}")
    lines.append(str(g.n))
    lines.append(" ".join(map(str, g.x_perm)))
    lines.append(" ".join(map(str, g.o_perm)))
    return "\n".join(lines) + "\n"


def grid_from_text(text: str, name: str | None = None) -> GridDiagram:
    payload = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            payload.append((lineno, line))
    if len(payload) != 3:
        raise GridInputError(
            f"grid file needs 3 data lines (n, x_perm, o_perm), found {len(payload)}"
        )
    try:
        n = int(payload[0][1])
    except ValueError:
        raise GridInputError(f"line {payload[0][0]}: grid size is not an integer") from None

    def parse_row(entry, label):
        lineno, line = entry
        try:
            vals = [int(tok) for tok in line.split()]
        except ValueError:
            raise GridInputError(f"line {lineno}: {label} contains a non-integer") from None
        if len(vals) != n:
            raise GridInputError(
                f"line {lineno}: {label} has {len(vals)} entries, expected {n} (column 1)"
            )
        return vals

    xs = parse_row(payload[1], "x_perm")
    os_ = parse_row(payload[2], "o_perm")
    return new_grid(n, xs, os_, name=name)


def save_grid(g: GridDiagram, path) -> None:
    from pathlib import Path

    Path(path).write_text(grid_to_text(g), encoding="utf-8")


def load_grid(path) -> GridDiagram:
    from pathlib import Path

    p = Path(path)
    return grid_from_text(p.read_text(encoding="utf-8"), name=p.stem)


# ---------------------------------------------------------------------------
# classical invariants of the front


@dataclass(frozen=True)
class ClassicalInvariants:
    tb: int
    rot: int
    sl: int


def _col_span(g: GridDiagram, c: int) -> tuple[int, int]:
    a, b = g.o_perm[c], g.x_perm[c]
    return (a, b) if a < b else (b, a)


def _row_span(g: GridDiagram, r: int) -> tuple[int, int]:
    a, b = g.x_inv[r], g.o_inv[r]
    return (a, b) if a < b else (b, a)


def crossings(g: GridDiagram) -> list[tuple[int, int]]:
    """All (column, row) crossings of the planar projection."""
    out = []
    spans_r = [_row_span(g, r) for r in range(g.n)]
    for c in range(g.n):
        lo, hi = _col_span(g, c)
        for r in range(lo + 1, hi):
            rl, rh = spans_r[r]
            if rl < c < rh:
                out.append((c, r))
    return out


def planar_writhe(g: GridDiagram) -> int:
    """Writhe of the planar diagram (vertical strand over horizontal)."""
    w = 0
    x_inv, o_inv = g.x_inv, g.o_inv
    for c, r in crossings(g):
        up = g.x_perm[c] > g.o_perm[c]  # column strand runs O -> X
        east = o_inv[r] > x_inv[r]  # row strand runs X -> O
        # det[over | under] with over vertical: -1 for (up,E),(down,W)
        w += -1 if up == east else 1
    return w


_CUSP_DIRECTION = {
    frozenset(("S", "E")): "down",
    frozenset(("W", "N")): "up",
}


def _corner_traversals(g: GridDiagram):
    """Yield (arrive, leave) headings at each of the 2n corners."""
    x_inv, o_inv = g.x_inv, g.o_inv
    for c in range(g.n):
        r = g.x_perm[c]
        arrive = "N" if r > g.o_perm[c] else "S"  # column segment ends at X
        leave = "E" if o_inv[r] > c else "W"  # row segment starts at X
        yield arrive, leave
    for c in range(g.n):
        r = g.o_perm[c]
        arrive = "E" if o_inv[r] > x_inv[r] else "W"  # row segment ends at O
        leave = "N" if g.x_perm[c] > r else "S"  # column segment starts at O
        yield arrive, leave


def cusps(g: GridDiagram) -> tuple[int, int]:
    """(down, up) cusp counts of the front."""
    down = up = 0
    for arrive, leave in _corner_traversals(g):
        kind = _CUSP_DIRECTION.get(frozenset((arrive, leave)))
        if kind == "down":
            down += 1
        elif kind == "up":
            up += 1
    return down, up


def classical_invariants(g: GridDiagram) -> ClassicalInvariants:
    """tb, rot and sl of the Legendrian front carried by the grid."""
    down, up = cusps(g)
    tb = -planar_writhe(g) - (down + up) // 2
    rot = (down - up) // 2
    return ClassicalInvariants(tb=tb, rot=rot, sl=tb - rot)


def mirror(g: GridDiagram) -> GridDiagram:
    """Grid of the mirror knot (reflect rows; crossings all switch).

    Reflection through a horizontal axis keeps vertical strands
    vertical, so the vertical-over convention forces every crossing to
    change, which is exactly mirroring.
    """
    m = g.n - 1
    return GridDiagram(
        n=g.n,
        x_perm=tuple(m - r for r in g.x_perm),
        o_perm=tuple(m - r for r in g.o_perm),
        name=f"mirror({g.name})" if g.name else None,
    )


def rotate180(g: GridDiagram) -> GridDiagram:
    """Rotate the diagram by 180 degrees (reverse both permutations)."""
    m = g.n - 1
    return GridDiagram(
        n=g.n,
        x_perm=tuple(m - g.x_perm[m - c] for c in range(g.n)),
        o_perm=tuple(m - g.o_perm[m - c] for c in range(g.n)),
        name=f"rot180({g.name})" if g.name else None,
    )


def transpose(g: GridDiagram) -> GridDiagram:
    """Reflect through the main diagonal (swap row/column roles).

    Preserves the knot type with reversed orientation; the state
    bijection x -> x^-1 identifies the chain complexes.
    """
    return GridDiagram(
        n=g.n,
        x_perm=g.x_inv,
        o_perm=g.o_inv,
        name=f"transpose({g.name})" if g.name else None,
    )
