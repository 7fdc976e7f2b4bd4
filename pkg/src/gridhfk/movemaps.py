"""Chain maps induced by grid moves and class transport along scripts.

Commutation maps count pentagons: with the two commuting columns'
curves drawn on one torus, the bent curve dips left around the first
column's markers and crosses the straight one at two points; the map
counts embedded empty pentagons with a corner at the crossing just
counterclockwise of that marker block.  Equivalently, in closed form:
for each other column j there are two candidate regions (the two
rectangle completions); the region counts when the distinguished
crossing height lies inside its height arc, its interior is empty
except that first-column markers may sit between the lower corner and
the crossing (resp. second-column markers between the crossing and the
upper corner), matching the dip (resp. bulge) of the bent curve.

Stabilization maps: for NW/SE stabilizations the map includes the
centre point of the split block (a subcomplex inclusion); for SW/NE it
counts rectangles out of that included state with a corner at the
centre point whose interior is empty except for exactly the new lone
marker of the opposite kind.  X-stabilization maps preserve the
bigrading (top tensor factor); O-stabilization maps shift it by
(-1, -1) (bottom factor).  All eight are verified chain maps.

Destabilization transport inverts the corresponding stabilization map
on homology (one-sided inverse), per the documented design decision.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    BigradingMismatch,
    ChainMapViolation,
    GridInputError,
    IllegalMove,
)
from .gf2 import SparseBoolMatrix, pack_support
from .grids import GridDiagram, rotate180, transpose
from .homology import HomologyClass, SliceHomology, class_of, is_homologous, slice_homology
from .moves import (
    Commutation,
    Destabilization,
    GridMove,
    Rotation180,
    Stabilization,
    apply_move,
    commutation_legal,
    destab_pattern,
    inverse_move,
)
from .states import Bigrading, ComplexSlice, bigrading, build_slices, key_to_perm, state_key


# ---------------------------------------------------------------------------
# state-level maps


def _dip_top_row(g: GridDiagram, c: int) -> int:
    """CCW-most marker row of column c's block (no column c+1 marker inside)."""
    n = g.n
    a1, a2 = g.x_perm[c], g.o_perm[c]
    b1, b2 = g.x_perm[c + 1], g.o_perm[c + 1]
    w12 = (a2 - a1) % n
    if any(((b - a1) % n) < w12 and b != a1 for b in (b1, b2)):
        return a1
    return a2


def commutation_images(g: GridDiagram, c: int, x) -> list[tuple[int, ...]]:
    """Pentagon targets (mod 2) of one state under column commutation."""
    n = g.n
    N4 = 4 * n
    d = c + 1
    J1 = 4 * _dip_top_row(g, c) + 3
    xs, os_ = g.x_perm, g.o_perm
    out = []
    for j in range(n):
        if j == d:
            continue
        h1, h2 = x[d], x[j]
        u1, u2 = 4 * h1, 4 * h2
        y = list(x)
        y[d], y[j] = h2, h1
        y = tuple(y)
        # ascending region: columns (j -> d), heights (h2 -> h1)
        arc = (u1 - u2) % N4
        if (J1 - u2) % N4 < arc:
            ok = True
            cut = (J1 - u2) % N4
            cells = [(j + t) % n for t in range((d - j) % n)]
            for cm in cells:
                for r in (xs[cm], os_[cm]):
                    m = (4 * r + 2 - u2) % N4
                    if m < arc and not (cm == c and m < cut):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                for r in (xs[d], os_[d]):
                    if (4 * r + 2 - u2) % N4 < cut:
                        ok = False
                        break
            if ok:
                for k in cells[1:]:
                    if 0 < (4 * x[k] - u2) % N4 < arc:
                        ok = False
                        break
            if ok:
                out.append(y)
        # descending region: columns (d -> j), heights (h1 -> h2)
        arc = (u2 - u1) % N4
        if (J1 - u1) % N4 < arc:
            ok = True
            cells = [(d + t) % n for t in range((j - d) % n)]
            for cm in cells:
                for r in (xs[cm], os_[cm]):
                    m = (4 * r + 2 - u1) % N4
                    if m < arc and not (cm == d and (4 * r + 2 - J1) % N4 < (u2 - J1) % N4):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                for r in (xs[c], os_[c]):
                    if (4 * r + 2 - J1) % N4 < (u2 - J1) % N4:
                        ok = False
                        break
            if ok:
                for k in cells[1:]:
                    if 0 < (4 * x[k] - u1) % N4 < arc:
                        ok = False
                        break
            if ok:
                out.append(y)
    acc: dict[tuple[int, ...], int] = {}
    for y in out:
        acc[y] = acc.get(y, 0) ^ 1
    return [y for y, v in acc.items() if v]


def _invert(perm) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, v in enumerate(perm):
        inv[v] = i
    return tuple(inv)


def include_center(x, c: int, r: int) -> tuple[int, ...]:
    """Embed a state of g into the stabilized grid, adding the centre point."""
    n2 = len(x) + 1
    y = [None] * n2
    for v, w in enumerate(x):
        y[v + 1 if v > c else v] = w + 1 if w > r else w
    y[c + 1] = r + 1
    return tuple(y)  # type: ignore[return-value]


def strip_center(xp, c: int, r: int) -> tuple[int, ...] | None:
    """Inverse of include_center; None if the centre point is absent."""
    if xp[c + 1] != r + 1:
        return None
    y = []
    for v, w in enumerate(xp):
        if v == c + 1:
            continue
        y.append(w - 1 if w > r + 1 else w)
    return tuple(y)


def stabilization_images(g: GridDiagram, m: Stabilization, x) -> list[tuple[int, ...]]:
    """Targets of one state under the stabilization chain map."""
    gp = apply_move(g, m)
    c = m.column
    r = g.x_perm[c] if m.marker == "X" else g.o_perm[c]
    xp = include_center(x, c, r)
    if m.corner in ("NW", "SE"):
        return [xp]
    # SW/NE: rectangles out of xp with a corner at the centre, empty except
    # for the lone new marker of the opposite kind in the block.
    lone_cell = {"SW": (c, r), "NE": (c + 1, r + 1)}[m.corner]
    lone_kind = "O" if m.marker == "X" else "X"
    blockers = gp.x_perm if lone_kind == "O" else gp.o_perm
    passers = gp.o_perm if lone_kind == "O" else gp.x_perm
    n = gp.n
    center = (c + 1, r + 1)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for (ci, cj) in ((i, j), (j, i)):
                ha, hb = xp[ci], xp[cj]
                if center not in ((ci, ha), (cj, hb)):
                    continue
                length = (hb - ha) % n
                cells = [(ci + t) % n for t in range((cj - ci) % n)]
                if any((blockers[cm] - ha) % n < length for cm in cells):
                    continue
                inside = [cm for cm in cells if (passers[cm] - ha) % n < length]
                if len(inside) != 1 or (inside[0], passers[inside[0]]) != lone_cell:
                    continue
                if any(0 < (xp[k] - ha) % n < length for k in cells[1:]):
                    continue
                y = list(xp)
                y[i], y[j] = y[j], y[i]
                out.append(tuple(y))
    acc: dict[tuple[int, ...], int] = {}
    for y in out:
        acc[y] = acc.get(y, 0) ^ 1
    return [y for y, v in acc.items() if v]


# ---------------------------------------------------------------------------
# induced maps


@dataclass
class InducedMap:
    """A move-induced map between two grid complexes.

    ``kind`` is "chain" (an explicit chain map, verified on demand) or
    "homology-inverse" (transport inverts the chain map of the inverse
    move on homology; no chain-level matrix exists by design).
    """

    source: GridDiagram
    target: GridDiagram
    move: GridMove
    kind: str
    shift: Bigrading  # bigrading shift of the chain map (chain kind)
    _image_fn: object = field(default=None, repr=False)
    inverse_of: "InducedMap | None" = None

    def state_images(self, x) -> list[tuple[int, ...]]:
        if self.kind != "chain":
            raise ChainMapViolation("homology-inverse maps have no state-level images")
        return self._image_fn(x)

    def matrix(
        self,
        bg: Bigrading,
        src_slices: dict[Bigrading, ComplexSlice],
        tgt_slices: dict[Bigrading, ComplexSlice],
    ) -> SparseBoolMatrix:
        """Matrix block of the chain map out of the (m, a) slice."""
        src = src_slices.get(bg)
        tbg = (bg[0] + self.shift[0], bg[1] + self.shift[1])
        tgt = tgt_slices.get(tbg)
        rows = tgt.dim if tgt is not None else 0
        cols = src.dim if src is not None else 0
        coords = []
        if src is not None:
            n = self.source.n
            for cidx in range(src.dim):
                x = src.perm_at(cidx, n)
                for y in self.state_images(x):
                    if tgt is None:
                        raise BigradingMismatch(
                            f"image of slice {bg} lands in missing slice {tbg}"
                        )
                    coords.append((tgt.index_of_key(state_key(y, self.target.n)), cidx))
        return SparseBoolMatrix(rows, cols, coords)

    def verify_chain_identity(
        self,
        bg: Bigrading,
        src_slices: dict[Bigrading, ComplexSlice],
        tgt_slices: dict[Bigrading, ComplexSlice],
    ) -> None:
        """Assert d o Phi == Phi o d out of the given slice; raises otherwise."""
        phi = self.matrix(bg, src_slices, tgt_slices)
        below = (bg[0] - 1, bg[1])
        phi_below = self.matrix(below, src_slices, tgt_slices)
        src = src_slices.get(bg)
        tbg = (bg[0] + self.shift[0], bg[1] + self.shift[1])
        tgt = tgt_slices.get(tbg)
        d_src = src.boundary_out if src is not None else None
        d_tgt = tgt.boundary_out if tgt is not None else None
        lhs = d_tgt.matmul(phi) if (d_tgt is not None and phi.rows) else None
        rhs = phi_below.matmul(d_src) if (d_src is not None and phi_below.rows) else None
        lent = lhs.entries if lhs is not None else frozenset()
        rent = rhs.entries if rhs is not None else frozenset()
        if lent != rent:
            raise ChainMapViolation(
                f"chain identity fails for {self.move} out of slice {bg}"
            )


def commutation_map(g: GridDiagram, m: Commutation) -> InducedMap:
    if not isinstance(m, Commutation) or not commutation_legal(g, m):
        raise IllegalMove(f"not a legal commutation: {m}")
    target = apply_move(g, m)
    if m.axis == "col":
        fn = lambda x: commutation_images(g, m.index, x)
    else:
        gt = transpose(g)

        def fn(x, gt=gt, i=m.index):
            return [_invert(y) for y in commutation_images(gt, i, _invert(x))]

    return InducedMap(source=g, target=target, move=m, kind="chain", shift=(0, 0), _image_fn=fn)


def stabilization_map(g: GridDiagram, m: GridMove) -> InducedMap:
    """Map of a stabilization (chain) or destabilization (homology inverse)."""
    if isinstance(m, Stabilization):
        target = apply_move(g, m)
        shift = (0, 0) if m.marker == "X" else (-1, -1)
        return InducedMap(
            source=g,
            target=target,
            move=m,
            kind="chain",
            shift=shift,
            _image_fn=lambda x: stabilization_images(g, m, x),
        )
    if isinstance(m, Destabilization):
        target = apply_move(g, m)
        stab = inverse_move(g, m)
        fwd = stabilization_map(target, stab)
        return InducedMap(
            source=g,
            target=target,
            move=m,
            kind="homology-inverse",
            shift=(-fwd.shift[0], -fwd.shift[1]),
            inverse_of=fwd,
        )
    raise IllegalMove(f"not a (de)stabilization: {m}")


def rotation_map(g: GridDiagram) -> InducedMap:
    """Markers rotate cell-wise, but state points live on the lattice,
    so their rotation is (c, h) -> (n - c, n - h) mod n."""
    target = rotate180(g)
    n = g.n

    def fn(x):
        return [tuple((n - x[(n - c) % n]) % n for c in range(n))]

    return InducedMap(
        source=g, target=target, move=Rotation180(), kind="chain", shift=(0, 0), _image_fn=fn
    )


def grid_symmetry_involution(g: GridDiagram) -> tuple[GridDiagram, InducedMap]:
    """180-degree rotation and the induced relabeling chain isomorphism."""
    return rotate180(g), rotation_map(g)


def induced_map(g: GridDiagram, m: GridMove) -> InducedMap:
    if isinstance(m, Commutation):
        return commutation_map(g, m)
    if isinstance(m, (Stabilization, Destabilization)):
        return stabilization_map(g, m)
    if isinstance(m, Rotation180):
        return rotation_map(g)
    raise IllegalMove(f"unknown move {m!r}")


# ---------------------------------------------------------------------------
# move scripts and transport


@dataclass(frozen=True)
class MoveScript:
    start: GridDiagram
    moves: tuple[GridMove, ...]

    @property
    def end(self) -> GridDiagram:
        g = self.start
        for m in self.moves:
            g = apply_move(g, m)
        return g

    def grids(self) -> list[GridDiagram]:
        out = [self.start]
        for m in self.moves:
            out.append(apply_move(out[-1], m))
        return out

    def reversed(self) -> "MoveScript":
        gs = self.grids()
        moves = []
        for g, m in zip(gs[:-1], self.moves):
            moves.append(inverse_move(g, m))
        return MoveScript(start=gs[-1], moves=tuple(reversed(moves)))


class TransportContext:
    """Caches per-grid slice neighborhoods and homology bases.

    Slices for a grid accumulate: requesting new bigradings rebuilds the
    grid's slice dict once for the union, so repeated hops through the
    same grid reuse one enumeration pass.
    """

    def __init__(self, max_n: int = 12, verify: bool = True):
        self.max_n = max_n
        self.verify = verify
        self._slices: dict[str, dict[Bigrading, ComplexSlice]] = {}
        self._selected: dict[str, set[Bigrading]] = {}
        self._homology: dict[tuple[str, Bigrading], SliceHomology] = {}

    def slices_for(self, g: GridDiagram, bgs) -> dict[Bigrading, ComplexSlice]:
        key = g.content_key()
        want = set(bgs)
        have = self._selected.get(key, set())
        if not want <= have:
            union = have | want
            self._slices[key] = build_slices(g, max_n=self.max_n, select=union)
            self._selected[key] = union
            stale = [hk for hk in self._homology if hk[0] == key]
            for hk in stale:
                del self._homology[hk]
        return self._slices[key]

    def homology_at(self, g: GridDiagram, bg: Bigrading) -> SliceHomology:
        key = (g.content_key(), bg)
        if key not in self._homology:
            slices = self.slices_for(g, {bg, (bg[0] + 1, bg[1])})
            self._homology[key] = slice_homology(slices, bg, g.content_key())
        return self._homology[key]

    def class_from_state(self, g: GridDiagram, x) -> HomologyClass:
        bg = bigrading(g, x)
        slices = self.slices_for(g, {bg, (bg[0] + 1, bg[1])})
        sh = self.homology_at(g, bg)
        sl = slices[bg]
        return class_of(sh, slices, {sl.index_of_key(state_key(x, g.n))})

    def transport_hop(
        self, g: GridDiagram, m: GridMove, cls: HomologyClass
    ) -> tuple[GridDiagram, HomologyClass]:
        if cls.grid_key != g.content_key():
            raise BigradingMismatch("class does not live on the hop's source grid")
        imap = induced_map(g, m)
        tgt = imap.target
        bg = cls.bigrading
        if imap.kind == "chain":
            tbg = (bg[0] + imap.shift[0], bg[1] + imap.shift[1])
            src_need = {bg, (bg[0] + 1, bg[1])}
            tgt_need = {tbg, (tbg[0] + 1, tbg[1])}
            if self.verify:
                src_need.add((bg[0] - 1, bg[1]))
                tgt_need.add((tbg[0] - 1, tbg[1]))
            src_slices = self.slices_for(g, src_need)
            tgt_slices = self.slices_for(tgt, tgt_need)
            if self.verify:
                imap.verify_chain_identity(bg, src_slices, tgt_slices)
            sl = src_slices[bg]
            acc: dict[tuple[int, ...], int] = {}
            for idx in cls.cycle:
                for y in imap.state_images(sl.perm_at(idx, g.n)):
                    acc[y] = acc.get(y, 0) ^ 1
            sh = self.homology_at(tgt, tbg)
            tsl = tgt_slices.get(tbg)
            support = set()
            for y, v in acc.items():
                if v:
                    support.add(tsl.index_of_key(state_key(y, tgt.n)))
            return tgt, class_of(sh, tgt_slices, support)
        # homology inverse of the forward stabilization map
        fwd = imap.inverse_of
        tbg = (bg[0] + imap.shift[0], bg[1] + imap.shift[1])
        u = invert_on_homology(self, fwd, tbg, cls)
        return tgt, u

    def transport(self, script: MoveScript, cls: HomologyClass) -> HomologyClass:
        g = script.start
        for m in script.moves:
            g, cls = self.transport_hop(g, m, cls)
        return cls


def homology_matrix(
    ctx: TransportContext, imap: InducedMap, bg: Bigrading
) -> tuple[SparseBoolMatrix, SliceHomology, SliceHomology]:
    """Matrix of the induced map on homology bases at source bigrading bg."""
    if imap.kind != "chain":
        raise ChainMapViolation("homology matrix needs a chain-level map")
    g, tgt = imap.source, imap.target
    tbg = (bg[0] + imap.shift[0], bg[1] + imap.shift[1])
    src_slices = ctx.slices_for(g, {bg, (bg[0] + 1, bg[1])})
    tgt_slices = ctx.slices_for(tgt, {tbg, (tbg[0] + 1, tbg[1])})
    sh_src = ctx.homology_at(g, bg)
    sh_tgt = ctx.homology_at(tgt, tbg)
    sl = src_slices.get(bg)
    tsl = tgt_slices.get(tbg)
    coords = []
    for b_idx in range(sh_src.dim):
        rep = sh_src.representative([1 if i == b_idx else 0 for i in range(sh_src.dim)])
        acc: dict[tuple[int, ...], int] = {}
        for idx in rep:
            x = sl.perm_at(idx, g.n)
            for y in imap.state_images(x):
                acc[y] = acc.get(y, 0) ^ 1
        support = {tsl.index_of_key(state_key(y, tgt.n)) for y, v in acc.items() if v}
        img_cls = class_of(sh_tgt, tgt_slices, support)
        for r, bit in enumerate(img_cls.coords):
            if bit:
                coords.append((r, b_idx))
    return SparseBoolMatrix(sh_tgt.dim, sh_src.dim, coords), sh_src, sh_tgt


def invert_on_homology(
    ctx: TransportContext, fwd: InducedMap, src_bg: Bigrading, cls: HomologyClass
) -> HomologyClass:
    """Solve fwd_*(u) = cls; raises if the class is not in the image."""
    from .gf2 import solve

    mat, sh_src, sh_tgt = homology_matrix(ctx, fwd, src_bg)
    if cls.bigrading != sh_tgt.bigrading:
        raise BigradingMismatch("class bigrading does not match the map target")
    sol = solve(mat, frozenset(i for i, b in enumerate(cls.coords) if b))
    if sol is None:
        raise BigradingMismatch(
            "class is not in the image of the stabilization map; transport undefined"
        )
    g = fwd.source
    slices = ctx.slices_for(g, {src_bg, (src_bg[0] + 1, src_bg[1])})
    coords = [1 if i in sol else 0 for i in range(sh_src.dim)]
    rep = sh_src.representative(coords)
    return class_of(sh_src, slices, rep)


# ---------------------------------------------------------------------------
# orbit counting


def count_orbits(classes: list[HomologyClass], involution_action) -> int:
    """Orbits of the class set under {id, involution}.

    ``involution_action`` maps a HomologyClass to a HomologyClass in the
    same slice (e.g. built from grid_symmetry_involution on a rotation-
    symmetric grid).
    """
    if not classes:
        return 0
    bg = classes[0].bigrading
    gk = classes[0].grid_key
    for c in classes:
        if c.bigrading != bg or c.grid_key != gk:
            raise BigradingMismatch("orbit counting needs classes in one slice")
    remaining = {c.coords: c for c in classes}
    orbits = 0
    while remaining:
        _, c = remaining.popitem()
        img = involution_action(c)
        if img.bigrading != bg:
            raise BigradingMismatch("involution does not preserve the slice")
        remaining.pop(img.coords, None)
        orbits += 1
    return orbits


# ---------------------------------------------------------------------------
# script files: "grid <file>" or "builtin <name>", then one move per line


def parse_move(line: str, g: GridDiagram) -> GridMove:
    toks = line.split()
    try:
        if toks[0] == "C":
            if toks[1] not in ("col", "row"):
                raise GridInputError(f"bad commutation axis {toks[1]!r}")
            return Commutation(toks[1], int(toks[2]))
        if toks[0] == "S":
            marker, col, corner = toks[1], int(toks[2]), toks[3]
            return Stabilization(marker, col, corner)
        if toks[0] == "D":
            col = int(toks[1])
            if len(toks) >= 3:
                return Destabilization(col, int(toks[2]))
            rows = [r for r in range(g.n - 1) if destab_pattern(g, col, r) is not None]
            if len(rows) != 1:
                raise GridInputError(
                    f"destabilization at column {col} is ambiguous or illegal; "
                    f"candidate rows {rows}"
                )
            return Destabilization(col, rows[0])
        if toks[0] == "R":
            return Rotation180()
    except (IndexError, ValueError) as exc:
        raise GridInputError(f"malformed move line {line!r}") from exc
    raise GridInputError(f"unknown move kind in line {line!r}")


def load_script(path, grid_loader=None) -> MoveScript:
    """Parse a move-script file; the header names the start grid."""
    from .grids import load_grid
    from .library import builtin_library

    p = Path(path)
    lines = []
    for raw in p.read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise GridInputError("empty move script")
    head = lines[0].split()
    if head[0] == "grid":
        g = load_grid(p.parent / " ".join(head[1:]))
    elif head[0] == "builtin":
        g = builtin_library(" ".join(head[1:]))
    else:
        raise GridInputError("script header must be 'grid <file>' or 'builtin <name>'")
    moves = []
    cur = g
    for line in lines[1:]:
        m = parse_move(line, cur)
        cur = apply_move(cur, m)
        moves.append(m)
    return MoveScript(start=g, moves=tuple(moves))


def script_to_text(script: MoveScript, header: str) -> str:
    lines = [header]
    for m in script.moves:
        if isinstance(m, Commutation):
            lines.append(f"C {m.axis} {m.index}")
        elif isinstance(m, Stabilization):
            lines.append(f"S {m.marker} {m.column} {m.corner}")
        elif isinstance(m, Destabilization):
            lines.append(f"D {m.column} {m.row}")
        elif isinstance(m, Rotation180):
            lines.append("R")
        else:
            raise GridInputError(f"unknown move {m!r}")
    return "\n".join(lines) + "\n"


def conjugate_move_rot180(g: GridDiagram, m: GridMove) -> GridMove:
    """The move on rotate180(g) matching m on g."""
    n = g.n
    if isinstance(m, Commutation):
        return Commutation(m.axis, n - 2 - m.index)
    if isinstance(m, Stabilization):
        corner = {"NE": "SW", "SW": "NE", "NW": "SE", "SE": "NW"}[m.corner]
        return Stabilization(m.marker, n - 1 - m.column, corner)
    if isinstance(m, Destabilization):
        return Destabilization(n - 2 - m.column, n - 2 - m.row)
    if isinstance(m, Rotation180):
        return m
    raise IllegalMove(f"unknown move {m!r}")


def conjugate_script_rot180(script: MoveScript) -> MoveScript:
    g = script.start
    moves = []
    for m in script.moves:
        moves.append(conjugate_move_rot180(g, m))
        g = apply_move(g, m)
    return MoveScript(start=rotate180(script.start), moves=tuple(moves))
