"""Independent oracles: Goeritz signature, the alternating-knot formula,
and the closed-form twist-knot tables.

The signature comes from a Gordon-Litherland computation on the planar
(vertical-over) diagram, so it refers to the same knot as the computed
homology.  Checkerboard conventions are pinned by calibration: the
white surface is the color class away from the unbounded region, eta
of a crossing is +1 when its white quadrants are the NE/SW pair, and
the correction term sums eta over crossings whose two outgoing arrows
point into a black quadrant.  With these choices the right-handed
trefoil grid computes signature -2, the figure eight 0, and every
alternating library grid matches the alternating placement of its
computed homology.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import AsymmetricPolynomial, EvenN, InexactDivision
from .grids import GridDiagram, crossings
from .homology import BigradedDims
from .laurent import Laurent


# ---------------------------------------------------------------------------
# planar regions and the Goeritz form


def _region_decomposition(g: GridDiagram):
    """Label the complement regions of the planar diagram.

    Returns (labels, n_regions, outer_label) where labels maps each unit
    cell (x, y) of the [0, 2n]^2 board plus the outer pseudo-cell to a
    region id.  Adjacent cells merge unless the knot projection runs
    between them.
    """
    n = g.n
    size = 2 * n
    blocked_v = set()  # (x, y): wall between cells (x-1, y) and (x, y)
    blocked_h = set()  # (x, y): wall between cells (x, y-1) and (x, y)
    for c in range(n):
        lo, hi = sorted((g.x_perm[c], g.o_perm[c]))
        for y in range(2 * lo + 1, 2 * hi + 1):
            blocked_v.add((2 * c + 1, y))
    x_inv, o_inv = g.x_inv, g.o_inv
    for r in range(n):
        lo, hi = sorted((x_inv[r], o_inv[r]))
        for x in range(2 * lo + 1, 2 * hi + 1):
            blocked_h.add((x, 2 * r + 1))

    labels: dict[tuple[int, int], int] = {}
    nxt = 0
    for sx in range(size):
        for sy in range(size):
            if (sx, sy) in labels:
                continue
            stack = [(sx, sy)]
            labels[(sx, sy)] = nxt
            while stack:
                x, y = stack.pop()
                neigh = []
                if x + 1 < size and (x + 1, y) not in blocked_v:
                    neigh.append((x + 1, y))
                if x - 1 >= 0 and (x, y) not in blocked_v:
                    neigh.append((x - 1, y))
                if y + 1 < size and (x, y + 1) not in blocked_h:
                    neigh.append((x, y + 1))
                if y - 1 >= 0 and (x, y) not in blocked_h:
                    neigh.append((x, y - 1))
                for cell in neigh:
                    if cell not in labels:
                        labels[cell] = nxt
                        stack.append(cell)
            nxt += 1
    # boundary cells all belong to the unbounded region
    outer = labels[(0, 0)]
    merged = {}
    for x in range(size):
        for y in (0, size - 1):
            merged[labels[(x, y)]] = outer
            merged[labels[(y, x)]] = outer
    relab = {}
    for cell, lab in labels.items():
        lab = merged.get(lab, lab)
        labels[cell] = lab
    ids = sorted({merged.get(l, l) for l in labels.values()})
    remap = {l: i for i, l in enumerate(ids)}
    labels = {cell: remap[lab] for cell, lab in labels.items()}
    return labels, len(ids), remap[outer]


def _two_color(g: GridDiagram, labels, n_regions, outer):
    """Checkerboard coloring; returns color list with outer color 0."""
    n = g.n
    size = 2 * n
    adj: dict[int, set[int]] = {i: set() for i in range(n_regions)}
    for c in range(n):
        lo, hi = sorted((g.x_perm[c], g.o_perm[c]))
        for y in range(2 * lo + 1, 2 * hi + 1):
            a = labels[(2 * c, y)]
            b = labels[(2 * c + 1, y)]
            adj[a].add(b)
            adj[b].add(a)
    x_inv, o_inv = g.x_inv, g.o_inv
    for r in range(n):
        lo, hi = sorted((x_inv[r], o_inv[r]))
        for x in range(2 * lo + 1, 2 * hi + 1):
            a = labels[(x, 2 * r)]
            b = labels[(x, 2 * r + 1)]
            adj[a].add(b)
            adj[b].add(a)
    color = [-1] * n_regions
    color[outer] = 0
    stack = [outer]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if color[w] == -1:
                color[w] = 1 - color[v]
                stack.append(w)
    # isolated regions cannot occur in a knot diagram, but guard anyway
    for i, col in enumerate(color):
        if col == -1:
            color[i] = 0
    return color


def goeritz_data(g: GridDiagram):
    """White-region Goeritz matrix and the type-II correction term."""
    labels, n_regions, outer = _region_decomposition(g)
    color = _two_color(g, labels, n_regions, outer)
    white = [i for i in range(n_regions) if color[i] == 1]
    windex = {r: i for i, r in enumerate(white)}
    k = len(white)
    mat = [[0] * k for _ in range(k)]
    correction = 0
    x_inv, o_inv = g.x_inv, g.o_inv
    for (c, r) in crossings(g):
        cx, cy = 2 * c + 1, 2 * r + 1
        quad = {
            "NE": labels[(cx, cy)],
            "NW": labels[(cx - 1, cy)],
            "SE": labels[(cx, cy - 1)],
            "SW": labels[(cx - 1, cy - 1)],
        }
        white_pair = "NESW" if color[quad["NE"]] == 1 else "NWSE"
        # over strand is vertical: eta = +1 when the white quadrants are
        # the NE/SW pair
        eta = 1 if white_pair == "NESW" else -1
        up = g.x_perm[c] > g.o_perm[c]
        east = o_inv[r] > x_inv[r]
        # quadrant holding the two outgoing arrows (over u, under v)
        if up and east:
            out_quad = "NE"
        elif up and not east:
            out_quad = "NW"
        elif not up and east:
            out_quad = "SE"
        else:
            out_quad = "SW"
        # type II crossings: outgoing arrow pair points into a black quadrant
        if color[quad[out_quad]] == 0:
            correction += eta
        if white_pair == "NESW":
            ra, rb = quad["NE"], quad["SW"]
        else:
            ra, rb = quad["NW"], quad["SE"]
        ia, ib = windex[ra], windex[rb]
        if ia != ib:
            mat[ia][ib] -= eta
            mat[ib][ia] -= eta
            mat[ia][ia] += eta
            mat[ib][ib] += eta
        # same white region on both quadrants: nugatory, contributes zero
    # reduced Goeritz form: delete one white region
    if k <= 1:
        return [], correction
    reduced = [row[1:] for row in mat[1:]]
    return reduced, correction


def _symmetric_signature(mat) -> int:
    """Exact signature of a symmetric integer matrix via congruence."""
    m = [[Fraction(v) for v in row] for row in mat]
    size = len(m)
    sig = 0
    idx = 0
    while idx < size:
        if m[idx][idx] != 0:
            piv = m[idx][idx]
            sig += 1 if piv > 0 else -1
            for i in range(idx + 1, size):
                f = m[i][idx] / piv
                if f:
                    for j in range(idx, size):
                        m[i][j] -= f * m[idx][j]
                    for j in range(idx, size):
                        m[j][i] = m[i][j]
            idx += 1
            continue
        swap = None
        for i in range(idx + 1, size):
            if m[i][idx] != 0:
                swap = i
                break
        if swap is None:
            idx += 1
            continue
        # hyperbolic pair: add row/col to expose a nonzero diagonal
        for j in range(size):
            m[idx][j] += m[swap][j]
        for j in range(size):
            m[j][idx] = m[idx][j]
    return sig


def signature(g: GridDiagram) -> int:
    """Signature of the planar (homology) knot via Gordon-Litherland."""
    reduced, correction = goeritz_data(g)
    return _symmetric_signature(reduced) - correction


def alexander_determinant(g: GridDiagram) -> int:
    """|Delta(-1)| from the reduced Goeritz matrix."""
    reduced, _ = goeritz_data(g)
    if not reduced:
        return 1
    m = [[Fraction(v) for v in row] for row in reduced]
    size = len(m)
    det = Fraction(1)
    for col in range(size):
        piv = None
        for r in range(col, size):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, size):
            f = m[r][col] / m[col][col]
            if f:
                for j in range(col, size):
                    m[r][j] -= f * m[col][j]
    return abs(int(det))


# ---------------------------------------------------------------------------
# alternating formula and the twist-knot tables


@dataclass(frozen=True)
class AlternatingModel:
    delta: Laurent
    sigma: int
    hat_dims: BigradedDims


def alternating_hfk(delta: Laurent, sigma: int) -> BigradedDims:
    """Hat homology of an alternating knot from Delta and the signature."""
    if not delta.is_symmetric() or delta.evaluate(1) != 1:
        raise AsymmetricPolynomial(f"not a normalized Alexander polynomial: {delta}")
    if sigma % 2 != 0:
        raise AsymmetricPolynomial(f"knot signature must be even, got {sigma}")
    dims = BigradedDims()
    for a, coeff in delta.items():
        dims[(a + sigma // 2, a)] = abs(coeff)
    return dims


def alternating_model(delta: Laurent, sigma: int) -> AlternatingModel:
    return AlternatingModel(delta=delta, sigma=sigma, hat_dims=alternating_hfk(delta, sigma))


def en_alexander(n: int) -> Laurent:
    """Alexander polynomial of the twist knot E_n, n odd."""
    if n < 1 or n % 2 == 0:
        raise EvenN(f"E_n tables need odd n >= 1, got {n}")
    k = (n + 1) // 2
    return Laurent({1: k, 0: -n, -1: k})


def en_tables(n: int, tail_depth: int = 4) -> tuple[BigradedDims, BigradedDims]:
    """(hat, minus) tables for the mirror twist knot m(E_n).

    The minus table's infinite tail of rank-1 groups at (M, A) =
    (-2i, -i) is truncated at i = tail_depth.
    """
    if n < 1 or n % 2 == 0:
        raise EvenN(f"E_n tables need odd n >= 1, got {n}")
    if tail_depth < 0:
        raise EvenN("tail depth must be non-negative")
    k = (n + 1) // 2
    hat = BigradedDims({(2, 1): k, (1, 0): n, (0, -1): k})
    minus = BigradedDims({(2, 1): k, (1, 0): k})
    for i in range(tail_depth + 1):
        minus[(-2 * i, -i)] = minus.get((-2 * i, -i), 0) + 1
    return hat, minus


def minus_table_json(n: int, tail_depth: int = 4) -> dict:
    _, minus = en_tables(n, tail_depth)
    obj = minus.to_json_obj()
    obj["tail"] = {"step": [-2, -1], "from": [0, 0]}
    return obj


# ---------------------------------------------------------------------------
# Alexander polynomial from the winding-number determinant


def winding_matrix_poly(g: GridDiagram) -> list[list[Laurent]]:
    """Matrix with entries t^w(i,j), w = winding number about (i, j)."""
    n = g.n
    rows = []
    for i in range(n):
        cols_up = [c for c in range(n) if c < i]
        row = []
        for j in range(n):
            w = 0
            for c in cols_up:
                lo, hi = sorted((g.x_perm[c], g.o_perm[c]))
                if lo < j <= hi:
                    w += 1 if g.x_perm[c] < g.o_perm[c] else -1
            row.append(Laurent({w: 1}))
        rows.append(row)
    return rows


def _poly_mul(a: Laurent, b: Laurent) -> Laurent:
    out: dict[int, int] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return Laurent(out)


def _poly_det(mat) -> Laurent:
    """Fraction-free Bareiss determinant over Laurent polynomials."""
    m = [row[:] for row in mat]
    size = len(m)
    if size == 0:
        return Laurent({0: 1})
    prev = Laurent({0: 1})
    sign = 1
    for k in range(size - 1):
        if not m[k][k]:
            piv = None
            for r in range(k + 1, size):
                if m[r][k]:
                    piv = r
                    break
            if piv is None:
                return Laurent()
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = _poly_mul(m[i][j], m[k][k]) + _poly_mul(m[i][k], m[k][j]).neg()
                m[i][j] = _poly_div_exact(num, prev)
            m[i][k] = Laurent()
        prev = m[k][k]
    det = m[size - 1][size - 1]
    return det if sign > 0 else det.neg()


def _poly_div_exact(num: Laurent, den: Laurent) -> Laurent:
    """Exact Laurent division (den a monomial times primitive poly)."""
    if not num:
        return Laurent()
    if len(den) == 1:
        (e, c), = den.items()
        if c in (1, -1):
            return Laurent({k - e: v * c for k, v in num.items()})
    # general synthetic division by den, lowest degree first
    q: dict[int, int] = {}
    rem = dict(num)
    dlo = den.min_deg()
    dc = den[dlo]
    while rem:
        lo = min(rem)
        coeff, r = divmod(rem[lo], dc)
        if r != 0:
            raise InexactDivision("Bareiss division not exact")
        q[lo - dlo] = coeff
        for e, c in den.items():
            k = lo - dlo + e
            rem[k] = rem.get(k, 0) - coeff * c
            if rem[k] == 0:
                del rem[k]
    return Laurent(q)


def alexander_via_winding(g: GridDiagram) -> Laurent:
    """Normalized Alexander polynomial in polynomial time.

    The determinant of the winding matrix equals Delta times
    (1 - t)^(n-1) up to a sign and a power of t, both of which the
    symmetric normalization removes.
    """
    from .errors import InexactDivision as _IE
    from .laurent import normalize_alexander

    det = _poly_det(winding_matrix_poly(g))
    one_minus_t = Laurent({0: 1, 1: -1})
    poly = det
    for _ in range(g.n - 1):
        poly = _poly_div_exact(poly, one_minus_t)
    return normalize_alexander(poly)
