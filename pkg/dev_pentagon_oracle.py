"""Dev tool: geometric pentagon oracle for commutation maps (small n).

Rasterizes candidate pentagon boundaries on an 8x-refined torus, keeps
simple closed curves that bound a disk on the left of the traversal
with convex corners at the five marked points, and checks interior
emptiness.  Used to derive and validate the production counting rule.

Traversal order (counterclockwise for a disk on the left):
  P1 = (beta, h1)  --H at h1-->  (j, h1)  --V-->  (j, h2)
  --H at h2--> P2 = (gamma(h2), h2)  --gamma--> s  --beta--> P1
"""

import itertools
from collections import Counter

from gridhfk.grids import new_grid
from gridhfk.moves import Commutation, apply_move, commutation_legal
from gridhfk.states import bigrading, differential_tilde


def gamma_levels(g, c):
    n = g.n
    a1, a2 = g.x_perm[c], g.o_perm[c]
    b1, b2 = g.x_perm[c + 1], g.o_perm[c + 1]
    w12 = (a2 - a1) % n
    if any(((b - a1) % n) < w12 and b != a1 for b in (b1, b2)):
        A_cw, A_ccw = a2, a1
    else:
        A_cw, A_ccw = a1, a2
    wb = (b2 - b1) % n
    if any(((a - b1) % n) < wb and a != b1 for a in (a1, a2)):
        B_cw, B_ccw = b2, b1
    else:
        B_cw, B_ccw = b1, b2
    N = 8 * n
    levels = {
        "N": N,
        "L": 8 * c + 2,
        "M": 8 * (c + 1) + 1,
        "R": 8 * (c + 1) + 6,
        "s1": (8 * A_ccw + 6) % N,
        "s2": (8 * A_cw + 2) % N,
        "t1": (8 * B_ccw + 5) % N,
        "t2": (8 * B_cw + 3) % N,
        "XB": 8 * (c + 1),
    }
    return levels


def in_cyc(t, lo, hi, N):
    return (t - lo) % N < (hi - lo) % N


def gamma_x_at(t, lv):
    """x-position of gamma at exact height t (t not a transition height)."""
    N = lv["N"]
    if in_cyc(t, lv["s2"], lv["s1"], N) and t != lv["s2"]:
        return lv["L"]
    if in_cyc(t, lv["t2"], lv["t1"], N) and t != lv["t2"]:
        return lv["R"]
    return lv["M"]


def gamma_x_interval(t, lv):
    """x-position of gamma on the open interval (t, t+1)."""
    N = lv["N"]
    tt = 2 * t + 1
    if (tt - 2 * lv["s2"]) % (2 * N) < (2 * lv["s1"] - 2 * lv["s2"]) % (2 * N):
        return lv["L"]
    if (tt - 2 * lv["t2"]) % (2 * N) < (2 * lv["t1"] - 2 * lv["t2"]) % (2 * N):
        return lv["R"]
    return lv["M"]


def dir_h(y, x0, x1, step, N):
    """directed horizontal segments from (x0,y) to (x1,y)."""
    out = []
    t = x0
    while t != x1:
        if step > 0:
            out.append(("H", t % N, y % N, 1))
            t = (t + 1) % N
        else:
            t = (t - 1) % N
            out.append(("H", t % N, y % N, -1))
    return out


def dir_v(x, y0, y1, step, N):
    out = []
    t = y0
    while t != y1:
        if step > 0:
            out.append(("V", x % N, t % N, 1))
            t = (t + 1) % N
        else:
            t = (t - 1) % N
            out.append(("V", x % N, t % N, -1))
    return out


def gamma_arc(lv, t0, t_end, step):
    """Directed segments of gamma from (gamma(t0), t0) to (XB, t_end)."""
    N = lv["N"]
    XB = lv["XB"]
    segs = []
    t = t0
    cur_x = gamma_x_at(t0, lv)
    steps = 0
    while t != t_end:
        if steps > N + 2:
            return None
        nxt = (t + step) % N
        base = t if step > 0 else nxt
        lvl = gamma_x_interval(base, lv)
        if lvl != cur_x:
            segs += dir_h(t, cur_x, lvl, 1 if lvl > cur_x else -1, N)
            cur_x = lvl
        segs += dir_v(cur_x, t, nxt, step, N)
        t = nxt
        steps += 1
    if cur_x != XB:
        segs += dir_h(t_end, cur_x, XB, 1 if XB > cur_x else -1, N)
    return segs


def left_cell(seg, N):
    kind, x, y, d = seg
    if kind == "H":
        return (x, y) if d > 0 else (x, (y - 1) % N)
    return ((x - 1) % N, y) if d > 0 else (x, y)


def undirected(seg):
    return seg[:3]


def flood(seed, blocked, N, cap):
    seen = {seed}
    stack = [seed]
    while stack:
        cx, cy = stack.pop()
        moves = [
            (((cx + 1) % N, cy), ("V", (cx + 1) % N, cy)),
            (((cx - 1) % N, cy), ("V", cx, cy)),
            ((cx, (cy + 1) % N), ("H", cx, (cy + 1) % N)),
            ((cx, (cy - 1) % N), ("H", cx, cy)),
        ]
        for cell, blocker in moves:
            if blocker in blocked or cell in seen:
                continue
            seen.add(cell)
            stack.append(cell)
            if len(seen) > cap:
                return None
    return seen


def chi(region, N):
    edges = set()
    verts = set()
    for (x, y) in region:
        edges.add(("H", x, y))
        edges.add(("H", x, (y + 1) % N))
        edges.add(("V", x, y))
        edges.add(("V", (x + 1) % N, y))
        verts.add((x, y))
        verts.add(((x + 1) % N, y))
        verts.add((x, (y + 1) % N))
        verts.add(((x + 1) % N, (y + 1) % N))
    return len(verts) - len(edges) + len(region)


def corner_cells(v, N):
    x, y = v
    return [(x, y), ((x - 1) % N, y), (x, (y - 1) % N), ((x - 1) % N, (y - 1) % N)]


def valid_pentagon(path, corners, N, markers, interior_pts):
    """path: directed segments in traversal order."""
    und = [undirected(s) for s in path]
    cnt = Counter(und)
    if any(v > 1 for v in cnt.values()):
        return False
    deg = Counter()
    for kind, x, y in und:
        if kind == "V":
            deg[(x, y)] += 1
            deg[(x, (y + 1) % N)] += 1
        else:
            deg[(x, y)] += 1
            deg[((x + 1) % N, y)] += 1
    if any(v != 2 for v in deg.values()):
        return False
    blocked = set(und)
    seed = left_cell(path[0], N)
    region = flood(seed, blocked, N, cap=N * N)
    if region is None:
        return False
    # right cell of the first segment must be outside (separating curve)
    kind, x, y, d = path[0]
    if kind == "H":
        right = (x, (y - 1) % N) if d > 0 else (x, y)
    else:
        right = (x, y) if d > 0 else ((x - 1) % N, y)
    if right in region:
        return False
    if chi(region, N) != 1:
        return False
    for v in corners:
        inside = sum(1 for cell in corner_cells(v, N) if cell in region)
        if inside != 1:
            return False
    for p in markers + interior_pts:
        if all(cell in region for cell in corner_cells(p, N)):
            return False
    return True


def pentagon_oracle_map(g, c, x, which_s):
    """mod-2 targets of pentagons with s-corner s1 or s2, map G -> G'."""
    n = g.n
    lv = gamma_levels(g, c)
    N = lv["N"]
    XB = lv["XB"]
    d = c + 1
    s_height = lv["s1"] if which_s == 1 else lv["s2"]
    markers = [(8 * k + 4, 8 * g.x_perm[k] + 4) for k in range(n)] + [
        (8 * k + 4, 8 * g.o_perm[k] + 4) for k in range(n)
    ]
    acc = {}
    for j in range(n):
        if j == d:
            continue
        h1, h2 = x[d], x[j]
        y = list(x)
        y[d], y[j] = h2, h1
        y = tuple(y)
        shared = [(8 * k, 8 * x[k]) for k in range(n) if k not in (j, d)]
        gx2 = gamma_x_at(8 * h2, lv)
        P1 = (XB, 8 * h1)
        Pyj = (8 * j, 8 * h1)
        Pxj = (8 * j, 8 * h2)
        P2 = (gx2, 8 * h2)
        S = (XB, s_height)
        corners = [P1, Pyj, Pxj, P2, S]
        count = 0
        for dH1 in (1, -1):
            eH1 = dir_h(8 * h1, XB, 8 * j, dH1, N)
            for dV in (1, -1):
                eV = dir_v(8 * j, 8 * h1, 8 * h2, dV, N)
                for dH2 in (1, -1):
                    eH2 = dir_h(8 * h2, 8 * j, gx2, dH2, N)
                    for dG in (1, -1):
                        eG = gamma_arc(lv, 8 * h2, s_height, dG)
                        if eG is None:
                            continue
                        for dB in (1, -1):
                            eB = dir_v(XB, s_height, 8 * h1, dB, N)
                            path = eH1 + eV + eH2 + eG + eB
                            if valid_pentagon(path, corners, N, markers, shared):
                                count += 1
        if count % 2:
            acc[y] = acc.get(y, 0) ^ 1
    return [y for y, v in acc.items() if v]


def check_oracle(g, c, which_s, verbose=False):
    gp = apply_move(g, Commutation("col", c))
    dG = {x: set(differential_tilde(g, x)) for x in itertools.permutations(range(g.n))}
    dGp = {x: set(differential_tilde(gp, x)) for x in itertools.permutations(range(gp.n))}
    ok_grading = ok_chain = True
    nonzero = 0
    images = {}
    for x in itertools.permutations(range(g.n)):
        img = pentagon_oracle_map(g, c, x, which_s)
        images[x] = img
        nonzero += len(img)
        bx = bigrading(g, x)
        for y in img:
            if bigrading(gp, y) != bx:
                ok_grading = False
    for x in itertools.permutations(range(g.n)):
        lhs = Counter()
        for y in images[x]:
            for z in dGp[y]:
                lhs[z] += 1
        rhs = Counter()
        for w in dG[x]:
            for z in images[w]:
                rhs[z] += 1
        if {k for k, v in lhs.items() if v % 2} != {k for k, v in rhs.items() if v % 2}:
            ok_chain = False
    return ok_grading, ok_chain, nonzero, images


if __name__ == "__main__":
    import random

    random.seed(2)

    def random_grid(n):
        while True:
            xs = list(range(n))
            os_ = list(range(n))
            random.shuffle(xs)
            random.shuffle(os_)
            try:
                return new_grid(n, xs, os_)
            except Exception:
                pass

    done = 0
    while done < 6:
        n = random.choice([3, 4])
        g = random_grid(n)
        for c in range(n - 1):
            m = Commutation("col", c)
            if not commutation_legal(g, m):
                continue
            for s in (1, 2):
                okg, okc, nz, _ = check_oracle(g, c, s)
                print(f"n={n} col {c} s{s}: grading={okg} chain={okc} entries={nz}")
            done += 1
