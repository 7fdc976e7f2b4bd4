"""Dev tool: find move scripts between grids by bidirectional BFS.

Scripts have the shape [stab] + commutations + [destab] (or pure
commutations).  Commutation connectivity is explored breadth-first from
both endpoints; stabs seed the walk one level up in grid size.  Meets
are only accepted when both sides entered with the same stab marker
kind so the end-to-end bigrading shift cancels.
"""

import sys
from collections import deque

from gridhfk.grids import GridDiagram, new_grid, rotate180
from gridhfk.moves import (
    Commutation,
    Stabilization,
    apply_move,
    commutation_legal,
    inverse_move,
)


def gkey(g: GridDiagram) -> bytes:
    return bytes(g.x_perm) + bytes(g.o_perm)


def from_key(key: bytes, n: int) -> GridDiagram:
    return GridDiagram(n, tuple(key[:n]), tuple(key[n:]))


def comm_neighbors(g: GridDiagram):
    for axis in ("col", "row"):
        for i in range(g.n - 1):
            m = Commutation(axis, i)
            if commutation_legal(g, m):
                yield m, apply_move(g, m)


def bidirectional(seeds_a, seeds_b, n_mid, cap=600_000, report=200_000):
    pa: dict[bytes, tuple] = {}
    pb: dict[bytes, tuple] = {}
    qa: deque = deque()
    qb: deque = deque()

    def kind_of(tag):
        return None if tag is None else tag.marker

    for g, tag in seeds_a:
        k = gkey(g)
        if k not in pa:
            pa[k] = (None, tag)
            qa.append(k)
    for g, tag in seeds_b:
        k = gkey(g)
        if k not in pb:
            pb[k] = (None, tag)
            qb.append(k)

    def root_kind(parents, key):
        while parents[key][0] is not None:
            key = parents[key][0]
        return kind_of(parents[key][1])

    for k in pa:
        if k in pb and root_kind(pa, k) == root_kind(pb, k):
            return k, pa, pb
    steps = 0
    while qa or qb:
        for q, mine, other in ((qa, pa, pb), (qb, pb, pa)):
            if not q or len(mine) > cap:
                q.clear() if len(mine) > cap else None
                if not q:
                    continue
            width = len(q)
            for _ in range(width):
                k = q.popleft()
                g = from_key(k, n_mid)
                for m, h in comm_neighbors(g):
                    hk = gkey(h)
                    if hk in mine:
                        continue
                    mine[hk] = (k, m)
                    if hk in other and root_kind(mine, hk) == root_kind(other, hk):
                        return hk, pa, pb
                    q.append(hk)
                    steps += 1
                    if steps % report == 0:
                        print(f"  explored {steps} (a={len(pa)}, b={len(pb)})", flush=True)
        if not qa and not qb:
            break
    return None, pa, pb


def unwind(parents, key):
    moves = []
    while True:
        prev, move = parents[key]
        if prev is None:
            return move, list(reversed(moves))
        moves.append(move)
        key = prev


def find_script(start, goal, stab_kinds=None, cap=600_000):
    """stab_kinds: None for pure commutations at fixed n, else a list of
    (marker, corner) types to seed both sides with."""
    if stab_kinds is None:
        seeds_a = [(start, None)]
        seeds_b = [(goal, None)]
        n_mid = start.n
    else:
        seeds_a = []
        seeds_b = []
        for marker, corner in stab_kinds:
            for col in range(start.n):
                m = Stabilization(marker, col, corner)
                seeds_a.append((apply_move(start, m), m))
            for col in range(goal.n):
                m = Stabilization(marker, col, corner)
                seeds_b.append((apply_move(goal, m), m))
        n_mid = start.n + 1
    meet, pa, pb = bidirectional(seeds_a, seeds_b, n_mid, cap=cap)
    if meet is None:
        return None
    tag_a, moves_a = unwind(pa, meet)
    tag_b, moves_b = unwind(pb, meet)
    script = []
    if tag_a is not None:
        script.append(tag_a)
    script.extend(moves_a)
    script.extend(reversed(moves_b))
    if tag_b is not None:
        script.append(inverse_move(goal, tag_b))
    g = start
    for m in script:
        g = apply_move(g, m)
    assert gkey(g) == gkey(goal), "script replay mismatch"
    return script


LEGISO = [("X", "NW"), ("X", "SE"), ("O", "NW"), ("O", "SE")]
POSITIVE = [("X", "NE"), ("O", "SW")]
NEGATIVE = [("X", "SW"), ("O", "NE")]

G33_CANDS = [
    ([4, 5, 6, 1, 7, 8, 2, 3, 0], [2, 8, 3, 5, 0, 4, 7, 1, 6]),
    ([5, 7, 1, 8, 2, 3, 6, 0, 4], [2, 0, 4, 3, 6, 7, 1, 5, 8]),
    ([2, 5, 6, 8, 4, 7, 0, 1, 3], [7, 1, 2, 5, 0, 3, 6, 4, 8]),
    ([7, 8, 0, 2, 1, 3, 5, 6, 4], [3, 6, 7, 5, 4, 8, 1, 2, 0]),
    ([2, 5, 4, 6, 0, 7, 8, 1, 3], [6, 7, 8, 1, 5, 2, 3, 4, 0]),
    ([3, 5, 6, 8, 1, 0, 4, 2, 7], [0, 2, 4, 3, 5, 7, 8, 6, 1]),
    ([6, 5, 8, 1, 3, 0, 2, 4, 7], [3, 1, 4, 7, 5, 6, 8, 0, 2]),
    ([2, 6, 5, 3, 4, 7, 1, 8, 0], [7, 0, 8, 1, 2, 3, 5, 6, 4]),
]
G15 = new_grid(9, [4, 8, 0, 1, 5, 6, 3, 7, 2], [1, 3, 2, 6, 7, 8, 0, 4, 5], name="E(1,5)")
E13 = new_grid(7, [5, 6, 2, 3, 4, 0, 1], [0, 4, 5, 1, 2, 3, 6], name="E(1,3)")


def show(script, start, header="builtin ?"):
    from gridhfk.movemaps import MoveScript, script_to_text

    print(script_to_text(MoveScript(start=start, moves=tuple(script)), header))


if __name__ == "__main__":
    which = sys.argv[1]
    cap = int(sys.argv[2]) if len(sys.argv) > 2 else 600_000
    if which == "S4":
        script = find_script(rotate180(E13), E13, cap=cap) or find_script(
            rotate180(E13), E13, stab_kinds=LEGISO, cap=cap
        )
        show(script, rotate180(E13))
    elif which == "S3scan":
        for i, (xs, os_) in enumerate(G33_CANDS):
            g = new_grid(9, xs, os_)
            script = find_script(rotate180(g), g, stab_kinds=LEGISO, cap=cap)
            print(f"candidate {i}: {'FOUND len %d' % len(script) if script else 'no'}", flush=True)
            if script:
                show(script, rotate180(g))
                break
    elif which == "S1scan":
        for i, (xs, os_) in enumerate(G33_CANDS):
            g = new_grid(9, xs, os_)
            script = find_script(G15, g, stab_kinds=POSITIVE, cap=cap)
            print(f"G15 -> candidate {i}: {'FOUND len %d' % len(script) if script else 'no'}", flush=True)
            if script:
                show(script, G15)
                break
