import random, sys
from gridhfk.grids import new_grid, classical_invariants
from gridhfk.altoracle import signature, alexander_determinant, alexander_via_winding
from gridhfk.laurent import Laurent
from gridhfk.errors import GridInputError

target = Laurent({1:4, 0:-7, -1:4})
random.seed(int(sys.argv[1]) if len(sys.argv) > 1 else 7)
hits = 0
tried = 0
while hits < 6 and tried < 60_000_000:
    tried += 1
    xs = list(range(11)); os_ = list(range(11))
    random.shuffle(xs); random.shuffle(os_)
    try:
        g = new_grid(11, xs, os_)
    except GridInputError:
        continue
    ci = classical_invariants(g)
    if (ci.tb, ci.rot) != (1, 0):
        continue
    if alexander_determinant(g) != 15:
        continue
    if signature(g) != 2:
        continue
    if dict(alexander_via_winding(g)) != dict(target):
        continue
    hits += 1
    print(f"HIT after {tried}:", xs, os_, flush=True)
print(f"DONE tried={tried} hits={hits}")
