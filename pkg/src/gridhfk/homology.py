"""Bigraded homology of the blocked grid complex and homology classes."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BigradingMismatch,
    InconsistentSlices,
    InexactFactorization,
    NotACycle,
)
from .gf2 import (
    SparseBoolMatrix,
    kernel_basis,
    pack_support,
    rank,
)
from .states import Bigrading, ComplexSlice


class BigradedDims(dict):
    """Map (maslov, alexander) -> positive rank."""

    def __init__(self, data=None):
        super().__init__()
        if data:
            for k, v in dict(data).items():
                if v:
                    self[(int(k[0]), int(k[1]))] = int(v)

    def total_rank(self) -> int:
        return sum(self.values())

    def to_json_obj(self) -> dict:
        ranks = [[m, a, r] for (m, a), r in self.items()]
        ranks.sort()
        return {"ranks": ranks}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @staticmethod
    def from_json_obj(obj) -> "BigradedDims":
        return BigradedDims({(m, a): r for m, a, r in obj["ranks"]})

    def euler_poly(self):
        from .laurent import Laurent

        chi: dict[int, int] = {}
        for (m, a), r in self.items():
            chi[a] = chi.get(a, 0) + (r if m % 2 == 0 else -r)
        return Laurent(chi)

    def symmetric(self) -> bool:
        """Knot Floer symmetry: rank(M, A) == rank(M - 2A, -A)."""
        return all(self.get((m - 2 * a, -a), 0) == r for (m, a), r in self.items())


def homology_dims(slices: dict[Bigrading, ComplexSlice]) -> BigradedDims:
    """dim H(m, a) = dim ker d_(m,a) - rank d_(m+1,a)."""
    ranks: dict[Bigrading, int] = {}
    for bg, sl in slices.items():
        if sl.boundary_out is None:
            raise InconsistentSlices(f"slice {bg} has no boundary block")
        ranks[bg] = rank(sl.boundary_out)
    dims = BigradedDims()
    for (m, a), sl in slices.items():
        h = sl.dim - ranks[(m, a)] - ranks.get((m + 1, a), 0)
        if h < 0:
            raise InconsistentSlices(f"negative homology dimension at {(m, a)}")
        if h:
            dims[(m, a)] = h
    return dims


def divide_by_tensor_factor(tilde: BigradedDims, n: int) -> BigradedDims:
    """Deconvolve (n-1) rank-2 factors with generators at (0,0), (-1,-1).

    Exact division of Poincare polynomials; any negative intermediate
    coefficient or leftover raises InexactFactorization.
    """
    current = {k: v for k, v in tilde.items() if v}
    for _ in range(n - 1):
        quotient: dict[Bigrading, int] = {}
        # process top maslov first: q(m,a) = p(m,a) - q(m+1,a+1)
        grades = sorted(set(current) | {(m - 1, a - 1) for (m, a) in current}, key=lambda bg: -bg[0])
        for (m, a) in grades:
            c = current.get((m, a), 0) - quotient.get((m + 1, a + 1), 0)
            if c < 0:
                raise InexactFactorization(
                    f"negative coefficient at {(m, a)} while removing tensor factor"
                )
            if c:
                quotient[(m, a)] = c
        rebuilt: dict[Bigrading, int] = {}
        for (m, a), c in quotient.items():
            rebuilt[(m, a)] = rebuilt.get((m, a), 0) + c
            rebuilt[(m - 1, a - 1)] = rebuilt.get((m - 1, a - 1), 0) + c
        if {k: v for k, v in rebuilt.items() if v} != current:
            raise InexactFactorization("tensor factor does not divide tilde homology")
        current = quotient
    return BigradedDims(current)


# ---------------------------------------------------------------------------
# homology classes


class _Echelon:
    """Incremental GF(2) row echelon with lowest-set-bit pivots.

    ``reduce`` performs the full canonical reduction (clears every
    pivot-column bit, ascending), so it is linear and idempotent.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.words = max(1, (ncols + 63) // 64)
        self.rows: list[np.ndarray] = []
        self.leads: dict[int, int] = {}  # lead column -> row index
        self._sorted_leads: list[int] | None = []

    @staticmethod
    def _lead(v: np.ndarray) -> int | None:
        for w in range(len(v)):
            word = int(v[w])
            if word:
                return w * 64 + (word & -word).bit_length() - 1
        return None

    def reduce(self, vec: np.ndarray) -> np.ndarray:
        v = vec.copy()
        if self._sorted_leads is None:
            self._sorted_leads = sorted(self.leads)
        one = np.uint64(1)
        for lead in self._sorted_leads:
            w, b = divmod(lead, 64)
            if (v[w] >> np.uint64(b)) & one:
                v ^= self.rows[self.leads[lead]]
        return v

    def insert(self, vec: np.ndarray) -> bool:
        """Reduce and insert; returns True if the vector was new."""
        v = self.reduce(vec)
        lead = self._lead(v)
        if lead is None:
            return False
        self.leads[lead] = len(self.rows)
        self.rows.append(v)
        self._sorted_leads = None
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)


@dataclass
class SliceHomology:
    """Deterministic homology basis of one bigraded slice.

    ``basis`` holds image-and-mutually reduced kernel vectors in
    insertion order (the deterministic kernel order); coordinates of a
    class are the unique expansion coefficients over these vectors
    modulo the image.
    """

    grid_key: str
    bigrading: Bigrading
    dim_states: int
    image: _Echelon
    basis: list[np.ndarray] = field(default_factory=list)
    _lead_of_basis: dict[int, int] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords_of(self, cycle_packed: np.ndarray) -> tuple[int, ...]:
        v = self.image.reduce(cycle_packed)
        coeffs = [0] * len(self.basis)
        while True:
            lead = _Echelon._lead(v)
            if lead is None:
                return tuple(coeffs)
            idx = self._lead_of_basis.get(lead)
            if idx is None:
                raise NotACycle("vector not in cycle space modulo boundaries")
            coeffs[idx] ^= 1
            v = v ^ self.basis[idx]

    def representative(self, coords) -> frozenset[int]:
        from .gf2 import unpack_support

        v = np.zeros(self.image.words, dtype=np.uint64)
        for i, c in enumerate(coords):
            if c:
                v = v ^ self.basis[i]
        return unpack_support(v)


def slice_homology(
    slices: dict[Bigrading, ComplexSlice], bigrading: Bigrading, grid_key: str = ""
) -> SliceHomology:
    """Homology basis at one bigrading from its slice neighborhood."""
    sl = slices.get(bigrading)
    dim = sl.dim if sl is not None else 0
    image = _Echelon(dim)
    incoming = slices.get((bigrading[0] + 1, bigrading[1]))
    if incoming is not None and incoming.boundary_out is not None and dim:
        mat = incoming.boundary_out
        cols: dict[int, set[int]] = {}
        for r, c in mat.entries:
            cols.setdefault(c, set()).add(r)
        for c in sorted(cols):
            image.insert(pack_support(cols[c], dim))

    sh = SliceHomology(
        grid_key=grid_key, bigrading=bigrading, dim_states=dim, image=image
    )
    if sl is None or sl.boundary_out is None:
        if dim:
            raise InconsistentSlices(f"slice {bigrading} lacks its boundary block")
        return sh

    working = _Echelon(dim)
    for row in image.rows:
        working.insert(row)
    for k in kernel_basis(sl.boundary_out):
        red = working.reduce(k)
        if red.any():
            lead = _Echelon._lead(red)
            sh._lead_of_basis[lead] = len(sh.basis)
            sh.basis.append(red)
            working.insert(red)
    return sh


@dataclass(frozen=True)
class HomologyClass:
    """A cycle plus its coordinates in the slice's homology basis."""

    grid_key: str
    bigrading: Bigrading
    cycle: frozenset[int]  # support over the slice's state ordering
    coords: tuple[int, ...]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        if (self.grid_key, self.bigrading) != (other.grid_key, other.bigrading):
            raise BigradingMismatch("cannot add classes of different slices")
        return HomologyClass(
            self.grid_key,
            self.bigrading,
            self.cycle.symmetric_difference(other.cycle),
            tuple(a ^ b for a, b in zip(self.coords, other.coords)),
        )


def class_of(
    sh: SliceHomology,
    slices: dict[Bigrading, ComplexSlice],
    cycle: frozenset[int] | set[int],
) -> HomologyClass:
    """Wrap a cycle vector (state-index support) as a HomologyClass."""
    sl = slices.get(sh.bigrading)
    dim = sl.dim if sl is not None else 0
    cyc = frozenset(int(i) for i in cycle)
    if any(i >= dim for i in cyc):
        raise BigradingMismatch("cycle support exceeds slice dimension")
    if sl is not None and sl.boundary_out is not None:
        if sl.boundary_out.apply(cyc):
            raise NotACycle("vector has nonzero boundary")
    packed = pack_support(cyc, dim)
    coords = sh.coords_of(packed)
    return HomologyClass(sh.grid_key, sh.bigrading, cyc, coords)


def is_homologous(a: HomologyClass, b: HomologyClass) -> bool:
    if (a.grid_key, a.bigrading) != (b.grid_key, b.bigrading):
        raise BigradingMismatch(
            f"classes live in different slices: {a.bigrading} vs {b.bigrading}"
        )
    return a.coords == b.coords
