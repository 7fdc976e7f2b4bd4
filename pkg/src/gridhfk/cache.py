"""Optional on-disk cache of slice data, keyed by grid content hash.

Binary layout per file: magic, slice count, then for each slice a
header (maslov, alexander, dimension, entry count) followed by the
sorted state keys (uint64) and the boundary's sparse coordinate pairs,
all little-endian 32-bit unless noted.
"""

from __future__ import annotations

import hashlib
import struct
from pathlib import Path

import numpy as np

from .gf2 import SparseBoolMatrix
from .grids import GridDiagram
from .states import Bigrading, ComplexSlice

_MAGIC = b"GHFK1\0"


def grid_hash(g: GridDiagram) -> str:
    return hashlib.sha256(g.content_key().encode()).hexdigest()[:24]


def cache_path(cache_dir, g: GridDiagram) -> Path:
    return Path(cache_dir) / f"{grid_hash(g)}.slices"


def save_slices(cache_dir, g: GridDiagram, slices: dict[Bigrading, ComplexSlice]) -> Path:
    path = cache_path(cache_dir, g)
    path.parent.mkdir(parents=True, exist_ok=True)
    ordered = sorted(slices.items())
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<I", len(ordered)))
        for (m, a), sl in ordered:
            entries = sorted(sl.boundary_out.entries) if sl.boundary_out is not None else None
            n_ent = len(entries) if entries is not None else 0xFFFFFFFF
            fh.write(struct.pack("<iiII", m, a, sl.dim, n_ent))
            fh.write(np.asarray(sl.keys, dtype="<u8").tobytes())
            if entries is not None:
                arr = np.asarray(entries, dtype="<u4")
                fh.write(arr.tobytes())
    return path


def load_slices(cache_dir, g: GridDiagram) -> dict[Bigrading, ComplexSlice] | None:
    path = cache_path(cache_dir, g)
    if not path.exists():
        return None
    raw = path.read_bytes()
    if raw[: len(_MAGIC)] != _MAGIC:
        return None
    off = len(_MAGIC)
    (count,) = struct.unpack_from("<I", raw, off)
    off += 4
    gkey = g.content_key()
    out: dict[Bigrading, ComplexSlice] = {}
    for _ in range(count):
        m, a, dim, n_ent = struct.unpack_from("<iiII", raw, off)
        off += 16
        keys = np.frombuffer(raw, dtype="<u8", count=dim, offset=off).copy()
        off += 8 * dim
        sl = ComplexSlice(bigrading=(m, a), keys=keys, grid_key=gkey)
        if n_ent != 0xFFFFFFFF:
            coords = np.frombuffer(raw, dtype="<u4", count=2 * n_ent, offset=off).reshape(-1, 2)
            off += 8 * n_ent
            rows_dim = 0
            sl._pending_entries = [tuple(rc) for rc in coords.tolist()]
        out[(m, a)] = sl
    # second pass: rebuild matrices now that target dims are known
    for (m, a), sl in out.items():
        pend = getattr(sl, "_pending_entries", None)
        if pend is None:
            continue
        tgt = out.get((m - 1, a))
        rows = tgt.dim if tgt is not None else 0
        sl.boundary_out = SparseBoolMatrix(rows, sl.dim, pend)
        del sl._pending_entries
    return out
