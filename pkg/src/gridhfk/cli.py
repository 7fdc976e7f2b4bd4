"""Command-line driver.

Exit codes: 0 success, 2 invalid input, 3 size/memory refusal,
4 internal consistency failure.  Flag > environment > config file >
default, for every RunConfig field.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, replace
from pathlib import Path

from .errors import (
    GridHFKError,
    GridInputError,
    InternalConsistencyError,
    ResourceError,
)
from .grids import DEFAULT_MAX_GRID_SIZE, GridDiagram, classical_invariants, load_grid
from .library import builtin_library, library_names

ENV_PREFIX = "GRIDHFK_"


@dataclass(frozen=True)
class RunConfig:
    max_grid_size: int = DEFAULT_MAX_GRID_SIZE
    memory_budget_bytes: int = 4 * 1024**3
    threads: int | str = "auto"
    output: str = "text"  # text | json
    cache_dir: str | None = None

    def __post_init__(self):
        if self.max_grid_size < 2:
            raise GridInputError("max_grid_size must be at least 2")
        if self.memory_budget_bytes <= 0:
            raise GridInputError("memory budget must be positive")
        if self.output not in ("text", "json"):
            raise GridInputError(f"unknown output mode {self.output!r}")


def load_config(args) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        data = json.loads(Path(args.config).read_text(encoding="utf-8"))
        cfg = replace(cfg, **{k: v for k, v in data.items() if hasattr(cfg, k)})
    env_map = {
        "MAX_N": ("max_grid_size", int),
        "MEMORY_BUDGET": ("memory_budget_bytes", int),
        "THREADS": ("threads", lambda s: s if s == "auto" else int(s)),
        "OUTPUT": ("output", str),
        "CACHE_DIR": ("cache_dir", str),
    }
    for suffix, (field_name, conv) in env_map.items():
        raw = os.environ.get(ENV_PREFIX + suffix)
        if raw is not None:
            cfg = replace(cfg, **{field_name: conv(raw)})
    if args.max_n is not None:
        cfg = replace(cfg, max_grid_size=args.max_n)
    if args.threads is not None:
        cfg = replace(cfg, threads=args.threads if args.threads == "auto" else int(args.threads))
    if args.json:
        cfg = replace(cfg, output="json")
    if args.cache:
        cfg = replace(cfg, cache_dir=args.cache)
    return cfg


def resolve_grid(spec: str) -> GridDiagram:
    """A grid argument is a file path or a built-in name."""
    p = Path(spec)
    if p.exists():
        return load_grid(p)
    try:
        return builtin_library(spec)
    except GridHFKError:
        raise GridInputError(
            f"{spec!r} is neither a readable grid file nor a built-in name "
            f"(built-ins: {', '.join(library_names())})"
        ) from None


def emit(cfg: RunConfig, payload: dict, text_lines) -> None:
    if cfg.output == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


def _check_budget(cfg: RunConfig, g: GridDiagram) -> None:
    import math

    if g.n > cfg.max_grid_size:
        raise ResourceError(f"grid size {g.n} exceeds --max-n {cfg.max_grid_size}")
    # crude lower bound: one int64 key plus perm bytes per state
    need = math.factorial(g.n) * (8 + g.n)
    if need > cfg.memory_budget_bytes:
        raise ResourceError(
            f"state space for n={g.n} needs about {need} bytes, over the memory budget"
        )


def cmd_invariants(cfg: RunConfig, args) -> int:
    from .altoracle import alexander_via_winding, signature
    from .states import euler_characteristic

    g = resolve_grid(args.grid)
    ci = classical_invariants(g)
    sigma = signature(g)
    if g.n <= cfg.max_grid_size:
        delta = euler_characteristic(g, max_n=cfg.max_grid_size)
    else:
        delta = alexander_via_winding(g)
    consistent = dict(alexander_via_winding(g)) == dict(delta)
    payload = {
        "grid": g.name or args.grid,
        "n": g.n,
        "tb": ci.tb,
        "rot": ci.rot,
        "sl": ci.sl,
        "delta": str(delta),
        "signature": sigma,
        "delta_consistent": consistent,
    }
    emit(
        cfg,
        payload,
        [
            f"grid       {payload['grid']} ({g.n}x{g.n})",
            f"tb         {ci.tb}",
            f"rot        {ci.rot}",
            f"sl         {ci.sl}",
            f"Delta      {delta}",
            f"signature  {sigma}",
            f"Delta cross-check (winding determinant): {'ok' if consistent else 'MISMATCH'}",
        ],
    )
    return 0


def _full_slices(cfg: RunConfig, g: GridDiagram):
    from .cache import load_slices, save_slices
    from .states import build_slices

    if cfg.cache_dir:
        cached = load_slices(cfg.cache_dir, g)
        if cached is not None:
            return cached
    slices = build_slices(g, max_n=cfg.max_grid_size)
    if cfg.cache_dir:
        save_slices(cfg.cache_dir, g, slices)
    return slices


def cmd_homology(cfg: RunConfig, args) -> int:
    from .homology import divide_by_tensor_factor, homology_dims

    g = resolve_grid(args.grid)
    _check_budget(cfg, g)
    slices = _full_slices(cfg, g)
    tilde = homology_dims(slices)
    hat = divide_by_tensor_factor(tilde, g.n)
    payload = {
        "grid": g.name or args.grid,
        "n": g.n,
        "tilde": tilde.to_json_obj(),
        "hat": hat.to_json_obj(),
    }
    lines = [f"grid {payload['grid']} ({g.n}x{g.n})", "tilde ranks (maslov, alexander, rank):"]
    lines += [f"  {m:4d} {a:4d} {r:6d}" for m, a, r in tilde.to_json_obj()["ranks"]]
    lines.append("hat ranks:")
    lines += [f"  {m:4d} {a:4d} {r:6d}" for m, a, r in hat.to_json_obj()["ranks"]]
    emit(cfg, payload, lines)
    return 0


def cmd_theta(cfg: RunConfig, args) -> int:
    from .invariants import check_grading_theorem, invariant_pair
    from .movemaps import TransportContext

    g = resolve_grid(args.grid)
    _check_budget(cfg, g)
    report = check_grading_theorem(g)
    ctx = TransportContext(max_n=cfg.max_grid_size)
    cp, cm = invariant_pair(g, ctx)
    payload = report.to_json_obj()
    payload["x_plus"]["nonzero"] = not cp.is_zero()
    payload["x_minus"]["nonzero"] = not cm.is_zero()
    lines = [
        f"grid {payload['grid']}",
        f"tb {report.classical.tb}  rot {report.classical.rot}  sl {report.classical.sl}",
        f"x+  (maslov, alexander) = {report.plus_bigrading}  nonzero: {not cp.is_zero()}",
        f"x-  (maslov, alexander) = {report.minus_bigrading}  nonzero: {not cm.is_zero()}",
    ]
    lines += [
        f"  {i.name}: {i.lhs} == {i.rhs}  {'ok' if i.ok else 'FAIL'}" for i in report.identities
    ]
    emit(cfg, payload, lines)
    return 0


def cmd_transport(cfg: RunConfig, args) -> int:
    from .homology import is_homologous
    from .invariants import legendrian_states
    from .movemaps import TransportContext, load_script

    script = load_script(args.script)
    _check_budget(cfg, script.start)
    ctx = TransportContext(max_n=cfg.max_grid_size)
    which = args.which
    xp, xm = legendrian_states(script.start)
    state = xp if which == "plus" else xm
    cls = ctx.class_from_state(script.start, state)
    out = ctx.transport(script, cls)
    end = script.end
    yp, ym = legendrian_states(end)
    own = ctx.class_from_state(end, yp if which == "plus" else ym)
    same_grading = out.bigrading == own.bigrading
    equal = same_grading and is_homologous(out, own)
    payload = {
        "start": script.start.name or args.script,
        "end": end.content_key(),
        "which": which,
        "transported_nonzero": not out.is_zero(),
        "bigrading": list(out.bigrading),
        "classes_equal": bool(equal),
        "classes_differ": not equal,
    }
    emit(
        cfg,
        payload,
        [
            f"transported x{'+' if which == 'plus' else '-'} along {len(script.moves)} moves",
            f"bigrading {out.bigrading}, nonzero: {not out.is_zero()}",
            f"classes equal: {str(equal).lower()}",
            f"classes differ: {str(not equal).lower()}",
        ],
    )
    return 0


def cmd_en_scenario(cfg: RunConfig, args) -> int:
    from .scenario import run_en_scenario

    n = args.n
    if n % 2 == 0 or n < 3:
        raise GridInputError(f"the scenario needs odd n >= 3, got {n}")
    if n not in (3, 5):
        raise GridInputError("scenario grids are shipped for n in {3, 5} only")
    result = run_en_scenario(n, cfg)
    payload = result.to_json_obj()
    emit(cfg, payload, result.text_lines())
    return 0 if result.ok else 4


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="gridhfk",
        description="Grid-diagram knot Floer homology and Legendrian/transverse invariants",
    )
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--json", action="store_true", help="JSON output")
    parser.add_argument("--threads", help="worker bound or 'auto'")
    parser.add_argument("--max-n", type=int, help="grid size refusal bound")
    parser.add_argument("--cache", help="slice cache directory")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="tb, rot, sl, Delta, signature")
    p.add_argument("grid")
    p.set_defaults(fn=cmd_invariants)

    p = sub.add_parser("homology", help="tilde and hat bigraded ranks")
    p.add_argument("grid")
    p.set_defaults(fn=cmd_homology)

    p = sub.add_parser("theta", help="Legendrian/transverse invariant report")
    p.add_argument("grid")
    p.set_defaults(fn=cmd_theta)

    p = sub.add_parser("transport", help="replay a move script on a class")
    p.add_argument("script")
    p.add_argument("--which", choices=("plus", "minus"), default="plus")
    p.set_defaults(fn=cmd_transport)

    p = sub.add_parser("en-scenario", help="full twist-knot acceptance scenario")
    p.add_argument("n", type=int)
    p.set_defaults(fn=cmd_en_scenario)

    args = parser.parse_args(argv)
    try:
        cfg = load_config(args)
        return args.fn(cfg, args)
    except GridInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 3
    except InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
