"""Legendrian grid invariants x+/x- and the grading-theorem checks.

Under this package's conventions the distinguished cycle satisfying
2*alexander = tb - rot + 1 is the state occupying the *south-west*
corner of every X cell (the X permutation itself); the north-east
corner state satisfies 2*alexander = tb + rot + 1.  The calibration
forcing this choice lives in the test suite: on grids with rot != 0
only the south-west state matches the first formula.  x+ denotes the
south-west state throughout, and the transverse invariant is its
class: it is the one preserved by negative stabilization.

The global constant maslov(x+) - 2*alexander(x+) is zero for every
grid here; it plays the role of the Hopf invariant of the standard
tight contact structure, pinned empirically and asserted globally.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GradingMismatch, NotACycle
from .grids import ClassicalInvariants, GridDiagram, classical_invariants
from .homology import HomologyClass
from .states import Bigrading, bigrading, differential_tilde

# maslov(x+) - 2*alexander(x+), the same for every grid (minus the Hopf
# invariant of the standard tight three-sphere in these conventions)
D3_CONSTANT = 0


def legendrian_states(g: GridDiagram) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(x_plus, x_minus): SW and NE corner states of the X markers."""
    n = g.n
    x_plus = tuple(g.x_perm)
    x_minus = tuple((g.x_perm[(c - 1) % n] + 1) % n for c in range(n))
    for name, st in (("x+", x_plus), ("x-", x_minus)):
        if differential_tilde(g, st):
            raise NotACycle(f"{name} state has nonzero boundary; convention bug")
    return x_plus, x_minus


@dataclass(frozen=True)
class GradingIdentity:
    name: str
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class GradingReport:
    grid: str
    classical: ClassicalInvariants
    plus_bigrading: Bigrading
    minus_bigrading: Bigrading
    identities: tuple[GradingIdentity, ...]

    @property
    def ok(self) -> bool:
        return all(i.ok for i in self.identities)

    def to_json_obj(self) -> dict:
        return {
            "grid": self.grid,
            "tb": self.classical.tb,
            "rot": self.classical.rot,
            "sl": self.classical.sl,
            "x_plus": {
                "maslov": self.plus_bigrading[0],
                "alexander": self.plus_bigrading[1],
            },
            "x_minus": {
                "maslov": self.minus_bigrading[0],
                "alexander": self.minus_bigrading[1],
            },
            "identities": [
                {"name": i.name, "lhs": i.lhs, "rhs": i.rhs, "ok": i.ok}
                for i in self.identities
            ],
        }


def check_grading_theorem(g: GridDiagram, strict: bool = True) -> GradingReport:
    """Verify the bigrading formulas for x+ and x- on one grid."""
    ci = classical_invariants(g)
    x_plus, x_minus = legendrian_states(g)
    bp = bigrading(g, x_plus)
    bm = bigrading(g, x_minus)
    identities = (
        GradingIdentity("2*A(x+) == tb - rot + 1", 2 * bp[1], ci.tb - ci.rot + 1),
        GradingIdentity("2*A(x-) == tb + rot + 1", 2 * bm[1], ci.tb + ci.rot + 1),
        GradingIdentity("M(x+) - 2*A(x+) == -d3", bp[0] - 2 * bp[1], -D3_CONSTANT),
        GradingIdentity("M(x-) - 2*A(x-) == -d3", bm[0] - 2 * bm[1], -D3_CONSTANT),
        GradingIdentity("2*A(x+) == sl + 1", 2 * bp[1], ci.sl + 1),
    )
    report = GradingReport(
        grid=g.name or g.content_key(),
        classical=ci,
        plus_bigrading=bp,
        minus_bigrading=bm,
        identities=identities,
    )
    if strict and not report.ok:
        bad = [i for i in report.identities if not i.ok]
        raise GradingMismatch(f"grading theorem fails on {report.grid}: {bad}")
    return report


def transverse_invariant(g: GridDiagram, ctx=None) -> HomologyClass:
    """Homology class of x+; invariant of the transverse push-off."""
    from .movemaps import TransportContext

    if ctx is None:
        ctx = TransportContext()
    x_plus, _ = legendrian_states(g)
    return ctx.class_from_state(g, x_plus)


def invariant_pair(g: GridDiagram, ctx=None) -> tuple[HomologyClass, HomologyClass]:
    from .movemaps import TransportContext

    if ctx is None:
        ctx = TransportContext()
    x_plus, x_minus = legendrian_states(g)
    return ctx.class_from_state(g, x_plus), ctx.class_from_state(g, x_minus)


def check_nonvanishing(g: GridDiagram, ctx=None) -> bool:
    return not transverse_invariant(g, ctx).is_zero()
