"""Regions of the (u, v)-plane and checks of vanishing, tameness and rigidity.

The lines ``u = -n`` and ``v = -m`` together with ``u = 0`` and ``v = 0``
cut the plane into a 3 x 3 grid of cells; along each axis a bidegree is
``lo`` (``u <= -n``), ``mid`` (``-n < u < 0``) or ``hi`` (``u >= 0``).  The
support of every box is a union of such cells, and every named region is too.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations, product

from .boxmod import GradedModule, group_kind, module_dim
from .core import Bidegree, RingSpec


class InvalidCornerError(ValueError):
    pass


class WindowError(ValueError):
    pass


class Region(enum.Enum):
    NE = "NE"
    NWstar = "NW*"
    SstarWstar = "S*W*"
    SstarE = "S*E"
    C = "C"
    N = "N"
    Wstar = "W*"
    Sstar = "S*"
    E = "E"
    TrunN = "Trun(N)"
    TrunWstar = "Trun(W*)"
    TrunSstar = "Trun(S*)"
    TrunE = "Trun(E)"

    def __str__(self) -> str:
        return self.value


LO, MID, HI = "lo", "mid", "hi"
_ALL = (LO, MID, HI)

# cells (u-band, v-band) covered by each region
CELLS = {
    Region.NE: {(HI, HI)},
    Region.NWstar: {(LO, HI)},
    Region.SstarWstar: {(LO, LO)},
    Region.SstarE: {(HI, LO)},
    Region.C: set(product(_ALL, _ALL)),
    Region.N: {(b, HI) for b in _ALL},
    Region.Wstar: {(LO, b) for b in _ALL},
    Region.Sstar: {(b, LO) for b in _ALL},
    Region.E: {(HI, b) for b in _ALL},
    Region.TrunN: {(MID, HI)},
    Region.TrunWstar: {(LO, MID)},
    Region.TrunSstar: {(MID, LO)},
    Region.TrunE: {(HI, MID)},
}

QUADRANTS = (Region.NE, Region.NWstar, Region.SstarWstar, Region.SstarE)
STRIPS = (Region.N, Region.Wstar, Region.Sstar, Region.E)
TRUNCATED = {Region.TrunN: Region.N, Region.TrunWstar: Region.Wstar,
             Region.TrunSstar: Region.Sstar, Region.TrunE: Region.E}

CORNERS = {Region.NE: (0, 0), Region.NWstar: ("-n", 0),
           Region.SstarWstar: ("-n", "-m"), Region.SstarE: (0, "-m")}


def corner(ring: RingSpec, q: Region) -> Bidegree:
    cu, cv = CORNERS[q]
    return Bidegree(-ring.n if cu == "-n" else 0, -ring.m if cv == "-m" else 0)


def _band(x: int, size: int) -> str:
    if x >= 0:
        return HI
    if x <= -size:
        return LO
    return MID


def cell_of(ring: RingSpec, d: Bidegree) -> tuple[str, str]:
    return (_band(d.u, ring.n), _band(d.v, ring.m))


@dataclass(frozen=True)
class Block:
    """The block with the given corner: a quadrant opening away from the origin strip."""

    corner: Bidegree

    def validate(self, ring: RingSpec) -> None:
        u0, v0 = self.corner
        if -ring.n < u0 < 0 or -ring.m < v0 < 0:
            raise InvalidCornerError(f"block corner {self.corner} lies in the undefined strip")

    def __str__(self) -> str:
        return f"Block{self.corner}"


def region_contains(ring: RingSpec, label, d: Bidegree) -> bool:
    if isinstance(label, Block):
        label.validate(ring)
        u0, v0 = label.corner
        ok_u = d.u >= u0 if u0 >= 0 else d.u <= u0
        ok_v = d.v >= v0 if v0 >= 0 else d.v <= v0
        return ok_u and ok_v
    return cell_of(ring, d) in CELLS[label]


# --------------------------------------------------------------------------


def _kind_cells(kind: str) -> tuple[str, ...]:
    return {"pos": (HI,), "neg": (LO,), "all": _ALL}[kind]


@dataclass(frozen=True)
class SupportClassification:
    summands: tuple[tuple[str, str], ...]  # per summand (X-kind, Y-kind), kinds pos/neg/all
    labels: tuple[Region, ...]

    def __str__(self) -> str:
        return ",".join(str(r) for r in self.labels) if self.labels else "none"


def summand_kinds(box) -> tuple[str, str]:
    """Per-group degree support of an unshifted box."""
    return group_kind(box.x_states), group_kind(box.y_states)


def support_cells(M: GradedModule) -> set:
    cells = set()
    for box, _ in M.summands:
        if box.shift != Bidegree(0, 0):
            raise ValueError("support classification assumes unshifted boxes")
        kx, ky = summand_kinds(box)
        cells |= set(product(_kind_cells(kx), _kind_cells(ky)))
    return cells


def minimal_cover(cells: set) -> tuple[Region, ...]:
    """Fewest labels whose union is exactly ``cells`` (first in label order on ties)."""
    if not cells:
        return ()
    usable = [r for r in Region if CELLS[r] <= cells]
    for size in range(1, len(usable) + 1):
        for combo in combinations(usable, size):
            if set().union(*(CELLS[r] for r in combo)) == cells:
                return combo
    raise AssertionError(f"cells {cells} not coverable")  # the centre cell alone is never a support


def classify_support(M: GradedModule) -> SupportClassification:
    kinds = tuple(summand_kinds(b) for b, _ in M.summands)
    return SupportClassification(kinds, minimal_cover(support_cells(M)))


def region_of_box(box) -> Region:
    """The single region equal to the support of one unshifted box."""
    (label,) = minimal_cover(support_cells(GradedModule(box.ring, ((box, 1),))))
    return label


# --------------------------------------------------------------------------
# reports


@dataclass
class Check:
    name: str
    passed: bool
    witnesses: list = field(default_factory=list)
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        w = " ".join(str(x) for x in self.witnesses[:6])
        return " ".join(x for x in (status, self.name, self.detail, w) if x)


@dataclass
class Report:
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]

    def extend(self, other: Report) -> Report:
        self.checks.extend(other.checks)
        return self


def default_window(ring: RingSpec) -> tuple[int, int, int, int]:
    return (-(ring.n + 4), ring.n + 4, -(ring.m + 4), ring.m + 4)


def _points(window):
    umin, umax, vmin, vmax = window
    for u in range(umin, umax + 1):
        for v in range(vmin, vmax + 1):
            yield Bidegree(u, v)


def _nonzero(M, d) -> bool:
    return module_dim(M, d) != 0


_CENTRE = "centre"  # the open box -n < u < 0, -m < v < 0


def _member(ring, label, d) -> bool:
    if label == _CENTRE:
        return cell_of(ring, d) == (MID, MID)
    return region_contains(ring, label, d)


def verify_rigidity(M: GradedModule, window=None) -> Report:
    ring = M.ring
    window = tuple(window or default_window(ring))
    umin, umax, vmin, vmax = window
    for q in QUADRANTS:
        c = corner(ring, q)
        if not (umin <= c.u <= umax and vmin <= c.v <= vmax):
            raise WindowError(f"window {window} misses the corner {c}")
    pts = list(_points(window))
    nz = {d: _nonzero(M, d) for d in pts}
    report = Report()

    def spread(name, source, target):
        hits = [d for d in pts if _member(ring, source, d) and nz[d]]
        if not hits:
            report.checks.append(Check(name, True, detail="vacuous"))
            return
        holes = [d for d in pts if region_contains(ring, target, d) and not nz[d]]
        report.checks.append(Check(name, not holes, holes or [hits[0]]))

    for q in QUADRANTS:
        spread(f"rigidity-1 {q}", q, q)
    for t, full in TRUNCATED.items():
        spread(f"rigidity-2 {t}->{full}", t, full)
    spread("rigidity-2 centre->C", _CENTRE, Region.C)
    return report


def verify_vanishing(M: GradedModule, band) -> Report:
    """Exhibit, for every summand, a nonzero piece outside the cross ``S``.

    ``S`` is ``{a1 <= u <= b1} U {a2 <= v <= b2}``.  A module vanishing off
    such a cross must be zero, so every nonzero box must escape both strips.
    """
    a1, b1, a2, b2 = band
    if not (a1 < b1 and a2 < b2):
        raise ValueError("band must satisfy a1 < b1 and a2 < b2")
    ring = M.ring
    report = Report()
    if M.is_zero:
        report.checks.append(Check("vanishing", True, detail="zero module"))
        return report

    def escape(kind, lo, hi, size):
        if kind == "pos":
            return max(hi + 1, 0)
        if kind == "neg":
            return min(lo - 1, -size)
        return hi + 1

    for idx, (box, _) in enumerate(M.summands):
        kx, ky = summand_kinds(box)
        w = Bidegree(escape(kx, a1, b1, ring.n), escape(ky, a2, b2, ring.m))
        ok = _nonzero(M, w) and not (a1 <= w.u <= b1) and not (a2 <= w.v <= b2)
        report.checks.append(Check(f"vanishing summand {idx}", ok, [w]))
    return report


def _all_nonzero(M, ring, label, window) -> bool:
    pts = [d for d in _points(window) if region_contains(ring, label, d)]
    return bool(pts) and all(_nonzero(M, d) for d in pts)


def verify_tameness(M: GradedModule, window=None) -> Report:
    ring = M.ring
    window = tuple(window or default_window(ring))
    report = Report()
    if M.is_zero:
        report.checks.append(Check("tameness", True, detail="zero module"))
        return report
    # largest regions first, so the witness is as informative as possible
    for label in (Region.C,) + STRIPS + QUADRANTS:
        if _all_nonzero(M, ring, label, window):
            report.checks.append(Check("tameness", True, [label], detail="region"))
            return report
    # translated quadrants
    for d in _points(window):
        try:
            b = Block(d)
            b.validate(ring)
        except InvalidCornerError:
            continue
        if _all_nonzero(M, ring, b, window):
            report.checks.append(Check("tameness", True, [b], detail="region"))
            return report
    report.checks.append(Check("tameness", False, detail="no region found"))
    return report
