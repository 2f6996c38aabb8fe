"""Box modules: finite direct sums of monomial modules with box-shaped support.

A :class:`BoxModule` assigns to every variable one of three exponent ranges

* ``pos`` -- exponents ``>= 0``      (a factor ``K[X]``),
* ``neg`` -- exponents ``<= -1``     (a factor ``X^-1 K[X^-1]``),
* ``lau`` -- all integer exponents   (a factor ``K[X, X^-1]``),

and has as K-basis all monomials whose exponent vector is compatible with
the states.  Graded pieces can be infinite-dimensional, so dimensions are
:data:`INF`-aware integers.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field, replace
from math import comb
from typing import Iterator, Sequence

from .core import ZERO, Bidegree, RingSpec


class SupportState(enum.Enum):
    POS = "pos"
    NEG = "neg"
    LAU = "lau"

    def allows(self, e: int) -> bool:
        if self is SupportState.POS:
            return e >= 0
        if self is SupportState.NEG:
            return e <= -1
        return True

    def __str__(self) -> str:
        return self.value


POS, NEG, LAU = SupportState.POS, SupportState.NEG, SupportState.LAU


class _Infinite:
    """Countably infinite dimension; absorbs addition and positive scaling."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __mul__(self, k):
        if k == 0:
            return 0
        return self

    __rmul__ = __mul__

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __bool__(self):
        return True

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinite, ())


INF = _Infinite()
"""The single infinite count.  Counts are ``int`` or ``INF``."""


def is_finite(c) -> bool:
    return c is not INF


def count_str(c) -> str:
    return str(c)


# --------------------------------------------------------------------------
# per-group counting


def group_count(states: Sequence[SupportState], t: int):
    """Number of exponent vectors compatible with ``states`` summing to ``t``."""
    k = sum(1 for s in states if s is POS)
    l = sum(1 for s in states if s is NEG)
    lau = len(states) - k - l
    if not states:
        return 1 if t == 0 else 0
    if lau:
        return 1 if len(states) == 1 else INF
    if k and l:
        # a pos part of any size >= 0 against a neg part <= -l hits every t
        return INF
    if k:
        return comb(t + k - 1, k - 1) if t >= 0 else 0
    return comb(-t - 1, l - 1) if t <= -l else 0


def group_range(states: Sequence[SupportState]) -> tuple:
    """Interval ``(lo, hi)`` of sums with nonzero count; ``None`` = unbounded."""
    if not states:
        return (0, 0)
    k = sum(1 for s in states if s is POS)
    l = sum(1 for s in states if s is NEG)
    if k + l < len(states) or (k and l):
        return (None, None)
    if k:
        return (0, None)
    return (None, -l)


def group_kind(states: Sequence[SupportState]) -> str:
    """``'pos'``, ``'neg'`` or ``'all'`` -- the shape of a group's degree support."""
    lo, hi = group_range(states)
    if lo is not None and hi is None:
        return "pos"
    if lo is None and hi is not None:
        return "neg"
    return "all"


def _group_monomials(states, t: int, bound: int | None) -> Iterator[tuple[int, ...]]:
    """Exponent vectors compatible with ``states`` summing to ``t``.

    ``bound`` caps ``|exponent|`` and is required only for groups with
    infinitely many solutions.
    """
    if not states:
        if t == 0:
            yield ()
        return
    if bound is None and group_count(states, t) is INF:
        raise ValueError("infinite group needs an exponent bound")
    first, rest = states[0], states[1:]
    if first is POS:
        lo, hi = 0, None
    elif first is NEG:
        lo, hi = None, -1
    else:
        lo, hi = None, None
    # remaining group range bounds the first exponent
    rlo, rhi = group_range(rest)
    # first = t - (rest sum)
    cand_lo = None if rhi is None else t - rhi
    cand_hi = None if rlo is None else t - rlo
    cap_lo, cap_hi = (None, None) if bound is None else (-bound, bound)
    lows = [x for x in (lo, cand_lo, cap_lo) if x is not None]
    highs = [x for x in (hi, cand_hi, cap_hi) if x is not None]
    lo = max(lows) if lows else None
    hi = min(highs) if highs else None
    if lo is None or hi is None:
        raise ValueError("unbounded enumeration")
    for e in range(lo, hi + 1):
        for tail in _group_monomials(rest, t - e, bound):
            yield (e,) + tail


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BoxModule:
    ring: RingSpec
    states: tuple[SupportState, ...]
    shift: Bidegree = ZERO

    def __post_init__(self):
        if len(self.states) != self.ring.nvars:
            raise ValueError(f"{len(self.states)} states for {self.ring.nvars} variables")
        object.__setattr__(self, "states", tuple(SupportState(s) for s in self.states))

    @classmethod
    def from_str(cls, ring: RingSpec, xs: str, ys: str, shift: Bidegree = ZERO) -> BoxModule:
        """``BoxModule.from_str(R, "neg neg", "pos pos")``."""
        st = [SupportState(w) for w in xs.split()] + [SupportState(w) for w in ys.split()]
        return cls(ring, tuple(st), shift)

    @classmethod
    def polynomial(cls, ring: RingSpec) -> BoxModule:
        return cls(ring, (POS,) * ring.nvars)

    @classmethod
    def injective_hull(cls, ring: RingSpec) -> BoxModule:
        """``E_R(K)``: every variable inverted."""
        return cls(ring, (NEG,) * ring.nvars)

    @property
    def x_states(self) -> tuple[SupportState, ...]:
        return self.states[: self.ring.n]

    @property
    def y_states(self) -> tuple[SupportState, ...]:
        return self.states[self.ring.n :]

    def contains(self, a: Sequence[int]) -> bool:
        """Is ``a`` the exponent vector of a basis monomial?"""
        return all(s.allows(e) for s, e in zip(self.states, a))

    def bidegree_of(self, a: Sequence[int]) -> Bidegree:
        n = self.ring.n
        return Bidegree(sum(a[:n]) - self.shift.u, sum(a[n:]) - self.shift.v)

    def monomials(self, d: Bidegree, bound: int | None = None) -> Iterator[tuple[int, ...]]:
        """Basis monomials sitting in bidegree ``d`` (truncated by ``bound`` if infinite)."""
        t = d + self.shift
        if group_count(self.x_states, t.u) == 0 or group_count(self.y_states, t.v) == 0:
            return
        bx = bound if group_count(self.x_states, t.u) is INF else None
        by = bound if group_count(self.y_states, t.v) is INF else None
        for xs in _group_monomials(self.x_states, t.u, bx):
            for ys in _group_monomials(self.y_states, t.v, by):
                yield xs + ys

    def localized(self, support) -> BoxModule:
        st = tuple(LAU if j in support else s for j, s in enumerate(self.states))
        return replace(self, states=st)

    def render(self, with_shift: bool = True) -> str:
        body = " ".join(f"{name}:{s}" for name, s in zip(self.ring.var_names(), self.states))
        out = f"[{body}]"
        if with_shift:
            out += f" shift=({self.shift.u},{self.shift.v})"
        return out

    def __str__(self) -> str:
        return self.render()


def box_dim(b: BoxModule, d: Bidegree):
    t = d + b.shift
    cx = group_count(b.x_states, t.u)
    if cx == 0:
        return 0
    cy = group_count(b.y_states, t.v)
    if cy == 0:
        return 0
    if cx is INF or cy is INF:
        return INF
    return cx * cy


@dataclass(frozen=True)
class GradedModule:
    """Finite direct sum of boxes with multiplicities; ``summands=()`` is zero."""

    ring: RingSpec
    summands: tuple[tuple[BoxModule, int], ...] = field(default=())

    def __post_init__(self):
        for b, k in self.summands:
            if k < 1:
                raise ValueError(f"multiplicity must be positive, got {k}")
            if b.ring != self.ring:
                raise ValueError("summand over a different ring")
        object.__setattr__(self, "summands", tuple(self.summands))

    @classmethod
    def of(cls, *boxes: BoxModule) -> GradedModule:
        return cls(boxes[0].ring, tuple((b, 1) for b in boxes))

    @property
    def is_zero(self) -> bool:
        return not self.summands

    def boxes(self) -> list[BoxModule]:
        return [b for b, _ in self.summands]

    def fine_dim(self, a: Sequence[int]) -> int:
        """Dimension of the ``Z^(n+m)``-graded piece at exponent ``a``."""
        return sum(k for b, k in self.summands if b.contains(a))

    def render(self) -> str:
        if self.is_zero:
            return "ZERO MODULE"
        return "\n".join(f"{b.render()} mult={k}" for b, k in self.summands)

    def __add__(self, other: GradedModule) -> GradedModule:
        if other.ring != self.ring:
            raise ValueError("direct sum over different rings")
        return GradedModule(self.ring, self.summands + other.summands)


def module_dim(M: GradedModule, d: Bidegree):
    total = 0
    for b, k in M.summands:
        total = total + k * box_dim(b, d)
    return total


def shift_module(M: GradedModule, s: Bidegree) -> GradedModule:
    """Twist: ``module_dim(shift_module(M, s), d) == module_dim(M, d + s)``."""
    return GradedModule(M.ring, tuple((replace(b, shift=b.shift + s), k) for b, k in M.summands))


def _box_total_dim(b: BoxModule, r: int):
    # sum over u + v = r of box_dim(b, (u, v)), in box coordinates t = d + shift
    r_t = r + b.shift.u + b.shift.v
    xlo, xhi = group_range(b.x_states)
    ylo, yhi = group_range(b.y_states)
    # u ranges over [xlo, xhi] and r_t - u over [ylo, yhi]
    lo = max((x for x in (xlo, None if yhi is None else r_t - yhi) if x is not None), default=None)
    hi = min((x for x in (xhi, None if ylo is None else r_t - ylo) if x is not None), default=None)
    if lo is not None and hi is not None and lo > hi:
        return 0
    if lo is None or hi is None:
        return INF
    total = 0
    for tu in range(lo, hi + 1):
        total = total + box_dim(b, Bidegree(tu - b.shift.u, r_t - tu - b.shift.v))
    return total


def total_grading_dims(M: GradedModule, r_min: int, r_max: int) -> list[tuple[int, object]]:
    """Dimensions of the single grading ``Tot(M)_r = sum_{u+v=r} M_(u,v)``."""
    if r_min > r_max:
        raise ValueError("r_min > r_max")
    out = []
    for r in range(r_min, r_max + 1):
        total = 0
        for b, k in M.summands:
            total = total + k * _box_total_dim(b, r)
        out.append((r, total))
    return out


# --------------------------------------------------------------------------
# canonical text serialization

_BOX_RE = re.compile(
    r"^\s*\[(?P<body>[^\]]*)\]\s*(?:shift=\((?P<su>-?\d+),(?P<sv>-?\d+)\))?\s*(?:mult=(?P<mult>\d+))?"
)


def parse_module(text: str) -> GradedModule:
    """Read the canonical box serialization, one summand per line.

    ``ZERO MODULE`` alone denotes the zero module; the ring is inferred from
    the variable names of the first summand (``# n=.. m=..`` may precede it
    for the zero module).
    """
    rows = []
    ring_hint = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            hint = re.match(r"#\s*ring:\s*n=(\d+)\s+m=(\d+)", line)
            if hint:
                ring_hint = RingSpec(int(hint.group(1)), int(hint.group(2)))
            continue
        if line == "ZERO MODULE":
            continue
        mt = _BOX_RE.match(line)
        if not mt or mt.end() != len(line.rstrip()):
            raise ValueError(f"line {lineno}: cannot parse box {raw!r}")
        names, states = [], []
        for tok in mt.group("body").split():
            name, _, st = tok.partition(":")
            try:
                states.append(SupportState(st))
            except ValueError:
                raise ValueError(f"line {lineno}: bad state {st!r}") from None
            names.append(name)
        shift = Bidegree(int(mt.group("su") or 0), int(mt.group("sv") or 0))
        mult = int(mt.group("mult") or 1)
        rows.append((lineno, names, states, shift, mult))
    if not rows:
        if ring_hint is None:
            raise ValueError("zero module needs a '# ring: n=.. m=..' line")
        return GradedModule(ring_hint)
    names0 = rows[0][1]
    ring = RingSpec(sum(1 for s in names0 if s.startswith("X")), sum(1 for s in names0 if s.startswith("Y")))
    summands = []
    for lineno, names, states, shift, mult in rows:
        if names != ring.var_names():
            raise ValueError(f"line {lineno}: variables {names} do not match {ring.var_names()}")
        summands.append((BoxModule(ring, tuple(states), shift), mult))
    return GradedModule(ring, tuple(summands))
