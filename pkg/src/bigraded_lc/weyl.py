"""Action of the bigraded Weyl algebra on box modules.

Operators are the generators ``Xi, Yj`` (multiplication) and ``dXi, dYj``
(partial derivatives).  On a box every generator sends a monomial to a
scalar multiple of a monomial (or to zero), so elements are kept as sparse
``{exponent: Fraction}`` maps.

The two Euler operators ``EX = sum Xi dXi`` and ``EY = sum Yj dYj`` act on
a monomial by the exponent sum of the respective variable group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .boxmod import INF, NEG, BoxModule, GradedModule, box_dim, group_count
from .core import Bidegree, rank


class OperatorIndexError(IndexError):
    pass


class UnsupportedWindowError(ValueError):
    """A requested graded piece is infinite-dimensional."""


@dataclass(frozen=True)
class Operator:
    """``kind`` is one of ``'X'``, ``'Y'``, ``'DX'``, ``'DY'``; ``index`` is 1-based."""

    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in ("X", "Y", "DX", "DY"):
            raise ValueError(f"unknown operator kind {self.kind!r}")

    @property
    def bidegree(self) -> Bidegree:
        return {"X": Bidegree(1, 0), "Y": Bidegree(0, 1), "DX": Bidegree(-1, 0), "DY": Bidegree(0, -1)}[self.kind]

    @property
    def is_derivative(self) -> bool:
        return self.kind.startswith("D")

    def variable(self, ring) -> int:
        """0-based index of the variable this operator touches."""
        group = self.kind[-1]
        size = ring.n if group == "X" else ring.m
        if not 1 <= self.index <= size:
            raise OperatorIndexError(f"{self} out of range for n={ring.n} m={ring.m}")
        return self.index - 1 if group == "X" else ring.n + self.index - 1

    def __str__(self) -> str:
        return f"{self.kind}{self.index}" if not self.is_derivative else f"d{self.kind[1]}{self.index}"


def MulX(i):
    return Operator("X", i)


def MulY(j):
    return Operator("Y", j)


def DX(i):
    return Operator("DX", i)


def DY(j):
    return Operator("DY", j)


@dataclass(frozen=True)
class ModuleElement:
    box: BoxModule
    terms: Mapping[tuple[int, ...], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for a, c in self.terms.items():
            a = tuple(a)
            if not self.box.contains(a):
                raise ValueError(f"{a} is not a basis monomial of {self.box}")
            if c != 0:
                clean[a] = c if isinstance(c, int) else Fraction(c)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def _trusted(cls, box: BoxModule, terms: dict) -> ModuleElement:
        # skips validation; callers guarantee basis monomials and nonzero coefficients
        e = object.__new__(cls)
        object.__setattr__(e, "box", box)
        object.__setattr__(e, "terms", terms)
        return e

    @classmethod
    def monomial(cls, box: BoxModule, a, coeff=1) -> ModuleElement:
        return cls(box, {tuple(a): coeff})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: ModuleElement) -> ModuleElement:
        if other.box is not self.box and other.box != self.box:
            raise ValueError("elements of different boxes")
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out.get(a, 0) + c
        return ModuleElement._trusted(self.box, {a: c for a, c in out.items() if c != 0})

    def scale(self, c) -> ModuleElement:
        if c == 0:
            return ModuleElement._trusted(self.box, {})
        return ModuleElement._trusted(self.box, {a: c * x for a, x in self.terms.items()})

    def __sub__(self, other: ModuleElement) -> ModuleElement:
        return self + other.scale(-1)

    def __eq__(self, other):
        return isinstance(other, ModuleElement) and self.box == other.box and self.terms == other.terms

    def __hash__(self):
        return hash((self.box, frozenset(self.terms.items())))


def apply_operator(op: Operator, e: ModuleElement) -> ModuleElement:
    box = e.box
    j = op.variable(box.ring)
    state = box.states[j]
    out: dict[tuple[int, ...], Fraction] = {}
    for a, c in e.terms.items():
        aj = a[j]
        if op.is_derivative:
            coeff = c * aj
            new = aj - 1
        else:
            coeff = c
            new = aj + 1
            if state is NEG and new == 0:
                # X * X^-1 = 1 lies in the polynomial part, which is quotiented out
                continue
        if coeff == 0:
            continue
        b = a[:j] + (new,) + a[j + 1 :]
        out[b] = out.get(b, 0) + coeff
    return ModuleElement._trusted(box, {b: c for b, c in out.items() if c != 0})


def apply_euler(side: str, e: ModuleElement) -> ModuleElement:
    """``EX . e`` (``side='X'``) or ``EY . e`` (``side='Y'``), as sum of ``Xi o dXi``."""
    ring = e.box.ring
    size = ring.n if side == "X" else ring.m
    mul = MulX if side == "X" else MulY
    diff = DX if side == "X" else DY
    total = ModuleElement._trusted(e.box, {})
    for i in range(1, size + 1):
        total = total + apply_operator(mul(i), apply_operator(diff(i), e))
    return total


# --------------------------------------------------------------------------
# generalized Eulerian check


@dataclass
class EulerReport:
    window: tuple[int, int, int, int]
    failures: list = field(default_factory=list)
    powers: dict = field(default_factory=dict)  # (box, monomial) -> smallest a
    checked: int = 0
    truncated: bool = False

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def max_power(self) -> int:
        return max(self.powers.values(), default=0)

    def lines(self) -> list[str]:
        status = "PASS" if self.ok else "FAIL"
        extra = " (infinite pieces truncated)" if self.truncated else ""
        head = f"{status} eulerian window={self.window} monomials={self.checked} max_a={self.max_power}{extra}"
        out = [head]
        for mono, side, residual in self.failures[:10]:
            out.append(f"  witness {mono} side={side} residual={residual}")
        return out


def _annihilating_power(side: str, e: ModuleElement, target: int, max_power: int):
    cur = e
    for a in range(1, max_power + 1):
        cur = apply_euler(side, cur) - cur.scale(target)
        if cur.is_zero:
            return a, None
    return None, cur


@lru_cache(maxsize=4096)
def _check_box(box: BoxModule, window, max_power: int, truncate):
    umin, umax, vmin, vmax = window
    failures, powers, checked, truncated = [], {}, 0, False
    for u in range(umin, umax + 1):
        for v in range(vmin, vmax + 1):
            d = Bidegree(u, v)
            if box_dim(box, d) is INF:
                if truncate is None:
                    raise UnsupportedWindowError(f"{box} is infinite-dimensional at {d}")
                truncated = True
            for a in box.monomials(d, bound=truncate):
                e = ModuleElement.monomial(box, a)
                checked += 1
                best = 0
                for side, target in (("X", u), ("Y", v)):
                    p, residual = _annihilating_power(side, e, target, max_power)
                    if p is None:
                        failures.append((a, side, dict(residual.terms)))
                        break
                    best = max(best, p)
                else:
                    powers[a] = best
    return failures, powers, checked, truncated


def check_generalized_eulerian(M: GradedModule, window, max_power: int = 4, truncate: int | None = None) -> EulerReport:
    """Verify ``(EX-u)^a e = 0`` and ``(EY-v)^a e = 0`` for basis monomials in ``window``.

    ``window`` is ``(umin, umax, vmin, vmax)``.  Pieces of infinite dimension
    raise :class:`UnsupportedWindowError` unless ``truncate`` bounds the
    absolute value of the exponents that get sampled from them.  Checking
    basis monomials suffices: the annihilator condition is linear and a
    direct sum is checked summand by summand.
    """
    window = tuple(window)
    report = EulerReport(window)
    for box, _ in M.summands:
        failures, powers, checked, truncated = _check_box(box, window, max_power, truncate)
        report.failures.extend(failures)
        report.powers.update({(box, a): p for a, p in powers.items()})
        report.checked += checked
        report.truncated |= truncated
    return report


# --------------------------------------------------------------------------
# Koszul homology of a single operator


def _residual_count(box: BoxModule, j: int, t: Bidegree):
    """Monomials of ``box`` with variable ``j`` deleted, at shifted bidegree ``t``."""
    n = box.ring.n
    xs = [s for k, s in enumerate(box.x_states) if k != j]
    ys = [s for k, s in enumerate(box.y_states) if k + n != j]
    cx = group_count(xs, t.u)
    if cx == 0:
        return 0
    cy = group_count(ys, t.v)
    if cy == 0:
        return 0
    return INF if INF in (cx, cy) else cx * cy


def _special_exponents(op: Operator, state):
    """Exponents of variable ``j`` killed in the source and missed in the target."""
    if op.is_derivative:
        # d(X^c) = c X^(c-1): kills c = 0, misses X^-1 unless X^0 exists with nonzero coeff
        killed = [0] if state.allows(0) else []
        missed = [-1] if state.allows(-1) else []
    else:
        killed = [-1] if state is NEG else []
        missed = [0] if state.allows(0) and not state.allows(-1) else []
    return killed, missed


def koszul_homology_dims(M: GradedModule, op: Operator, d: Bidegree):
    """``(h0, h1)``: cokernel and kernel of ``op : M_(d - bideg op) -> M_d``.

    Each basis monomial maps to a nonzero multiple of one basis monomial or
    to zero, so kernel and cokernel are spanned by monomials and can be
    counted exactly, including infinite counts: the kernel consists of the
    source monomials whose exponent of the affected variable is a killed
    value, the cokernel of target monomials whose exponent is a missed value.
    """
    h0 = h1 = 0
    src = d - op.bidegree
    for box, k in M.summands:
        j = op.variable(box.ring)
        killed, missed = _special_exponents(op, box.states[j])
        x = box.ring.is_x(j)
        for c in killed:
            t = src + box.shift - (Bidegree(c, 0) if x else Bidegree(0, c))
            h1 = h1 + k * _residual_count(box, j, t)
        for c in missed:
            t = d + box.shift - (Bidegree(c, 0) if x else Bidegree(0, c))
            h0 = h0 + k * _residual_count(box, j, t)
    return h0, h1


def koszul_homology_dims_matrix(M: GradedModule, op: Operator, d: Bidegree):
    """Same as :func:`koszul_homology_dims` via an explicit matrix and its rank over Q."""
    src = d - op.bidegree
    h0 = h1 = 0
    for box, k in M.summands:
        if box_dim(box, src) is INF or box_dim(box, d) is INF:
            raise UnsupportedWindowError(f"{box} has an infinite piece at {src} or {d}")
        rows = list(box.monomials(d))
        cols = list(box.monomials(src))
        index = {a: i for i, a in enumerate(rows)}
        mat = [[Fraction(0)] * len(cols) for _ in rows]
        for c, a in enumerate(cols):
            image = apply_operator(op, ModuleElement.monomial(box, a))
            for b, coeff in image.terms.items():
                mat[index[b]][c] += coeff
        r = rank(mat) if rows and cols else 0
        h1 += k * (len(cols) - r)
        h0 += k * (len(rows) - r)
    return h0, h1


__all__ = [
    "Operator", "MulX", "MulY", "DX", "DY", "ModuleElement", "EulerReport",
    "OperatorIndexError", "UnsupportedWindowError", "apply_operator", "apply_euler",
    "check_generalized_eulerian", "koszul_homology_dims", "koszul_homology_dims_matrix",
]
