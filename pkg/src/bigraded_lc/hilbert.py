"""Bigraded Hilbert series and quadrant dimension polynomials of box sums.

A box contributes, per variable group, the factor ``1/(1-t)`` for every
``pos`` variable and ``t^-1/(1-t^-1)`` for every ``neg`` variable.  These are
formal series in ``t`` and ``t^-1`` respectively: ``t^-2/(1-t^-1)^2`` and
``1/(1-t)^2`` agree as rational functions but expand to different supports,
so the rendered series carries ``semantics`` telling which reading applies.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .boxmod import INF, LAU, NEG, POS, BoxModule, GradedModule, group_range, module_dim
from .core import Bidegree, RingSpec
from .regions import QUADRANTS, Region, corner, region_of_box


class NoRationalSeriesError(ValueError):
    """Modules with Laurent variables have no bigraded Hilbert series."""


class InfiniteDimensionError(ValueError):
    pass


def _counts(states):
    return sum(1 for s in states if s is POS), sum(1 for s in states if s is NEG)


def _power(var: str, e: int) -> str:
    if e == 0:
        return ""
    return var if e == 1 else f"{var}^{e}"


def _factor(base: str, e: int) -> str:
    return base if e == 1 else f"{base}^{e}"


def _term_string(coeff: int, box: BoxModule) -> str:
    kx, lx = _counts(box.x_states)
    ky, ly = _counts(box.y_states)
    num = [p for p in (_power("t1", -lx - box.shift.u), _power("t2", -ly - box.shift.v)) if p]
    if coeff != 1 or not num:
        num.insert(0, str(coeff))
    den = []
    for var, k, l in (("t1", kx, lx), ("t2", ky, ly)):
        if k:
            den.append(_factor(f"(1-{var})", k))
        if l:
            den.append(_factor(f"(1-{var}^-1)", l))
    return f"{' * '.join(num)} / ({' '.join(den)})"


def _order_key(box: BoxModule) -> int:
    try:
        return QUADRANTS.index(region_of_box(box)) if box.shift == Bidegree(0, 0) else 4
    except (ValueError, AssertionError):
        return 4


@dataclass(frozen=True)
class HilbertSeries:
    ring: RingSpec
    terms: tuple[tuple[int, BoxModule], ...]
    four_corner: tuple[int, int, int, int] | None = None  # (d1, d2, d3, d4) when available

    def render(self, normalize: bool = False) -> str:
        if normalize:
            return self._render_normalized()
        if not self.terms:
            return "0"
        if self.four_corner is not None:
            parts = []
            for d, q in zip(self.four_corner, QUADRANTS):
                if d:
                    parts.append(_term_string(d, _quadrant_box(self.ring, q)))
            return " + ".join(parts)
        ordered = sorted(self.terms, key=lambda t: _order_key(t[1]))
        return " + ".join(_term_string(k, b) for k, b in ordered)

    @property
    def semantics(self) -> str:
        return "formal quadrant series"

    def numerator(self) -> dict[tuple[int, int], int]:
        """Numerator over ``(1-t1)^n (1-t2)^m`` as ``{(e1, e2): coeff}``.

        Uses ``t^-l/(1-t^-1)^l = (-1)^l/(1-t)^l`` -- an identity of rational
        functions, not of formal series.
        """
        num: dict[tuple[int, int], int] = defaultdict(int)
        for k, box in self.terms:
            _, lx = _counts(box.x_states)
            _, ly = _counts(box.y_states)
            num[(-box.shift.u, -box.shift.v)] += k * (-1) ** (lx + ly)
        return {e: c for e, c in num.items() if c}

    def _render_normalized(self) -> str:
        num = self.numerator()
        den = f"({_factor('(1-t1)', self.ring.n)} {_factor('(1-t2)', self.ring.m)})"
        if not num:
            return "0"
        monos = []
        for (e1, e2), c in sorted(num.items()):
            body = " * ".join(p for p in (_power("t1", e1), _power("t2", e2)) if p)
            if not body:
                monos.append(str(c))
            else:
                monos.append(body if c == 1 else f"{c} * {body}")
        numer = monos[0] if len(monos) == 1 else "(" + " + ".join(monos) + ")"
        return f"{numer} / {den}"


def _quadrant_box(ring: RingSpec, q: Region) -> BoxModule:
    xs = NEG if q in (Region.NWstar, Region.SstarWstar) else POS
    ys = NEG if q in (Region.SstarWstar, Region.SstarE) else POS
    return BoxModule(ring, (xs,) * ring.n + (ys,) * ring.m)


def verify_terai_hypothesis(M: GradedModule) -> bool:
    """Support avoids both open strips ``-n < u < 0`` and ``-m < v < 0``."""
    ring = M.ring
    for box, _ in M.summands:
        for states, s, size in ((box.x_states, box.shift.u, ring.n), (box.y_states, box.shift.v, ring.m)):
            lo, hi = group_range(states)
            # degrees d with d + s in [lo, hi]
            lo = None if lo is None else lo - s
            hi = None if hi is None else hi - s
            strip_lo, strip_hi = -size + 1, -1
            if strip_lo > strip_hi:
                continue
            if (lo is None or lo <= strip_hi) and (hi is None or hi >= strip_lo):
                return False
    return True


def hilbert_series(M: GradedModule) -> HilbertSeries:
    for box, _ in M.summands:
        if LAU in box.states:
            raise NoRationalSeriesError(f"{box} has a Laurent variable; its pieces are not a rational series")
    four = None
    if not M.is_zero and verify_terai_hypothesis(M) and all(b.shift == Bidegree(0, 0) for b in M.boxes()):
        four = tuple(module_dim(M, corner(M.ring, q)) for q in QUADRANTS)
        if INF in four:
            four = None
    return HilbertSeries(M.ring, tuple((k, b) for b, k in M.summands), four)


# --------------------------------------------------------------------------
# series expansion


def _variable_series(state, lo: int, hi: int) -> dict[int, int]:
    if state is LAU:
        raise NoRationalSeriesError("Laurent variable")
    if state is POS:
        return {e: 1 for e in range(max(lo, 0), hi + 1)}
    return {e: 1 for e in range(lo, min(hi, -1) + 1)}


def _convolve(a: dict, b: dict, lo: int, hi: int) -> dict:
    out: dict[int, int] = defaultdict(int)
    for x, cx in a.items():
        for y, cy in b.items():
            if lo <= x + y <= hi:
                out[x + y] += cx * cy
    return out


def _group_series(states, lo: int, hi: int):
    """Coefficients of the product of per-variable factors on ``[lo, hi]``.

    Returns ``INF`` when the product mixes a series in ``t`` with one in
    ``t^-1`` (every coefficient is then a divergent sum).
    """
    k, l = _counts(states)
    if k and l:
        return INF
    if not states:
        return {0: 1}
    # all factors point the same way, so partial sums never leave [lo', hi]
    reach = max(abs(lo), abs(hi)) + len(states)
    acc = {0: 1}
    for st in states:
        acc = _convolve(acc, _variable_series(st, -reach, reach), -reach, reach)
    return {e: c for e, c in acc.items() if lo <= e <= hi}


def eval_series_window(S: HilbertSeries, window) -> dict[tuple[int, int], object]:
    umin, umax, vmin, vmax = window
    table: dict[tuple[int, int], object] = {(u, v): 0 for u in range(umin, umax + 1) for v in range(vmin, vmax + 1)}
    for k, box in S.terms:
        su, sv = box.shift.u, box.shift.v
        gx = _group_series(box.x_states, umin + su, umax + su)
        gy = _group_series(box.y_states, vmin + sv, vmax + sv)
        for (u, v) in table:
            cx = INF if gx is INF else gx.get(u + su, 0)
            cy = INF if gy is INF else gy.get(v + sv, 0)
            if cx == 0 or cy == 0:
                continue
            table[(u, v)] = table[(u, v)] + (INF if INF in (cx, cy) else k * cx * cy)
    return table


# --------------------------------------------------------------------------
# quadrant dimension polynomials


def binom_poly(x, j: int):
    """``x (x-1) ... (x-j+1) / j!`` -- the binomial coefficient as a polynomial in ``x``."""
    num = 1
    for i in range(j):
        num *= x - i
    return Fraction(num, factorial(j))


def _poly_binom(sign: int, alpha: int, j: int) -> list[Fraction]:
    """Coefficient list (ascending powers of u) of ``C(sign*u + alpha, j)``."""
    poly = [Fraction(1)]
    for i in range(j):
        lin = [Fraction(alpha - i), Fraction(sign)]
        out = [Fraction(0)] * (len(poly) + 1)
        for a, ca in enumerate(poly):
            for b, cb in enumerate(lin):
                out[a + b] += ca * cb
        poly = out
    f = factorial(j)
    return [c / f for c in poly]


@dataclass(frozen=True)
class QuadrantPolynomial:
    """``sum coeff * C(su*u + alpha, j) * C(sv*v + beta, k)`` over the stored terms."""

    quadrant: Region
    terms: tuple[tuple[int, int, int, int, int, int, int], ...]  # (coeff, su, alpha, j, sv, beta, k)

    def __call__(self, u: int, v: int):
        total = Fraction(0)
        for c, su, alpha, j, sv, beta, k in self.terms:
            total += c * binom_poly(su * u + alpha, j) * binom_poly(sv * v + beta, k)
        return int(total) if total.denominator == 1 else total

    def coefficients(self) -> dict[tuple[int, int], Fraction]:
        """Expansion in the monomial basis ``u^p v^q``."""
        out: dict[tuple[int, int], Fraction] = defaultdict(Fraction)
        for c, su, alpha, j, sv, beta, k in self.terms:
            pu = _poly_binom(su, alpha, j)
            pv = _poly_binom(sv, beta, k)
            for p, a in enumerate(pu):
                for q, b in enumerate(pv):
                    if a and b:
                        out[(p, q)] += c * a * b
        return {e: c for e, c in out.items() if c}

    @property
    def is_zero(self) -> bool:
        return not self.coefficients()

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        def b(s, var, a, j):
            arg = (var if s > 0 else f"-{var}") + (f"+{a}" if a > 0 else (f"{a}" if a < 0 else ""))
            return f"C({arg},{j})"
        return " + ".join(f"{c}*{b(su, 'u', al, j)}*{b(sv, 'v', be, k)}" for c, su, al, j, sv, be, k in self.terms)


_DIRECTIONS = {Region.NE: (1, 1), Region.NWstar: (-1, 1), Region.SstarWstar: (-1, -1), Region.SstarE: (1, -1)}


def _vanishes_deep(states, sign: int) -> bool:
    k, l = _counts(states)
    pure_pos = k == len(states)
    pure_neg = l == len(states)
    return (pure_pos and sign < 0) or (pure_neg and sign > 0)


def _group_factor(states, sign: int, s: int, where):
    """``(su, alpha, j)`` with the group's count ``C(su*u + alpha, j)`` in direction ``sign``."""
    k, l = _counts(states)
    if len(states) == 1 and states[0] is LAU:
        return (1, 0, 0)
    if LAU in states or (k and l):
        raise InfiniteDimensionError(f"pieces are infinite-dimensional in {where}")
    if k and sign > 0:
        return (1, s + k - 1, k - 1)  # C(u + s + k - 1, k - 1)
    return (-1, -s - 1, l - 1)  # C(-(u + s) - 1, l - 1)


def dimension_polynomial(M: GradedModule, quadrant: Region) -> QuadrantPolynomial:
    """Polynomial equal to ``dim M_(u,v)`` deep inside ``quadrant``.

    Raises :class:`InfiniteDimensionError` if some summand has infinite
    pieces there (the polynomial then does not exist).
    """
    if quadrant not in _DIRECTIONS:
        raise ValueError(f"{quadrant} is not a quadrant")
    du, dv = _DIRECTIONS[quadrant]
    acc: dict[tuple, int] = defaultdict(int)
    for box, mult in M.summands:
        # a group vanishing deep in this quadrant kills the box whatever the other group does
        if _vanishes_deep(box.x_states, du) or _vanishes_deep(box.y_states, dv):
            continue
        fx = _group_factor(box.x_states, du, box.shift.u, quadrant)
        fy = _group_factor(box.y_states, dv, box.shift.v, quadrant)
        acc[fx + fy] += mult
    terms = tuple(sorted((c,) + key for key, c in acc.items() if c))
    return QuadrantPolynomial(quadrant, terms)


def deep_points(ring: RingSpec, quadrant: Region, window, offset: int | None = None):
    """Window points at least ``offset`` (default ``max(n, m)``) beyond the quadrant corner."""
    offset = max(ring.n, ring.m) if offset is None else offset
    c = corner(ring, quadrant)
    du, dv = _DIRECTIONS[quadrant]
    umin, umax, vmin, vmax = window
    for u in range(umin, umax + 1):
        for v in range(vmin, vmax + 1):
            if du * (u - c.u) >= offset and dv * (v - c.v) >= offset:
                yield Bidegree(u, v)
