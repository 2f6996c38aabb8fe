"""Local cohomology of monomial ideals.

For a monomial ideal ``I = (g_1..g_s)`` the Čech complex on the generators is
``Z^(n+m)``-graded, and each localization ``R_{g_sigma}`` (``g_sigma`` the lcm
of the generators indexed by ``sigma``) has a one-dimensional piece at
exponent ``a`` exactly when every variable with ``a_j < 0`` divides
``g_sigma``.  The degree-``a`` strand therefore only depends on the sign
pattern ``F = neg(a)``, and

    dim H^i_I(R)_a = h^i(F),   F = neg(a),

so ``H^i_I(R)`` is the sum over ``F`` of ``h^i(F)`` copies of the box that is
inverted exactly on ``F``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .boxmod import NEG, POS, BoxModule, GradedModule
from .core import RingSpec, matmul, rank, rank_bareiss


class RegistryLookupError(KeyError):
    pass


@dataclass(frozen=True)
class MonomialIdeal:
    ring: RingSpec
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        gens = tuple(self.ring.check(g) for g in self.generators)
        if not gens:
            raise ValueError("a monomial ideal needs at least one generator")
        for g in gens:
            if any(e < 0 for e in g):
                raise ValueError(f"negative exponent in generator {g}")
            if not any(g):
                raise ValueError("the monomial 1 generates the unit ideal")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def parse(cls, ring: RingSpec, text: str) -> MonomialIdeal:
        return cls(ring, tuple(parse_monomial(ring, tok) for tok in text.split(",")))

    def supports(self) -> list[frozenset]:
        return [frozenset(j for j, e in enumerate(g) if e) for g in self.generators]

    def normalized(self) -> MonomialIdeal:
        """The radical with minimal squarefree generators, in a canonical order."""
        sups = set(self.supports())
        minimal = [s for s in sups if not any(t < s for t in sups)]
        minimal.sort(key=lambda s: (len(s), sorted(s)))
        gens = tuple(tuple(1 if j in s else 0 for j in range(self.ring.nvars)) for s in minimal)
        return MonomialIdeal(self.ring, gens)

    def render(self) -> str:
        return ", ".join(render_monomial(self.ring, g) for g in self.generators)


_TOKEN = re.compile(r"^([XY])(\d+)(?:\^(\d+))?$")


def parse_monomial(ring: RingSpec, text: str) -> tuple[int, ...]:
    """``"X1^2*Y3"`` -> exponent vector.  Raises ``ValueError`` on bad input."""
    text = text.strip()
    if not text:
        raise ValueError("empty monomial")
    a = [0] * ring.nvars
    for tok in text.split("*"):
        tok = tok.strip()
        mt = _TOKEN.match(tok)
        if not mt:
            raise ValueError(f"bad monomial token {tok!r}")
        try:
            j = ring.var_index(mt.group(1) + mt.group(2))
        except KeyError as exc:
            raise ValueError(str(exc.args[0])) from None
        a[j] += int(mt.group(3)) if mt.group(3) is not None else 1
    if not any(a):
        raise ValueError(f"monomial {text!r} is 1 (zero exponent)")
    return tuple(a)


def render_monomial(ring: RingSpec, a: Sequence[int]) -> str:
    parts = []
    for j, e in enumerate(a):
        if e:
            parts.append(ring.var_name(j) + (f"^{e}" if e != 1 else ""))
    return "*".join(parts) if parts else "1"


# --------------------------------------------------------------------------
# the degreewise Čech complex


def _faces(s: int):
    for p in range(s + 1):
        yield from combinations(range(s), p)


def _complex_from_faces(admissible: Sequence[tuple[int, ...]], top: int):
    """Cochain spaces and coboundaries of the admissible faces, degrees ``0..top``."""
    by_p = [[f for f in admissible if len(f) == p] for p in range(top + 1)]
    out = []
    for p in range(top + 1):
        src = by_p[p]
        tgt = by_p[p + 1] if p + 1 <= top else []
        index = {f: i for i, f in enumerate(tgt)}
        mat = [[0] * len(src) for _ in tgt]
        for c, sigma in enumerate(src):
            for k in range(top):
                if k in sigma:
                    continue
                tau = tuple(sorted(sigma + (k,)))
                r = index.get(tau)
                if r is not None:
                    mat[r][c] = -1 if tau.index(k) % 2 else 1
        out.append((p, len(src), mat))
    return out


def degreewise_complex(I: MonomialIdeal, F: Iterable[int]):
    """``[(p, dim C^p, d^p)]`` for the strand of the Čech complex at sign pattern ``F``.

    ``d^p`` is a ``dim C^(p+1) x dim C^p`` integer matrix; faces are ordered
    lexicographically and ``sigma -> sigma + {k}`` carries the sign
    ``(-1)^(position of k)``.
    """
    F = frozenset(F)
    sups = I.supports()
    s = len(sups)
    admissible = []
    for sigma in _faces(s):
        covered = frozenset().union(*(sups[i] for i in sigma)) if sigma else frozenset()
        if F <= covered:
            admissible.append(sigma)
    cx = _complex_from_faces(admissible, s)
    for (_, _, d0), (_, _, d1) in zip(cx, cx[1:]):
        if d0 and d1 and d0[0]:
            assert all(x == 0 for row in matmul(d1, d0) for x in row), "d o d != 0"
    return cx


def complex_cohomology(cx, rank_fn=rank) -> list[int]:
    ranks = [rank_fn(mat) if mat and mat[0] else 0 for _, _, mat in cx]
    return [dim - ranks[p] - (ranks[p - 1] if p else 0) for p, dim, _ in cx]


@dataclass(frozen=True)
class CohomologyTable:
    ring: RingSpec
    entries: dict = field(default_factory=dict)  # (i, F) -> h, nonzero entries only

    def get(self, i: int, F) -> int:
        return self.entries.get((i, frozenset(F)), 0)

    def degrees(self) -> list[int]:
        return sorted({i for i, _ in self.entries})


def sign_patterns(nvars: int):
    """All subsets of ``range(nvars)`` ordered by size then lexicographically."""
    for k in range(nvars + 1):
        for F in combinations(range(nvars), k):
            yield frozenset(F)


@lru_cache(maxsize=1024)
def cohomology_table(I: MonomialIdeal) -> CohomologyTable:
    J = I.normalized()
    union = frozenset().union(*J.supports())
    entries = {}
    for F in sign_patterns(I.ring.nvars):
        if not F <= union:
            continue
        for i, h in enumerate(complex_cohomology(degreewise_complex(J, F))):
            if h:
                entries[(i, F)] = h
    return CohomologyTable(I.ring, entries)


def box_for_pattern(ring: RingSpec, F) -> BoxModule:
    return BoxModule(ring, tuple(NEG if j in F else POS for j in range(ring.nvars)))


def local_cohomology(I: MonomialIdeal, i: int) -> GradedModule:
    """``H^i_I(R)`` as a sum of boxes; raises ``ValueError`` unless ``0 <= i <= n+m``."""
    ring = I.ring
    if not 0 <= i <= ring.nvars:
        raise ValueError(f"cohomological degree {i} outside 0..{ring.nvars}")
    table = cohomology_table(I)
    summands = []
    for F in sign_patterns(ring.nvars):
        h = table.get(i, F)
        if h:
            summands.append((box_for_pattern(ring, F), h))
    return GradedModule(ring, tuple(summands))


def all_local_cohomology(I: MonomialIdeal) -> dict[int, GradedModule]:
    return {i: local_cohomology(I, i) for i in range(I.ring.nvars + 1)}


# --------------------------------------------------------------------------
# independent per-multidegree oracle


def _in_localization(a: Sequence[int], lcm: Sequence[int]) -> bool:
    # x^a lies in R_m iff m^k x^a is a polynomial for some k >= 0
    return all(x >= 0 or e > 0 for x, e in zip(a, lcm))


def _lcm(gens: Sequence[Sequence[int]], sigma) -> tuple[int, ...]:
    nv = len(gens[0])
    return tuple(max((gens[i][j] for i in sigma), default=0) for j in range(nv))


@lru_cache(maxsize=None)
def _oracle_from_faces(admissible: tuple, s: int) -> tuple[int, ...]:
    # built from the face-deletion formula d(tau) = sum_j (-1)^j tau\tau_j, read column-wise
    # from the targets, independently of _complex_from_faces
    layers = [[f for f in admissible if len(f) == p] for p in range(s + 1)]
    ranks = []
    for p in range(s):
        pos = {f: c for c, f in enumerate(layers[p])}
        mat = []
        for tau in layers[p + 1]:
            row = [0] * len(layers[p])
            for j in range(len(tau)):
                c = pos.get(tau[:j] + tau[j + 1:])
                if c is not None:
                    row[c] = (-1) ** j
            mat.append(row)
        ranks.append(rank_bareiss(mat) if mat and layers[p] else 0)
    ranks.append(0)
    return tuple(len(layers[p]) - ranks[p] - (ranks[p - 1] if p else 0) for p in range(s + 1))


def oracle_dims(I: MonomialIdeal, a: Sequence[int]) -> tuple[int, ...]:
    """``dim H^i_I(R)_a`` for ``i = 0..n+m`` straight from the Čech complex at ``a``.

    Uses the generators as given (no radical or minimality reduction) and
    tests localization membership at ``a`` itself.
    """
    a = I.ring.check(a)
    gens = I.generators
    s = len(gens)
    admissible = tuple(sigma for sigma in _faces(s) if _in_localization(a, _lcm(gens, sigma)))
    dims = _oracle_from_faces(admissible, s)
    width = I.ring.nvars + 1
    if any(dims[width:]):
        raise AssertionError("cohomology above degree n+m")
    return tuple(dims[:width]) + (0,) * (width - len(dims))


def oracle_dim(I: MonomialIdeal, i: int, a: Sequence[int]) -> int:
    dims = oracle_dims(I, a)
    return dims[i] if 0 <= i < len(dims) else 0


def oracle_grid(I: MonomialIdeal, points: np.ndarray) -> np.ndarray:
    """Batched :func:`oracle_dims`: ``points`` is ``(N, n+m)``, result ``(N, n+m+1)``.

    Rows with identical admissible face sets share one cohomology computation.
    """
    points = np.asarray(points, dtype=np.int64)
    gens = I.generators
    s = len(gens)
    faces = list(_faces(s))
    nonneg = points >= 0
    key = np.zeros(len(points), dtype=np.int64)
    for bit, sigma in enumerate(faces):
        lcm = np.array(_lcm(gens, sigma), dtype=np.int64) if sigma else np.zeros(points.shape[1], np.int64)
        member = np.all(nonneg | (lcm > 0), axis=1)
        key |= member.astype(np.int64) << bit
    width = I.ring.nvars + 1
    out = np.zeros((len(points), width), dtype=np.int64)
    uniq, inverse = np.unique(key, return_inverse=True)
    for idx, k in enumerate(uniq):
        admissible = tuple(f for bit, f in enumerate(faces) if (int(k) >> bit) & 1)
        dims = _oracle_from_faces(admissible, s)
        row = np.zeros(width, dtype=np.int64)
        row[: min(width, len(dims))] = dims[:width]
        if any(dims[width:]):
            raise AssertionError("cohomology above degree n+m")
        out[inverse == idx] = row
    return out


def module_fine_grid(M: GradedModule, points: np.ndarray) -> np.ndarray:
    """``M.fine_dim(a)`` for every row ``a`` of ``points``."""
    points = np.asarray(points, dtype=np.int64)
    out = np.zeros(len(points), dtype=np.int64)
    for box, k in M.summands:
        mask = np.ones(len(points), dtype=bool)
        for j, st in enumerate(box.states):
            if st is POS:
                mask &= points[:, j] >= 0
            elif st is NEG:
                mask &= points[:, j] <= -1
        out += k * mask
    return out


def cube(nvars: int, lo: int, hi: int) -> np.ndarray:
    axes = [np.arange(lo, hi + 1, dtype=np.int64)] * nvars
    return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, nvars)


# --------------------------------------------------------------------------


def localize(M: GradedModule, f: Sequence[int]) -> GradedModule:
    """``M_f`` for a monomial ``f``: the variables dividing ``f`` become Laurent."""
    f = M.ring.check(f)
    if any(e < 0 for e in f) or not any(f):
        raise ValueError("localize needs a nonconstant monomial")
    support = {j for j, e in enumerate(f) if e}
    merged: dict[BoxModule, int] = {}
    for box, k in M.summands:
        b = box.localized(support)
        merged[b] = merged.get(b, 0) + k
    return GradedModule(M.ring, tuple(merged.items()))


@dataclass(frozen=True)
class SpecialRegistryEntry:
    name: str
    ring: RingSpec
    degree: int
    module: GradedModule
    provenance: str


def _k3_entry() -> SpecialRegistryEntry:
    ring = RingSpec(3, 3)
    return SpecialRegistryEntry(
        name="binomial_edge_K3",
        ring=ring,
        degree=3,
        module=GradedModule(ring, ((BoxModule.injective_hull(ring), 1),)),
        provenance=(
            "H^3_I(R) = E_R(K) for I the 2x2 minors of the generic 2x3 matrix "
            "[X1 X2 X3; Y1 Y2 Y3], i.e. the binomial edge ideal of K3 (U. Walther)"
        ),
    )


REGISTRY = {"binomial_edge_K3": _k3_entry}


def special_module(name: str) -> SpecialRegistryEntry:
    try:
        return REGISTRY[name]()
    except KeyError:
        raise RegistryLookupError(f"no registered module {name!r}; known: {sorted(REGISTRY)}") from None


__all__ = [
    "MonomialIdeal", "CohomologyTable", "SpecialRegistryEntry", "RegistryLookupError",
    "parse_monomial", "render_monomial", "degreewise_complex", "complex_cohomology",
    "cohomology_table", "local_cohomology", "all_local_cohomology", "oracle_dim",
    "oracle_dims", "oracle_grid", "module_fine_grid", "cube", "localize", "special_module",
    "sign_patterns", "box_for_pattern",
]
