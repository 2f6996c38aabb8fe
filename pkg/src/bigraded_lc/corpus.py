"""Fixed, deterministic collection of small monomial ideals used by the test suites."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .boxmod import BoxModule
from .cech import MonomialIdeal
from .core import RingSpec


@dataclass(frozen=True)
class ClosedForm:
    """An ideal whose local cohomology is a single box in one degree."""

    label: str
    ideal: MonomialIdeal
    degree: int
    box: BoxModule


def _ideal(ring: RingSpec, names) -> MonomialIdeal:
    return MonomialIdeal.parse(ring, ", ".join(names))


def closed_forms(ring: RingSpec) -> list[ClosedForm]:
    n, m = ring.n, ring.m
    X = [f"X{i}" for i in range(1, n + 1)]
    Y = [f"Y{j}" for j in range(1, m + 1)]

    def box(neg):
        return BoxModule.from_str(ring, " ".join("neg" if v in neg else "pos" for v in X),
                                  " ".join("neg" if v in neg else "pos" for v in Y))

    rows = [
        ("i", ["X1"]),
        ("ii", ["Y1"]),
        ("iii", ["X1", "Y1"]),
        ("iv", X),
        ("v", Y),
        ("vi", X + ["Y1"]),
        ("vii", [X[-1]] + Y),
        ("viii", X + Y),
    ]
    return [ClosedForm(label, _ideal(ring, gens), len(gens), box(set(gens))) for label, gens in rows]


def _random_ideal(rng: random.Random, ring: RingSpec) -> MonomialIdeal:
    k = rng.randint(1, 5)
    gens = set()
    while len(gens) < k:
        a = tuple(rng.choice((0, 0, 1, 1, 2)) for _ in range(ring.nvars))
        if any(a):
            gens.add(a)
    return MonomialIdeal(ring, tuple(sorted(gens)))


def corpus_ideals(count: int = 40, seed: int = 20240601) -> list[MonomialIdeal]:
    """Closed forms, hand-picked edge cases and seeded random ideals.

    Every ideal has n, m <= 3, at most five generators and exponents <= 2.
    """
    out: list[MonomialIdeal] = []
    for n, m in ((1, 1), (2, 2), (3, 3)):
        out.extend(c.ideal for c in closed_forms(RingSpec(n, m)) if len(c.ideal.generators) <= 5)
    r22 = RingSpec(2, 2)
    r21 = RingSpec(2, 1)
    r12 = RingSpec(1, 2)
    for ring, text in [
        (r22, "X1*Y1, X1*Y2, X2*Y1, X2*Y2"),
        (r22, "X1, X2*Y1"),
        (r22, "X1^2, X1*X2, X2^2"),            # non-squarefree, radical (X1,X2)
        (r22, "X1, X1*Y1, X1^2*Y2"),           # redundant generators
        (r22, "X1*Y1^2, X2^2*Y2, X1*X2"),
        (r22, "X1*X2*Y1*Y2"),
        (r21, "X1*Y1, X2"),
        (r12, "X1*Y1, X1*Y2, Y1*Y2"),
        (RingSpec(1, 1), "X1^2*Y1"),
        (RingSpec(3, 2), "X1*X2, X2*X3, X1*Y1, Y2"),
    ]:
        out.append(MonomialIdeal.parse(ring, text))
    rng = random.Random(seed)
    shapes = [RingSpec(n, m) for n in (1, 2, 3) for m in (1, 2, 3)]
    for _ in range(count):
        out.append(_random_ideal(rng, rng.choice(shapes)))
    return out
