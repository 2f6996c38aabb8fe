import itertools

from hypothesis import strategies as st

from bigraded_lc.boxmod import LAU, NEG, POS, BoxModule
from bigraded_lc.cech import MonomialIdeal
from bigraded_lc.core import Bidegree, RingSpec

rings = st.builds(RingSpec, st.integers(1, 3), st.integers(1, 3))
small_rings = st.builds(RingSpec, st.integers(1, 2), st.integers(1, 2))
bidegrees = st.builds(Bidegree, st.integers(-8, 8), st.integers(-8, 8))


@st.composite
def boxes(draw, ring=None, laurent=True, shifted=False):
    ring = ring or draw(rings)
    pool = [POS, NEG, LAU] if laurent else [POS, NEG]
    states = tuple(draw(st.sampled_from(pool)) for _ in range(ring.nvars))
    shift = draw(bidegrees) if shifted else Bidegree(0, 0)
    return BoxModule(ring, states, shift)


@st.composite
def ideals(draw, max_vars=3, max_gens=5, max_exp=2):
    ring = RingSpec(draw(st.integers(1, max_vars)), draw(st.integers(1, max_vars)))
    vec = st.tuples(*[st.integers(0, max_exp)] * ring.nvars).filter(any)
    gens = draw(st.lists(vec, min_size=1, max_size=max_gens))
    return MonomialIdeal(ring, tuple(gens))


def brute_count(states, shift, d, bound):
    """Count exponent vectors allowed by ``states`` with group sums ``d + shift``, exponents in [-bound, bound]."""
    n = len(states[0])
    ranges = []
    for s in states[0] + states[1]:
        lo = -bound if s in (NEG, LAU) else 0
        hi = -1 if s is NEG else bound
        ranges.append(range(lo, hi + 1))
    tu, tv = tuple(d)[0] + shift[0], tuple(d)[1] + shift[1]
    return sum(1 for a in itertools.product(*ranges) if sum(a[:n]) == tu and sum(a[n:]) == tv)
