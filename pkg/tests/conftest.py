import os

import pytest
from hypothesis import HealthCheck, settings

from bigraded_lc.cech import all_local_cohomology
from bigraded_lc.corpus import corpus_ideals

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def corpus():
    return corpus_ideals()


@pytest.fixture(scope="session")
def corpus_modules(corpus):
    out = []
    for I in corpus:
        for i, M in all_local_cohomology(I).items():
            out.append((I, i, M))
    return out


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
