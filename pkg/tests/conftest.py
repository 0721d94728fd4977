import random

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from sumsetlab.core import PeriodicSet

# first calls may include numba compilation, so per-example deadlines are off
settings.register_profile("sumsetlab", deadline=None)
settings.load_profile("sumsetlab")


def desc_member(desc: tuple, z: int) -> bool:
    """Membership straight from the three-zone definition of raw constructor args."""
    p, low, high, a, b, mid = desc
    if z < a:
        return z % p in low
    if z >= b:
        return z % p in high
    return z in mid


def brute_member(S: PeriodicSet, z: int) -> bool:
    return desc_member((S.period, S.low_res, S.high_res, S.mid_lo, S.mid_hi, S.mid), z)


def brute_members(S, lo: int, hi: int) -> set:
    return {z for z in range(lo, hi + 1) if brute_member(S, z)}


@st.composite
def raw_descriptions(draw, max_period=6, lo=-50, hi=50, max_mid=12):
    p = draw(st.integers(1, max_period))
    low = draw(st.sets(st.integers(0, p - 1)))
    high = draw(st.sets(st.integers(0, p - 1)))
    a = draw(st.integers(lo, hi))
    b = draw(st.integers(a, min(hi, a + max_mid)))
    mid = draw(st.sets(st.integers(a, b - 1))) if b > a else set()
    return (p, frozenset(low), frozenset(high), a, b, frozenset(mid))


def periodic_sets(**kw):
    return raw_descriptions(**kw).map(lambda desc: PeriodicSet(*desc))


def random_periodic(rng: random.Random, max_period=6, lo=-50, hi=50) -> PeriodicSet:
    p = rng.randint(1, max_period)
    low = {r for r in range(p) if rng.random() < 0.5}
    high = {r for r in range(p) if rng.random() < 0.5}
    a = rng.randint(lo, hi)
    b = rng.randint(a, hi)
    mid = {z for z in range(a, b) if rng.random() < 0.5}
    return PeriodicSet(p, low, high, a, b, mid)


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def nprng():
    return np.random.default_rng(20240601)


def pytest_addoption(parser):
    parser.addoption("--regen-golden", action="store_true",
                     help="rewrite tests/golden/* from the current CLI output")


@pytest.fixture
def regen_golden(request):
    return request.config.getoption("--regen-golden")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
