"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run under pytest (the lines are repeated in the terminal summary) or directly:
``python3 tests/test_acceptance.py``.
"""
import functools
import json
import random
import sys
import time
from importlib import resources
from itertools import combinations
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent))

from sumsetlab.cli import EXIT_CODES, render, run
from sumsetlab.complements import Status, dependents, gap_stats
from sumsetlab.constructions import (ap_centers, has_3ap, in_digit_set, inherit_pipeline,
                                     lift_below, prop11_generate, ternary_digits_01, ternary_fix,
                                     thm_converse_extract, thm_finite_build_w, uniquely_doubled)
from sumsetlab.core import (EPForm, PeriodicSet, boolean_combine, from_ep_form, negate,
                            restrict_to_residues, sumset, translate)
from sumsetlab.dsl import parse, to_text
from sumsetlab.modular import ResidueSet, search_pattern
from sumsetlab.oracle import Window, WindowSet, combine, covers, rep_counts, window_sumset

from cli_cases import CASES
from conftest import random_periodic

RESULTS = []


def criterion(number: int, title: str):
    def wrap(fn):
        @functools.wraps(fn)
        def run_criterion(*args, **kwargs):
            t0 = time.perf_counter()
            try:
                detail = fn(*args, **kwargs) or ""
            except Exception as exc:
                line = f"FAIL criterion {number}: {title} ({type(exc).__name__}: {exc})"
                RESULTS.append(line)
                print(line)
                raise
            line = f"PASS criterion {number}: {title} [{time.perf_counter() - t0:.1f}s] {detail}".rstrip()
            RESULTS.append(line)
            print(line)
        return run_criterion
    return wrap


# -- an oracle independent of the three-zone code ---------------------------------------------


def defn_window(S: PeriodicSet, w: Window) -> WindowSet:
    """Membership on w evaluated from the zone definition with plain numpy."""
    z = np.arange(w.lo, w.hi + 1)
    low = np.isin(z % S.period, sorted(S.low_res))
    high = np.isin(z % S.period, sorted(S.high_res))
    mid = np.isin(z, sorted(S.mid))
    return WindowSet(w, np.where(z < S.mid_lo, low, np.where(z >= S.mid_hi, high, mid)))


TARGET = Window(-200, 200)
INPUT = Window(-400, 400)


def _check_pair(S, T, k, n, R):
    s, t = defn_window(S, INPUT), defn_window(T, INPUT)
    s_t, t_t = s.restrict(TARGET), t.restrict(TARGET)
    for op in ("union", "intersect", "difference"):
        got = defn_window(boolean_combine(op, S, T), TARGET).bits
        assert np.array_equal(got, combine(op, s_t, t_t).bits), (op, S, T)
    assert np.array_equal(defn_window(sumset(S, T), TARGET).bits, window_sumset(s, t, TARGET).bits), (S, T)
    assert np.array_equal(defn_window(translate(S, k), TARGET).bits, s.shift(k).restrict(TARGET).bits)
    assert np.array_equal(defn_window(negate(S), TARGET).bits, s.negate().restrict(TARGET).bits)
    keep = np.isin(np.arange(TARGET.lo, TARGET.hi + 1) % n, sorted(R))
    assert np.array_equal(defn_window(restrict_to_residues(S, n, R), TARGET).bits, s_t.bits & keep)
    zs = range(TARGET.lo, TARGET.hi + 1, 7)
    assert [z in S for z in zs] == [bool(s_t.bits[z - TARGET.lo]) for z in zs]


@criterion(1, "oracle agreement, 1000 random pairs")
def test_criterion_1_oracle_agreement():
    rng = random.Random(1)
    t0 = time.perf_counter()
    for _ in range(1000):
        S, T = random_periodic(rng), random_periodic(rng)
        n = rng.randint(1, 8)
        R = {r for r in range(n) if rng.random() < 0.5}
        _check_pair(S, T, rng.randint(-60, 60), n, R)
    elapsed = time.perf_counter() - t0
    assert elapsed < 30, f"took {elapsed:.1f}s"


@criterion(2, "interval identity, 500 random finite C")
def test_criterion_2_interval_identity():
    rng = random.Random(2)
    for _ in range(500):
        lo = rng.randint(-40, 40)
        cs = sorted(set(rng.sample(range(lo, lo + 31), rng.randint(1, 8))))
        k = max((b - a for a, b in zip(cs, cs[1:])), default=0)
        got = sumset(PeriodicSet.finite(cs), PeriodicSet.interval(1, k + 1))
        expect = PeriodicSet.interval(cs[0] + 1, cs[-1] + k + 1)
        assert got == expect, cs
        w = Window(cs[0] - 5, cs[-1] + k + 6)
        brute = window_sumset(WindowSet.from_members(cs, Window(cs[0], cs[-1])),
                              WindowSet.from_members(range(1, k + 2), Window(1, k + 1)), w)
        assert brute.members() == list(range(cs[0] + 1, cs[-1] + k + 2)), cs


@criterion(3, "finite-C builder, 100 random C")
def test_criterion_3_finite_builder():
    rng = random.Random(3)
    fill_to = 300
    t0 = time.perf_counter()
    for _ in range(100):
        lo = rng.randint(-20, 20)
        cs = sorted(set(rng.sample(range(lo, lo + 21), rng.randint(1, 6))))
        b = thm_finite_build_w(cs, fill_to)
        assert b.verified
        target = Window(-300, fill_to)
        Ww = defn_window(b.W, Window(target.lo - cs[-1], target.hi - cs[0]))
        Cw = WindowSet.from_members(cs, Window(cs[0], cs[-1]))
        assert covers(window_sumset(Cw, Ww, target), target), cs
        for c, z in b.witnesses.items():
            rest = WindowSet.from_members([x for x in cs if x != c], Window(cs[0], cs[-1]))
            assert z - c in Ww
            assert z not in window_sumset(rest, Ww, Window(z, z)), (cs, c, z)
    elapsed = time.perf_counter() - t0
    assert elapsed < 30, f"took {elapsed:.1f}s"


@criterion(4, "ternary construction with limit 3^8")
def test_criterion_4_prop11():
    limit = 3 ** 8
    W = prop11_generate(limit)
    assert W.window == Window(-2 * limit - 1, 2 * limit)
    assert has_3ap(W) is None
    w = Window(-1000, 1000)
    assert covers(window_sumset(W, W, w), w)
    for z in range(limit + 1):
        r = ternary_fix(z)
        assert in_digit_set(r.z_tilde) and in_digit_set(r.z_tilde - z), z
    A = WindowSet.from_members(ternary_digits_01(limit), Window(0, limit))
    assert covers(window_sumset(A, A, Window(0, 3 ** 7)), Window(0, 3 ** 7))


@criterion(5, "self-complement pointwise law, all W in [-12,12] with |W| <= 6")
def test_criterion_5_pointwise_law():
    count = 0
    for k in range(0, 7):
        for W in combinations(range(-12, 13), k):
            centers = ap_centers(W)
            unique = uniquely_doubled(W)
            assert unique == set(W) - centers, W
            count += 1
    return f"({count} sets)"


PRONIC = PeriodicSet.finite([k * (k + 1) for k in range(30) if k * (k + 1) <= 500])
E_SCENARIO = EPForm(2, [1], (), PRONIC)
WIN = Window(-500, 500)


def _independent_witness_check(members, G_or_W: PeriodicSet, w: Window, witnesses: dict):
    """Each witness z of d: z - d in the partner set and no other member represents z."""
    pw = defn_window(G_or_W, Window(w.lo - max(members) - 1, w.hi - min(members) + 1))
    X = WindowSet.from_members(members, Window(min(members), max(members)))
    counts = rep_counts(X, pw, w)
    for d, z in witnesses.items():
        assert z in w and z - d in pw, (d, z)
        assert counts[z - w.lo] == 1, (d, z)


@criterion(6, "inheritance pipeline on [-500,500]")
def test_criterion_6_inheritance():
    D, res = inherit_pipeline(E_SCENARIO, ResidueSet.of(2, [0]), WIN)
    assert res.coverage.status is Status.CERTIFIED_YES
    rep = res.report
    assert rep.overall.status is Status.CERTIFIED_YES
    assert rep.elements and all(e.necessary for e in rep.elements.values())
    Dp = res.d_prime
    assert all(d % 2 == 0 for d in Dp.members())
    W = from_ep_form(E_SCENARIO)
    Ww = defn_window(W, Window(WIN.lo - Dp.hi, WIN.hi - Dp.lo))
    assert covers(window_sumset(Dp, Ww, WIN), WIN)
    _independent_witness_check(Dp.members(), W, res.report.overall.window or WIN, rep.witnesses())
    gaps = gap_stats(W, Window(0, 500)).gap_histogram
    assert set(gaps) <= {1, 2}, gaps
    return f"({len(rep.elements)} elements probed)"


@criterion(7, "converse round trip on [-500,500]")
def test_criterion_7_converse():
    _, res = inherit_pipeline(E_SCENARIO, ResidueSet.of(2, [0]), WIN)
    C = lift_below(res.d_prime, 2, [0])
    r = thm_converse_extract(E_SCENARIO, C, WIN)
    assert r.coverage.status is Status.CERTIFIED_YES
    assert r.report.overall.status is Status.CERTIFIED_YES
    assert all(e.necessary for e in r.report.elements.values())
    reach = Window(WIN.lo - PRONIC.max(), WIN.hi)
    Dw = defn_window(r.D, reach)
    Gw = WindowSet.from_members(PRONIC.elements(), Window(0, PRONIC.max()))
    assert covers(window_sumset(Dw, Gw, WIN), WIN)
    wit_window = r.report.overall.window
    _independent_witness_check(Dw.members(), PRONIC, wit_window, r.report.witnesses())
    return f"(case {r.case}, {len(r.report.elements)} elements probed)"


@criterion(8, "S-search containment, all residue patterns with n <= 4")
def test_criterion_8_search_containment():
    patterns = 0
    for n in range(1, 5):
        for a in range(1, 1 << n):
            for f in range(1 << n):
                if f & ~a:
                    continue            # F mod n lies inside A mod n
                for g in range(1 << n):
                    if g & a:
                        continue        # G mod n avoids A mod n
                    W, A, G = ResidueSet(n, a | f | g), ResidueSet(n, a), ResidueSet(n, g)
                    suf = search_pattern(n, W, A, G, "sufficient")
                    nec = search_pattern(n, W, A, G, "necessary")
                    assert set(suf) <= set(nec), (n, a, f, g)
                    if g == 0:
                        assert suf == [] and nec == []
                    patterns += 1
    return f"({patterns} patterns)"


@criterion(9, "complements of N have no dependents")
def test_criterion_9_naturals():
    rng = random.Random(9)
    N = PeriodicSet.naturals()
    w = Window(-100, 100)
    found = 0
    while found < 100:
        W = random_periodic(rng)
        if not W.low_res:
            continue
        Ww = defn_window(W, Window(w.lo - 200, w.hi))
        Nw = WindowSet.from_members(range(0, 201), Window(0, 200))
        if not covers(window_sumset(Nw, Ww, w), w):
            continue
        found += 1
        for c in range(0, 51):
            assert dependents(N, W, c, w) == [], (W, c)
            assert dependents(N, W, c, w, windowed=True) == [], (W, c)


@criterion(10, "CLI goldens, schema, round trip, exit codes")
def test_criterion_10_cli():
    import jsonschema
    golden = Path(__file__).parent / "golden"
    schema = json.loads(resources.files("sumsetlab").joinpath("report_schema.json").read_text())
    for name, (argv, code) in CASES.items():
        report, got = run(argv)
        jsonschema.validate(report, schema)
        assert got == code == EXIT_CODES[report["verdict"]["status"]], name
        frozen = render({**report, "timing_ms": 0}, "json") + "\n"
        assert frozen == (golden / f"{name}.json").read_text(), name
        text = render(run(argv + ["--format", "text"])[0], "text") + "\n"
        assert text == (golden / f"{name}.txt").read_text(), name
        for arg in argv:
            try:
                ast = parse(arg)
            except Exception:
                continue
            assert parse(to_text(ast)) == ast, arg
    return f"({len(CASES)} commands)"


if __name__ == "__main__":
    failed = 0
    for fn in [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]:
        try:
            fn()
        except Exception:
            failed += 1
    sys.exit(1 if failed else 0)
