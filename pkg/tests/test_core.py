import pytest
from hypothesis import given, settings, strategies as st

from sumsetlab.core import (EPForm, EPFormError, PeriodicSet, ResourceError, as_periodic,
                            boolean_combine, difference, from_ep_form, intersect, member,
                            negate, restrict_to_residues, sumset, translate, union)
from sumsetlab.oracle import Window, materialize

from conftest import brute_members, periodic_sets, raw_descriptions, desc_member

Z = PeriodicSet.integers()
N = PeriodicSet.naturals()


def window_members(S, lo, hi):
    return materialize(S, Window(lo, hi)).members()


# -- worked examples ---------------------------------------------------------------


def test_member_examples():
    assert member(Z, -7)
    assert not member(PeriodicSet.progressions_from(2, [1]), -3)
    assert member(PeriodicSet.residues(2, [1]), 41)


def test_boolean_examples():
    assert union(PeriodicSet.residues(2, [0]), PeriodicSet.residues(2, [1])) == Z
    assert intersect(N, negate(N)) == PeriodicSet.finite([0])
    assert difference(Z, PeriodicSet.residues(3, [0])) == PeriodicSet.residues(3, [1, 2])


def test_translate_examples():
    S = PeriodicSet.finite([0, 2, 5])
    assert translate(S, 0) == S
    assert translate(S, 3) == PeriodicSet.finite([3, 5, 8])
    odd_pos = translate(PeriodicSet.progressions_from(2, [0]), 1)
    assert window_members(odd_pos, -10, 10) == [1, 3, 5, 7, 9]


def test_negate_examples():
    assert window_members(negate(N), -3, 3) == [-3, -2, -1, 0]
    assert negate(PeriodicSet.residues(3, [1])) == PeriodicSet.residues(3, [2])


def test_sumset_examples():
    evens = PeriodicSet.progressions_from(2, [0])
    assert sumset(evens, PeriodicSet.finite([0, 1])) == N
    assert sumset(PeriodicSet.finite([0, 2, 5]), PeriodicSet.interval(1, 4)) == PeriodicSet.interval(1, 9)
    assert sumset(PeriodicSet.finite([0]), evens) == evens
    assert sumset(N, negate(N)) == Z


def test_sumset_with_empty_is_empty():
    assert sumset(PeriodicSet.empty(), Z).is_empty


def test_from_ep_form_examples():
    assert window_members(from_ep_form(EPForm(2, [1])), -5, 9) == [1, 3, 5, 7, 9]
    W = from_ep_form(EPForm(2, [1], [-3], PeriodicSet.finite([0, 2, 6])))
    assert window_members(W, -10, 12) == [-3, 0, 1, 2, 3, 5, 6, 7, 9, 11]
    assert from_ep_form(EPForm(1, [0])) == N


@pytest.mark.parametrize("kwargs, fragment", [
    (dict(n=2, A=[]), "nonempty"),
    (dict(n=2, A=[1, 3]), "two elements in residue class"),
    (dict(n=2, A=[1], F=[0]), r"\(F mod n\)"),
    (dict(n=2, A=[1], F=[3]), "not below"),
    (dict(n=2, A=[1], G=PeriodicSet.finite([3])), r"\(G mod n\)"),
    (dict(n=2, A=[1], G=negate(N)), "bounded below"),
])
def test_ep_form_rejects(kwargs, fragment):
    with pytest.raises(EPFormError, match=fragment):
        EPForm(**kwargs)


def test_restrict_examples():
    assert restrict_to_residues(Z, 2, [0]) == PeriodicSet.residues(2, [0])
    assert restrict_to_residues(PeriodicSet.interval(-5, 5), 3, [1]).elements() == [-5, -2, 1, 4]
    S = PeriodicSet(3, {1}, {0, 2}, -4, 5, {-1, 2})
    assert restrict_to_residues(S, 6, range(6)) == S


# -- representation -----------------------------------------------------------------


def test_canonical_forms_are_equal():
    a = PeriodicSet(4, {0, 2}, {0, 2}, -8, 8, {-8, -6, -4, -2, 0, 2, 4, 6})
    assert a == PeriodicSet.residues(2, [0])
    assert a.period == 2 and a.mid_lo == a.mid_hi


def test_invalid_construction():
    with pytest.raises(ValueError):
        PeriodicSet(0)
    with pytest.raises(ValueError):
        PeriodicSet(2, {2})
    with pytest.raises(ValueError):
        PeriodicSet(2, (), (), 3, 1)
    with pytest.raises(ValueError):
        PeriodicSet(2, (), (), 0, 3, {5})


def test_min_max_and_finiteness():
    S = PeriodicSet.progressions_from(3, [4, 2])
    assert S.min() == 2 and S.bounded_below and not S.bounded_above
    with pytest.raises(ValueError):
        S.max()
    F = PeriodicSet.finite([7, -2])
    assert F.is_finite and F.elements() == [-2, 7] and (F.min(), F.max()) == (-2, 7)


def test_json_round_trip():
    S = PeriodicSet(6, {1, 4}, {0}, -7, 9, {-7, 0, 3})
    assert PeriodicSet.from_json(S.to_json()) == S


def test_as_periodic_accepts_iterables():
    assert as_periodic([3, 1, 3]) == PeriodicSet.finite([1, 3])


def test_lcm_cap_is_enforced():
    with pytest.raises(ResourceError):
        sumset(PeriodicSet.residues(97, [0]), PeriodicSet.residues(89, [0]), lcm_cap=1000)


def test_huge_offsets_stay_exact():
    big = 10 ** 30
    S = translate(PeriodicSet.progressions_from(5, [0]), big)
    assert big in S and big + 5 in S and big - 5 not in S and big + 1 not in S


# -- properties against the definition -------------------------------------------------

LO, HI = -120, 120


@given(raw_descriptions())
def test_canonicalization_preserves_membership(desc):
    S = PeriodicSet(*desc)
    assert brute_members(S, LO, HI) == {z for z in range(LO, HI + 1) if desc_member(desc, z)}
    assert set(window_members(S, LO, HI)) == brute_members(S, LO, HI)


@given(raw_descriptions())
def test_canonical_form_is_idempotent(desc):
    S = PeriodicSet(*desc)
    again = PeriodicSet(S.period, S.low_res, S.high_res, S.mid_lo, S.mid_hi, S.mid)
    assert again.to_json() == S.to_json()


@given(periodic_sets(), st.integers(2, 4))
def test_equal_sets_have_equal_forms(S, k):
    # re-describe S with a multiplied period and a widened middle
    p = S.period * k
    a, b = S.mid_lo - p, S.mid_hi + p
    low = {r for r in range(p) if r % S.period in S.low_res}
    high = {r for r in range(p) if r % S.period in S.high_res}
    mid = {z for z in range(a, b) if z in S}
    assert PeriodicSet(p, low, high, a, b, mid) == S


@settings(max_examples=60)
@given(periodic_sets(), periodic_sets(), st.sampled_from(["union", "intersect", "difference"]))
def test_boolean_ops_match_brute(S, T, op):
    R = boolean_combine(op, S, T)
    s, t = brute_members(S, LO, HI), brute_members(T, LO, HI)
    expect = {"union": s | t, "intersect": s & t, "difference": s - t}[op]
    assert brute_members(R, LO, HI) == expect


@settings(max_examples=60)
@given(periodic_sets(), periodic_sets())
def test_sumset_matches_brute(S, T):
    R = sumset(S, T)
    s, t = brute_members(S, -400, 400), brute_members(T, -400, 400)
    expect = {z for z in range(-200, 201) if any(z - x in t for x in s)}
    assert brute_members(R, -200, 200) == expect


@given(periodic_sets(), st.integers(-40, 40))
def test_translate_and_negate_match_brute(S, k):
    assert brute_members(translate(S, k), LO, HI) == {z + k for z in brute_members(S, LO - k, HI - k)}
    assert brute_members(negate(S), LO, HI) == {-z for z in brute_members(S, -HI, -LO)}


@given(periodic_sets(), st.integers(1, 8), st.sets(st.integers(0, 7)))
def test_restrict_matches_brute(S, n, rs):
    R = restrict_to_residues(S, n, [r % n for r in rs])
    assert brute_members(R, LO, HI) == {z for z in brute_members(S, LO, HI) if z % n in {r % n for r in rs}}


# -- algebraic laws ------------------------------------------------------------------


@settings(max_examples=40)
@given(periodic_sets(), periodic_sets())
def test_sumset_commutes(S, T):
    assert sumset(S, T) == sumset(T, S)


@settings(max_examples=30)
@given(periodic_sets(max_period=4), periodic_sets(max_period=4), periodic_sets(max_period=4))
def test_sumset_distributes_over_union(S, T, U):
    assert sumset(S, union(T, U)) == union(sumset(S, T), sumset(S, U))


@given(periodic_sets(), periodic_sets())
def test_de_morgan(S, T):
    assert difference(Z, union(S, T)) == intersect(difference(Z, S), difference(Z, T))


@given(periodic_sets(), st.integers(-30, 30), st.integers(-30, 30))
def test_translation_and_reflection_laws(S, j, k):
    assert negate(negate(S)) == S
    assert translate(translate(S, j), k) == translate(S, j + k)
    assert negate(translate(S, k)) == translate(negate(S), -k)


@settings(max_examples=40)
@given(periodic_sets(), periodic_sets(), st.integers(-20, 20))
def test_sumset_commutes_with_translation(S, T, k):
    assert sumset(translate(S, k), T) == translate(sumset(S, T), k)
