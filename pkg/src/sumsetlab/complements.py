"""Complement and minimality verdicts.

Verdicts are three-valued.  When both sets are periodic the complement
question and the redundancy of any single element are decided exactly; a
window can only ever confirm that an element is needed.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from ._kernels import kernels
from .core import PeriodicSet, as_periodic, difference, sumset, translate
from .oracle import Window, WindowSet, materialize, rep_counts, sumset_pad


class PreconditionError(ValueError):
    """An operation was called outside its stated preconditions."""


class Status(str, enum.Enum):
    CERTIFIED_YES = "CERTIFIED_YES"
    CERTIFIED_NO = "CERTIFIED_NO"
    UNKNOWN = "UNKNOWN"


@dataclass
class Verdict:
    status: Status
    witness: Any = None
    note: str = ""
    window: Optional[Window] = None

    def __bool__(self):
        return self.status is Status.CERTIFIED_YES


@dataclass
class ElementStatus:
    necessary: bool
    witness: Optional[int] = None

    @property
    def label(self):
        return "NECESSARY" if self.necessary else "UNDETERMINED"


@dataclass
class MinimalityReport:
    elements: dict = field(default_factory=dict)  # c -> ElementStatus
    overall: Verdict = None

    def witnesses(self) -> dict:
        return {c: e.witness for c, e in self.elements.items() if e.necessary}


def _is_windowed(X) -> bool:
    return isinstance(X, WindowSet)


def _nearest_missing(S: PeriodicSet) -> int:
    """A non-member of S, preferring small |z| and then positive z."""
    p = S.period
    lo, hi = min(S.mid_lo, 0) - p, max(S.mid_hi, 0) + p
    arr = S.member_array(lo, hi - lo)
    miss = [lo + int(i) for i in np.flatnonzero(~arr)]
    return min(miss, key=lambda z: (abs(z), z < 0))


def is_complement(C, W) -> Verdict:
    """Exact test of C + W = Z for periodic (or finite) C and W."""
    C, W = as_periodic(C), as_periodic(W)
    total = sumset(C, W)
    if total == PeriodicSet.integers():
        return Verdict(Status.CERTIFIED_YES, note="exact: C + W = Z")
    z = _nearest_missing(total)
    return Verdict(Status.CERTIFIED_NO, witness=z, note=f"exact: {z} is not in C + W")


def covered_on_window(C, W, w: Window) -> Verdict:
    """Windowed coverage check for inputs that may be WindowSets."""
    Cw, Ww, counts = _windowed_counts(C, W, w)
    miss = np.flatnonzero(counts == 0)
    if len(miss):
        z = w.lo + int(miss[0])
        return Verdict(Status.UNKNOWN, witness=z, window=w,
                       note=f"windowed: {z} has no representation among the materialized members")
    return Verdict(Status.CERTIFIED_YES, window=w, note=f"windowed: C + W covers {w}")


def _windowed_counts(C, W, w: Window):
    """Materialize C and W so every representation of z in w by a visible c is counted."""
    if _is_windowed(C) and _is_windowed(W):
        Cw, Ww = C, W
    elif _is_windowed(C):
        Cw = C
        Ww = materialize(W, Window(w.lo - C.hi, w.hi - C.lo))
    elif _is_windowed(W):
        Ww = W
        Cw = materialize(C, Window(w.lo - W.hi, w.hi - W.lo))
    else:
        C, W = as_periodic(C), as_periodic(W)
        pad = sumset_pad(C, W)
        Cw = materialize(C, w.pad(pad + len(w)))
        Ww = materialize(W, Window(w.lo - Cw.hi, w.hi - Cw.lo))
    return Cw, Ww, rep_counts(Cw, Ww, w)


def _exact_dependent_set(C: PeriodicSet, W: PeriodicSet, c: int) -> PeriodicSet:
    """(c + W) minus ((C without c) + W), exactly."""
    rest = difference(C, PeriodicSet.finite([c]))
    return difference(translate(W, c), sumset(rest, W))


def dependents(C, W, c: int, w: Window, *, windowed: bool = False) -> list[int]:
    """Integers z in w with z in c + W and z not in (C without c) + W.

    Exact when C and W are periodic (unless ``windowed`` forces the padded
    brute-force path); otherwise relative to the materialized members.
    """
    if c not in C:
        raise PreconditionError(f"{c} is not an element of C")
    if not windowed and not _is_windowed(C) and not _is_windowed(W):
        dep = _exact_dependent_set(as_periodic(C), as_periodic(W), c)
        return materialize(dep, w).members()
    Cw, Ww, counts = _windowed_counts(C, W, w)
    return _windowed_dependents(Ww, counts, c, w)


def _windowed_dependents(Ww: WindowSet, counts: np.ndarray, c: int, w: Window) -> list[int]:
    shifted = Ww.shift(c).restrict(w).bits
    return [w.lo + int(i) for i in np.flatnonzero(shifted & (counts == 1))]


def _probe_range(C) -> Window:
    if _is_windowed(C):
        return C.window
    C = as_periodic(C)
    return Window(C.mid_lo - C.period, C.mid_hi + C.period - 1)


def minimality_report(C, W, w: Window, *, probe: Optional[Window] = None) -> MinimalityReport:
    """Per-element necessity witnesses on ``w`` plus an overall verdict.

    Periodic inputs: each probed element's dependent set is computed exactly,
    so an empty one certifies redundancy (overall CERTIFIED_NO).  A finite C
    with every element necessary is certified exactly; an infinite periodic C
    is certified only under the convention that the middle plus one period
    of each tail is representative.  Windowed inputs never yield CERTIFIED_NO.
    """
    report = MinimalityReport()
    exact = not _is_windowed(C) and not _is_windowed(W)
    if exact:
        C, W = as_periodic(C), as_periodic(W)
        cov = is_complement(C, W)
        if cov.status is Status.CERTIFIED_NO:
            report.overall = Verdict(Status.CERTIFIED_NO, witness=cov.witness,
                                     note=f"not a complement: {cov.witness} uncovered")
            return report
    else:
        # coverage is required on the target (the probe window when given)
        cov = covered_on_window(C, W, probe or w)
        if cov.status is not Status.CERTIFIED_YES:
            report.overall = Verdict(Status.UNKNOWN, witness=cov.witness, window=w, note=cov.note)
            return report

    pr = probe or _probe_range(C)
    probed = materialize(C, pr).members()
    redundant = None
    if exact:
        for c in probed:
            dep = _exact_dependent_set(C, W, c)
            if dep.is_empty:
                report.elements[c] = ElementStatus(False)
                if redundant is None:
                    redundant = c
                continue
            inside = materialize(dep, w).members()
            report.elements[c] = ElementStatus(bool(inside), inside[0] if inside else None)
    else:
        _, Ww, counts = _windowed_counts(C, W, w)
        for c in probed:
            deps = _windowed_dependents(Ww, counts, c, w)
            report.elements[c] = ElementStatus(bool(deps), deps[0] if deps else None)

    all_needed = all(e.necessary for e in report.elements.values())
    if redundant is not None:
        note = (f"exact: {redundant} has no dependent integer, so C minus {redundant} "
                "is still a complement")
        if not C.bounded_below or not W.bounded_below:
            note += "; an operand unbounded below re-supplies every representation"
        report.overall = Verdict(Status.CERTIFIED_NO, witness=redundant, note=note)
    elif exact and all_needed and as_periodic(C).is_finite:
        report.overall = Verdict(Status.CERTIFIED_YES, window=w,
                                 note="exact: every element of the finite set C has a dependent integer")
    elif exact and all_needed:
        report.overall = Verdict(
            Status.CERTIFIED_YES, window=w,
            note=(f"every element probed on {pr} (middle plus one period of each tail) has a "
                  "dependent integer; deeper tail elements are assumed to behave like their "
                  "residue-class representatives"))
    elif all_needed and report.elements:
        report.overall = Verdict(Status.CERTIFIED_YES, window=w,
                                 note=f"windowed: every probed element has a dependent integer in {w}")
    else:
        missing = [c for c, e in report.elements.items() if not e.necessary]
        note = (f"no dependent integer found in {w} for {len(missing)} probed element(s)"
                if missing else "nothing probed")
        if missing and not exact:
            note += ("; a window cannot show redundancy (e.g. a complement with infinitely many "
                     "negative elements can drop any single one)")
        report.overall = Verdict(Status.UNKNOWN, witness=missing[0] if missing else None,
                                 window=w, note=note)
    return report


def greedy_min_complement(G, target: Window) -> WindowSet:
    """A windowed minimal complement D of G: D + G covers target, every d needed.

    Scans the target downward adding ``z - pivot`` for each uncovered z
    (pivot = min G), then drops, in ascending order, every d whose removal
    keeps the target covered.
    """
    G = as_periodic(G)
    if G.is_empty:
        raise PreconditionError("G must be nonempty")
    T = len(target)
    if G.bounded_below:
        pivot = G.min()
    else:
        # no minimum: any member works as the reference point
        pivot = G.mid_lo - G.period + int(np.flatnonzero(G.member_array(G.mid_lo - G.period, G.period))[0])
    Gw = materialize(G, Window(pivot - T + 1, pivot + T - 1))
    offsets = (np.flatnonzero(Gw.bits) - (T - 1)).astype(np.int64)
    kept = kernels.greedy_cover(offsets, T)
    dwin = Window(target.lo - pivot, target.hi - pivot)
    return WindowSet.from_members((np.asarray(kept) + dwin.lo).tolist(), dwin)


def prune_redundant(D: WindowSet, G, target: Window) -> WindowSet:
    """One ascending pruning pass over D (the second phase of the greedy finder)."""
    G = as_periodic(G)
    Gw = materialize(G, Window(target.lo - D.hi, target.hi - D.lo))
    counts = rep_counts(D, Gw, target)
    kept = []
    for d in D.members():
        hit = Gw.shift(d).restrict(target).bits
        if np.all(counts[hit] >= 2):
            counts[hit] -= 1
        else:
            kept.append(d)
    return WindowSet.from_members(kept, D.window)


@dataclass
class GapStats:
    count: int
    max_gap: Optional[int]
    gap_histogram: dict
    complement_gap_histogram: dict


def gap_stats(W, w: Window) -> GapStats:
    """Gaps between consecutive members (and non-members) of W inside w."""
    X = materialize(W, w) if not _is_windowed(W) else W.restrict(w)
    ms = np.flatnonzero(X.bits)
    if len(ms) == 0:
        raise PreconditionError(f"W has no members in {w}")
    gaps = np.diff(ms)
    comp = np.diff(np.flatnonzero(~X.bits))
    return GapStats(
        count=len(ms),
        max_gap=int(gaps.max()) if len(gaps) else None,
        gap_histogram=dict(sorted(Counter(gaps.tolist()).items())),
        complement_gap_histogram=dict(sorted(Counter(comp.tolist()).items())),
    )
