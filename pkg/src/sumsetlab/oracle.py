"""Brute-force membership over bounded windows.

This is the ground truth the periodic code is checked against, and the only
representation for sets without periodic structure (the ternary construction,
greedy complements).
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from ._kernels import kernels
from .core import PeriodicSet, ResourceError

DEFAULT_WINDOW_CAP = 10 ** 6


def window_cap() -> int:
    return int(os.environ.get("SUMSETLAB_WINDOW_CAP", DEFAULT_WINDOW_CAP))


@dataclass(frozen=True)
class Window:
    """Closed integer interval [lo, hi]."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"window lo {self.lo} > hi {self.hi}")

    def __len__(self):
        return self.hi - self.lo + 1

    def __contains__(self, z):
        return self.lo <= z <= self.hi

    def pad(self, k: int) -> "Window":
        return Window(self.lo - k, self.hi + k)

    def __str__(self):
        return f"{self.lo}..{self.hi}"

    @classmethod
    def parse(cls, text: str) -> "Window":
        lo, sep, hi = text.partition("..")
        if not sep:
            raise ValueError(f"window must look like LO..HI, got {text!r}")
        return cls(int(lo), int(hi))


@dataclass(frozen=True, eq=False)
class WindowSet:
    """Explicit membership over a window; ``bits[i]`` is membership of ``lo + i``."""

    window: Window
    bits: np.ndarray

    def __post_init__(self):
        bits = np.asarray(self.bits, dtype=np.bool_)
        if len(bits) != len(self.window):
            raise ValueError(f"bits length {len(bits)} != window length {len(self.window)}")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_members(cls, members: Iterable[int], window: Window) -> "WindowSet":
        bits = np.zeros(len(window), dtype=np.bool_)
        idx = [m - window.lo for m in members if m in window]
        if idx:
            bits[idx] = True
        return cls(window, bits)

    @property
    def lo(self):
        return self.window.lo

    @property
    def hi(self):
        return self.window.hi

    def members(self) -> list[int]:
        return [self.lo + int(i) for i in np.flatnonzero(self.bits)]

    def __contains__(self, z):
        return z in self.window and bool(self.bits[z - self.lo])

    def __len__(self):
        return int(np.count_nonzero(self.bits))

    def __repr__(self):
        ms = self.members()
        shown = ", ".join(map(str, ms[:12])) + (", ..." if len(ms) > 12 else "")
        return f"WindowSet([{self.lo}, {self.hi}]: {{{shown}}})"

    def restrict(self, w: Window) -> "WindowSet":
        """Same membership viewed on ``w`` (False outside the original window)."""
        return WindowSet(w, _view(self, w.lo, len(w)))

    def shift(self, k: int) -> "WindowSet":
        return WindowSet(Window(self.lo + k, self.hi + k), self.bits)

    def negate(self) -> "WindowSet":
        return WindowSet(Window(-self.hi, -self.lo), self.bits[::-1].copy())


def _view(X: WindowSet, lo: int, length: int) -> np.ndarray:
    out = np.zeros(length, dtype=np.bool_)
    a = max(lo, X.lo)
    b = min(lo + length - 1, X.hi)
    if a <= b:
        out[a - lo:b - lo + 1] = X.bits[a - X.lo:b - X.lo + 1]
    return out


def _check_span(w: Window) -> None:
    if len(w) > window_cap():
        raise ResourceError(f"window span {len(w)} exceeds cap {window_cap()}")


def materialize(S, w: Window) -> WindowSet:
    """Membership of a PeriodicSet (or WindowSet, or finite iterable) on ``w``."""
    _check_span(w)
    if isinstance(S, WindowSet):
        return S.restrict(w)
    if not isinstance(S, PeriodicSet):
        return WindowSet.from_members(S, w)
    return WindowSet(w, S.member_array(w.lo, len(w)))


def window_sumset(X: WindowSet, Y: WindowSet, target: Window) -> WindowSet:
    """{x + y} ∩ target for the members visible in X and Y."""
    _check_span(target)
    full = kernels.sumset_bits(X.bits, Y.bits)
    base = X.lo + Y.lo
    return WindowSet(target, _slice(full, base, target))


def rep_counts(X: WindowSet, Y: WindowSet, target: Window) -> np.ndarray:
    """Number of x in X with z - x in Y, for each z in target."""
    _check_span(target)
    full = kernels.rep_counts(X.bits, Y.bits)
    base = X.lo + Y.lo
    return _slice(full, base, target)


def _slice(full: np.ndarray, base: int, target: Window) -> np.ndarray:
    out = np.zeros(len(target), dtype=full.dtype)
    a = max(target.lo, base)
    b = min(target.hi, base + len(full) - 1)
    if a <= b:
        out[a - target.lo:b - target.lo + 1] = full[a - base:b - base + 1]
    return out


def covers(X: WindowSet, w: Window) -> bool:
    return bool(np.all(_view(X, w.lo, len(w))))


def first_uncovered(X: WindowSet, w: Window):
    """Smallest z in ``w`` missing from X, or None."""
    miss = np.flatnonzero(~_view(X, w.lo, len(w)))
    return None if len(miss) == 0 else w.lo + int(miss[0])


def equal(X: WindowSet, Y: WindowSet) -> bool:
    if X.window != Y.window:
        raise ValueError(f"window mismatch: {X.window} vs {Y.window}")
    return bool(np.array_equal(X.bits, Y.bits))


def combine(op: str, X: WindowSet, Y: WindowSet) -> WindowSet:
    """Pointwise boolean op on the union window of X and Y."""
    w = Window(min(X.lo, Y.lo), max(X.hi, Y.hi))
    a = _view(X, w.lo, len(w))
    b = _view(Y, w.lo, len(w))
    if op == "union":
        return WindowSet(w, a | b)
    if op == "intersect":
        return WindowSet(w, a & b)
    if op == "difference":
        return WindowSet(w, a & ~b)
    raise ValueError(f"unknown boolean op {op!r}")


def sumset_pad(*sets) -> int:
    """Padding that mirrors the periodic sumset stabilization bound.

    Twice the lcm of the periods plus the combined middle diameters.
    """
    L = 1
    diam = 0
    for S in sets:
        if isinstance(S, PeriodicSet):
            L = L * S.period // np.gcd(L, S.period)
            diam += S.mid_hi - S.mid_lo
    return int(2 * L + diam)
