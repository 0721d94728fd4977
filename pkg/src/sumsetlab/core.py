"""Exact three-zone representation of doubly eventually periodic integer sets.

A :class:`PeriodicSet` is described by a period ``n``, a residue pattern that
governs every ``z < mid_lo``, another that governs every ``z >= mid_hi``, and
an explicit finite list of members in ``[mid_lo, mid_hi)``.  Instances are
always stored in canonical form (minimal period, tight thresholds), so ``==``
is set equality.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Union

import numpy as np

from ._kernels import kernels

DEFAULT_LCM_CAP = 10080


class ResourceError(RuntimeError):
    """A period or window exceeds a configured cap."""


class EPFormError(ValueError):
    """An EPForm constraint does not hold."""


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _check_cap(period: int, cap: int | None) -> None:
    cap = DEFAULT_LCM_CAP if cap is None else cap
    if period > cap:
        raise ResourceError(f"combined period {period} exceeds lcm cap {cap}")


def _lift(res: frozenset, n: int, big: int) -> np.ndarray:
    """Boolean pattern of length ``big`` (a multiple of n) for residues mod n."""
    pat = np.zeros(n, dtype=np.bool_)
    if res:
        pat[list(res)] = True
    return np.tile(pat, big // n)


def _min_period(pat_lo: np.ndarray, pat_hi: np.ndarray) -> int:
    n = len(pat_lo)
    for p in range(1, n + 1):
        if n % p:
            continue
        if (np.array_equal(pat_lo, np.roll(pat_lo, p))
                and np.array_equal(pat_hi, np.roll(pat_hi, p))):
            return p
    return n


def _raw_member_array(period, low, high, mid_lo, mid_hi, mid, lo, length):
    """Membership on [lo, lo+length) for a (possibly non-canonical) description."""
    off = np.arange(length, dtype=np.int64)
    res = (lo % period + off) % period
    low_pat = np.zeros(period, dtype=np.bool_)
    high_pat = np.zeros(period, dtype=np.bool_)
    if low:
        low_pat[list(low)] = True
    if high:
        high_pat[list(high)] = True
    out = np.where(off < mid_lo - lo, low_pat[res], False)
    out |= np.where(off >= mid_hi - lo, high_pat[res], False)
    idx = [m - lo for m in mid if 0 <= m - lo < length]
    if idx:
        out[idx] = True
    return out


def canonicalize(period, low_res, high_res, mid_lo, mid_hi, mid):
    """Return the canonical field tuple describing the same set.

    Canonical means: minimal common period of the two tail patterns, and
    thresholds at the exact points where the tails stop describing the set.
    A purely periodic set gets ``mid_lo = mid_hi = 0``; when the tails overlap
    on a stretch shorter than one period both thresholds sit at the lower end.
    """
    low_pat = _lift(frozenset(low_res), period, period)
    high_pat = _lift(frozenset(high_res), period, period)
    p = _min_period(low_pat, high_pat)
    low = frozenset(int(r) for r in np.flatnonzero(low_pat[:p]))
    high = frozenset(int(r) for r in np.flatnonzero(high_pat[:p]))
    # scan one extra period on each side of the stated middle
    lo = mid_lo - p
    length = mid_hi - mid_lo + 2 * p
    member = _raw_member_array(period, low_res, high_res, mid_lo, mid_hi, mid, lo, length)
    res = (lo % p + np.arange(length, dtype=np.int64)) % p
    lp = _lift(low, p, p)[res]
    hp = _lift(high, p, p)[res]
    high_bad = np.flatnonzero(member != hp)
    low_bad = np.flatnonzero(member != lp)
    if low == high:
        if len(high_bad) == 0:
            return p, low, high, 0, 0, frozenset()
        new_lo = lo + int(high_bad[0])
        new_hi = lo + int(high_bad[-1]) + 1
    else:
        # both patterns differ somewhere in every period, so the scans terminate
        new_hi = lo + int(high_bad[-1]) + 1
        new_lo = lo + int(low_bad[0])
        if new_lo > new_hi:
            new_lo = new_hi
    sel = member[new_lo - lo:new_hi - lo]
    mid_new = frozenset(new_lo + int(i) for i in np.flatnonzero(sel))
    return p, low, high, new_lo, new_hi, mid_new


@dataclass(frozen=True)
class PeriodicSet:
    """Integer set periodic below ``mid_lo``, periodic from ``mid_hi`` on, explicit between."""

    period: int
    low_res: frozenset = field(default_factory=frozenset)
    high_res: frozenset = field(default_factory=frozenset)
    mid_lo: int = 0
    mid_hi: int = 0
    mid: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        n = int(self.period)
        if n < 1:
            raise ValueError(f"period must be positive, got {n}")
        low = frozenset(int(r) for r in self.low_res)
        high = frozenset(int(r) for r in self.high_res)
        mid = frozenset(int(z) for z in self.mid)
        lo, hi = int(self.mid_lo), int(self.mid_hi)
        if lo > hi:
            raise ValueError(f"mid_lo {lo} > mid_hi {hi}")
        if any(not 0 <= r < n for r in low | high):
            raise ValueError(f"residues must lie in [0, {n})")
        if any(not lo <= z < hi for z in mid):
            raise ValueError(f"middle members must lie in [{lo}, {hi})")
        canon = canonicalize(n, low, high, lo, hi, mid)
        for name, value in zip(("period", "low_res", "high_res", "mid_lo", "mid_hi", "mid"), canon):
            object.__setattr__(self, name, value)

    # -- constructors -----------------------------------------------------

    @classmethod
    def empty(cls) -> "PeriodicSet":
        return cls(1)

    @classmethod
    def integers(cls) -> "PeriodicSet":
        return cls(1, {0}, {0})

    @classmethod
    def naturals(cls) -> "PeriodicSet":
        """{0, 1, 2, ...}"""
        return cls(1, (), {0}, 0, 0, ())

    @classmethod
    def finite(cls, members: Iterable[int]) -> "PeriodicSet":
        ms = sorted({int(m) for m in members})
        if not ms:
            return cls.empty()
        return cls(1, (), (), ms[0], ms[-1] + 1, ms)

    @classmethod
    def interval(cls, lo: int, hi: int) -> "PeriodicSet":
        """Closed interval [lo, hi]."""
        if hi < lo:
            return cls.empty()
        return cls(1, (), (), lo, hi + 1, range(lo, hi + 1))

    @classmethod
    def residues(cls, n: int, rs: Iterable[int]) -> "PeriodicSet":
        """nZ + R."""
        rr = frozenset(int(r) % n for r in rs)
        return cls(n, rr, rr)

    @classmethod
    def progressions_from(cls, n: int, starts: Iterable[int]) -> "PeriodicSet":
        """nN + A = {a + n*k : a in A, k >= 0}."""
        starts = sorted({int(a) for a in starts})
        if not starts:
            return cls.empty()
        lo, hi = starts[0], starts[-1] + 1
        mid = {z for a in starts for z in range(a, hi, n)}
        return cls(n, (), {a % n for a in starts}, lo, hi, mid)

    # -- queries ----------------------------------------------------------

    def __contains__(self, z: int) -> bool:
        return member(self, z)

    def member_array(self, lo: int, length: int) -> np.ndarray:
        """Membership of lo, lo+1, ..., lo+length-1."""
        return _raw_member_array(self.period, self.low_res, self.high_res,
                                 self.mid_lo, self.mid_hi, self.mid, lo, length)

    @property
    def is_empty(self) -> bool:
        return not (self.low_res or self.high_res or self.mid)

    @property
    def is_finite(self) -> bool:
        return not (self.low_res or self.high_res)

    @property
    def bounded_below(self) -> bool:
        return not self.low_res

    @property
    def bounded_above(self) -> bool:
        return not self.high_res

    def min(self) -> int:
        """Smallest member; the set must be nonempty and bounded below."""
        if self.low_res or self.is_empty:
            raise ValueError("set has no minimum")
        if self.mid:
            return min(self.mid)
        return self.mid_hi + min((r - self.mid_hi) % self.period for r in self.high_res)

    def max(self) -> int:
        if self.high_res or self.is_empty:
            raise ValueError("set has no maximum")
        if self.mid:
            return max(self.mid)
        return self.mid_lo - 1 - min((self.mid_lo - 1 - r) % self.period for r in self.low_res)

    def elements(self) -> list[int]:
        """Members of a finite set, ascending."""
        if not self.is_finite:
            raise ValueError("set is infinite")
        return sorted(self.mid)

    def to_json(self) -> dict:
        return {
            "period": self.period,
            "low_res": sorted(self.low_res),
            "high_res": sorted(self.high_res),
            "mid_lo": self.mid_lo,
            "mid_hi": self.mid_hi,
            "mid": sorted(self.mid),
        }

    @classmethod
    def from_json(cls, d: dict) -> "PeriodicSet":
        return cls(d["period"], d["low_res"], d["high_res"], d["mid_lo"], d["mid_hi"], d["mid"])

    def __repr__(self):
        if self.is_finite:
            return f"PeriodicSet.finite({sorted(self.mid)})"
        return (f"PeriodicSet(period={self.period}, low_res={sorted(self.low_res)}, "
                f"high_res={sorted(self.high_res)}, mid_lo={self.mid_lo}, "
                f"mid_hi={self.mid_hi}, mid={sorted(self.mid)})")


SetLike = Union[PeriodicSet, Iterable[int]]


def as_periodic(s: SetLike) -> PeriodicSet:
    if isinstance(s, PeriodicSet):
        return s
    return PeriodicSet.finite(s)


# -- operations ---------------------------------------------------------------


def member(S: PeriodicSet, z: int) -> bool:
    if z < S.mid_lo:
        return z % S.period in S.low_res
    if z >= S.mid_hi:
        return z % S.period in S.high_res
    return z in S.mid


def boolean_combine(op: str, S: PeriodicSet, T: PeriodicSet, *, lcm_cap: int | None = None) -> PeriodicSet:
    """union / intersect / difference of two periodic sets."""
    fns = {
        "union": np.logical_or,
        "intersect": np.logical_and,
        "difference": lambda a, b: a & ~b,
    }
    if op not in fns:
        raise ValueError(f"unknown boolean op {op!r}")
    f = fns[op]
    L = _lcm(S.period, T.period)
    _check_cap(L, lcm_cap)
    low = f(_lift(S.low_res, S.period, L), _lift(T.low_res, T.period, L))
    high = f(_lift(S.high_res, S.period, L), _lift(T.high_res, T.period, L))
    lo = min(S.mid_lo, T.mid_lo)
    hi = max(S.mid_hi, T.mid_hi)
    m = f(S.member_array(lo, hi - lo), T.member_array(lo, hi - lo))
    return PeriodicSet(L, np.flatnonzero(low), np.flatnonzero(high), lo, hi,
                       [lo + int(i) for i in np.flatnonzero(m)])


def union(S, T, **kw):
    return boolean_combine("union", S, T, **kw)


def intersect(S, T, **kw):
    return boolean_combine("intersect", S, T, **kw)


def difference(S, T, **kw):
    return boolean_combine("difference", S, T, **kw)


def translate(S: PeriodicSet, k: int) -> PeriodicSet:
    n = S.period
    return PeriodicSet(n, {(r + k) % n for r in S.low_res}, {(r + k) % n for r in S.high_res},
                       S.mid_lo + k, S.mid_hi + k, {z + k for z in S.mid})


def negate(S: PeriodicSet) -> PeriodicSet:
    n = S.period
    return PeriodicSet(n, {(-r) % n for r in S.high_res}, {(-r) % n for r in S.low_res},
                       1 - S.mid_hi, 1 - S.mid_lo, {-z for z in S.mid})


_NEG = np.iinfo(np.int64).min // 4
_POS = np.iinfo(np.int64).max // 4
_RECENTER = 2 ** 40


def _class_profile(S: PeriodicSet, L: int):
    """Per class mod L: low-tail max, high-tail min, overall max/min (sentinels if unbounded/absent)."""
    c = np.arange(L, dtype=np.int64)
    low = _lift(S.low_res, S.period, L)
    high = _lift(S.high_res, S.period, L)
    low_max = np.where(low, S.mid_lo - 1 - ((S.mid_lo - 1 - c) % L), _NEG)
    high_min = np.where(high, S.mid_hi + ((c - S.mid_hi) % L), _POS)
    mid_max = np.full(L, _NEG, dtype=np.int64)
    mid_min = np.full(L, _POS, dtype=np.int64)
    if S.mid:
        m = np.fromiter(S.mid, dtype=np.int64, count=len(S.mid))
        np.maximum.at(mid_max, m % L, m)
        np.minimum.at(mid_min, m % L, m)
    occupied = low | high | (mid_max > _NEG)
    # max over a class that is unbounded above is +inf; same for min below
    any_max = np.where(high, _POS, np.maximum(low_max, mid_max))
    any_min = np.where(low, _NEG, np.minimum(high_min, mid_min))
    return low, high, low_max, high_min, any_max, any_min, occupied


def sumset(S: PeriodicSet, T: PeriodicSet, *, lcm_cap: int | None = None) -> PeriodicSet:
    """Exact S + T.

    The sum splits into tail-by-anything pieces, which are per-class rays
    (or whole classes when a tail meets an opposite tail), and the finite
    middle-by-middle piece, computed by bit convolution.
    """
    if S.is_empty or T.is_empty:
        return PeriodicSet.empty()
    if abs(S.mid_lo) + abs(T.mid_lo) > _RECENTER:
        # keep the int64 class arithmetic small; translation commutes with +
        a, b = S.mid_lo, T.mid_lo
        return translate(sumset(translate(S, -a), translate(T, -b), lcm_cap=lcm_cap), a + b)
    L = _lcm(S.period, T.period)
    _check_cap(L, lcm_cap)
    sl, sh, s_lowmax, s_highmin, s_max, s_min, s_occ = _class_profile(S, L)
    tl, th, t_lowmax, t_highmin, t_max, t_min, t_occ = _class_profile(T, L)

    c = np.arange(L)
    target = (c[:, None] + c[None, :]) % L          # class of r + q
    full = np.zeros(L, dtype=np.bool_)
    down = np.full(L, _NEG, dtype=np.int64)        # z <= down[c] in class c
    up = np.full(L, _POS, dtype=np.int64)          # z >= up[c] in class c

    def absorb_low(x_low, x_lowmax, y_occ, y_max, y_high):
        pair = x_low[:, None] & y_occ[None, :]
        both_inf = pair & y_high[None, :]
        full[target[both_inf]] = True
        ray = pair & ~y_high[None, :]
        bound = x_lowmax[:, None] + y_max[None, :]
        np.maximum.at(down, target[ray], bound[ray])

    def absorb_high(x_high, x_highmin, y_occ, y_min, y_low):
        pair = x_high[:, None] & y_occ[None, :]
        both_inf = pair & y_low[None, :]
        full[target[both_inf]] = True
        ray = pair & ~y_low[None, :]
        bound = x_highmin[:, None] + y_min[None, :]
        np.minimum.at(up, target[ray], bound[ray])

    absorb_low(sl, s_lowmax, t_occ, t_max, th)
    absorb_low(tl, t_lowmax, s_occ, s_max, sh)
    absorb_high(sh, s_highmin, t_occ, t_min, tl)
    absorb_high(th, t_highmin, s_occ, s_min, sl)

    fin_lo = S.mid_lo + T.mid_lo
    fin = np.zeros(0, dtype=np.bool_)
    if S.mid and T.mid:
        xs = S.member_array(S.mid_lo, S.mid_hi - S.mid_lo)
        ys = T.member_array(T.mid_lo, T.mid_hi - T.mid_lo)
        fin = kernels.sumset_bits(xs, ys)

    bounds = []
    has_down = (down > _NEG) & ~full
    has_up = (up < _POS) & ~full
    bounds += (down[has_down] + 1).tolist()
    bounds += up[has_up].tolist()
    nz = np.flatnonzero(fin)
    if len(nz):
        bounds += [fin_lo + int(nz[0]), fin_lo + int(nz[-1]) + 1]
    if not bounds:
        lo = hi = 0
    else:
        lo, hi = min(bounds), max(bounds)

    z = np.arange(lo, hi, dtype=np.int64)
    cls = z % L
    m = full[cls] | (z <= down[cls]) | (z >= up[cls])
    if len(fin):
        idx = z - fin_lo
        inside = (idx >= 0) & (idx < len(fin))
        m[inside] |= fin[idx[inside]]
    low_res = np.flatnonzero(full | (down > _NEG))
    high_res = np.flatnonzero(full | (up < _POS))
    return PeriodicSet(L, low_res, high_res, lo, hi, (z[m]).tolist())


def restrict_to_residues(S: PeriodicSet, n: int, R) -> PeriodicSet:
    """S ∩ {z : z mod n in R}; ``R`` is a ResidueSet or an iterable of residues."""
    members = getattr(R, "members", R)
    modulus = getattr(R, "modulus", n)
    if modulus != n:
        raise ValueError(f"residue set modulus {modulus} != {n}")
    return intersect(S, PeriodicSet.residues(n, members))


# -- EP normal form -----------------------------------------------------------


@dataclass(frozen=True)
class EPForm:
    """W = (nN + A) ∪ F ∪ G with F in A's classes and G outside them."""

    n: int
    A: tuple
    F: tuple = ()
    G: PeriodicSet = field(default_factory=PeriodicSet.empty)

    def __post_init__(self):
        n = int(self.n)
        A = tuple(sorted(int(a) for a in self.A))
        F = tuple(sorted({int(f) for f in self.F}))
        G = as_periodic(self.G)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "G", G)
        if n < 1:
            raise EPFormError("n must be positive")
        if not A:
            raise EPFormError("A must be nonempty")
        a_by_class = {}
        for a in A:
            if a % n in a_by_class:
                raise EPFormError(f"A has two elements in residue class {a % n} mod {n}")
            a_by_class[a % n] = a
        for f in F:
            if f % n not in a_by_class:
                raise EPFormError(f"(F mod n) ⊆ (A mod n) fails: {f} has residue {f % n}")
            if f >= a_by_class[f % n]:
                raise EPFormError(
                    f"F element {f} is not below the element {a_by_class[f % n]} of A in its class")
        if not G.bounded_below:
            raise EPFormError("G must be bounded below")
        g_classes = self.g_residues()
        clash = g_classes & set(a_by_class)
        if clash:
            raise EPFormError(f"(G mod n) ∩ (A mod n) must be empty; shared residues {sorted(clash)}")

    def a_residues(self) -> frozenset:
        return frozenset(a % self.n for a in self.A)

    def g_residues(self) -> frozenset:
        G = self.G
        if G.is_empty:
            return frozenset()
        L = _lcm(G.period, self.n)
        arr = G.member_array(G.mid_lo, G.mid_hi - G.mid_lo + L)
        return frozenset((G.mid_lo + int(i)) % self.n for i in np.flatnonzero(arr))

    def w_residues(self) -> frozenset:
        return self.a_residues() | frozenset(f % self.n for f in self.F) | self.g_residues()


def from_ep_form(E: EPForm) -> PeriodicSet:
    W = PeriodicSet.progressions_from(E.n, E.A)
    W = union(W, PeriodicSet.finite(E.F))
    return union(W, E.G)
