"""Residue-class arithmetic in Z/nZ and exhaustive search for admissible S."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from ._kernels import kernels
from .core import EPForm, PeriodicSet

MAX_SEARCH_MODULUS = 20


@dataclass(frozen=True)
class ResidueSet:
    """Subset of Z/nZ stored as an n-bit mask (bit r set iff r is a member)."""

    modulus: int
    mask: int = 0

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if self.mask >> self.modulus:
            raise ValueError(f"mask {self.mask:#b} has bits beyond modulus {self.modulus}")

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> "ResidueSet":
        m = 0
        for r in members:
            m |= 1 << (int(r) % n)
        return cls(n, m)

    @classmethod
    def full(cls, n: int) -> "ResidueSet":
        return cls(n, (1 << n) - 1)

    @property
    def members(self) -> frozenset:
        return frozenset(r for r in range(self.modulus) if (self.mask >> r) & 1)

    def __contains__(self, r):
        return bool((self.mask >> (r % self.modulus)) & 1)

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self):
        return bin(self.mask).count("1")

    def is_full(self) -> bool:
        return self.mask == (1 << self.modulus) - 1

    def rotate(self, k: int) -> "ResidueSet":
        """The translate R + k."""
        n = self.modulus
        k %= n
        if k == 0:
            return self
        full = (1 << n) - 1
        return ResidueSet(n, ((self.mask << k) | (self.mask >> (n - k))) & full)

    def __or__(self, other):
        _same_modulus(self, other)
        return ResidueSet(self.modulus, self.mask | other.mask)

    def __and__(self, other):
        _same_modulus(self, other)
        return ResidueSet(self.modulus, self.mask & other.mask)

    def __sub__(self, other):
        _same_modulus(self, other)
        return ResidueSet(self.modulus, self.mask & ~other.mask)

    def __str__(self):
        return "{" + ",".join(map(str, self)) + "}"


def _same_modulus(a: ResidueSet, b: ResidueSet) -> None:
    if a.modulus != b.modulus:
        raise ValueError(f"modulus mismatch: {a.modulus} vs {b.modulus}")


def mod_project(S, n: int) -> ResidueSet:
    """Residues mod n occupied anywhere in S (PeriodicSet or finite iterable)."""
    if n < 1:
        raise ValueError("n must be positive")
    if not isinstance(S, PeriodicSet):
        return ResidueSet.of(n, S)
    if S.is_empty:
        return ResidueSet(n)
    L = S.period * n // math.gcd(S.period, n)
    lo = S.mid_lo - L
    arr = S.member_array(lo, S.mid_hi - S.mid_lo + 2 * L)
    return ResidueSet.of(n, {(lo + int(i)) % n for i in np.flatnonzero(arr)})


def mod_sumset(R1: ResidueSet, R2: ResidueSet) -> ResidueSet:
    _same_modulus(R1, R2)
    out = ResidueSet(R1.modulus)
    for r in R1:
        out = out | R2.rotate(r)
    return out


def _pattern(E: EPForm):
    n = E.n
    return (n, ResidueSet.of(n, E.w_residues()), ResidueSet.of(n, E.a_residues()),
            ResidueSet.of(n, E.g_residues()))


def check_conditions(n: int, W: ResidueSet, A: ResidueSet, G: ResidueSet,
                     S: ResidueSet, theorem: str) -> bool:
    """Direct evaluation of the two admissibility conditions for one S.

    ``theorem`` is ``"sufficient"`` (condition (ii) against (S minus s) + W)
    or ``"necessary"`` (against S + A).
    """
    if S.modulus != n:
        raise ValueError(f"S has modulus {S.modulus}, expected {n}")
    if not mod_sumset(S, W).is_full():
        return False
    for s in S:
        if theorem == "sufficient":
            blocked = mod_sumset(S - ResidueSet.of(n, [s]), W)
        elif theorem == "necessary":
            blocked = mod_sumset(S, A)
        else:
            raise ValueError(f"theorem must be 'necessary' or 'sufficient', got {theorem!r}")
        if not any((s + g) % n not in blocked for g in G):
            return False
    return True


def check_S_sufficient(E: EPForm, S: ResidueSet) -> bool:
    n, W, A, G = _pattern(E)
    return check_conditions(n, W, A, G, S, "sufficient")


def check_S_necessary(E: EPForm, S: ResidueSet) -> bool:
    n, W, A, G = _pattern(E)
    return check_conditions(n, W, A, G, S, "necessary")


def search_pattern(n: int, W: ResidueSet, A: ResidueSet, G: ResidueSet, theorem: str,
                   *, max_modulus: int = MAX_SEARCH_MODULUS) -> list[ResidueSet]:
    """Every admissible S for the residue pattern, ascending by bitmask."""
    if theorem not in ("sufficient", "necessary"):
        raise ValueError(f"theorem must be 'necessary' or 'sufficient', got {theorem!r}")
    if n > max_modulus:
        raise ValueError(f"modulus {n} exceeds exhaustive-search cap {max_modulus}")
    masks = kernels.search_residue_subsets(n, W.mask, A.mask, G.mask, theorem == "sufficient")
    return [ResidueSet(n, int(m)) for m in masks]


def search_S_sufficient(E: EPForm, **kw) -> list[ResidueSet]:
    n, W, A, G = _pattern(E)
    return search_pattern(n, W, A, G, "sufficient", **kw)


def search_S_necessary(E: EPForm, **kw) -> list[ResidueSet]:
    n, W, A, G = _pattern(E)
    return search_pattern(n, W, A, G, "necessary", **kw)
