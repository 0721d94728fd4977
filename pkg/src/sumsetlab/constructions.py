"""Builders taken from the existence proofs.

* :func:`thm_inherit_complement` - restrict a minimal complement of G to the
  residue classes S to obtain one for W = (nN + A) ∪ F ∪ G.
* :func:`thm_converse_extract` - recover a minimal complement of G from one of W.
* :func:`thm_finite_build_w` - for a finite C, build W with C a minimal complement of W.
* :func:`self_mac_check`, :func:`has_3ap` - sets that are minimal complements of themselves.
* :func:`prop11_generate`, :func:`ternary_fix` - the 3-AP-free W with W + W = Z.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._kernels import kernels
from .complements import (MinimalityReport, PreconditionError, Status, Verdict,
                          covered_on_window, greedy_min_complement, is_complement,
                          minimality_report)
from .core import (EPForm, PeriodicSet, as_periodic, difference, from_ep_form, restrict_to_residues,
                   sumset, translate, union)
from .modular import ResidueSet, check_S_sufficient, mod_project, mod_sumset
from .oracle import Window, WindowSet, covers, first_uncovered, materialize, window_sumset

# -- 3-term progressions and self-complements ----------------------------------


def has_3ap(X: WindowSet) -> Optional[tuple]:
    """Some (a-d, a, a+d) with d > 0 inside X (smallest center, then smallest d)."""
    c, d = kernels.find_3ap(X.bits)
    if c < 0:
        return None
    a = X.lo + int(c)
    return (a - int(d), a, a + int(d))


def ap_centers(members) -> set:
    """Members w of a finite set that are the middle of some 3-AP in it."""
    s = set(members)
    return {w for w in s for x in s if x < w and 2 * w - x in s}


def uniquely_doubled(members) -> set:
    """Members w whose double 2w has no representation x + y with x != y."""
    s = sorted(set(members))
    reps = {}
    for i, x in enumerate(s):
        for y in s[i + 1:]:
            reps[x + y] = True
    return {w for w in s if 2 * w not in reps}


def self_mac_check(W, w: Window) -> Verdict:
    """Is W a minimal additive complement of itself?

    Equivalent to W + W = Z with no 3-term progression in W.  A WindowSet is
    checked on ``w`` only; a periodic W is decided exactly (an infinite
    periodic tail always holds a progression, a finite set never covers Z).
    """
    if isinstance(W, WindowSet):
        ap = has_3ap(W)
        if ap is not None:
            return Verdict(Status.CERTIFIED_NO, witness=ap, window=w,
                           note=f"3-term progression {ap}: {ap[1] * 2} = {ap[0]} + {ap[2]} as well")
        total = window_sumset(W, W, w)
        miss = np.flatnonzero(~total.bits)
        if len(miss):
            z = w.lo + int(miss[0])
            return Verdict(Status.CERTIFIED_NO, witness=z, window=w,
                           note=f"windowed: {z} is not in W + W for the members in {W.window}")
        return Verdict(Status.CERTIFIED_YES, window=w,
                       note=f"windowed: no 3-term progression among the members in {W.window} "
                            f"and W + W covers {w}")
    W = as_periodic(W)
    if W.high_res:
        r = min(W.high_res)
        a = W.mid_hi + (r - W.mid_hi) % W.period
        ap = (a, a + W.period, a + 2 * W.period)
        return Verdict(Status.CERTIFIED_NO, witness=ap, note=f"exact: periodic tail holds {ap}")
    if W.low_res:
        r = min(W.low_res)
        a = W.mid_lo - 1 - (W.mid_lo - 1 - r) % W.period
        ap = (a - 2 * W.period, a - W.period, a)
        return Verdict(Status.CERTIFIED_NO, witness=ap, note=f"exact: periodic tail holds {ap}")
    if W.is_empty:
        return Verdict(Status.CERTIFIED_NO, witness=0, note="exact: W is empty")
    X = materialize(W, Window(W.mid_lo, W.mid_hi - 1))
    ap = has_3ap(X)
    if ap is not None:
        return Verdict(Status.CERTIFIED_NO, witness=ap,
                       note=f"exact: 3-term progression {ap}: {ap[1] * 2} = {ap[0]} + {ap[2]} as well")
    cov = is_complement(W, W)
    return Verdict(Status.CERTIFIED_NO, witness=cov.witness,
                   note=f"exact: {cov.witness} is not in W + W (a finite set never covers Z)")


# -- ternary construction -------------------------------------------------------


def ternary_digits_01(limit: int) -> list[int]:
    """Nonnegative integers <= limit whose base-3 digits are all 0 or 1, ascending.

    The i-th such number is i written in binary and read in base 3.
    """
    out = []
    i = 0
    while True:
        a, p, b = 0, 1, i
        while b:
            if b & 1:
                a += p
            b >>= 1
            p *= 3
        if a > limit:
            return out
        out.append(a)
        i += 1


def in_digit_set(x: int) -> bool:
    """True iff x >= 0 has no digit 2 in base 3."""
    if x < 0:
        return False
    while x:
        if x % 3 == 2:
            return False
        x //= 3
    return True


def prop11_generate(limit: int) -> WindowSet:
    """W = 2A ∪ (-2A - 1) for A the 0/1-digit integers up to ``limit``.

    Returned on the window [-2*limit - 1, 2*limit].
    """
    if limit < 0:
        raise ValueError("limit must be nonnegative")
    A = np.asarray(ternary_digits_01(limit), dtype=np.int64)
    w = Window(-2 * limit - 1, 2 * limit)
    return WindowSet.from_members(np.concatenate([2 * A, -2 * A - 1]).tolist(), w)


@dataclass
class TernaryFix:
    z: int
    z_tilde: int
    added: list  # powers of 3, in the order they were added

    @property
    def difference(self) -> int:
        return self.z_tilde - self.z


def ternary_fix(z: int) -> TernaryFix:
    """Clear every base-3 digit 2 of z by adding single powers of 3, low digit first."""
    if z < 0:
        raise ValueError("z must be nonnegative")
    cur, j, added = z, 0, []
    while 3 ** j <= cur:
        if (cur // 3 ** j) % 3 == 2:
            cur += 3 ** j
            added.append(3 ** j)
        j += 1
    return TernaryFix(z, cur, added)


# -- finite C: building W --------------------------------------------------------


@dataclass
class FiniteBuild:
    C: tuple
    W: PeriodicSet
    k: int
    witnesses: dict          # c_i -> z_i
    steps: list              # z_1, ..., z_n in order
    prefill_cover: int       # W + C = (-inf, prefill_cover] before the fill
    verified: bool


def _least_missing(S: PeriodicSet, start: int) -> int:
    """Least integer >= start outside S (S must miss something above start)."""
    lo = max(start, S.mid_lo)
    span = S.mid_hi - lo + S.period + 1
    arr = S.member_array(lo, max(span, 1))
    miss = np.flatnonzero(~arr)
    if len(miss) == 0:
        raise ValueError("set contains every integer above start")
    first = lo + int(miss[0])
    if start < S.mid_lo:
        below = S.member_array(start, S.mid_lo - start)
        m2 = np.flatnonzero(~below)
        if len(m2):
            return start + int(m2[0])
    return first


def thm_finite_build_w(C, fill_to: int) -> FiniteBuild:
    """W with C + W = Z and a recorded dependent integer z_i for every c_i.

    Starts from W = {z <= -c_n - 1}; step i adds z_i - c_i and the block
    [z_i + 1 - c_1, z_i + k + 1 - c_1] where z_i is the least integer not yet
    in W + C and k the largest gap of C.  Afterwards blocks of length k + 1
    are appended from the first safe position up to ``fill_to`` and the rest
    of the line above becomes a full tail.
    """
    cs = sorted({int(c) for c in C})
    if not cs:
        raise PreconditionError("C must be nonempty")
    c1, cn = cs[0], cs[-1]
    k = max((b - a for a, b in zip(cs, cs[1:])), default=0)
    Cset = PeriodicSet.finite(cs)
    # z <= -c_n - 1
    W = PeriodicSet(1, {0}, (), -cn, -cn, ())
    steps = []
    for ci in cs:
        # W + C always contains (-inf, -1], the initial tail shifted by c_n
        z = _least_missing(sumset(W, Cset), -1)
        steps.append(z)
        W = union(W, PeriodicSet.finite([z - ci]))
        W = union(W, PeriodicSet.interval(z + 1 - c1, z + k + 1 - c1))
    top = steps[-1] + cn + k + 1 - c1
    if fill_to < top:
        raise PreconditionError(f"fill_to must be at least {top}, the coverage reached by the construction")
    s = top + 1 - c1
    while s + c1 <= fill_to:
        W = union(W, PeriodicSet.interval(s, s + k))
        s += k + 1
    W = union(W, PeriodicSet(1, (), {0}, s, s, ()))
    witnesses = dict(zip(cs, steps))
    verified = all(
        z not in sumset(PeriodicSet.finite([c for c in cs if c != ci]), W) and (z - ci) in W
        for ci, z in witnesses.items()
    ) and is_complement(Cset, W).status is Status.CERTIFIED_YES
    return FiniteBuild(tuple(cs), W, k, witnesses, steps, top, verified)


# -- inheritance: G's complement restricted to S ------------------------------------


@dataclass
class InheritResult:
    d_prime: object                 # WindowSet or PeriodicSet
    shift: int                      # translation bringing G into nN
    coverage: Optional[Verdict] = None
    report: Optional[MinimalityReport] = None
    note: str = ""


def _single_g_class(E: EPForm) -> int:
    g = E.g_residues()
    if len(g) != 1:
        raise PreconditionError(
            f"G must lie in a single residue class mod {E.n}; found {sorted(g) or 'none'}")
    return next(iter(g))


def _translated(E: EPForm, t: int) -> EPForm:
    return EPForm(E.n, [a + t for a in E.A], [f + t for f in E.F], translate(E.G, t))


def _restrict(D, n: int, S: ResidueSet):
    if isinstance(D, WindowSet):
        z = np.arange(D.lo, D.hi + 1)
        keep = np.isin(z % n, sorted(S.members))
        return WindowSet(D.window, D.bits & keep)
    return restrict_to_residues(as_periodic(D), n, S)


def _shift(D, k: int):
    return D.shift(k) if isinstance(D, WindowSet) else translate(as_periodic(D), k)


def thm_inherit_complement(E: EPForm, S: ResidueSet, D, window: Optional[Window] = None,
                           *, witness_window: Optional[Window] = None) -> InheritResult:
    """D' = D ∩ {z : z mod n in S}, a minimal complement of W built from one of G.

    ``D`` is a minimal complement of G (a PeriodicSet, or a WindowSet standing
    in for one).  With ``window``, D' + W is checked to cover it and every
    element of D' in it gets a dependent-integer witness (searched on
    ``witness_window``, default ``window``).
    """
    n = E.n
    if S.modulus != n:
        raise PreconditionError(f"S has modulus {S.modulus}, expected {n}")
    _single_g_class(E)
    if not check_S_sufficient(E, S):
        raise PreconditionError(f"S = {S} fails the sufficient conditions for this W")
    shift = -E.G.min()
    Et = _translated(E, shift)
    assert Et.G.min() >= 0 and Et.g_residues() == {0}
    # frame where G ⊆ nN: D - shift complements G + shift, S moves by -shift
    Dt = _shift(D, -shift)
    St = ResidueSet.of(n, [s - shift for s in S])
    for s in St:
        if isinstance(Dt, WindowSet):
            cls = [d for d in Dt.members() if d % n == s]
            need = None if window is None else window.lo - shift - max(Et.A)
            if not cls or (need is not None and min(cls) > need):
                raise PreconditionError(
                    f"D has no elements far enough down in residue class {(s + shift) % n}")
        else:
            low_classes = mod_project(_low_tail(Dt), n)
            if s not in low_classes:
                raise PreconditionError(
                    f"D must have infinitely many negative elements in residue class {(s + shift) % n}")
    d_prime = _shift(_restrict(Dt, n, St), shift)
    result = InheritResult(d_prime, shift)
    if window is not None:
        W = from_ep_form(E)
        if isinstance(d_prime, WindowSet):
            result.coverage = covered_on_window(d_prime, W, window)
        else:
            result.coverage = is_complement(d_prime, W)
        result.report = minimality_report(d_prime, W, witness_window or window, probe=window)
    return result


def _low_tail(S: PeriodicSet) -> PeriodicSet:
    return PeriodicSet(S.period, S.low_res, (), S.mid_lo, S.mid_lo, ())


def inherit_margin(E: EPForm) -> int:
    """How far below a target window the greedy complement of G must reach."""
    G = E.G
    spread = (G.max() - G.min()) if G.bounded_above else 2 * G.period
    return max(0, max(E.A) - G.min()) + spread + 2 * E.n


def inherit_pipeline(E: EPForm, S: ResidueSet, window: Window) -> tuple[WindowSet, InheritResult]:
    """Greedy windowed minimal complement D of G, then D' = D ∩ S-classes, certified on window."""
    ext = Window(window.lo - inherit_margin(E), window.hi)
    D = greedy_min_complement(E.G, ext)
    return D, thm_inherit_complement(E, S, D, window, witness_window=ext)


def lift_below(X: WindowSet, n: int, residues, cut: Optional[int] = None) -> PeriodicSet:
    """Members of X at or above ``cut`` plus every z < cut with z mod n in ``residues``.

    Turns a windowed complement into a periodic set whose infinitely many
    negative elements are explicit.
    """
    cut = X.lo if cut is None else cut
    res = sorted(getattr(residues, "members", residues))
    mid = [m for m in X.members() if m >= cut]
    hi = max(mid) + 1 if mid else cut
    return PeriodicSet(n, [r % n for r in res], (), cut, hi, mid)


# -- converse: a complement of G from one of W ------------------------------------


@dataclass
class ConverseResult:
    D: PeriodicSet
    case: int
    residue: int               # i, in the frame where G ⊆ nN
    shift: int
    m: Optional[int] = None     # case 2 threshold (translated frame)
    added: list = field(default_factory=list)
    coverage: Optional[Verdict] = None
    report: Optional[MinimalityReport] = None
    note: str = ""


def thm_converse_extract(E: EPForm, C: PeriodicSet, w: Window) -> ConverseResult:
    """A windowed minimal complement of G read off a minimal complement C of W.

    C splits into C1 (residue classes mod n holding infinitely many negative
    elements, read exactly off the low zone) and C2.  If some class i is
    missed by both A + C1 and F + C2, the answer is the union of the n
    translates C1,i + j.  Otherwise i is a class outside A + C1; C1,i is
    extended by z - min G for each z above m = min((F + C2 + nN) ∩ (i + nZ))
    missing from G + C1,i (up to w.hi), and then translated the same way.
    """
    C = as_periodic(C)
    n = E.n
    _single_g_class(E)
    W = from_ep_form(E)
    total = materialize(sumset(C, W), w)
    if not covers(total, w):
        raise PreconditionError(f"C + W misses {first_uncovered(total, w)} in {w}")

    shift = -E.G.min()
    Et = _translated(E, shift)
    Ct = translate(C, -shift)
    Gt = Et.G
    low_classes = mod_project(_low_tail(Ct), n)
    C1 = restrict_to_residues(Ct, n, low_classes)
    C2 = difference(Ct, C1)
    A_mod = ResidueSet.of(n, Et.A)
    R1 = mod_sumset(A_mod, low_classes)
    R2 = mod_sumset(ResidueSet.of(n, Et.F), mod_project(C2, n))
    if R1.is_full():
        raise PreconditionError(
            "A + C1 meets every residue class, so (nN + A) + C1 = Z and C cannot be minimal")
    notes = []
    uncovered = ResidueSet.full(n) - (R1 | R2)
    m = None
    added = []
    if len(uncovered):
        case = 1
        cands = [r for r in uncovered if r in low_classes]
        if not cands:
            raise PreconditionError(
                f"no residue class among {uncovered} holds infinitely many negative elements of C")
        i = cands[0]
        Ci = restrict_to_residues(C1, n, [i])
    else:
        case = 2
        cands = [r for r in range(n) if r not in R1 and r in low_classes]
        if not cands:
            raise PreconditionError("no residue class outside A + C1 meets G + C1")
        i = cands[0]
        Ci = restrict_to_residues(C1, n, [i])
        upper = sumset(sumset(PeriodicSet.finite(Et.F), C2), PeriodicSet.progressions_from(n, [0]))
        m = restrict_to_residues(upper, n, [i]).min()
        g = Gt.min()
        cover = sumset(Gt, Ci)
        below = [z for z in range(_first_in_class(w.lo, i, n), min(m, w.hi + 1), n) if z not in cover]
        if below:
            notes.append(f"G + C1,i misses {below[0]} below m = {m} on the window")
        else:
            notes.append(f"G + C1,i contains every integer of class {i} below m = {m} on the window "
                         "(assumed beyond it)")
        z = _first_in_class(m + 1, i, n)
        while z <= w.hi:
            if z not in cover:
                Ci = union(Ci, PeriodicSet.finite([z - g]))
                cover = union(cover, translate(Gt, z - g))
                added.append(z - g + shift)
            z += n
    Dt = PeriodicSet.empty()
    for j in range(n):
        Dt = union(Dt, translate(Ci, j))
    D = translate(Dt, shift)
    result = ConverseResult(D, case, i, shift, m, added, note="; ".join(notes))

    # certificate on w: coverage, and witnesses for the elements of D in w
    G = E.G
    if G.bounded_above:
        reach = Window(w.lo - G.max(), w.hi - G.min())
        Dw = materialize(D, reach)
        wit = w.pad(G.max() - G.min() + n)
        result.coverage = covered_on_window(Dw, G, w)
        result.report = minimality_report(Dw, G, wit, probe=w)
    else:
        result.coverage = covered_on_window(materialize(D, w.pad(len(w))), G, w)
        notes.append("G is infinite; witnesses not searched")
        result.note = "; ".join(notes)
    return result


def _first_in_class(start: int, i: int, n: int) -> int:
    return start + (i - start) % n
