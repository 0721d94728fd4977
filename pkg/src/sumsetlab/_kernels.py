"""Hot inner loops over membership bit arrays.

Every kernel has two implementations with identical signatures: a numba
``@njit`` version and a pure-numpy version.  The numba path is used when
numba imports cleanly and ``SUMSETLAB_NO_NUMBA`` is unset (or ``0``);
otherwise the numpy path is selected.  Both are always importable as
``numpy_kernels`` / ``numba_kernels`` so tests and the benchmark can pit them
against each other.
"""
from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

# --------------------------------------------------------------------------
# numpy implementations
# --------------------------------------------------------------------------


def _np_sumset_bits(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """OR-convolution: out[k] = any(x[i] & y[k-i])."""
    if len(x) == 0 or len(y) == 0:
        return np.zeros(max(len(x) + len(y) - 1, 0), dtype=np.bool_)
    out = np.zeros(len(x) + len(y) - 1, dtype=np.bool_)
    # loop over the sparser operand
    if np.count_nonzero(x) > np.count_nonzero(y):
        x, y = y, x
    ny = len(y)
    for i in np.flatnonzero(x):
        out[i:i + ny] |= y
    return out


def _np_rep_counts(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Counting convolution: out[k] = #{i : x[i] & y[k-i]}."""
    if len(x) == 0 or len(y) == 0:
        return np.zeros(max(len(x) + len(y) - 1, 0), dtype=np.int64)
    out = np.zeros(len(x) + len(y) - 1, dtype=np.int64)
    if np.count_nonzero(x) > np.count_nonzero(y):
        x, y = y, x
    ny = len(y)
    yi = y.astype(np.int64)
    for i in np.flatnonzero(x):
        out[i:i + ny] += yi
    return out


def _np_find_3ap(bits: np.ndarray) -> tuple[int, int]:
    """First (center, d) with bits[c-d], bits[c], bits[c+d] set; (-1, -1) if none.

    Centers are scanned ascending, then d ascending.
    """
    n = len(bits)
    for c in np.flatnonzero(bits):
        m = min(c, n - 1 - c)
        if m == 0:
            continue
        left = bits[c - 1::-1][:m] if c > 0 else bits[:0]
        right = bits[c + 1:c + 1 + m]
        hit = np.flatnonzero(left & right)
        if len(hit):
            return int(c), int(hit[0]) + 1
    return -1, -1


def _np_greedy_cover(offsets: np.ndarray, length: int) -> np.ndarray:
    """Greedy cover of positions [0, length) by translates of ``offsets``.

    Scans descending; an uncovered position i adds translate i (covering
    i + e for each offset e).  Then prunes chosen translates in ascending
    order, dropping any whose removal leaves every position covered.
    Returns the kept translate positions, ascending.
    """
    offsets = np.unique(offsets)
    cov = np.zeros(length, dtype=np.int64)
    chosen = []
    for i in range(length - 1, -1, -1):
        if cov[i] == 0:
            pos = i + offsets
            pos = pos[(pos >= 0) & (pos < length)]
            cov[pos] += 1
            chosen.append(i)
    chosen.reverse()
    kept = []
    for i in chosen:
        pos = i + offsets
        pos = pos[(pos >= 0) & (pos < length)]
        if np.all(cov[pos] >= 2):
            cov[pos] -= 1
        else:
            kept.append(i)
    return np.asarray(kept, dtype=np.int64)


def _rot_np(masks: np.ndarray, r: int, n: int, full: int) -> np.ndarray:
    if r == 0:
        return masks
    return ((masks << r) | (masks >> (n - r))) & full


def _np_search_residue_subsets(n: int, w_mask: int, a_mask: int, g_mask: int,
                               sufficient: bool) -> np.ndarray:
    """All S ⊆ Z/n (as bitmasks, ascending) meeting the complement conditions.

    (i)  S + W = Z/n.
    (ii) every s in S has g in G with s+g outside
         (S minus s) + W  if ``sufficient``, else outside  S + A.
    """
    full = (1 << n) - 1
    masks = np.arange(1 << n, dtype=np.int64)
    w_rot = np.array([((w_mask << r) | (w_mask >> (n - r))) & full if r else w_mask
                      for r in range(n)], dtype=np.int64)
    a_rot = np.array([((a_mask << r) | (a_mask >> (n - r))) & full if r else a_mask
                      for r in range(n)], dtype=np.int64)
    # per-element contributions of S + W and S + A
    bit = [(masks >> r) & 1 for r in range(n)]
    sw = np.zeros_like(masks)
    sa = np.zeros_like(masks)
    for r in range(n):
        sw |= np.where(bit[r] == 1, w_rot[r], 0)
        sa |= np.where(bit[r] == 1, a_rot[r], 0)
    ok = (sw == full) & (masks != 0)
    for s in range(n):
        has_s = bit[s] == 1
        if sufficient:
            rest = np.zeros_like(masks)
            for r in range(n):
                if r != s:
                    rest |= np.where(bit[r] == 1, w_rot[r], 0)
            blocked = rest
        else:
            blocked = sa
        good = np.zeros(len(masks), dtype=np.bool_)
        for g in range(n):
            if (g_mask >> g) & 1:
                t = (s + g) % n
                good |= ((blocked >> t) & 1) == 0
        ok &= ~has_s | good
    return masks[ok]


numpy_kernels = SimpleNamespace(
    name="numpy",
    sumset_bits=_np_sumset_bits,
    rep_counts=_np_rep_counts,
    find_3ap=_np_find_3ap,
    greedy_cover=_np_greedy_cover,
    search_residue_subsets=_np_search_residue_subsets,
)

# --------------------------------------------------------------------------
# numba implementations
# --------------------------------------------------------------------------

numba_kernels = None
try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a hard dep, but stay usable
    njit = None

if njit is not None:

    @njit(cache=True)
    def _nb_sumset_bits(x, y):
        nx, ny = len(x), len(y)
        if nx == 0 or ny == 0:
            return np.zeros(max(nx + ny - 1, 0), dtype=np.bool_)
        out = np.zeros(nx + ny - 1, dtype=np.bool_)
        # one contiguous row OR per nonzero of the sparser operand
        if np.count_nonzero(x) > np.count_nonzero(y):
            x, y = y, x
            ny = len(y)
        for i in np.flatnonzero(x):
            row = out[i:i + ny]
            for j in range(ny):
                row[j] |= y[j]
        return out

    @njit(cache=True)
    def _nb_rep_counts(x, y):
        nx, ny = len(x), len(y)
        if nx == 0 or ny == 0:
            return np.zeros(max(nx + ny - 1, 0), dtype=np.int64)
        out = np.zeros(nx + ny - 1, dtype=np.int64)
        if np.count_nonzero(x) > np.count_nonzero(y):
            x, y = y, x
            ny = len(y)
        yi = y.astype(np.int64)
        for i in np.flatnonzero(x):
            row = out[i:i + ny]
            for j in range(ny):
                row[j] += yi[j]
        return out

    @njit(cache=True)
    def _nb_find_3ap(bits):
        n = len(bits)
        for c in range(n):
            if not bits[c]:
                continue
            m = min(c, n - 1 - c)
            for d in range(1, m + 1):
                if bits[c - d] and bits[c + d]:
                    return c, d
        return -1, -1

    @njit(cache=True)
    def _nb_greedy_cover(offsets, length):
        offsets = np.unique(offsets)
        cov = np.zeros(length, dtype=np.int64)
        chosen = np.empty(length, dtype=np.int64)
        k = 0
        for i in range(length - 1, -1, -1):
            if cov[i] == 0:
                for e in offsets:
                    p = i + e
                    if 0 <= p < length:
                        cov[p] += 1
                chosen[k] = i
                k += 1
        kept = np.empty(k, dtype=np.int64)
        m = 0
        for t in range(k - 1, -1, -1):
            i = chosen[t]
            removable = True
            for e in offsets:
                p = i + e
                if 0 <= p < length and cov[p] < 2:
                    removable = False
                    break
            if removable:
                for e in offsets:
                    p = i + e
                    if 0 <= p < length:
                        cov[p] -= 1
            else:
                kept[m] = i
                m += 1
        return kept[:m]

    @njit(cache=True)
    def _nb_rot(mask, r, n, full):
        if r == 0:
            return mask
        return ((mask << r) | (mask >> (n - r))) & full

    @njit(cache=True)
    def _nb_search_residue_subsets(n, w_mask, a_mask, g_mask, sufficient):
        full = (1 << n) - 1
        out = np.empty(1 << n, dtype=np.int64)
        k = 0
        for S in range(1, 1 << n):
            sw = 0
            sa = 0
            for r in range(n):
                if (S >> r) & 1:
                    sw |= _nb_rot(w_mask, r, n, full)
                    sa |= _nb_rot(a_mask, r, n, full)
            if sw != full:
                continue
            ok = True
            for s in range(n):
                if not (S >> s) & 1:
                    continue
                if sufficient:
                    blocked = 0
                    for r in range(n):
                        if r != s and (S >> r) & 1:
                            blocked |= _nb_rot(w_mask, r, n, full)
                else:
                    blocked = sa
                good = False
                for g in range(n):
                    if (g_mask >> g) & 1 and not (blocked >> ((s + g) % n)) & 1:
                        good = True
                        break
                if not good:
                    ok = False
                    break
            if ok:
                out[k] = S
                k += 1
        return out[:k]

    numba_kernels = SimpleNamespace(
        name="numba",
        sumset_bits=_nb_sumset_bits,
        rep_counts=_nb_rep_counts,
        find_3ap=_nb_find_3ap,
        greedy_cover=_nb_greedy_cover,
        search_residue_subsets=_nb_search_residue_subsets,
    )


def _select():
    flag = os.environ.get("SUMSETLAB_NO_NUMBA", "").strip().lower()
    if numba_kernels is None or flag not in ("", "0", "false", "no"):
        return numpy_kernels
    return numba_kernels


kernels = _select()
BACKEND = kernels.name
