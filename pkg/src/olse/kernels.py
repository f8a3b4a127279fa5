"""Numeric inner loops.

Every kernel exists twice: a ``numba`` version and a pure-numpy version with
the same signature and results.  The module-level names (``dp_table``,
``batch_masked_dp``, ``batch_separation_mis``) point at the backend chosen in
:mod:`olse._accel`; both variants stay importable so tests and the benchmark
can compare them directly.

List maps are passed in CSR form: ``ptr`` of length ``n_g + 1`` and ``idx``
holding the H-indices of every list back to back.
"""
import numpy as np

from ._accel import BACKEND, HAVE_NUMBA, njit

__all__ = [
    "BACKEND",
    "dp_table",
    "batch_masked_dp",
    "batch_separation_mis",
    "lists_to_csr",
    "edges_to_csr",
    "membership_matrix",
]


def lists_to_csr(lists):
    ptr = np.zeros(len(lists) + 1, dtype=np.int64)
    for i, lst in enumerate(lists):
        ptr[i + 1] = ptr[i] + len(lst)
    idx = np.fromiter((v for lst in lists for v in lst), dtype=np.int64, count=int(ptr[-1]))
    return ptr, idx


def edges_to_csr(n, edges):
    nbrs = [[] for _ in range(n)]
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    return lists_to_csr([sorted(x) for x in nbrs])


def membership_matrix(lists, n_h):
    member = np.zeros((len(lists), n_h), dtype=np.bool_)
    for u, lst in enumerate(lists):
        if lst:
            member[u, list(lst)] = True
    return member


# ---------------------------------------------------------------------------
# no-edge DP table


def dp_table_numpy(n_g, n_h, ptr, idx):
    t = np.zeros((n_g + 1, n_h + 1), dtype=np.int32)
    mark = np.zeros(n_h + 1, dtype=np.bool_)
    for i in range(1, n_g + 1):
        cols = idx[ptr[i - 1]:ptr[i]] + 1
        mark[cols] = True
        prev = t[i - 1]
        cand = prev.copy()
        cand[1:] = np.where(mark[1:], prev[:-1] + 1, prev[1:])
        # on a match 1 + T[i-1][j-1] already dominates T[i][j-1]
        np.maximum.accumulate(cand, out=t[i])
        mark[cols] = False
    return t


def _dp_table_loops(n_g, n_h, ptr, idx):
    t = np.zeros((n_g + 1, n_h + 1), dtype=np.int32)
    mark = np.zeros(n_h + 1, dtype=np.bool_)
    for i in range(1, n_g + 1):
        for p in range(ptr[i - 1], ptr[i]):
            mark[idx[p] + 1] = True
        for j in range(1, n_h + 1):
            if mark[j]:
                t[i, j] = t[i - 1, j - 1] + 1
            else:
                a = t[i, j - 1]
                b = t[i - 1, j]
                t[i, j] = a if a > b else b
        for p in range(ptr[i - 1], ptr[i]):
            mark[idx[p] + 1] = False
    return t


# ---------------------------------------------------------------------------
# random separation, vertex coloring + no-edge DP on the isolated green part


def batch_masked_dp_numpy(colors, adj_ptr, adj_idx, member):
    colors = np.asarray(colors, dtype=np.bool_)
    n_batch, n_g = colors.shape
    n_h = member.shape[1]
    deg = np.diff(adj_ptr)
    src = np.repeat(np.arange(n_g), deg)
    green_nbr = np.zeros((n_batch, n_g), dtype=np.int32)
    if len(adj_idx):
        np.add.at(green_nbr.T, src, colors.T[adj_idx])
    keep = colors & (green_nbr == 0)
    rows = np.zeros((n_batch, n_h + 1), dtype=np.int32)
    for u in range(n_g):
        active = keep[:, u]
        if not active.any():
            continue
        cand = rows.copy()
        cand[:, 1:] = np.where(member[u][None, :], rows[:, :-1] + 1, rows[:, 1:])
        new = np.maximum.accumulate(cand, axis=1)
        rows[active] = new[active]
    return rows[:, -1].copy()


def _batch_masked_dp_loops(colors, adj_ptr, adj_idx, member):
    n_batch, n_g = colors.shape
    n_h = member.shape[1]
    out = np.zeros(n_batch, dtype=np.int32)
    old = np.zeros(n_h + 1, dtype=np.int32)
    new = np.zeros(n_h + 1, dtype=np.int32)
    for b in range(n_batch):
        old[:] = 0
        for u in range(n_g):
            if colors[b, u] == 0:
                continue
            isolated = True
            for p in range(adj_ptr[u], adj_ptr[u + 1]):
                if colors[b, adj_idx[p]] != 0:
                    isolated = False
                    break
            if not isolated:
                continue
            new[0] = 0
            for j in range(1, n_h + 1):
                if member[u, j - 1]:
                    new[j] = old[j - 1] + 1
                else:
                    x = new[j - 1]
                    y = old[j]
                    new[j] = x if x > y else y
            for j in range(n_h + 1):
                old[j] = new[j]
        out[b] = old[n_h]
    return out


# ---------------------------------------------------------------------------
# random separation on the conflict graph: isolated green segments + LIS


def batch_separation_mis_numpy(colors, c_ptr, c_idx, h_by_g):
    colors = np.asarray(colors, dtype=np.bool_)
    n_batch, m = colors.shape
    deg = np.diff(c_ptr)
    src = np.repeat(np.arange(m), deg)
    green_nbr = np.zeros((n_batch, m), dtype=np.int32)
    if len(c_idx):
        np.add.at(green_nbr.T, src, colors.T[c_idx])
    keep = colors & (green_nbr == 0)
    best = np.zeros((n_batch, m), dtype=np.int32)
    for i in range(m):
        below = np.nonzero(h_by_g[:i] < h_by_g[i])[0]
        prev = best[:, below].max(axis=1) if len(below) else np.zeros(n_batch, dtype=np.int32)
        best[:, i] = np.where(keep[:, i], prev + 1, 0)
    if m == 0:
        return np.zeros(n_batch, dtype=np.int32)
    return best.max(axis=1)


def _batch_separation_mis_loops(colors, c_ptr, c_idx, h_by_g):
    n_batch, m = colors.shape
    out = np.zeros(n_batch, dtype=np.int32)
    tails = np.empty(m + 1, dtype=np.int64)
    for b in range(n_batch):
        length = 0
        for i in range(m):
            if colors[b, i] == 0:
                continue
            ok = True
            for p in range(c_ptr[i], c_ptr[i + 1]):
                if colors[b, c_idx[p]] != 0:
                    ok = False
                    break
            if not ok:
                continue
            h = h_by_g[i]
            lo = 0
            hi = length
            while lo < hi:
                mid = (lo + hi) // 2
                if tails[mid] < h:
                    lo = mid + 1
                else:
                    hi = mid
            tails[lo] = h
            if lo == length:
                length += 1
        out[b] = length
    return out


if HAVE_NUMBA:
    dp_table_numba = njit(cache=True)(_dp_table_loops)
    batch_masked_dp_numba = njit(cache=True)(_batch_masked_dp_loops)
    batch_separation_mis_numba = njit(cache=True)(_batch_separation_mis_loops)
else:
    dp_table_numba = batch_masked_dp_numba = batch_separation_mis_numba = None

if BACKEND == "numba":
    dp_table = dp_table_numba
    batch_masked_dp = batch_masked_dp_numba
    batch_separation_mis = batch_separation_mis_numba
else:
    dp_table = dp_table_numpy
    batch_masked_dp = batch_masked_dp_numpy
    batch_separation_mis = batch_separation_mis_numpy
