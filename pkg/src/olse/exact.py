"""Exact solvers: a capped brute-force oracle and the no-edge DP."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import (
    Embedding,
    Instance,
    PreconditionError,
    SizeGuardError,
    Solution,
    Variant,
    degree_stats,
)

ORACLE_CAP = 20


def solve_oracle(inst: Instance, variant: Variant, *, cap: int = ORACLE_CAP, prune: bool = True) -> Solution:
    """Maximum embedding by exhaustive depth-first search.

    G-vertices are visited in order and each is either skipped or paired with
    a list entry, so every partial map of the variant is reachable.  With
    ``prune`` the search cuts branches that cannot beat the incumbent even if
    every remaining vertex were embedded; without it every branch is walked.
    """
    variant = Variant(variant)
    if inst.n_g > cap or inst.n_h > cap:
        raise SizeGuardError(f"oracle refuses n_g={inst.n_g}, n_h={inst.n_h} above cap {cap}")
    n = inst.n_g
    lists = inst.lists
    adj_g = inst.adj_g
    edge_h = inst.edge_set_h
    ordered = variant.ordered
    induced = variant.induced

    best = []
    cur = []  # (u, v) pairs, ascending u
    used = set()

    def compatible(u, v):
        for u2, v2 in cur:
            eg = u2 in adj_g[u]
            eh = ((v2, v) if v2 < v else (v, v2)) in edge_h
            if eg and not eh:
                return False
            if induced and eh and not eg:
                return False
        return True

    def dfs(u, last_h):
        nonlocal best
        if len(cur) > len(best):
            best = list(cur)
        if u == n:
            return
        if prune:
            room = n - u
            if ordered:
                room = min(room, inst.n_h - 1 - last_h)
            if len(cur) + room <= len(best):
                return
        for v in lists[u]:
            if ordered and v <= last_h:
                continue
            if v in used or not compatible(u, v):
                continue
            cur.append((u, v))
            used.add(v)
            dfs(u + 1, v if ordered else last_h)
            used.discard(v)
            cur.pop()
        dfs(u + 1, last_h)

    dfs(0, -1)
    return Solution(Embedding(tuple(best)), f"oracle-{variant.value}")


@dataclass(frozen=True)
class DpResult:
    solution: Solution
    table: np.ndarray

    @property
    def size(self) -> int:
        return self.solution.size


def dp_table(inst: Instance) -> np.ndarray:
    """Fill ``T[i][j]``: the largest subset of the first ``i`` G-vertices that
    embeds (order and lists only) into the first ``j`` H-vertices."""
    ptr, idx = kernels.lists_to_csr(inst.lists)
    return kernels.dp_table(inst.n_g, inst.n_h, ptr, idx)


def backtrack(table: np.ndarray, lists) -> list:
    """Recover pairs from a filled table; matches are preferred on ties, then
    stepping left in ``j``."""
    members = [frozenset(lst) for lst in lists]
    i, j = table.shape[0] - 1, table.shape[1] - 1
    pairs = []
    while i > 0 and j > 0:
        here = table[i, j]
        if (j - 1) in members[i - 1] and here == table[i - 1, j - 1] + 1:
            pairs.append((i - 1, j - 1))
            i -= 1
            j -= 1
        elif here == table[i, j - 1]:
            j -= 1
        else:
            i -= 1
    pairs.reverse()
    return pairs


def solve_dp_no_edges(inst: Instance) -> DpResult:
    """opt-OLSE when G has no edges, in ``O(n_g * n_h)``.

    Edges of H are ignored: with G edgeless they constrain nothing under
    subgraph semantics.  Callers wanting OLISE must also ensure H is edgeless.
    """
    if inst.edges_g:
        a, b = inst.edges_g[0]
        raise PreconditionError(f"no-edge DP needs an edgeless G; found G-edge ({a},{b})")
    table = dp_table(inst)
    pairs = backtrack(table, inst.lists)
    return DpResult(Solution(Embedding(tuple(pairs)), "dp"), table)


def dp_value(lists, n_h: int) -> int:
    """Optimum of the no-edge problem without building an :class:`Instance`."""
    if not lists or n_h == 0:
        return 0
    ptr, idx = kernels.lists_to_csr(lists)
    return int(kernels.dp_table(len(lists), n_h, ptr, idx)[-1, -1])


def check_dp_recurrence(table: np.ndarray, lists) -> list:
    """Cells where ``table`` disagrees with the recurrence, as ``(i, j)``."""
    bad = []
    members = [frozenset(lst) for lst in lists]
    n_rows, n_cols = table.shape
    for i in range(n_rows):
        for j in range(n_cols):
            if i == 0 or j == 0:
                want = 0
            elif (j - 1) in members[i - 1]:
                want = 1 + table[i - 1, j - 1]
            else:
                want = max(table[i, j - 1], table[i - 1, j])
            if table[i, j] != want:
                bad.append((i, j))
    return bad

