"""p-OLSE parameterized by the vertex cover number of G.

Guess the part ``S_C`` of the solution inside a minimum vertex cover ``C``
and its images, prune the lists of the independent rest against that
guess, then solve each gap between consecutive guessed vertices with the
no-edge DP.  Subgraph (one-directional) edge semantics throughout.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from . import kernels
from .core import Embedding, Instance, InternalError, Solution, Variant, check_embedding
from .exact import backtrack


def min_vertex_cover(edges, n: int) -> list:
    """Minimum vertex cover by branching on a max-degree vertex ``v``: either
    ``v`` is in the cover or all of its neighbours are."""
    adj = {u: set() for u in range(n)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    best = [u for u in range(n) if adj[u]]  # trivial cover

    def go(adj, chosen):
        nonlocal best
        if len(chosen) >= len(best):
            return
        v = max(adj, key=lambda u: (len(adj[u]), -u), default=None)
        if v is None or not adj[v]:
            best = sorted(chosen)
            return
        # a cover needs at least |E| / maxdeg more vertices
        n_edges = sum(len(s) for s in adj.values()) // 2
        if len(chosen) + -(-n_edges // len(adj[v])) >= len(best):
            return
        nb = set(adj[v])
        go(_remove(adj, {v}), chosen + [v])
        go(_remove(adj, nb), chosen + sorted(nb))

    go({u: s for u, s in adj.items() if s}, [])
    return sorted(best)


def _remove(adj, drop):
    return {u: s - drop for u, s in adj.items() if u not in drop and s - drop}


@dataclass(frozen=True)
class CoverGuess:
    s_c: Tuple[int, ...]
    phi_c: Tuple[int, ...]

    def pairs(self):
        return tuple(zip(self.s_c, self.phi_c))


@dataclass(frozen=True)
class IntervalPartition:
    """Gaps between guessed vertices, as half-open index ranges.

    ``g_intervals[j]`` and ``h_intervals[j]`` are ``(start, stop)`` ranges
    of G- and H-positions strictly between the ``j-1``-th and ``j``-th guessed
    vertex (respectively their images).
    """

    g_intervals: Tuple[Tuple[int, int], ...]
    h_intervals: Tuple[Tuple[int, int], ...]


def guess_is_valid(inst: Instance, guess: CoverGuess) -> bool:
    L = inst.list_sets
    for u, v in guess.pairs():
        if v not in L[u]:
            return False
    if any(b <= a for a, b in zip(guess.phi_c, guess.phi_c[1:])):
        return False
    pairs = guess.pairs()
    for (u1, v1), (u2, v2) in itertools.combinations(pairs, 2):
        if inst.has_edge_g(u1, u2) and not inst.has_edge_h(v1, v2):
            return False
    return True


def prune_lists(inst: Instance, guess: CoverGuess, candidates=None) -> Dict[int, Tuple[int, ...]]:
    """Lists of the non-cover vertices restricted to entries compatible with
    the guess: H-adjacent to the image of every guessed G-neighbour, on the
    correct side of every guessed image, and not an image themselves.

    ``candidates`` defaults to every G-vertex outside ``guess.s_c``.
    """
    if candidates is None:
        taken = set(guess.s_c)
        candidates = [u for u in range(inst.n_g) if u not in taken]
    images = set(guess.phi_c)
    out = {}
    for u in candidates:
        keep = []
        for v in inst.lists[u]:
            if v in images:
                continue
            ok = True
            for w, img in guess.pairs():
                if inst.has_edge_g(u, w) and not inst.has_edge_h(v, img):
                    ok = False
                    break
                if (u < w) != (v < img):
                    ok = False
                    break
            if ok:
                keep.append(v)
        out[u] = tuple(keep)
    return out


def interval_partition(inst: Instance, guess: CoverGuess) -> IntervalPartition:
    g_cuts = [-1, *guess.s_c, inst.n_g]
    h_cuts = [-1, *guess.phi_c, inst.n_h]
    g = tuple((g_cuts[j] + 1, g_cuts[j + 1]) for j in range(len(g_cuts) - 1))
    h = tuple((h_cuts[j] + 1, h_cuts[j + 1]) for j in range(len(h_cuts) - 1))
    return IntervalPartition(g, h)


@dataclass
class VcResult:
    decision: bool
    solution: Optional[Solution]
    cover: Tuple[int, ...]
    guesses_examined: int
    guess: Optional[CoverGuess] = None

    @property
    def size(self) -> int:
        return self.solution.size if self.solution is not None else 0


def _enumerate_guesses(inst: Instance, cover):
    """Subsets by size then lexicographically; images lexicographically."""
    for r in range(len(cover) + 1):
        for subset in itertools.combinations(cover, r):
            for images in itertools.product(*(inst.lists[u] for u in subset)):
                yield CoverGuess(subset, tuple(images))


def _solve_gaps(inst: Instance, guess: CoverGuess, cover_set, independent):
    """Best extension of ``guess``; returns (pairs outside the cover, ...)."""
    part = interval_partition(inst, guess)
    free = [u for u in range(inst.n_g) if u not in cover_set]
    pruned = prune_lists(inst, guess, free)
    extra = []
    for (g0, g1), (h0, h1) in zip(part.g_intervals, part.h_intervals):
        gs = [u for u in range(g0, g1) if u not in cover_set]
        if not gs or h1 <= h0:
            continue
        if independent:
            for a, b in itertools.combinations(gs, 2):
                if inst.has_edge_g(a, b):
                    raise InternalError(f"interval holds G-edge ({a},{b}) outside the cover")
        sub_lists = [tuple(v - h0 for v in pruned[u] if h0 <= v < h1) for u in gs]
        ptr, idx = kernels.lists_to_csr(sub_lists)
        table = kernels.dp_table(len(gs), h1 - h0, ptr, idx)
        if table[-1, -1] == 0:
            continue
        for i, j in backtrack(table, sub_lists):
            extra.append((gs[i], j + h0))
    return extra


def solve_vc_fpt(inst: Instance, k: Optional[int] = None, *, check_intervals: bool = True) -> VcResult:
    """Decide p-OLSE for ``k`` (or maximise when ``k`` is ``None``).

    Deterministic and exact.  The number of guesses examined is at most
    ``(1 + max list length) ** |C|``.
    """
    cover = tuple(min_vertex_cover(inst.edges_g, inst.n_g))
    if k is not None and k <= 0:
        return VcResult(True, Solution(Embedding(), "vc-fpt"), cover, 0)
    cover_set = set(cover)
    n_free = inst.n_g - len(cover)
    examined = 0
    best_pairs: List[Tuple[int, int]] = []
    best_guess = None
    for guess in _enumerate_guesses(inst, cover):
        examined += 1
        if not guess_is_valid(inst, guess):
            continue
        # cannot reach the target even if every free vertex were embedded
        bound = len(guess.s_c) + n_free
        target = len(best_pairs) + 1 if k is None else max(k, len(best_pairs) + 1)
        if bound < target:
            continue
        extra = _solve_gaps(inst, guess, cover_set, check_intervals)
        total = len(guess.s_c) + len(extra)
        if total > len(best_pairs):
            best_pairs = list(guess.pairs()) + extra
            best_guess = guess
            if k is not None and total >= k:
                break
    emb = Embedding(tuple(best_pairs))
    check = check_embedding(inst, emb, Variant.OLSE)
    if not check:
        raise InternalError(f"vc-fpt witness failed {check.condition}: {check.detail}")
    if k is None:
        return VcResult(True, Solution(emb, "vc-fpt"), cover, examined, best_guess)
    if len(emb) >= k:
        return VcResult(True, Solution(emb, "vc-fpt"), cover, examined, best_guess)
    return VcResult(False, None, cover, examined)


def guess_bound(inst: Instance, cover) -> int:
    """``sum over subsets s of C of prod |L(u)|`` = ``prod (1 + |L(u)|)``."""
    out = 1
    for u in cover:
        out *= 1 + len(inst.lists[u])
    return out
