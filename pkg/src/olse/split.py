"""FPT pipeline for p-OLSE with bounded max deg G and bounded list width.

split -> simplify -> conflict graph, then random separation over segment
colourings with a permutation-graph independent set per colouring.  The
simpler vertex-colouring variant for edgeless H lives here too.
"""
from __future__ import annotations

import bisect
import itertools
import math
from dataclasses import dataclass
from typing import FrozenSet, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .core import (
    Embedding,
    Instance,
    InternalError,
    PreconditionError,
    Solution,
    Variant,
    check_embedding,
    degree_stats,
    invert_embedding,
    transpose,
)
from .exact import solve_dp_no_edges

SegPair = Tuple[int, int]


@dataclass(frozen=True)
class SplitInstance:
    """Split instance, one segment per list edge ``(u, v)``.

    Segment ``i`` sits at G-position ``i`` (segments are stored in G-split
    order) and at H-position ``h_pos[i]``.  Edge sets are over segment
    indices, as pairs ``(i, j)`` with ``i < j``.
    """

    h_pos: Tuple[int, ...]
    origin_g: Tuple[int, ...]
    origin_h: Tuple[int, ...]
    split_edges_g: FrozenSet[SegPair]
    split_edges_h: FrozenSet[SegPair]

    @property
    def segments(self) -> Tuple[SegPair, ...]:
        return tuple(enumerate(self.h_pos))

    def __len__(self) -> int:
        return len(self.h_pos)


def split(inst: Instance) -> SplitInstance:
    """Split every vertex of G and H into one copy per incident list edge.

    Copies of a G-vertex keep its place in the order and take its list
    entries in reverse, so the first copy gets the largest entry; H-vertices
    are split the same way against G.  Any two segments of one original
    vertex therefore cross.  Edges of G and of H are copied to all copies.
    Vertices with empty lists (or listed by nobody) disappear.
    """
    by_g = sorted(((u, v) for u, lst in enumerate(inst.lists) for v in lst), key=lambda e: (e[0], -e[1]))
    order_h = sorted(range(len(by_g)), key=lambda i: (by_g[i][1], -by_g[i][0]))
    h_pos = [0] * len(by_g)
    for pos, i in enumerate(order_h):
        h_pos[i] = pos
    origin_g = tuple(u for u, _ in by_g)
    origin_h = tuple(v for _, v in by_g)
    eg, eh = set(), set()
    for i in range(len(by_g)):
        for j in range(i + 1, len(by_g)):
            if inst.has_edge_g(origin_g[i], origin_g[j]):
                eg.add((i, j))
            if inst.has_edge_h(origin_h[i], origin_h[j]):
                eh.add((i, j))
    return SplitInstance(tuple(h_pos), origin_g, origin_h, frozenset(eg), frozenset(eh))


def simplify(s: SplitInstance) -> SplitInstance:
    """Drop H-edges, together with the parallel G-edge when there is one.

    Afterwards H is edgeless and the remaining G-edges are exactly the pairs
    that can never be embedded together.
    """
    eg = set(s.split_edges_g)
    for pair in s.split_edges_h:
        eg.discard(pair)
    return SplitInstance(s.h_pos, s.origin_g, s.origin_h, frozenset(eg), frozenset())


@dataclass(frozen=True)
class ConflictGraph:
    """Permutation graph of segments plus conflict edges.

    Two segments are adjacent in the permutation part when they cross; the
    conflict edges come from G-edges that survived :func:`simplify`.
    """

    h_pos: Tuple[int, ...]
    origin_g: Tuple[int, ...]
    origin_h: Tuple[int, ...]
    conflict_edges: FrozenSet[SegPair]

    @property
    def segments(self) -> Tuple[SegPair, ...]:
        return tuple(enumerate(self.h_pos))

    def __len__(self) -> int:
        return len(self.h_pos)

    def conflict_neighbours(self):
        nbrs = [[] for _ in self.h_pos]
        for a, b in self.conflict_edges:
            nbrs[a].append(b)
            nbrs[b].append(a)
        return [sorted(x) for x in nbrs]

    def conflict_degrees(self):
        return [len(x) for x in self.conflict_neighbours()]

    def max_conflict_degree(self) -> int:
        return max(self.conflict_degrees(), default=0)

    def crossing(self, i: int, j: int) -> bool:
        return (i < j) != (self.h_pos[i] < self.h_pos[j])

    def is_independent(self, subset: Sequence[int]) -> bool:
        sub = sorted(subset)
        for a, b in itertools.combinations(sub, 2):
            if self.crossing(a, b) or (a, b) in self.conflict_edges:
                return False
        return True

    def to_embedding(self, subset: Sequence[int]) -> Embedding:
        return Embedding(tuple((self.origin_g[i], self.origin_h[i]) for i in subset))


def build_conflict_graph(s: SplitInstance) -> ConflictGraph:
    if s.split_edges_h:
        raise PreconditionError("conflict graph needs a simplified split instance (H-split edges remain)")
    return ConflictGraph(s.h_pos, s.origin_g, s.origin_h, s.split_edges_g)


def conflict_graph(inst: Instance) -> ConflictGraph:
    return build_conflict_graph(simplify(split(inst)))


def permutation_mis(segments) -> list:
    """Largest set of pairwise non-crossing segments.

    Segments are ``(g_pos, h_pos)`` pairs with distinct coordinates on each
    side.  After sorting by ``g_pos`` this is a longest strictly increasing
    subsequence of the ``h_pos`` values, found by patience sorting in
    ``O(m log m)``.
    """
    segs = sorted(segments)
    tails = []  # smallest tail h of an increasing run of each length
    tail_at = []  # index into segs of that tail
    prev = [-1] * len(segs)
    for i, (_, h) in enumerate(segs):
        k = bisect.bisect_left(tails, h)
        if k == len(tails):
            tails.append(h)
            tail_at.append(i)
        else:
            tails[k] = h
            tail_at[k] = i
        prev[i] = tail_at[k - 1] if k else -1
    out = []
    i = tail_at[-1] if tail_at else -1
    while i >= 0:
        out.append(segs[i])
        i = prev[i]
    out.reverse()
    return out


# ---------------------------------------------------------------------------
# random separation


@dataclass(frozen=True)
class TrialBudget:
    """Controls the colouring search.

    ``mode``: ``"auto"`` enumerates every colouring when the coloured part has
    at most ``exhaustive_threshold`` elements (or when that is cheaper than
    the random trial count), ``"random"`` always samples, ``"exhaustive"``
    always enumerates.
    """

    seed: int = 0
    delta: float = 0.01
    max_trials: int = 2_000_000
    exhaustive_threshold: int = 20
    mode: str = "auto"
    batch_size: int = 4096


@dataclass(frozen=True)
class SeparationResult:
    decision: bool
    solution: Optional[Solution]
    trials: int
    exhaustive: bool
    planned_trials: int
    confidence: float
    max_conflict_degree: int

    @property
    def size(self) -> int:
        return self.solution.size if self.solution is not None else 0


def trial_count(k: int, degree: int, n_coloured: int, delta: float) -> int:
    """Trials needed so a fixed solution is separated with prob ``>= 1 - delta``.

    One colouring separates a given size-``k`` solution with probability at
    least ``2^-t`` where ``t = min(n_coloured, (degree + 1) * k)``.
    """
    if k <= 0 or n_coloured == 0:
        return 1
    t = min(n_coloured, (degree + 1) * k)
    return max(1, math.ceil(2.0 ** t * math.log(1.0 / delta)))


def _confidence(k, degree, n_coloured, trials, exhaustive):
    if exhaustive or k <= 0 or n_coloured == 0:
        return 1.0
    t = min(n_coloured, (degree + 1) * k)
    p = 2.0 ** -t
    return 1.0 - (1.0 - p) ** trials


def _colouring_batches(n_coloured, budget: TrialBudget, exhaustive: bool, n_trials: int):
    """Yield uint8 arrays of shape (b, n_coloured), 1 = green."""
    if exhaustive:
        total = 1 << n_coloured
        bits = np.arange(n_coloured, dtype=np.int64)
        for start in range(0, total, budget.batch_size):
            codes = np.arange(start, min(total, start + budget.batch_size), dtype=np.int64)
            # code 0 is all green
            yield (((codes[:, None] >> bits) & 1) ^ 1).astype(np.uint8)
        return
    rng = np.random.default_rng(budget.seed)
    done = 0
    while done < n_trials:
        b = min(budget.batch_size, n_trials - done)
        yield rng.integers(0, 2, size=(b, n_coloured), dtype=np.uint8)
        done += b


def _search(n_units, relevant, k, degree, budget, evaluate):
    """Run colourings over ``relevant`` units (others stay green).

    ``evaluate(colours)`` maps a (b, n_units) uint8 batch to per-row values.
    Returns ``(full colouring or None, trials used, exhaustive, planned)``.
    """
    n_col = len(relevant)
    planned = trial_count(k, degree, n_col, budget.delta)
    if budget.mode == "exhaustive":
        exhaustive = True
    elif budget.mode == "random":
        exhaustive = n_col == 0
    elif budget.mode == "auto":
        exhaustive = n_col <= budget.exhaustive_threshold or (1 << min(n_col, 62)) <= planned
    else:
        raise ValueError(f"unknown budget mode {budget.mode!r}")
    n_trials = (1 << n_col) if exhaustive else min(planned, budget.max_trials)
    used = 0
    rel = np.asarray(relevant, dtype=np.int64)
    for part in _colouring_batches(n_col, budget, exhaustive, n_trials):
        full = np.ones((part.shape[0], n_units), dtype=np.uint8)
        if n_col:
            full[:, rel] = part
        values = evaluate(full)
        hits = np.nonzero(values >= k)[0]
        if len(hits):
            first = int(hits[0])
            return full[first], used + first + 1, exhaustive, planned
        used += part.shape[0]
    return None, used, exhaustive, planned


def _isolated_green(colours, nbrs):
    return [i for i, c in enumerate(colours) if c and not any(colours[j] for j in nbrs[i])]


def solve_split_fpt(inst: Instance, k: int, budget: TrialBudget = TrialBudget()) -> SeparationResult:
    """Decide p-OLSE for ``k`` through the conflict graph.

    A ``True`` decision always carries a checked witness of size ``k``.  A
    ``False`` from random trials is wrong with probability at most ``delta``
    (less when ``max_trials`` capped the run; see ``confidence``).
    """
    k = int(k)
    if k <= 0:
        return SeparationResult(True, Solution(Embedding(), "split-fpt"), 0, True, 0, 1.0, 0)
    cg = conflict_graph(inst)
    nbrs = cg.conflict_neighbours()
    degree = max((len(x) for x in nbrs), default=0)
    if k > min(inst.n_g, inst.n_h) or k > len(cg):
        return SeparationResult(False, None, 0, True, 0, 1.0, degree)
    relevant = [i for i, x in enumerate(nbrs) if x]
    c_ptr, c_idx = kernels.lists_to_csr(nbrs)
    h_by_g = np.asarray(cg.h_pos, dtype=np.int64)

    def evaluate(colours):
        return kernels.batch_separation_mis(colours, c_ptr, c_idx, h_by_g)

    hit, used, exhaustive, planned = _search(len(cg), relevant, k, degree, budget, evaluate)
    conf = _confidence(k, degree, len(relevant), used, exhaustive)
    if hit is None:
        return SeparationResult(False, None, used, exhaustive, planned, conf, degree)
    keep = _isolated_green(hit, nbrs)
    mis = permutation_mis([(i, cg.h_pos[i]) for i in keep])
    if len(mis) < k:
        raise InternalError("kernel and reconstruction disagree on the independent set size")
    emb = cg.to_embedding([g for g, _ in mis[:k]])
    _certify(inst, emb, Variant.OLSE)
    return SeparationResult(True, Solution(emb, "split-fpt"), used, exhaustive, planned, conf, degree)


def solve_random_sep_simple(inst: Instance, k: int, budget: TrialBudget = TrialBudget(),
                            variant: Variant = Variant.OLSE) -> SeparationResult:
    """Decide p-OLSE/p-OLISE for edgeless H by colouring G.

    Green vertices with a green neighbour are dropped, the no-edge DP runs on
    the rest.  For OLISE with edgeless G (and H of bounded degree) the roles
    of G and H are swapped first.
    """
    variant = Variant(variant)
    if not variant.ordered:
        raise PreconditionError("random separation handles the ordered variants only")
    dg, dh, _ = degree_stats(inst)
    if dh != 0:
        if variant is Variant.OLISE and dg == 0:
            res = solve_random_sep_simple(transpose(inst), k, budget, variant)
            if res.solution is None:
                return res
            emb = invert_embedding(res.solution.embedding)
            _certify(inst, emb, variant)
            return _replace_solution(res, Solution(emb, "random-sep"))
        raise PreconditionError(f"random separation needs an edgeless H, got max deg H = {dh}")
    k = int(k)
    if k <= 0:
        return SeparationResult(True, Solution(Embedding(), "random-sep"), 0, True, 0, 1.0, dg)
    if k > min(inst.n_g, inst.n_h):
        return SeparationResult(False, None, 0, True, 0, 1.0, dg)
    nbrs = [sorted(s) for s in inst.adj_g]
    relevant = [u for u in range(inst.n_g) if nbrs[u]]
    adj_ptr, adj_idx = kernels.lists_to_csr(nbrs)
    member = kernels.membership_matrix(inst.lists, inst.n_h)

    def evaluate(colours):
        return kernels.batch_masked_dp(colours, adj_ptr, adj_idx, member)

    hit, used, exhaustive, planned = _search(inst.n_g, relevant, k, dg, budget, evaluate)
    conf = _confidence(k, dg, len(relevant), used, exhaustive)
    if hit is None:
        return SeparationResult(False, None, used, exhaustive, planned, conf, dg)
    keep = set(_isolated_green(hit, nbrs))
    sub = Instance.build(inst.n_g, inst.n_h, (), (), [lst if u in keep else () for u, lst in enumerate(inst.lists)])
    found = solve_dp_no_edges(sub).solution.embedding
    if len(found) < k:
        raise InternalError("kernel and DP disagree on the green optimum")
    emb = Embedding(found.pairs[:k])
    _certify(inst, emb, variant)
    return SeparationResult(True, Solution(emb, "random-sep"), used, exhaustive, planned, conf, dg)


def _replace_solution(res: SeparationResult, sol: Solution) -> SeparationResult:
    return SeparationResult(res.decision, sol, res.trials, res.exhaustive, res.planned_trials,
                            res.confidence, res.max_conflict_degree)


def _certify(inst, emb, variant):
    check = check_embedding(inst, emb, variant)
    if not check:
        raise InternalError(f"witness failed {check.condition}: {check.detail}")
