"""Polynomial cases of the unordered variants.

* :func:`solve_lse_rules`: opt-LSE with max deg G <= 1, H edgeless and
  singleton lists, by repeatedly applying three safe selection rules.
* :func:`build_matching_graph` / :func:`max_weight_matching` /
  :func:`matching_to_solution`: opt-LISE with max deg G, H <= 1 via weighted
  bipartite matching.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .core import (
    Embedding,
    Instance,
    InternalError,
    PreconditionError,
    Solution,
    degree_stats,
)

# ---------------------------------------------------------------------------
# opt-LSE by reduction rules


@dataclass(frozen=True)
class SubsetFamily:
    """G-vertices grouped by the single H-vertex in their list."""

    groups: dict  # h-vertex -> frozenset of g-vertices

    @classmethod
    def from_instance(cls, inst: Instance) -> "SubsetFamily":
        groups = {}
        for u, lst in enumerate(inst.lists):
            if lst:
                groups.setdefault(lst[0], set()).add(u)
        return cls({v: frozenset(s) for v, s in sorted(groups.items())})


@dataclass
class RuleStep:
    rule: str
    chosen: Tuple[Tuple[int, int], ...]
    removed: int


@dataclass
class LseTrace:
    steps: List[RuleStep] = field(default_factory=list)


def solve_lse_rules(inst: Instance, trace: Optional[LseTrace] = None) -> Solution:
    """Maximum LSE embedding for ``max deg G <= 1``, edgeless H, lists of size <= 1.

    Rules, tried in this order until G is empty:

    (i)   a vertex that is isolated, or whose neighbour shares its group, is
          taken; its group is removed;
    (ii)  for a cycle of groups (including two groups joined by two edges)
          one vertex per group is taken so that no two taken vertices are
          adjacent; the groups are removed;
    (iii) a leaf group (one adjacent group) is a single vertex; it is taken
          and its neighbour is removed with it.

    Vertices with empty lists are dropped up front.
    """
    dg, dh, dl = degree_stats(inst)
    if dg > 1:
        raise PreconditionError(f"lse-rules needs max deg G <= 1, got {dg}")
    if dh != 0:
        raise PreconditionError(f"lse-rules needs an edgeless H, got max deg H = {dh}")
    if dl > 1:
        bad = next(u for u, lst in enumerate(inst.lists) if len(lst) > 1)
        raise PreconditionError(f"lse-rules needs singleton lists, L({bad}) has {len(inst.lists[bad])} entries")

    group_of = {u: lst[0] for u, lst in enumerate(inst.lists) if lst}
    partner = {}
    for a, b in inst.edges_g:
        partner[a] = b
        partner[b] = a
    alive = set(group_of)
    members = {}
    for u in sorted(alive):
        members.setdefault(group_of[u], set()).add(u)
    chosen = []

    def nbr(u):
        w = partner.get(u)
        return w if w in alive else None

    def take(rule, picks, extra=()):
        before = len(alive)
        for u in picks:
            chosen.append((u, group_of[u]))
        for v in {group_of[u] for u in picks}:
            alive.difference_update(members.pop(v))
        for w in extra:
            if w in alive:
                alive.discard(w)
                members[group_of[w]].discard(w)
                if not members[group_of[w]]:
                    del members[group_of[w]]
        if trace is not None:
            trace.steps.append(RuleStep(rule, tuple((u, group_of[u]) for u in picks), before - len(alive)))

    while alive:
        if _rule_one(members, group_of, nbr, take):
            continue
        if _rule_two(members, group_of, nbr, take):
            continue
        if _rule_three(members, group_of, nbr, take):
            continue
        raise InternalError("no rule applies to a non-empty graph")
    return Solution(Embedding(tuple(chosen)), "lse-rules")


def _rule_one(members, group_of, nbr, take):
    for v in sorted(members):
        for u in sorted(members[v]):
            w = nbr(u)
            if w is None or group_of[w] == v:
                take("i", [u])
                return True
    return False


def _group_links(members, group_of, nbr):
    """``{(g1, g2): [(u1, u2), ...]}`` for g1 < g2, u1 in g1, u2 in g2."""
    links = {}
    for v in sorted(members):
        for u in sorted(members[v]):
            w = nbr(u)
            if w is None:
                continue
            gw = group_of[w]
            if v < gw:
                links.setdefault((v, gw), []).append((u, w))
    return links


def _rule_two(members, group_of, nbr, take):
    links = _group_links(members, group_of, nbr)
    for (g1, g2), edges in sorted(links.items()):
        if len(edges) >= 2:
            (a, _), (_, b2) = edges[0], edges[1]
            take("ii", [a, b2])
            return True
    # groups now form a simple graph; look for a longer cycle
    adj = {}
    for (g1, g2), edges in links.items():
        adj.setdefault(g1, {})[g2] = edges[0]
        adj.setdefault(g2, {})[g1] = (edges[0][1], edges[0][0])
    cycle = _find_cycle(adj)
    if cycle is None:
        return False
    picks = []
    n = len(cycle)
    for i, g in enumerate(cycle):
        prev = cycle[i - 1]
        # vertex of g that touches the previous group on the cycle
        picks.append(adj[g][prev][0])
    assert n > 2
    take("ii", picks)
    return True


def _find_cycle(adj):
    """Some cycle of a simple undirected graph as a vertex list, or ``None``."""
    colour = {}
    parent = {}
    for root in sorted(adj):
        if root in colour:
            continue
        stack = [(root, iter(sorted(adj[root])))]
        colour[root] = 1
        parent[root] = None
        while stack:
            node, it = stack[-1]
            step = next(it, None)
            if step is None:
                colour[node] = 2
                stack.pop()
                continue
            if step == parent[node]:
                continue
            if colour.get(step) == 1:
                cycle = [node]
                while cycle[-1] != step:
                    cycle.append(parent[cycle[-1]])
                cycle.reverse()
                return cycle
            if step not in colour:
                colour[step] = 1
                parent[step] = node
                stack.append((step, iter(sorted(adj[step]))))
    return None


def _rule_three(members, group_of, nbr, take):
    links = _group_links(members, group_of, nbr)
    degree = {}
    for g1, g2 in links:
        degree[g1] = degree.get(g1, 0) + 1
        degree[g2] = degree.get(g2, 0) + 1
    for v in sorted(members):
        if degree.get(v) == 1:
            if len(members[v]) != 1:
                raise InternalError(f"leaf group {v} has {len(members[v])} vertices")
            (u,) = members[v]
            take("iii", [u], extra=[nbr(u)])
            return True
    return False


# ---------------------------------------------------------------------------
# opt-LISE by weighted bipartite matching


@dataclass(frozen=True)
class MatchingGraph:
    """Bipartite graph whose matchings encode LISE embeddings.

    ``x_nodes`` are tagged ``("edge", (u, u'))`` or ``("vertex", u)`` for the
    components of G, ``y_nodes`` likewise for H.  ``weighted_edges`` holds
    ``(x_index, y_index, weight)`` with weight 1 or 2.
    """

    x_nodes: Tuple[tuple, ...]
    y_nodes: Tuple[tuple, ...]
    weighted_edges: Tuple[Tuple[int, int, int], ...]


def _component_nodes(n, edges, adj):
    nodes = [("edge", e) for e in edges]
    nodes += [("vertex", u) for u in range(n) if not adj[u]]
    return tuple(nodes)


def build_matching_graph(inst: Instance, complete: bool = True) -> MatchingGraph:
    """Bipartite graph between the components of G and H.

    The four construction cases are: edge-edge with weight 2 when the two
    endpoints can be mapped across; vertex-vertex weight 1; isolated G-vertex
    to an H-edge weight 1; G-edge to an isolated H-vertex weight 1.

    With ``complete`` (the default) a fifth case adds a weight-1 edge between
    a G-edge and an H-edge when one endpoint of the G-edge can land on the
    H-edge but no weight-2 edge exists.  Without it the embedding "one end of
    a G-edge onto one end of an H-edge, the other ends unused" has no
    counterpart and the matching optimum can fall short of the LISE optimum.
    """
    dg, dh, _ = degree_stats(inst)
    if dg > 1 or dh > 1:
        raise PreconditionError(f"matching reduction needs max deg G, H <= 1, got {dg}, {dh}")
    L = inst.list_sets
    xs = _component_nodes(inst.n_g, inst.edges_g, inst.adj_g)
    ys = _component_nodes(inst.n_h, inst.edges_h, inst.adj_h)
    weighted = []
    for xi, (xk, xo) in enumerate(xs):
        for yi, (yk, yo) in enumerate(ys):
            w = 0
            if xk == "edge" and yk == "edge":
                (u, u2), (v, v2) = xo, yo
                if (v in L[u] and v2 in L[u2]) or (v2 in L[u] and v in L[u2]):
                    w = 2
                elif complete and ({v, v2} & (L[u] | L[u2])):
                    w = 1
            elif xk == "vertex" and yk == "vertex":
                w = 1 if yo in L[xo] else 0
            elif xk == "vertex":
                w = 1 if set(yo) & L[xo] else 0
            else:
                w = 1 if yo in (L[xo[0]] | L[xo[1]]) else 0
            if w:
                weighted.append((xi, yi, w))
    return MatchingGraph(xs, ys, tuple(weighted))


def max_weight_matching(mg: MatchingGraph):
    """Maximum-weight matching by successive best augmenting paths.

    Each round runs Bellman-Ford for the largest-gain alternating path from a
    free x-node; it stops when no path has positive gain.  Returns
    ``(sorted list of (x, y), total weight)``.
    """
    n_x, n_y = len(mg.x_nodes), len(mg.y_nodes)
    weight = {}
    out = [[] for _ in range(n_x)]
    for x, y, w in mg.weighted_edges:
        if (x, y) not in weight or weight[(x, y)] < w:
            weight[(x, y)] = w
    for (x, y), w in sorted(weight.items()):
        out[x].append((y, w))
    mate_x = [-1] * n_x
    mate_y = [-1] * n_y
    neg = float("-inf")
    while True:
        # gain[x]: best gain of an alternating path from a free x ending at x
        gain_x = [0 if mate_x[x] < 0 else neg for x in range(n_x)]
        gain_y = [neg] * n_y
        from_x = [-1] * n_y
        for _ in range(n_x + n_y + 1):
            changed = False
            for x in range(n_x):
                if gain_x[x] == neg:
                    continue
                for y, w in out[x]:
                    if mate_x[x] == y:
                        continue
                    g = gain_x[x] + w
                    if g > gain_y[y]:
                        gain_y[y] = g
                        from_x[y] = x
                        changed = True
            for y in range(n_y):
                x = mate_y[y]
                if x >= 0 and gain_y[y] != neg:
                    g = gain_y[y] - weight[(x, y)]
                    if g > gain_x[x]:
                        gain_x[x] = g
                        changed = True
            if not changed:
                break
        best_y, best_gain = -1, 0
        for y in range(n_y):
            if mate_y[y] < 0 and gain_y[y] > best_gain:
                best_y, best_gain = y, gain_y[y]
        if best_y < 0:
            break
        y = best_y
        while y >= 0:
            x = from_x[y]
            prev_y = mate_x[x]
            mate_x[x] = y
            mate_y[y] = x
            y = prev_y
    pairs = sorted((x, mate_x[x]) for x in range(n_x) if mate_x[x] >= 0)
    return pairs, sum(weight[p] for p in pairs)


def matching_to_solution(mg: MatchingGraph, matching, inst: Instance) -> Solution:
    """Read a LISE embedding of size ``w(matching)`` off any matching of ``mg``."""
    L = inst.list_sets
    weights = {(x, y): w for x, y, w in mg.weighted_edges}
    pairs = []
    for x, y in matching:
        if (x, y) not in weights:
            raise InternalError(f"({x},{y}) is not an edge of the matching graph")
        w = weights[(x, y)]
        xk, xo = mg.x_nodes[x]
        yk, yo = mg.y_nodes[y]
        if xk == "edge" and yk == "edge" and w == 2:
            (u, u2), (v, v2) = xo, yo
            options = []
            if v in L[u] and v2 in L[u2]:
                options.append(((u, v), (u2, v2)))
            if v2 in L[u] and v in L[u2]:
                options.append(((u, v2), (u2, v)))
            if not options:
                raise InternalError(f"weight-2 edge {xo}-{yo} admits no orientation")
            pairs.extend(min(options))
        elif xk == "edge" and yk == "edge":
            cand = [(g, h) for g in xo for h in yo if h in L[g]]
            if not cand:
                raise InternalError(f"weight-1 edge {xo}-{yo} has no list pair")
            pairs.append(min(cand))
        elif xk == "vertex" and yk == "vertex":
            if yo not in L[xo]:
                raise InternalError(f"{yo} not in L({xo})")
            pairs.append((xo, yo))
        elif xk == "vertex":
            cand = [h for h in yo if h in L[xo]]
            if not cand:
                raise InternalError(f"no endpoint of {yo} in L({xo})")
            pairs.append((xo, min(cand)))
        else:
            cand = [g for g in xo if yo in L[g]]
            if not cand:
                raise InternalError(f"{yo} in neither list of {xo}")
            pairs.append((min(cand), yo))
    return Solution(Embedding(tuple(pairs)), "lise-matching")


def solve_lise_matching(inst: Instance, complete: bool = True) -> Solution:
    mg = build_matching_graph(inst, complete=complete)
    matching, _ = max_weight_matching(mg)
    return matching_to_solution(mg, matching, inst)
