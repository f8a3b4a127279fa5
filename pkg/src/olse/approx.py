"""Constant-ratio approximations for opt-OLSE and opt-OLISE on bounded-degree graphs."""
from .core import Instance, Solution
from .exact import solve_dp_no_edges


def greedy_independent(vertices, edges) -> list:
    """Greedy independent set: take the smallest remaining vertex, drop its
    neighbours, repeat.

    Only edges with both endpoints in ``vertices`` count.  The result has at
    least ``len(vertices) / (d + 1)`` members, ``d`` being the max degree of
    the induced subgraph.
    """
    remaining = set(vertices)
    nbrs = {u: set() for u in remaining}
    for a, b in edges:
        if a in remaining and b in remaining:
            nbrs[a].add(b)
            nbrs[b].add(a)
    picked = []
    for u in sorted(remaining):
        if u not in remaining:
            continue
        picked.append(u)
        remaining.discard(u)
        remaining -= nbrs[u]
    return picked


def approx_olse(inst: Instance) -> Solution:
    """DP on the edge-stripped instance, then a greedy independent set of the
    embedded G-vertices.  Size ``>= opt / (max deg G + 1)``."""
    base = solve_dp_no_edges(inst.without_edges()).solution
    phi = base.embedding
    keep = greedy_independent(phi.g_vertices, inst.edges_g)
    return Solution(phi.restrict(keep), "approx-olse")


def approx_olise(inst: Instance) -> Solution:
    """:func:`approx_olse` followed by a greedy independent set of the image
    in H.  Size ``>= opt / ((max deg G + 1)(max deg H + 1))``."""
    first = approx_olse(inst).embedding
    back = {v: u for u, v in first.pairs}
    keep_h = greedy_independent(first.h_vertices, inst.edges_h)
    return Solution(first.restrict(back[v] for v in keep_h), "approx-olise")
