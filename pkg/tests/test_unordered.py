import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from olse.core import Instance, InternalError, PreconditionError, Variant, check_embedding
from olse.exact import solve_oracle
from olse.instances import GeneratorParams, generate_random
from olse.unordered import (
    LseTrace,
    MatchingGraph,
    SubsetFamily,
    build_matching_graph,
    matching_to_solution,
    max_weight_matching,
    solve_lise_matching,
    solve_lse_rules,
)

LSE_PARAMS = GeneratorParams(9, 9, max_deg_g=1, max_deg_h=0, max_list=1, min_list=1, density_g=0.6)
LISE_PARAMS = GeneratorParams(7, 7, max_deg_g=1, max_deg_h=1, max_list=2, density_g=0.5, density_h=0.5)


def all_matchings(mg):
    """Every matching of ``mg`` (including the empty one)."""
    edges = [(x, y) for x, y, _ in mg.weighted_edges]
    for r in range(len(edges) + 1):
        for combo in itertools.combinations(edges, r):
            xs = [x for x, _ in combo]
            ys = [y for _, y in combo]
            if len(set(xs)) == r and len(set(ys)) == r:
                yield list(combo)


def matching_weight(mg, matching):
    w = {(x, y): w for x, y, w in mg.weighted_edges}
    return sum(w[p] for p in matching)


def test_subset_family_groups():
    inst = Instance.build(4, 3, [], [], [[0], [2], [0], []])
    fam = SubsetFamily.from_instance(inst)
    assert fam.groups[0] == frozenset({0, 2}) and fam.groups[2] == frozenset({1})


def test_rule_one_isolated():
    trace = LseTrace()
    sol = solve_lse_rules(Instance.build(1, 1, [], [], [[0]]), trace)
    assert sol.size == 1 and trace.steps[0].rule == "i"


def test_rule_two_double_edge():
    # a=0, a'=1 listed to v0; b=2, b'=3 listed to v1; edges ab and a'b'
    inst = Instance.build(4, 2, [(0, 2), (1, 3)], [], [[0], [0], [1], [1]])
    trace = LseTrace()
    sol = solve_lse_rules(inst, trace)
    assert sol.pairs == ((0, 0), (3, 1))
    assert [s.rule for s in trace.steps] == ["ii"]


def test_rule_three_single_edge():
    inst = Instance.build(3, 3, [(0, 1)], [], [[0], [1], [2]])
    sol = solve_lse_rules(inst)
    assert sol.size == 2 == solve_oracle(inst, Variant.LSE).size


def test_rule_three_chain_of_groups():
    # groups {0}, {1, 2}, {3} in a line via edges 0-1 and 2-3; at max degree 1
    # the middle group cannot be a single vertex, and the optimum is 2
    inst = Instance.build(4, 3, [(0, 1), (2, 3)], [], [[0], [1], [1], [2]])
    trace = LseTrace()
    sol = solve_lse_rules(inst, trace)
    assert sol.size == 2 == solve_oracle(inst, Variant.LSE).size
    assert trace.steps[0].rule == "iii"


def test_rules_strictly_shrink_g():
    for seed in range(30):
        inst = generate_random(LSE_PARAMS, seed)
        trace = LseTrace()
        solve_lse_rules(inst, trace)
        assert all(s.removed >= 1 for s in trace.steps)
        assert sum(s.removed for s in trace.steps) == sum(1 for lst in inst.lists if lst)


def test_lse_rules_preconditions():
    with pytest.raises(PreconditionError):
        solve_lse_rules(Instance.build(3, 3, [(0, 1), (1, 2)], [], [[0], [1], [2]]))
    with pytest.raises(PreconditionError):
        solve_lse_rules(Instance.build(2, 2, [], [(0, 1)], [[0], [1]]))
    with pytest.raises(PreconditionError):
        solve_lse_rules(Instance.build(1, 2, [], [], [[0, 1]]))


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_lse_rules_match_oracle(seed):
    inst = generate_random(LSE_PARAMS, seed)
    sol = solve_lse_rules(inst)
    assert check_embedding(inst, sol.embedding, Variant.LSE)
    assert sol.size == solve_oracle(inst, Variant.LSE).size


def test_matching_graph_weight_two():
    mg = build_matching_graph(Instance.build(2, 2, [(0, 1)], [(0, 1)], [[0], [1]]))
    assert len(mg.x_nodes) == 1 and len(mg.y_nodes) == 1
    assert mg.weighted_edges == ((0, 0, 2),)


def test_matching_graph_vertex_vertex():
    mg = build_matching_graph(Instance.build(1, 1, [], [], [[0]]))
    assert mg.weighted_edges == ((0, 0, 1),)


def test_matching_graph_vertex_to_h_edge_single_link():
    mg = build_matching_graph(Instance.build(1, 2, [], [(0, 1)], [[0, 1]]))
    assert mg.weighted_edges == ((0, 0, 1),)


def test_matching_graph_precondition():
    with pytest.raises(PreconditionError):
        build_matching_graph(Instance.build(3, 3, [(0, 1), (1, 2)], [], [[0], [1], [2]]))


def test_literal_rules_miss_one_sided_edge_pairs():
    # G-edge {0,1}, H-edge {0,1}, L(0)={0}, L(1) empty: optimum 1 (0 -> 0)
    inst = Instance.build(2, 2, [(0, 1)], [(0, 1)], [[0], []])
    assert solve_oracle(inst, Variant.LISE).size == 1
    literal = build_matching_graph(inst, complete=False)
    assert max_weight_matching(literal)[1] == 0
    assert solve_lise_matching(inst).size == 1


def test_max_weight_matching_small():
    assert max_weight_matching(MatchingGraph((), (), ()))[1] == 0
    assert max_weight_matching(MatchingGraph((0,), (0,), ((0, 0, 2),)))[1] == 2
    star = MatchingGraph((0,), (0, 1), ((0, 0, 1), (0, 1, 1)))
    assert max_weight_matching(star)[1] == 1


def test_max_weight_matching_needs_reroute():
    # greedy on the weight-2 edge loses: best is x0-y1 (2) + x1-y0 (2)
    mg = MatchingGraph((0, 1), (0, 1), ((0, 0, 2), (0, 1, 2), (1, 0, 2)))
    pairs, w = max_weight_matching(mg)
    assert w == 4 and pairs == [(0, 1), (1, 0)]


@settings(max_examples=150, deadline=None)
@given(n_x=st.integers(0, 5), n_y=st.integers(0, 5), data=st.data())
def test_max_weight_matching_vs_brute_force(n_x, n_y, data):
    cells = [(x, y) for x in range(n_x) for y in range(n_y)]
    chosen = data.draw(st.lists(st.sampled_from(cells), unique=True, max_size=10)) if cells else []
    ws = data.draw(st.lists(st.sampled_from([1, 2]), min_size=len(chosen), max_size=len(chosen)))
    mg = MatchingGraph(tuple(range(n_x)), tuple(range(n_y)), tuple((x, y, w) for (x, y), w in zip(chosen, ws)))
    pairs, w = max_weight_matching(mg)
    assert w == max(matching_weight(mg, m) for m in all_matchings(mg))
    assert len({x for x, _ in pairs}) == len(pairs) == len({y for _, y in pairs})


def test_matching_to_solution_rejects_foreign_pair():
    inst = Instance.build(1, 1, [], [], [[0]])
    mg = build_matching_graph(inst)
    with pytest.raises(InternalError):
        matching_to_solution(mg, [(0, 3)], inst)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_lise_pipeline_and_every_matching(seed):
    inst = generate_random(LISE_PARAMS, seed)
    sol = solve_lise_matching(inst)
    assert check_embedding(inst, sol.embedding, Variant.LISE)
    assert sol.size == solve_oracle(inst, Variant.LISE).size
    mg = build_matching_graph(inst)
    rng = random.Random(seed)
    matchings = list(itertools.islice(all_matchings(mg), 400))
    for m in rng.sample(matchings, min(20, len(matchings))):
        s = matching_to_solution(mg, m, inst)
        assert check_embedding(inst, s.embedding, Variant.LISE)
        assert s.size == matching_weight(mg, m)
