import itertools

import pytest
from hypothesis import given, settings, strategies as st

from olse.core import Instance, PreconditionError, Variant, check_embedding, degree_stats
from olse.exact import solve_oracle
from olse.instances import GeneratorParams, generate_random
from olse.split import (
    SplitInstance,
    TrialBudget,
    build_conflict_graph,
    conflict_graph,
    permutation_mis,
    simplify,
    solve_random_sep_simple,
    solve_split_fpt,
    split,
    trial_count,
)

from conftest import identity_instance

SPLIT_PARAMS = GeneratorParams(6, 6, max_deg_g=2, max_deg_h=2, max_list=2, density_g=0.4, density_h=0.4)


def brute_mis(cg):
    best = 0
    for r in range(len(cg), 0, -1):
        if any(cg.is_independent(c) for c in itertools.combinations(range(len(cg)), r)):
            return r
    return best


def brute_non_crossing(segments):
    for r in range(len(segments), 0, -1):
        for combo in itertools.combinations(sorted(segments), r):
            if all(b[1] > a[1] for a, b in zip(combo, combo[1:])):
                return r
    return 0


def test_split_two_entry_list():
    s = split(Instance.build(1, 2, [], [], [[0, 1]]))
    assert s.segments == ((0, 1), (1, 0))
    assert s.origin_h == (1, 0)


def test_split_distinct_singletons_is_identity():
    s = split(identity_instance(4))
    assert s.segments == tuple((i, i) for i in range(4))


def test_split_replicates_g_edges():
    # one vertex with three entries, one with two, joined by a G-edge
    inst = Instance.build(2, 5, [(0, 1)], [], [[0, 1, 2], [3, 4]])
    assert len(split(inst).split_edges_g) == 6


def test_split_drops_empty_lists():
    s = split(Instance.build(3, 2, [], [], [[], [1], []]))
    assert s.origin_g == (1,)


def test_copies_of_one_vertex_cross():
    inst = generate_random(GeneratorParams(5, 5, max_list=3, min_list=2), 11)
    cg = conflict_graph(inst)
    for i, j in itertools.combinations(range(len(cg)), 2):
        if cg.origin_g[i] == cg.origin_g[j] or cg.origin_h[i] == cg.origin_h[j]:
            assert cg.crossing(i, j)


def test_simplify_cases():
    s = SplitInstance((0, 1, 2), (0, 1, 2), (0, 1, 2), frozenset({(0, 1), (1, 2)}), frozenset({(0, 1), (0, 2)}))
    out = simplify(s)
    assert out.split_edges_h == frozenset()
    assert out.split_edges_g == frozenset({(1, 2)})


def test_conflict_graph_edges():
    assert build_conflict_graph(simplify(split(identity_instance(3)))).conflict_edges == frozenset()
    cg = conflict_graph(identity_instance(2, [(0, 1)]))
    assert cg.conflict_edges == frozenset({(0, 1)})
    with pytest.raises(PreconditionError):
        build_conflict_graph(split(identity_instance(2, [], [(0, 1)])))


def test_permutation_mis_examples():
    assert len(permutation_mis([(0, 0), (1, 1), (2, 2)])) == 3
    assert len(permutation_mis([(0, 1), (1, 0), (2, 2)])) == 2
    assert len(permutation_mis([(0, 2), (1, 1), (2, 0)])) == 1
    assert permutation_mis([]) == []


@settings(max_examples=100, deadline=None)
@given(st.permutations(range(9)), st.integers(0, 9))
def test_permutation_mis_vs_brute(perm, drop):
    segs = [(g, h) for g, h in enumerate(perm) if g != drop]
    best = permutation_mis(segs)
    assert len(best) == brute_non_crossing(segs)
    assert all(b[0] > a[0] and b[1] > a[1] for a, b in zip(best, best[1:]))
    assert set(best) <= set(segs)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_conflict_degree_and_equivalence(seed):
    inst = generate_random(SPLIT_PARAMS, seed)
    dg, _, dl = degree_stats(inst)
    cg = conflict_graph(inst)
    assert cg.max_conflict_degree() <= dl * dg
    assert brute_mis(cg) == solve_oracle(inst, Variant.OLSE).size


def test_split_fpt_trivial_cases():
    inst = identity_instance(3, [(0, 1)])
    res = solve_split_fpt(inst, 0)
    assert res.decision and res.size == 0
    res = solve_split_fpt(inst, 4)
    assert not res.decision


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), mode=st.sampled_from(["auto", "exhaustive", "random"]))
def test_split_fpt_matches_oracle(seed, mode):
    inst = generate_random(SPLIT_PARAMS, seed)
    opt = solve_oracle(inst, Variant.OLSE).size
    budget = TrialBudget(seed=seed, mode=mode)
    for k in range(1, opt + 2):
        res = solve_split_fpt(inst, k, budget)
        if k > opt:
            assert not res.decision
        elif mode != "random":
            assert res.decision and res.exhaustive
        if res.decision:
            assert res.size == k
            assert check_embedding(inst, res.solution.embedding, Variant.OLSE)


def test_split_fpt_is_reproducible():
    inst = generate_random(SPLIT_PARAMS, 42)
    k = solve_oracle(inst, Variant.OLSE).size
    a = solve_split_fpt(inst, k, TrialBudget(seed=9, mode="random"))
    b = solve_split_fpt(inst, k, TrialBudget(seed=9, mode="random"))
    assert a == b


def test_trial_count():
    assert trial_count(0, 3, 10, 0.01) == 1
    assert trial_count(2, 1, 100, 0.01) == 74  # ceil(16 ln 100)
    assert trial_count(2, 1, 3, 0.01) == 37  # only 3 units coloured


def test_random_sep_path():
    path = identity_instance(4, [(0, 1), (1, 2), (2, 3)])
    assert solve_random_sep_simple(path, 2).decision
    assert not solve_random_sep_simple(path, 3).decision


def test_random_sep_edgeless_single_colouring():
    res = solve_random_sep_simple(identity_instance(5), 5)
    assert res.decision and res.trials == 1


def test_random_sep_precondition():
    with pytest.raises(PreconditionError):
        solve_random_sep_simple(identity_instance(2, [], [(0, 1)]), 1)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), variant=st.sampled_from([Variant.OLSE, Variant.OLISE]))
def test_random_sep_matches_oracle(seed, variant):
    inst = generate_random(GeneratorParams(7, 7, max_deg_g=2, max_deg_h=0, max_list=2), seed)
    opt = solve_oracle(inst, variant).size
    yes = solve_random_sep_simple(inst, opt, TrialBudget(seed=seed), variant)
    assert yes.decision and check_embedding(inst, yes.solution.embedding, variant)
    assert not solve_random_sep_simple(inst, opt + 1, TrialBudget(seed=seed), variant).decision


def test_random_sep_olise_transposes():
    # G edgeless, H with edges: OLISE is handled by swapping roles
    inst = Instance.build(3, 3, [], [(0, 1)], [[0], [1], [2]])
    res = solve_random_sep_simple(inst, 2, variant=Variant.OLISE)
    assert res.decision and check_embedding(inst, res.solution.embedding, Variant.OLISE)
    assert not solve_random_sep_simple(inst, 3, variant=Variant.OLISE).decision
