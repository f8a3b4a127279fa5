import pytest
from hypothesis import given, settings, strategies as st

from olse.core import (
    Embedding,
    Instance,
    MalformedCertificateError,
    Variant,
    check_embedding,
    degree_stats,
    transpose,
    invert_embedding,
    validate_instance,
)
from olse.exact import solve_oracle
from olse.instances import GeneratorParams, generate_random

from conftest import identity_instance


def test_valid_instance_has_no_violations():
    inst = Instance.build(2, 2, [(0, 1)], [(0, 1)], [[0, 1], [1]])
    assert validate_instance(inst) == []


def test_unsorted_list_is_reported():
    inst = Instance(2, 4, (), (), ((3, 1), ()))
    v = validate_instance(inst)
    assert len(v) == 1 and "list not ascending" in v[0]


def test_self_loop_is_reported():
    inst = Instance(2, 2, ((0, 0),), (), ((0,), (1,)))
    v = validate_instance(inst)
    assert len(v) == 1 and "self-loop" in v[0]


def test_other_violations():
    inst = Instance(2, 2, ((0, 1), (0, 1), (0, 5)), (), ((0, 0), (7,)), k=5)
    v = " | ".join(validate_instance(inst))
    for frag in ("duplicate", "out of range", "k"):
        assert frag in v


def test_build_normalizes():
    inst = Instance.build(3, 3, [(1, 0)], [], [[2, 0, 2], [], [1]])
    assert inst.edges_g == ((0, 1),)
    assert inst.lists == ((0, 2), (), (1,))


def test_empty_embedding_is_valid_everywhere():
    inst = identity_instance(3, [(0, 1)], [(1, 2)])
    for v in Variant:
        assert check_embedding(inst, Embedding(), v)


def test_missing_h_edge_fails_edge_condition():
    inst = identity_instance(2, [(0, 1)])
    res = check_embedding(inst, Embedding(((0, 0), (1, 1))), Variant.OLSE)
    assert not res and res.condition == "edge"


def test_extra_h_edge_fails_induced_condition():
    inst = identity_instance(2, [], [(0, 1)])
    emb = Embedding(((0, 0), (1, 1)))
    res = check_embedding(inst, emb, Variant.LISE)
    assert not res and res.condition == "induced"
    assert check_embedding(inst, emb, Variant.LSE)


def test_order_condition_only_for_ordered_variants():
    inst = Instance.build(2, 2, [], [], [[1], [0]])
    emb = Embedding(((0, 1), (1, 0)))
    assert check_embedding(inst, emb, Variant.OLSE).condition == "order"
    assert check_embedding(inst, emb, Variant.LSE)


def test_list_condition_and_injectivity():
    inst = Instance.build(2, 2, [], [], [[0], [0]])
    assert check_embedding(inst, Embedding(((0, 1),)), Variant.LSE).condition == "list"
    assert not check_embedding(inst, Embedding(((0, 0), (1, 0))), Variant.LSE)


def test_out_of_range_certificate_raises():
    inst = identity_instance(2)
    with pytest.raises(MalformedCertificateError):
        check_embedding(inst, Embedding(((0, 5),)), Variant.OLSE)
    with pytest.raises(MalformedCertificateError):
        check_embedding(inst, Embedding(((4, 0),)), Variant.OLSE)


def test_degree_stats_examples():
    assert degree_stats(identity_instance(3)) == (0, 0, 1)
    assert degree_stats(identity_instance(3, [(0, 1), (1, 2)]))[0] == 2
    assert degree_stats(Instance.build(2, 3, [], [], [[0, 1], [2]]))[2] == 2
    assert degree_stats(Instance.build(0, 0, [], [], [])) == (0, 0, 0)


def test_transpose_round_trip():
    inst = generate_random(GeneratorParams(5, 6, max_list=3), 3)
    back = transpose(transpose(inst))
    assert back.lists == inst.lists and back.edges_g == inst.edges_g
    sol = solve_oracle(inst, Variant.OLISE)
    assert check_embedding(transpose(inst), invert_embedding(sol.embedding), Variant.OLISE)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6), keep=st.lists(st.booleans(), min_size=8, max_size=8))
def test_restriction_is_hereditary(seed, keep):
    inst = generate_random(GeneratorParams(6, 6, max_list=2, density_g=0.4, density_h=0.4), seed)
    for variant in Variant:
        emb = solve_oracle(inst, variant).embedding
        sub = emb.restrict(u for u, flag in zip(emb.g_vertices, keep) if flag)
        assert check_embedding(inst, sub, variant)
        if variant is Variant.OLISE:
            assert check_embedding(inst, emb, Variant.OLSE)
