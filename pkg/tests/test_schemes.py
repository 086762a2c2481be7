import itertools

import networkx as nx
import pytest

from tsuic import (
    build_union_graph,
    clique_cover,
    cycle_cover,
    enumerate_colorings,
    load_example,
    local_chromatic_code,
    partitioned_local_chromatic,
    run_scheme,
    trivial_partition_scheme,
    two_sender_local_chromatic_number,
    verify_code,
)
from tsuic.graphs import chromatic_number
from tsuic.schemes import SCHEME_NAMES, local_measures

from conftest import cycle_instance, make_instance, random_instance, set_partitions


def rows_as_sets(code):
    return sorted(sorted(m for m, _ in r.coeffs) for r in code.rows)


def test_cycle_cover_on_triangle():
    res = cycle_cover(cycle_instance(3))
    assert res.length == 2
    assert rows_as_sets(res.code) == [[1, 2], [1, 3]]


def test_cycle_cover_unusable_two_cycle():
    res = cycle_cover(make_instance(2, [(1, 2), (2, 1)], {1}, {2}))
    assert res.length == 2
    assert rows_as_sets(res.code) == [[1], [2]]
    assert [r.sender for r in res.code.rows] == [1, 2]


def test_cycle_cover_disjoint_cycles():
    arcs = [(1, 2), (2, 1), (3, 4), (4, 5), (5, 3)]
    res = cycle_cover(make_instance(5, arcs, {1, 3, 4}, {1, 2, 3, 5}))
    assert res.length == 3
    assert verify_code(make_instance(5, arcs, {1, 3, 4}, {1, 2, 3, 5}), res.code).passed


def brute_cycle_cover(inst):
    g = nx.DiGraph()
    g.add_nodes_from(inst.vertices)
    g.add_edges_from(inst.digraph().arcs)
    go = nx.Graph()
    go.add_nodes_from(inst.vertices)
    go.add_edges_from((i, j) for i in inst.private1 for j in inst.private2)
    gbar = nx.complement(go)
    usable = {frozenset(c) for c in nx.simple_cycles(g) if nx.is_connected(gbar.subgraph(c))}
    best = 0
    for k in range(1, len(usable) + 1):
        if any(sum(map(len, combo)) == len(frozenset().union(*combo)) for combo in itertools.combinations(usable, k)):
            best = k
        else:
            break
    return inst.n - best


def test_cycle_cover_matches_brute_packing(rng):
    for _ in range(80):
        inst = random_instance(rng, rng.randint(1, 6), density=0.35)
        res = cycle_cover(inst)
        assert res.length == brute_cycle_cover(inst)
        for row in res.code.rows:
            if len(row.coeffs) > 1:
                assert len(row.coeffs) == 2
                held = inst.sender1 if row.sender == 1 else inst.sender2
                assert row.support <= held


def test_clique_cover_examples():
    everyone = make_instance(3, [(i, j) for i in range(1, 4) for j in range(1, 4) if i != j], {1, 2, 3}, {1})
    res = clique_cover(everyone)
    assert res.length == 1
    assert rows_as_sets(res.code) == [[1, 2, 3]] and res.code.rows[0].sender == 1
    nobody = make_instance(4, [], {1, 2}, {3, 4})
    res = clique_cover(nobody)
    assert res.length == 4 and all(len(r.coeffs) == 1 for r in res.code.rows)


def test_clique_cover_on_five_cycle():
    # the union graph is complete, so every color class is a singleton
    assert clique_cover(load_example("five_cycle")).length == 5


def test_local_chromatic_number_examples():
    assert two_sender_local_chromatic_number(load_example("five_cycle")) == 4
    assert two_sender_local_chromatic_number(make_instance(2, [(1, 2), (2, 1)], {1, 2}, {1, 2})) == 1


def brute_local(inst, with_sender_colors):
    best = None
    for col in enumerate_colorings(build_union_graph(inst)):
        nl, jo = local_measures(inst, col)
        val = max(nl, len(jo)) if with_sender_colors else nl
        best = val if best is None else min(best, val)
    return best


def test_local_searches_match_enumeration(rng):
    for _ in range(120):
        inst = random_instance(rng, rng.randint(1, 7))
        chi = chromatic_number(build_union_graph(inst))[0]
        lc = two_sender_local_chromatic_number(inst)
        res = local_chromatic_code(inst)
        assert lc == brute_local(inst, False)
        assert res.length == brute_local(inst, True)
        assert lc <= res.length <= chi
        assert res.details["N_l"] <= res.length and len(res.details["J_o"]) <= res.length


def test_local_code_two_cycle():
    inst = make_instance(2, [(1, 2), (2, 1)], {1, 2}, {2})
    res = local_chromatic_code(inst)
    assert res.length == 1
    assert [(r.sender, r.coeffs) for r in res.code.rows] == [(1, ((1, 1), (2, 1)))]


def test_local_code_without_side_information_is_uncoded():
    inst = make_instance(4, [], {1, 2, 3}, {3, 4})
    res = local_chromatic_code(inst)
    assert res.length == 4
    assert rows_as_sets(res.code) == [[1], [2], [3], [4]]


def test_local_code_rows_respect_senders(rng):
    for _ in range(150):
        inst = random_instance(rng, rng.randint(1, 7))
        code = local_chromatic_code(inst).code
        for row in code.rows:
            assert row.support <= inst.sender1 or row.support <= inst.sender2
        assert verify_code(inst, code).passed


def test_two_triangles_local_and_partitioned():
    inst = load_example("two_triangles")
    assert local_chromatic_code(inst).length == 6
    res = partitioned_local_chromatic(inst)
    assert res.length == 5
    assert sorted(zip(res.details["parts"], res.details["alphas"])) == [([1, 3, 7], 2), ([2], 1), ([4, 5, 6], 2)]
    assert verify_code(inst, res.code).passed


def test_partitioned_single_vertex():
    assert partitioned_local_chromatic(make_instance(1, [], {1}, {1})).length == 1


def test_partitioned_matches_partition_enumeration(rng):
    for _ in range(25):
        inst = random_instance(rng, rng.randint(1, 5))
        best = min(
            sum(local_chromatic_code(inst.restrict(part)[0]).length for part in parts)
            for parts in set_partitions(inst.vertices)
        )
        res = partitioned_local_chromatic(inst)
        assert res.length == best
        assert res.length <= local_chromatic_code(inst).length


def test_trivial_scheme_degenerates_with_full_sender():
    inst = cycle_instance(4, sender1=range(1, 5), sender2={2})
    res = trivial_partition_scheme(inst, "cycle")
    assert res.details["parts"] == [[1, 2, 3, 4]]
    assert res.length == cycle_cover(inst).length == 3


def test_trivial_scheme_splits_by_sender_without_common_messages(rng):
    for _ in range(30):
        inst = random_instance(rng, rng.randint(2, 6), density=0.5)
        if inst.common:
            continue
        res = trivial_partition_scheme(inst, "cycle")
        for part in res.details["parts"]:
            assert set(part) <= inst.sender1 or set(part) <= inst.sender2
        expected = 0
        for held in (inst.sender1, inst.sender2):
            if held:
                sub, _ = inst.restrict(held)
                everything = range(1, sub.n + 1)
                expected += cycle_cover(sub.with_senders(everything, everything)).length
        assert res.length == expected


def test_trivial_scheme_two_cycle_split():
    inst = make_instance(2, [(1, 2), (2, 1)], {1}, {2})
    assert trivial_partition_scheme(inst, "cycle").length == 2


@pytest.mark.parametrize("name", SCHEME_NAMES)
def test_every_scheme_is_sound(name, rng):
    for _ in range(40):
        inst = random_instance(rng, rng.randint(1, 7))
        res = run_scheme(inst, name)
        assert res.length == res.code.length
        assert verify_code(inst, res.code).passed, (name, inst)


def test_run_scheme_unknown():
    inst = cycle_instance(3)
    with pytest.raises(ValueError):
        run_scheme(inst, "fountain")
    with pytest.raises(ValueError):
        run_scheme(inst, "trivial:fountain")


def test_empty_sender_constraint_uses_same_lengths_as_single_sender(rng):
    for _ in range(40):
        inst = random_instance(rng, rng.randint(1, 6))
        everything = range(1, inst.n + 1)
        solo = inst.with_senders(everything, everything)
        assert cycle_cover(solo).length == trivial_partition_scheme(solo, "cycle").length
        assert clique_cover(solo).length == chromatic_number(build_union_graph(solo))[0]
        assert cycle_cover(inst).length >= cycle_cover(solo).length
