import itertools

import numpy as np
import pytest

from tsuic import (
    CapExceeded,
    InstanceError,
    bounds_report,
    check_decodability,
    check_sender_constraint,
    load_example,
    oracle_beta1_linear,
    reduce_instance,
    verify_code,
)
from tsuic.schemes import IndexCode, make_row

from conftest import cycle_instance, make_instance, random_instance


def code_of(q, *rows):
    return IndexCode(q, tuple(make_row(s, c, q) for s, c in rows))


def test_sender_constraint_examples():
    inst = load_example("four_cycle")
    for tag in (1, 2):
        assert not check_sender_constraint(inst, code_of(2, (tag, {1: 1, 4: 1}))).passed
        assert check_sender_constraint(inst, code_of(2, (tag, {2: 1, 3: 1}))).passed
    rep = check_sender_constraint(inst, code_of(2, (1, {1: 1, 2: 1}), (2, {1: 1, 2: 1})))
    assert rep.rows_ok == (True, False)
    assert rep.failing_rows == [1]


def test_decodability_examples():
    tri = cycle_instance(3)
    assert check_decodability(tri, code_of(2, (1, {1: 1, 2: 1}), (1, {2: 1, 3: 1}))).passed
    rep = check_decodability(tri, code_of(2, (1, {1: 1, 2: 1})))
    assert rep.receivers_ok == (True, False, False)
    assert rep.failing_receivers == [2, 3]


def test_hand_code_on_two_triangles():
    inst = load_example("two_triangles")
    code = code_of(2, (1, {1: 1, 7: 1}), (2, {3: 1, 7: 1}), (1, {2: 1}), (2, {4: 1, 6: 1}), (2, {5: 1, 6: 1}))
    rep = verify_code(inst, code)
    assert rep.passed and rep.length == 5


def test_out_of_range_code_rejected():
    with pytest.raises(InstanceError):
        verify_code(cycle_instance(3), code_of(2, (1, {4: 1})))


def simulate_decoding(inst, code):
    """Decode by exhaustion: x_r must be a function of (codeword, side information)."""
    g = code.matrix(inst.n)
    verdicts = []
    for r in inst.vertices:
        seen = {}
        ok = True
        for x in itertools.product(range(code.q), repeat=inst.n):
            xv = np.array(x)
            key = (tuple((g @ xv) % code.q), tuple(x[j - 1] for j in sorted(inst.side_info[r - 1])))
            if seen.setdefault(key, x[r - 1]) != x[r - 1]:
                ok = False
                break
        verdicts.append(ok)
    return tuple(verdicts)


def random_code(rng, inst, q):
    rows = []
    for _ in range(rng.randint(0, inst.n + 1)):
        support = [m for m in inst.vertices if rng.random() < 0.5] or [rng.randint(1, inst.n)]
        rows.append((rng.choice((1, 2)), {m: rng.randint(1, q - 1) for m in support}))
    return code_of(q, *rows)


@pytest.mark.parametrize("q", [2, 3])
def test_decodability_matches_simulation(rng, q):
    for _ in range(60):
        inst = random_instance(rng, rng.randint(1, 4 if q == 2 else 3))
        code = random_code(rng, inst, q)
        assert check_decodability(inst, code).receivers_ok == simulate_decoding(inst, code)


def test_oracle_examples():
    assert oracle_beta1_linear(make_instance(2, [], {1, 2}, {1})) == 2
    assert oracle_beta1_linear(make_instance(2, [(1, 2), (2, 1)], {1}, {2})) == 2
    assert oracle_beta1_linear(make_instance(2, [(1, 2), (2, 1)], {1, 2}, {2})) == 1
    assert oracle_beta1_linear(cycle_instance(3)) == 2
    assert oracle_beta1_linear(load_example("five_cycle")) == 4


def brute_oracle(inst):
    """Smallest list of sender-admissible GF(2) rows whose span lets every receiver decode."""
    cands = set()
    for tag, held in ((1, inst.sender1), (2, inst.sender2)):
        for k in range(1, len(held) + 1):
            for sup in itertools.combinations(sorted(held), k):
                cands.add(sup)
    cands = sorted(cands)
    for length in range(1, inst.n + 1):
        for rows in itertools.combinations(cands, length):
            code = code_of(2, *[(1, {m: 1 for m in sup}) for sup in rows])
            if all(simulate_decoding(inst, code)):
                return length


def test_oracle_matches_brute_force(rng):
    for _ in range(40):
        inst = random_instance(rng, rng.randint(1, 4))
        assert oracle_beta1_linear(inst) == brute_oracle(inst)


def test_oracle_caps():
    with pytest.raises(CapExceeded):
        oracle_beta1_linear(cycle_instance(7))
    assert oracle_beta1_linear(make_instance(3, [], {1, 2, 3}, {1}), max_length=2) is None


def test_reduce_examples():
    assert reduce_instance(make_instance(4, [], range(1, 5), {2})).kind == "single-sender"
    rep = reduce_instance(make_instance(4, [(1, 2), (3, 4)], {1, 2}, {3, 4}))
    assert rep.kind == "decomposable"
    assert [labels for _, labels in rep.parts] == [(1, 2), (3, 4)]
    assert rep.parts[0][0].side_info == (frozenset({2}), frozenset())
    assert reduce_instance(make_instance(3, [], {1, 2}, {2, 3})).kind == "irreducible"


def test_bounds_report_two_triangles():
    rep = bounds_report(load_example("two_triangles"))
    assert rep.local_chromatic_code == 6
    assert rep.partitioned_local == 5
    assert not rep.ordering_violated


def test_bounds_report_pins_rate_on_disjoint_cycles():
    arcs = [(1, 2), (2, 1), (3, 4), (4, 5), (5, 3)]
    rep = bounds_report(make_instance(5, arcs, {1, 3}, {1, 2, 3, 4, 5}), include_oracle=True)
    assert rep.mais == rep.cycle_cover == rep.linear_optimal == 3
    assert rep.pinned == 3


def test_bounds_report_pins_rate_on_disjoint_cliques():
    arcs = [(1, 2), (2, 1), (3, 4), (4, 3), (4, 5), (5, 4), (3, 5), (5, 3)]
    rep = bounds_report(make_instance(6, arcs, {1, 2, 6}, {3, 4, 5}))
    assert rep.mais == rep.clique_cover == 3
    assert rep.pinned == 3


def test_bounds_report_partial_on_caps():
    rep = bounds_report(cycle_instance(5), include_oracle=True, caps={"color": 3, "oracle": 4})
    assert rep.clique_cover is None and "clique_cover" in rep.missing
    assert rep.linear_optimal is None and "linear_optimal" in rep.missing
    assert rep.mais == 4 and rep.cycle_cover == 4
    assert not rep.ordering_violated


def test_bounds_report_parallel_matches_sequential():
    inst = load_example("five_cycle")
    assert bounds_report(inst, True, workers=3).to_dict() == bounds_report(inst, True).to_dict()


def test_ordering_violation_flag_is_raised():
    from tsuic.verify import BoundsReport, ordering_violations

    rep = BoundsReport(4, mais=3, partitioned_local=2, local_chromatic_code=3, clique_cover=3)
    assert ordering_violations(rep) == ["mais=3 > partitioned_local=2"]
