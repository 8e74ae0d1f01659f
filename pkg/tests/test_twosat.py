import itertools
import random

import pytest

from conftest import random_local_weak, random_total, random_weak
from peakcheck import oracle
from peakcheck.axis_check import is_possibly_sp_on_axis
from peakcheck.errors import ClassError, NoTotalOrderError
from peakcheck.guided import guided_recognize
from peakcheck.model import PreferenceOrder, Profile, build_order
from peakcheck.twosat import (
    TwoSatInstance,
    encode,
    pair_var,
    recognize_lwo_with_total,
    solve_2sat,
)


def test_encode_valley_clauses():
    vote = build_order([(0, 1), (2, 1)], 3)
    total = PreferenceOrder.from_total([0, 2, 1])
    inst = encode(Profile(3, (vote, total)))
    m = 3
    assert ((pair_var(1, 0, m), False), (pair_var(2, 1, m), False)) in inst.clauses
    assert ((pair_var(0, 1, m), False), (pair_var(1, 2, m), False)) in inst.clauses
    # exclusive-or clauses for every unordered pair
    for a in range(m):
        for b in range(a + 1, m):
            ab, ba = pair_var(a, b, m), pair_var(b, a, m)
            assert ((ab, False), (ba, False)) in inst.clauses
            assert ((ab, True), (ba, True)) in inst.clauses


def test_encode_requires_total_vote():
    vote = build_order([(0, 1), (2, 1)], 3)
    with pytest.raises(NoTotalOrderError):
        encode(Profile(3, (vote,)))


def test_encode_rejects_general_partial_orders():
    # a>b plus c>d is not a local weak order (two separate components of
    # comparability with cross-incomparability is fine, but a diamond is not)
    vote = build_order([(0, 1), (0, 2), (3, 2)], 4)
    total = PreferenceOrder.from_total([0, 1, 2, 3])
    with pytest.raises(ClassError):
        encode(Profile(4, (vote, total)))


def test_single_total_order_satisfiable():
    total = PreferenceOrder.from_total([0, 1, 2])
    res = recognize_lwo_with_total(Profile(3, (total,)))
    assert res.consistent
    assert is_possibly_sp_on_axis(Profile(3, (total,)), res.axis).consistent


def test_solve_2sat_spec_examples():
    inst = TwoSatInstance(2)
    inst.add((0, False), (1, False))
    inst.add((0, True), (1, False))
    model = solve_2sat(inst)
    assert model is not None and model[1] is True
    forced = TwoSatInstance(1)
    forced.add((0, False), (0, False))
    forced.add((0, True), (0, True))
    assert solve_2sat(forced) is None


def test_solve_2sat_against_enumeration():
    rng = random.Random(0)
    for _ in range(1500):
        nv = rng.randint(1, 10)
        inst = TwoSatInstance(nv)
        for _ in range(rng.randint(1, 14)):
            inst.add(
                (rng.randrange(nv), rng.random() < 0.5),
                (rng.randrange(nv), rng.random() < 0.5),
            )
        got = solve_2sat(inst)
        ref = any(
            all(
                (bits[v1] != n1) or (bits[v2] != n2)
                for (v1, n1), (v2, n2) in inst.clauses
            )
            for bits in itertools.product([False, True], repeat=nv)
        )
        assert (got is not None) == ref
        if got is not None:
            assert all(
                (got[v1] != n1) or (got[v2] != n2)
                for (v1, n1), (v2, n2) in inst.clauses
            )


def test_betweenness_gadget_forces_middle():
    # gadget pair for (a, b, c) plus a completing total order: any surviving
    # assignment puts b between a and c
    total = PreferenceOrder.from_total([0, 1, 2])
    prof = Profile(
        3,
        (
            build_order([(0, 2), (1, 2)], 3),
            build_order([(1, 0), (2, 0)], 3),
            total,
        ),
    )
    res = recognize_lwo_with_total(prof)
    assert res.consistent
    pos = res.axis.positions()
    assert min(pos[0], pos[2]) < pos[1] < max(pos[0], pos[2])


def test_example_2_with_explicit_total():
    v1 = PreferenceOrder.from_ranks([0, 1, 2, 2, 3])
    v2 = PreferenceOrder.from_ranks([0, 0, 0, 1, 2])
    v3 = PreferenceOrder.from_ranks([3, 1, 2, 0, 0])
    total = PreferenceOrder.from_total([0, 1, 2, 3, 4])  # implicit guiding vote
    prof = Profile(5, (v1, v2, v3, total))
    assert not recognize_lwo_with_total(prof).consistent


def test_agreement_with_oracle():
    rng = random.Random(1)
    for _ in range(700):
        m = rng.randint(1, 6)
        votes = [random_local_weak(m, rng) for _ in range(rng.randint(1, 6))]
        votes.append(random_total(m, rng))
        prof = Profile(m, tuple(votes))
        res = recognize_lwo_with_total(prof)
        assert res.consistent == oracle.oracle_recognize(prof, "psp").consistent
        if res.consistent:
            assert is_possibly_sp_on_axis(prof, res.axis).consistent


def test_agreement_with_guided_on_weak_profiles():
    rng = random.Random(2)
    for _ in range(300):
        m = rng.randint(1, 8)
        votes = [random_weak(m, rng) for _ in range(rng.randint(1, 5))]
        votes.append(random_total(m, rng))
        prof = Profile(m, tuple(votes))
        lhs = recognize_lwo_with_total(prof).consistent
        rhs = guided_recognize(prof, prof.first_total_order()).consistent
        assert lhs == rhs


def test_dimacs_dump():
    inst = TwoSatInstance(2)
    inst.add((0, False), (1, True))
    text = inst.to_dimacs()
    assert text.splitlines()[0] == "p cnf 2 1"
    assert text.splitlines()[1] == "1 -2 0"
