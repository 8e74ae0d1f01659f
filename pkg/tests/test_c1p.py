import random

import pytest

from conftest import random_weak, random_weak_profile
from peakcheck import axis_check, oracle
from peakcheck.c1p import (
    C1Matrix,
    build_black_matrix,
    build_plateaued_matrix,
    build_psp_matrix,
    recognize_black,
    recognize_necessary,
    recognize_plateaued,
    recognize_psp_c1p,
    solve_c1p,
)
from peakcheck.errors import ClassError
from peakcheck.model import PreferenceOrder, Profile, all_axes, build_order
from peakcheck.pqtree import rows_consecutive_under

EX1_V1 = PreferenceOrder.from_ranks([0, 1, 0, 2, 2, 3])  # <a~c > b > e~d > f>
EX1_V2 = PreferenceOrder.from_ranks([0, 1, 2, 3, 3, 4])  # <a > b > c > e~d > f>
EX1 = Profile(6, (EX1_V1, EX1_V2))

X1_EXPECTED = [
    [1, 0, 1, 0, 0, 0],
    [1, 1, 1, 0, 0, 0],
    [1, 0, 1, 0, 0, 0],
    [1, 1, 1, 1, 1, 0],
    [1, 1, 1, 1, 1, 0],
    [1, 1, 1, 1, 1, 1],
]
X2_EXPECTED = [
    [1, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0],
    [1, 1, 1, 0, 0, 0],
    [1, 1, 1, 1, 1, 0],
    [1, 1, 1, 1, 1, 0],
    [1, 1, 1, 1, 1, 1],
]


def test_worked_example_matrices_bit_exact():
    mat = build_psp_matrix(EX1)
    dense = mat.dense()
    assert dense[:6] == X1_EXPECTED
    assert dense[6:] == X2_EXPECTED
    assert [p[:2] for p in mat.provenance] == [(0, "base")] * 6 + [(1, "base")] * 6


def test_base_matrix_small_cases():
    single = Profile(2, (PreferenceOrder.from_total([0, 1]),))
    assert build_psp_matrix(single).dense() == [[1, 0], [1, 1]]
    tied = Profile(2, (PreferenceOrder.empty(2),))
    assert build_psp_matrix(tied).dense() == [[1, 1], [1, 1]]


def test_base_matrix_rejects_partial():
    prof = Profile(4, (build_order([(0, 2), (1, 2)], 4),))
    with pytest.raises(ClassError):
        build_psp_matrix(prof)


def test_plateau_gadget_columns():
    # V = <p > a~b> with p=0, a=1, b=2
    prof = Profile(3, (PreferenceOrder.from_ranks([0, 1, 1]),))
    mat = build_plateaued_matrix(prof)
    gadget = mat.dense()[3:]
    assert [row[0] for row in gadget] == [1, 1, 1]
    assert [row[1] for row in gadget] == [0, 1, 1]
    assert [row[2] for row in gadget] == [1, 1, 0]
    assert [p[1] for p in mat.provenance[3:]] == [
        "plateau-gadget-1",
        "plateau-gadget-2",
        "plateau-gadget-3",
    ]


def test_plateaued_short_circuit_on_triple():
    prof = Profile(4, (PreferenceOrder.from_ranks([0, 1, 1, 1]),))
    mat = build_plateaued_matrix(prof)
    assert mat.short_circuit
    assert solve_c1p(mat) is None
    assert not recognize_plateaued(prof).consistent


def test_plateaued_total_vote_has_no_gadgets():
    prof = Profile(3, (PreferenceOrder.from_total([2, 0, 1]),))
    base = build_psp_matrix(prof)
    plat = build_plateaued_matrix(prof)
    assert plat.dense() == base.dense()


def test_black_short_circuit_on_top_plateau():
    prof = Profile(3, (PreferenceOrder.from_ranks([0, 0, 1]),))
    mat = build_black_matrix(prof)
    assert mat.short_circuit
    assert not recognize_black(prof).consistent


def test_black_equals_plateaued_for_totals():
    prof = Profile(3, (PreferenceOrder.from_total([0, 1, 2]),))
    assert build_black_matrix(prof).dense() == build_plateaued_matrix(prof).dense()


def test_solve_c1p_examples():
    assert solve_c1p(build_psp_matrix(EX1)) is not None
    all_ones = C1Matrix(3, [0b111, 0b111], [(0, "base", 0)] * 2)
    assert solve_c1p(all_ones) == [0, 1, 2]
    neg = C1Matrix(3, [0b101, 0b110, 0b011], [(0, "base", 0)] * 3)
    assert solve_c1p(neg) is None
    assert solve_c1p(neg, use_backtracking=True) is None


def test_recognize_worked_example():
    res = recognize_psp_c1p(EX1)
    assert res.consistent
    assert axis_check.is_possibly_sp_on_axis(EX1, res.axis).consistent


def test_recognize_example_2_profile():
    v1 = PreferenceOrder.from_ranks([0, 1, 2, 2, 3])
    v2 = PreferenceOrder.from_ranks([0, 0, 0, 1, 2])
    v3 = PreferenceOrder.from_ranks([3, 1, 2, 0, 0])
    prof = Profile(5, (v1, v2, v3))
    assert not recognize_psp_c1p(prof).consistent
    assert not oracle.oracle_recognize(prof, "psp").consistent


def test_fishburn_profile_psp_but_not_plateaued():
    v1 = PreferenceOrder.from_total([1, 0, 2])
    v23 = PreferenceOrder.from_total([2, 1, 0])
    v45 = PreferenceOrder.from_ranks([0, 1, 1])
    prof = Profile(3, (v1, v23, v45), (1, 2, 2))
    assert recognize_psp_c1p(prof).consistent
    assert not recognize_plateaued(prof).consistent
    assert not oracle.oracle_recognize(prof, "plateaued").consistent


def test_permutation_makes_all_rows_consecutive():
    rng = random.Random(0)
    for _ in range(200):
        prof = random_weak_profile(rng.randint(1, 6), rng.randint(1, 5), rng)
        mat = build_psp_matrix(prof)
        perm = solve_c1p(mat)
        if perm is not None:
            rows = [
                {c for c in range(mat.m) if (mask >> c) & 1} for mask in mat.rows
            ]
            assert rows_consecutive_under(rows, perm)


def test_constructions_match_axis_checks_per_axis():
    # a column order witnesses the matrix iff the corresponding axis passes
    # the independent substructure check, for all three constructions
    rng = random.Random(1)
    for _ in range(150):
        m = rng.randint(1, 5)
        prof = Profile(m, tuple(random_weak(m, rng) for _ in range(rng.randint(1, 3))))
        psp_mat = build_psp_matrix(prof)
        plat_mat = build_plateaued_matrix(prof)
        black_mat = build_black_matrix(prof)
        for ax in all_axes(m, halve_by_reversal=False):
            perm = list(ax.order)

            def consecutive(mat):
                if mat.short_circuit:
                    return False
                rows = [
                    {c for c in range(mat.m) if (mask >> c) & 1} for mask in mat.rows
                ]
                return rows_consecutive_under(rows, perm)

            assert consecutive(psp_mat) == axis_check.is_possibly_sp_on_axis(
                prof, ax
            ).consistent
            assert consecutive(plat_mat) == axis_check.check_plateaued_on_axis(
                prof, ax
            ).consistent
            assert consecutive(black_mat) == axis_check.check_black_on_axis(
                prof, ax
            ).consistent


def test_recognizers_agree_with_oracle():
    rng = random.Random(2)
    for _ in range(400):
        prof = random_weak_profile(rng.randint(1, 6), rng.randint(1, 6), rng)
        assert (
            recognize_psp_c1p(prof).consistent
            == oracle.oracle_recognize(prof, "psp").consistent
        )
        assert (
            recognize_plateaued(prof).consistent
            == oracle.oracle_recognize(prof, "plateaued").consistent
        )
        assert (
            recognize_black(prof).consistent
            == oracle.oracle_recognize(prof, "black").consistent
        )


def test_monotone_containment_of_recognizers():
    rng = random.Random(3)
    for _ in range(300):
        prof = random_weak_profile(rng.randint(1, 6), rng.randint(1, 6), rng)
        chain = [
            recognize_black(prof).consistent,
            recognize_necessary(prof).consistent,
            recognize_plateaued(prof).consistent,
            recognize_psp_c1p(prof).consistent,
        ]
        for stronger, weaker in zip(chain, chain[1:]):
            assert not stronger or weaker


def test_matrix_text_dump():
    mat = build_psp_matrix(Profile(2, (PreferenceOrder.from_total([0, 1]),)))
    text = mat.to_text(["a", "b"])
    assert text.splitlines()[0].split() == ["a", "b"]
    assert text.splitlines()[1].split() == ["1", "0"]


def test_gadget_rows_block_same_side_pairs():
    # whenever a non-top indifferent pair sits on one side of the peak, the
    # three gadget rows cannot all be consecutive (exhaustive, m <= 5)
    rng = random.Random(4)
    for _ in range(200):
        m = rng.randint(3, 5)
        vote = random_weak(m, rng)
        prof = Profile(m, (vote,))
        mat = build_plateaued_matrix(prof)
        if mat.short_circuit:
            continue
        gadget_rows = [
            {c for c in range(m) if (mask >> c) & 1}
            for mask, prov in zip(mat.rows, mat.provenance)
            if prov[1].startswith("plateau-gadget")
        ]
        if not gadget_rows:
            continue
        tops = {c for c in range(m) if vote.ranks[c] == 0}
        pairs = [
            tuple(b)
            for b in vote.buckets()[1:]
            if len(b) == 2
        ]
        for ax in all_axes(m, halve_by_reversal=False):
            pos = ax.positions()
            same_side = False
            for a, b in pairs:
                lo = min(pos[a], pos[b])
                hi = max(pos[a], pos[b])
                if not any(lo < pos[p] < hi for p in tops):
                    same_side = True
            if same_side:
                assert not rows_consecutive_under(gadget_rows, list(ax.order))
