import random

from peakcheck.pqtree import (
    PQTree,
    backtracking_c1p,
    rows_consecutive_under,
    solve_c1p_sets,
)


def test_trivial_cases():
    assert solve_c1p_sets([], 0) == []
    assert solve_c1p_sets([], 3) is not None
    assert solve_c1p_sets([{0}], 3) is not None
    assert solve_c1p_sets([{0, 1, 2}], 3) is not None


def test_known_negative():
    rows = [{0, 2}, {1, 2}, {0, 1}]
    assert solve_c1p_sets(rows, 3) is None
    assert backtracking_c1p(rows, 3) is None


def test_tucker_forbidden_cycle():
    # the cyclic pattern over 4+ columns is a classical non-C1P matrix
    rows = [{0, 1}, {1, 2}, {2, 3}, {3, 0}]
    assert solve_c1p_sets(rows, 4) is None


def test_interval_instances_solved():
    rng = random.Random(1)
    for _ in range(400):
        m = rng.randint(2, 10)
        perm = list(range(m))
        rng.shuffle(perm)
        rows = []
        for _ in range(rng.randint(1, 12)):
            i = rng.randint(0, m - 1)
            j = rng.randint(i, m - 1)
            rows.append(set(perm[i : j + 1]))
        got = solve_c1p_sets(rows, m)
        assert got is not None
        assert rows_consecutive_under(rows, got)


def test_agreement_with_backtracking():
    rng = random.Random(2)
    for _ in range(1500):
        m = rng.randint(1, 9)
        rows = [
            set(rng.sample(range(m), rng.randint(0, m)))
            for _ in range(rng.randint(0, 8))
        ]
        got = solve_c1p_sets(rows, m)
        ref = backtracking_c1p(rows, m)
        assert (got is None) == (ref is None)
        if got is not None:
            assert rows_consecutive_under(rows, got)


def test_reduce_incremental():
    tree = PQTree(5)
    assert tree.reduce({0, 1})
    assert tree.reduce({1, 2})
    assert tree.reduce({0, 1, 2, 3})
    frontier = tree.frontier()
    assert sorted(frontier) == list(range(5))
    assert rows_consecutive_under([{0, 1}, {1, 2}, {0, 1, 2, 3}], frontier)
    assert not tree.reduce({0, 2, 4})


def test_hypothesis_agreement_with_backtracking():
    from hypothesis import given, settings
    from hypothesis import strategies as st

    @st.composite
    def instances(draw):
        m = draw(st.integers(2, 7))
        rows = draw(
            st.lists(
                st.sets(st.integers(0, m - 1), max_size=m), min_size=0, max_size=6
            )
        )
        return m, rows

    @given(instances())
    @settings(max_examples=300, deadline=None)
    def run(case):
        m, rows = case
        got = solve_c1p_sets(rows, m)
        ref = backtracking_c1p(rows, m)
        assert (got is None) == (ref is None)
        if got is not None:
            assert rows_consecutive_under(rows, got)

    run()
