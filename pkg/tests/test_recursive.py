import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pluq import (
    DenseMatrix,
    OpCounts,
    Permutation,
    PrimeField,
    TrackingWorkspace,
    base_case_col,
    base_case_row,
    build_s_perm,
    build_t_perm,
    gen_rank_deficient_leu,
    leading_rank_profiles,
    pluq,
    pluq_iterative,
    rank_naive,
)
from pluq.oracle import LeadingProfileTable
from conftest import mat, random_matrix


def test_zero_matrix():
    a = mat([[0, 0, 0], [0, 0, 0]], 5)
    f = pluq(a)
    assert f.rank == 0
    assert f.p_perm.is_identity() and f.q_perm.is_identity()
    assert not f.packed.data.any()


def test_identity_full_rank_no_permutation():
    field = PrimeField(7)
    a = DenseMatrix.identity(6, field)
    f = pluq(a, threshold=1)
    assert f.rank == 6
    assert f.p_perm.is_identity() and f.q_perm.is_identity()
    assert np.array_equal(f.packed.data, np.eye(6))


def test_2x2_rank_one():
    a = mat([[0, 0], [1, 0]], 2)
    f = pluq(a, threshold=1)
    assert f.rank == 1
    assert leading_rank_profiles(f, 2, 2) == ((1,), (0,))
    assert f.reconstruct() == mat([[0, 0], [1, 0]], 2)


def test_16x16_generated_rank_8():
    a = gen_rank_deficient_leu(16, 8, 1009, seed=3)
    orig = a.copy()
    f = pluq(a, threshold=4)
    assert f.rank == 8 == rank_naive(orig)
    assert f.reconstruct() == orig
    table = LeadingProfileTable(orig)
    for k in range(17):
        for t in range(17):
            assert leading_rank_profiles(f, k, t) == (table.rows(k, t), table.cols(k, t))


# -- base cases ---------------------------------------------------------------


def test_base_case_row():
    f = base_case_row(mat([[0, 0, 5]], 7))
    assert f.rank == 1
    assert np.array_equal(f.packed.data, [[5, 0, 0]])
    # order-preserving rotation, not a swap: remaining columns keep their order
    assert f.q_perm == Permutation([2, 0, 1])
    assert f.reconstruct() == mat([[0, 0, 5]], 7)

    z = base_case_row(mat([[0, 0]], 7))
    assert z.rank == 0 and z.q_perm.is_identity()


def test_base_case_col():
    counts = OpCounts()
    f = base_case_col(mat([[0], [2], [4]], 5), counts)
    assert f.rank == 1
    assert np.array_equal(f.packed.data.ravel(), [2, 0, 2])  # 4 * inv(2) = 2
    assert f.p_perm == Permutation([1, 0, 2])
    assert f.reconstruct() == mat([[0], [2], [4]], 5)
    assert counts.field_inv == 1 and counts.field_mul == 1

    z = base_case_col(mat([[0], [0]], 5))
    assert z.rank == 0 and z.p_perm.is_identity()


def test_base_cases_match_iterative_bitwise():
    rng = np.random.default_rng(31)
    for _ in range(60):
        n = int(rng.integers(1, 9))
        row = random_matrix(rng, 1, n, 7)
        fr = base_case_row(row.copy())
        fi = pluq_iterative(row.copy())
        assert fr.p_perm == fi.p_perm and fr.q_perm == fi.q_perm
        assert np.array_equal(fr.packed.data, fi.packed.data)

        col = random_matrix(rng, n, 1, 7)
        fc = base_case_col(col.copy())
        fj = pluq_iterative(col.copy())
        assert fc.p_perm == fj.p_perm and fc.q_perm == fj.q_perm
        assert np.array_equal(fc.packed.data, fj.packed.data)


# -- final block permutations -------------------------------------------------


def test_block_perms_trivial_cases():
    assert build_s_perm(0, 0, 0, 0, 3, 7).is_identity()
    assert build_t_perm(0, 0, 0, 0, 3, 7).is_identity()
    # generic full-rank square: blocks already in order
    assert build_s_perm(4, 0, 0, 4, 4, 8).is_identity()
    assert build_t_perm(4, 0, 0, 4, 4, 8).is_identity()


def test_block_perms_validate_sizes():
    with pytest.raises(ValueError):
        build_s_perm(3, 2, 0, 0, 4, 8)
    with pytest.raises(ValueError):
        build_t_perm(0, 3, 0, 2, 4, 8)


def test_block_perms_marker_matrix():
    # rows: blocks of sizes (r1+r2, k-r1-r2, r3+r4, m-k-r3-r4) must land in
    # order (1, 3, 2, 4); fill each block with a distinct tag and check.
    r1 = r2 = r3 = r4 = 1
    k, m = 4, 8
    tags = np.concatenate([np.full(2, 10), np.full(2, 20), np.full(2, 30), np.full(2, 40)])
    s = build_s_perm(r1, r2, r3, r4, k, m)
    landed = tags[s.inverse().sigma]  # row i of S^T A is row sigma_S^-1(i) of A
    assert landed.tolist() == [10, 10, 30, 30, 20, 20, 40, 40]

    # columns: source blocks (r1, r3, k-r1-r3, r2, r4, rest) reordered to
    # (r1, r2, r3, r4, remaining-left, remaining-right).
    k, n = 4, 9
    tags = np.concatenate([[1], [3], np.full(2, 5), [2], [4], np.full(3, 6)])
    t = build_t_perm(r1, r2, r3, r4, k, n)
    landed = tags[t.sigma]  # column j of A T^T is column sigma_T(j) of A
    assert landed.tolist() == [1, 2, 3, 4, 5, 5, 6, 6, 6]


# -- whole-decomposition properties --------------------------------------------


@settings(max_examples=120, deadline=None)
@given(
    p=st.sampled_from([2, 3, 101]),
    m=st.integers(0, 9),
    n=st.integers(0, 9),
    threshold=st.sampled_from([1, 2, 3, 30]),
    seed=st.integers(0, 2**32 - 1),
)
def test_random_reconstruction_rank_profiles(p, m, n, threshold, seed):
    a = random_matrix(np.random.default_rng(seed), m, n, p)
    orig = a.copy()
    f = pluq(a, threshold=threshold)
    assert f.reconstruct() == orig
    assert not f.check_structure()
    assert f.rank == rank_naive(orig)
    table = LeadingProfileTable(orig)
    for k in range(m + 1):
        for t in range(n + 1):
            assert leading_rank_profiles(f, k, t) == (table.rows(k, t), table.cols(k, t))


def test_threshold_transparency():
    rng = np.random.default_rng(41)
    for _ in range(15):
        m, n = (int(x) for x in rng.integers(1, 20, 2))
        a = random_matrix(rng, m, n, 101)
        f1 = pluq(a.copy(), threshold=1)
        f30 = pluq(a.copy(), threshold=30)
        assert f1.rank == f30.rank
        assert sorted(f1.support_pairs()) == sorted(f30.support_pairs())


def test_threshold_must_be_positive():
    with pytest.raises(ValueError):
        pluq(mat([[1]], 5), threshold=0)


def test_determinism():
    a = random_matrix(np.random.default_rng(51), 13, 11, 101)
    runs = [pluq(a.copy(), threshold=2) for _ in range(2)]
    assert runs[0].p_perm == runs[1].p_perm
    assert runs[0].q_perm == runs[1].q_perm
    assert np.array_equal(runs[0].packed.data, runs[1].packed.data)


def test_storage_is_consumed_in_place():
    a = random_matrix(np.random.default_rng(61), 6, 6, 101)
    f = pluq(a)
    assert f.packed is a  # same object: input storage holds the packed factors


def test_workspace_scratch_is_bounded():
    ws = TrackingWorkspace()
    a = gen_rank_deficient_leu(64, 32, 101, seed=9)
    pluq(a, threshold=8, workspace=ws)
    # two line buffers plus at most one r3 x r2 scratch live at any time
    assert ws.peak_elements <= ws.max_scratch_block + 2 * (64 + 64)
    assert ws.live_elements == 0
