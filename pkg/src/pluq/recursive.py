"""Block-recursive PLUQ with Z-curve quadrant ordering, in place.

The matrix is split into four quadrants at (m//2, n//2).  After a recursive
call on the upper-left quadrant and a round of triangular/multiply updates,
two independent recursive calls handle the anti-diagonal quadrants, a last
round of updates forms the bottom-right Schur-type block for the fourth call,
and two block permutations S (rows) and T (columns) gather the factors into
the packed [L\\U, V; M, 0] layout.  Everything runs inside the input storage;
the one licensed scratch buffer is the copy of the block that a triangular
solve would otherwise destroy, of size r3 x r2.

Below the ``threshold`` the iterative Z-curve algorithm takes over; single
rows and columns are handled directly.
"""

from __future__ import annotations

import numpy as np

from .field import inverse_mod
from .iterative import _decompose_inplace
from .kernels import ClassicalKernels
from .matrix import (
    DenseMatrix,
    OpCounts,
    Permutation,
    PluqFactors,
    apply_cols,
    apply_rows,
    perm_block_diag,
)

DEFAULT_THRESHOLD = 30


class Workspace:
    """Source of the decomposition's auxiliary element buffers.

    The recursion requests every element buffer it needs through this object
    (two permutation line buffers plus the r3 x r2 triangular-solve scratch),
    which is what lets the in-place contract be asserted by tests.
    """

    def element_buffer(self, shape, dtype) -> np.ndarray:
        return np.zeros(shape, dtype=dtype)

    def release(self, buf: np.ndarray) -> None:
        pass


class TrackingWorkspace(Workspace):
    """Workspace recording live/peak element counts for the in-place tests."""

    def __init__(self):
        self.live_elements = 0
        self.peak_elements = 0
        self.scratch_blocks: list[int] = []
        self._sizes: dict[int, int] = {}

    def element_buffer(self, shape, dtype) -> np.ndarray:
        buf = super().element_buffer(shape, dtype)
        self._sizes[id(buf)] = buf.size
        self.live_elements += buf.size
        self.peak_elements = max(self.peak_elements, self.live_elements)
        if buf.ndim == 2:
            self.scratch_blocks.append(buf.size)
        return buf

    def release(self, buf: np.ndarray) -> None:
        self.live_elements -= self._sizes.pop(id(buf), 0)

    @property
    def max_scratch_block(self) -> int:
        return max(self.scratch_blocks, default=0)


def build_s_perm(r1: int, r2: int, r3: int, r4: int, k: int, m: int) -> Permutation:
    """Row block permutation: Mat(S)^T A reorders the four row blocks of
    sizes (r1+r2, k-r1-r2, r3+r4, m-k-r3-r4) into (block1, block3, block2, block4)."""
    if not (0 <= r1 + r2 <= k <= m and 0 <= r3 + r4 <= m - k):
        raise ValueError(f"inconsistent row block sizes ({r1},{r2},{r3},{r4},k={k},m={m})")
    sigma = np.arange(m, dtype=np.int64)
    sigma[r1 + r2 : k] += r3 + r4
    sigma[k : k + r3 + r4] -= k - (r1 + r2)
    return Permutation(sigma)


def build_t_perm(r1: int, r2: int, r3: int, r4: int, k: int, n: int) -> Permutation:
    """Column block permutation: A Mat(T)^T reorders the six column blocks of
    sizes (r1, r3, k-r1-r3, r2, r4, n-k-r2-r4) into (r1-block, r2-block,
    r3-block, r4-block, remaining-left, remaining-right)."""
    if not (0 <= r1 + r3 <= k <= n and 0 <= r2 + r4 <= n - k):
        raise ValueError(f"inconsistent column block sizes ({r1},{r2},{r3},{r4},k={k},n={n})")
    sigma = np.arange(n, dtype=np.int64)
    sigma[r1 : r1 + r2] += k - r1
    sigma[r1 + r2 : r1 + r2 + r3] -= r2
    sigma[r1 + r2 + r3 : r1 + r2 + r3 + r4] += k + r2 - (r1 + r2 + r3)
    sigma[r1 + r2 + r3 + r4 : k + r2 + r4] -= r2 + r4
    return Permutation(sigma)


def _front_rotation(size: int, idx: int) -> Permutation:
    # Cycle moving index `idx` to the front, shifting 0..idx-1 back by one.
    # An order-preserving move, unlike a plain swap: the remaining indices keep
    # their relative order, which both the rank-profile property and the
    # triangular-extension property depend on.
    sigma = np.arange(size, dtype=np.int64)
    sigma[: idx + 1] = np.roll(sigma[: idx + 1], 1)
    return Permutation(sigma)


def base_case_row(a: DenseMatrix, counts: OpCounts | None = None) -> PluqFactors:
    """1 x n case: move the first nonzero entry to the front."""
    counts = counts if counts is not None else OpCounts()
    p_perm, q_perm, rank = _base_row(a.data, a.p, counts)
    return PluqFactors(p_perm, q_perm, rank, a)


def base_case_col(a: DenseMatrix, counts: OpCounts | None = None) -> PluqFactors:
    """m x 1 case: move the first nonzero entry up, scale the rest by its inverse."""
    counts = counts if counts is not None else OpCounts()
    p_perm, q_perm, rank = _base_col(a.data, a.p, counts)
    return PluqFactors(p_perm, q_perm, rank, a)


def _base_row(data: np.ndarray, p: int, counts: OpCounts):
    n = data.shape[1]
    nz = np.nonzero(data[0])[0]
    if nz.size == 0:
        return Permutation.identity(1), Permutation.identity(n), 0
    j = int(nz[0])
    if j:
        # entries 0..j-1 are zero, so rotating equals swapping the two values
        data[0, 0], data[0, j] = data[0, j], data[0, 0]
    return Permutation.identity(1), _front_rotation(n, j), 1


def _base_col(data: np.ndarray, p: int, counts: OpCounts):
    m = data.shape[0]
    nz = np.nonzero(data[:, 0])[0]
    if nz.size == 0:
        return Permutation.identity(m), Permutation.identity(1), 0
    i = int(nz[0])
    if i:
        data[0, 0], data[i, 0] = data[i, 0], data[0, 0]
    below = m - i - 1
    if below:
        inv_piv = inverse_mod(int(data[0, 0]), p)
        counts.field_inv += 1
        data[i + 1 :, 0] = (data[i + 1 :, 0] * inv_piv) % p
        counts.field_mul += below
        counts.modular_reductions += below
    # row rotation: original row i comes first, rows 0..i-1 (all zero) follow
    sigma = np.arange(m, dtype=np.int64)
    sigma[: i + 1] = np.roll(sigma[: i + 1], -1)
    return Permutation(sigma), Permutation.identity(1), 1


def pluq(
    a: DenseMatrix,
    threshold: int = DEFAULT_THRESHOLD,
    counts: OpCounts | None = None,
    kernels: ClassicalKernels | None = None,
    workspace: Workspace | None = None,
) -> PluqFactors:
    """Full decomposition; ``a``'s storage is overwritten with the packed factors.

    ``threshold`` is the crossover below which the iterative base case runs
    (1 keeps the quadrant recursion all the way down to single rows/columns).
    """
    if threshold < 1:
        raise ValueError("threshold must be a positive integer")
    counts = counts if counts is not None else OpCounts()
    kernels = kernels if kernels is not None else ClassicalKernels(a.field)
    ws = workspace if workspace is not None else Workspace()
    rowbuf = ws.element_buffer(a.n, a.field.dtype)
    colbuf = ws.element_buffer(a.m, a.field.dtype)
    try:
        p_perm, q_perm, rank = _pluq_rec(a.data, a.p, threshold, counts, kernels, ws, rowbuf, colbuf)
    finally:
        ws.release(rowbuf)
        ws.release(colbuf)
    return PluqFactors(p_perm, q_perm, rank, a)


def _pluq_rec(data, p, threshold, counts, kernels, ws, rowbuf, colbuf):
    m, n = data.shape
    if m == 0 or n == 0:
        return Permutation.identity(m), Permutation.identity(n), 0
    if m == 1:
        return _base_row(data, p, counts)
    if n == 1:
        return _base_col(data, p, counts)
    if min(m, n) <= threshold:
        return _decompose_inplace(data, p, counts)

    kr, kc = m // 2, n // 2
    ident = Permutation.identity

    p1, q1, r1 = _pluq_rec(data[:kr, :kc], p, threshold, counts, kernels, ws, rowbuf, colbuf)

    apply_rows(data[:kr, kc:], p1.inverse(), rowbuf)   # [B1; B2]
    apply_cols(data[kr:, :kc], q1.inverse(), colbuf)   # [C1 | C2]

    kernels.trsm_left_unit_lower(data[:r1, :r1], data[:r1, kc:], counts)   # D
    kernels.trsm_right_upper(data[kr:, :r1], data[:r1, :r1], counts)      # E
    kernels.mm_acc(data[r1:kr, kc:], data[r1:kr, :r1], data[:r1, kc:], counts)  # F
    kernels.mm_acc(data[kr:, r1:kc], data[kr:, :r1], data[:r1, r1:kc], counts)  # G
    kernels.mm_acc(data[kr:, kc:], data[kr:, :r1], data[:r1, kc:], counts)      # H

    p2, q2, r2 = _pluq_rec(data[r1:kr, kc:], p, threshold, counts, kernels, ws, rowbuf, colbuf)
    p3, q3, r3 = _pluq_rec(data[kr:, r1:kc], p, threshold, counts, kernels, ws, rowbuf, colbuf)

    apply_rows(data[kr:, kc:], p3.inverse(), rowbuf)
    apply_cols(data[kr:, kc:], q2.inverse(), colbuf)
    apply_rows(data[kr:, :r1], p3.inverse(), rowbuf)
    apply_rows(data[r1:kr, :r1], p2.inverse(), rowbuf)
    apply_cols(data[:r1, kc:], q2.inverse(), colbuf)
    apply_cols(data[:r1, r1:kc], q3.inverse(), colbuf)

    u2 = data[r1 : r1 + r2, kc : kc + r2]
    l3 = data[kr : kr + r3, r1 : r1 + r3]
    kernels.trsm_right_upper(data[kr : kr + r3, kc : kc + r2], u2, counts)  # block now holds I

    # L3^-1 would overwrite the block above, which the output needs; solve on a copy.
    scratch = ws.element_buffer((r3, r2), data.dtype)
    scratch[:] = data[kr : kr + r3, kc : kc + r2]
    kernels.trsm_left_unit_lower(l3, scratch, counts)                      # J

    kernels.trsm_right_upper(data[kr + r3 :, kc : kc + r2], u2, counts)    # K
    kernels.trsm_left_unit_lower(l3, data[kr : kr + r3, kc + r2 :], counts)  # N
    kernels.mm_acc(data[kr : kr + r3, kc + r2 :], scratch, data[r1 : r1 + r2, kc + r2 :], counts)  # O
    ws.release(scratch)

    kernels.mm_acc(data[kr + r3 :, kc + r2 :], data[kr + r3 :, kc : kc + r2], data[r1 : r1 + r2, kc + r2 :], counts)
    kernels.mm_acc(data[kr + r3 :, kc + r2 :], data[kr + r3 :, r1 : r1 + r3], data[kr : kr + r3, kc + r2 :], counts)

    p4, q4, r4 = _pluq_rec(data[kr + r3 :, kc + r2 :], p, threshold, counts, kernels, ws, rowbuf, colbuf)

    apply_rows(data[kr + r3 :, : kc + r2], p4.inverse(), rowbuf)
    apply_cols(data[: kr + r3, kc + r2 :], q4.inverse(), colbuf)

    s_perm = build_s_perm(r1, r2, r3, r4, kr, m)
    t_perm = build_t_perm(r1, r2, r3, r4, kc, n)
    apply_rows(data, s_perm.inverse(), rowbuf)
    apply_cols(data, t_perm.inverse(), colbuf)

    p_left = p1.compose(perm_block_diag([ident(r1), p2]))
    p_right = p3.compose(perm_block_diag([ident(r3), p4]))
    p_perm = perm_block_diag([p_left, p_right]).compose(s_perm)

    q_left = perm_block_diag([ident(r1), q3]).compose(q1)
    q_right = perm_block_diag([ident(r2), q4]).compose(q2)
    q_perm = t_perm.compose(perm_block_diag([q_left, q_right]))

    return p_perm, q_perm, r1 + r2 + r3 + r4
