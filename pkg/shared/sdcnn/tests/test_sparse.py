"""
Unit tests for the CSR matrix, products and thresholding.
"""

import numpy as np
import pytest

from sdcnn.errors import InputError
from sdcnn.sparse import (
    DenseMatrix,
    SparseMatrix,
    from_triplets,
    nnz,
    spmm_dense,
    spmm_sparse,
    threshold,
)
from sdcnn.sparse.ops import _gustavson


def random_sparse(shape, density, seed):
    rng = np.random.default_rng(seed)
    dense = rng.standard_normal(shape) * (rng.random(shape) < density)
    return SparseMatrix.from_dense(dense), dense


class TestFromTriplets:
    """Tests for from_triplets."""

    def test_canonical_order(self):
        """Unordered triplets come out sorted by row, then column."""
        m = from_triplets([(1, 2, 3.0), (0, 1, 1.0), (1, 0, 2.0)], 2, 3)

        assert m.row_offsets.tolist() == [0, 1, 3]
        assert m.col_indices.tolist() == [1, 0, 2]
        assert m.values.tolist() == [1.0, 2.0, 3.0]
        m.validate()

    def test_zero_values_dropped(self):
        m = from_triplets([(0, 0, 0.0), (0, 1, 5.0)], 1, 2)

        assert nnz(m) == 1
        assert m.col_indices.tolist() == [1]

    def test_duplicate_coordinate_rejected(self):
        with pytest.raises(InputError, match="duplicate"):
            from_triplets([(0, 1, 1.0), (0, 1, 2.0)], 2, 2)

    def test_out_of_range_rejected(self):
        with pytest.raises(InputError, match="out of range"):
            from_triplets([(0, 2, 1.0)], 2, 2)

    @pytest.mark.parametrize("triplet", [(0.5, 1, 1.0), (0, 1.25, 1.0), (float("nan"), 0, 1.0), ("0", 1, 1.0)])
    def test_non_integer_index_rejected(self, triplet):
        with pytest.raises(InputError, match="index|indices"):
            from_triplets([(1, 0, 2.0), triplet], 2, 2)

    def test_integral_float_indices_accepted(self):
        m = from_triplets([(1.0, 0.0, 2.0)], 2, 2)

        assert m.coordinates() == {(1, 0)}

    def test_empty(self):
        m = from_triplets([], 3, 4)

        assert m.shape == (3, 4)
        assert m.nnz == 0
        assert m.row_offsets.tolist() == [0, 0, 0, 0]


class TestSparseMatrix:
    """Tests for SparseMatrix storage."""

    def test_dense_conversion(self):
        dense = np.array([[0.0, 1.5, 0.0], [2.0, 0.0, -1.0]])
        m = SparseMatrix.from_dense(dense)

        assert m.nnz == 3
        np.testing.assert_array_equal(m.to_dense(), dense)

    def test_identity(self):
        m = SparseMatrix.identity(4)

        np.testing.assert_array_equal(m.to_dense(), np.eye(4))
        m.validate()

    def test_transpose(self):
        m, dense = random_sparse((5, 7), 0.4, seed=1)

        t = m.transpose()

        np.testing.assert_array_equal(t.to_dense(), dense.T)
        t.validate()

    def test_buffers_read_only(self):
        m = SparseMatrix.identity(3)

        with pytest.raises(ValueError):
            m.values[0] = 2.0

    def test_input_arrays_not_aliased(self):
        values = np.array([1.0, 2.0])
        m = SparseMatrix(2, 2, np.array([0, 1, 2]), np.array([0, 1]), values)

        values[0] = 9.0

        assert m.values[0] == 1.0

    def test_validate_unsorted_columns(self):
        m = SparseMatrix(1, 3, np.array([0, 2]), np.array([2, 0]), np.array([1.0, 1.0]))

        with pytest.raises(InputError, match="strictly increasing"):
            m.validate()

    def test_validate_explicit_zero(self):
        m = SparseMatrix(1, 2, np.array([0, 1]), np.array([0]), np.array([0.0]))

        with pytest.raises(InputError, match="zero"):
            m.validate()

    def test_validate_allows_empty_rows(self):
        m = from_triplets([(0, 1, 1.0), (2, 0, 1.0), (2, 2, 1.0)], 4, 3)

        m.validate()
        assert m.row_nnz().tolist() == [1, 0, 2, 0]

    def test_dense_matrix_requires_2d(self):
        with pytest.raises(InputError):
            DenseMatrix(np.zeros(3))


class TestProducts:
    """Tests for spmm_sparse and spmm_dense."""

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_sparse_product_matches_dense(self, seed):
        a, a_dense = random_sparse((6, 5), 0.4, seed)
        b, b_dense = random_sparse((5, 7), 0.4, seed + 10)

        product = spmm_sparse(a, b)

        product.validate()
        np.testing.assert_allclose(product.to_dense(), a_dense @ b_dense, rtol=1e-12, atol=1e-12)

    def test_cancellation_dropped(self):
        """Accumulated sums of exactly zero are not stored."""
        a = from_triplets([(0, 0, 1.0), (0, 1, 1.0)], 1, 2)
        b = from_triplets([(0, 0, 1.0), (1, 0, -1.0)], 2, 1)

        product = spmm_sparse(a, b)

        assert product.nnz == 0
        product.validate()

    def test_dimension_mismatch(self):
        with pytest.raises(InputError, match="dimension"):
            spmm_sparse(SparseMatrix.identity(2), SparseMatrix.identity(3))

    def test_working_buffer(self):
        """The buffer is the largest number of partial products in one row."""
        a = from_triplets([(0, 0, 1.0), (0, 1, 1.0), (1, 1, 1.0)], 2, 2)
        b = from_triplets([(0, 0, 1.0), (0, 1, 1.0), (1, 1, 2.0)], 2, 2)

        product, buffer = _gustavson(a, b)

        assert buffer == 3
        np.testing.assert_array_equal(product.to_dense(), [[1.0, 3.0], [0.0, 2.0]])

    def test_dense_product(self):
        a, a_dense = random_sparse((4, 6), 0.5, seed=3)
        x = np.random.default_rng(4).standard_normal((6, 3))

        out = spmm_dense(a, DenseMatrix(x))

        np.testing.assert_allclose(out.values, a_dense @ x, rtol=1e-12, atol=1e-12)

    def test_inputs_unchanged(self):
        a, _ = random_sparse((5, 5), 0.5, seed=5)
        before = a.values.copy()

        spmm_sparse(a, a)

        np.testing.assert_array_equal(a.values, before)


class TestThreshold:
    """Tests for entrywise thresholding."""

    def test_inclusive_cutoff(self):
        """Entries equal to the threshold are kept."""
        m = from_triplets([(0, 0, 0.2), (0, 1, 0.1999), (0, 2, 0.5)], 1, 3)

        out = threshold(m, 0.2)

        assert out.col_indices.tolist() == [0, 2]
        assert out.values.tolist() == [0.2, 0.5]
        out.validate()

    def test_zero_keeps_everything(self):
        m, _ = random_sparse((4, 4), 0.5, seed=6)
        positive = SparseMatrix.from_dense(np.abs(m.to_dense()))

        assert threshold(positive, 0.0) == positive

    def test_values_kept_verbatim(self):
        m = from_triplets([(0, 0, 0.3333333333333333), (1, 1, 0.7)], 2, 2)

        out = threshold(m, 0.5)

        assert out.values.tolist() == [0.7]
        assert out.row_offsets.tolist() == [0, 0, 1]

    def test_negative_threshold_rejected(self):
        with pytest.raises(InputError):
            threshold(SparseMatrix.identity(2), -0.1)

    def test_monotone_in_threshold(self, stochastic):
        p = stochastic(30, 0.2, seed=7)
        counts = [threshold(p, t).nnz for t in (0.0, 0.02, 0.05, 0.1, 0.3, 1.0)]

        assert counts == sorted(counts, reverse=True)
