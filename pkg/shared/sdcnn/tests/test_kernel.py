"""
Unit tests for diffusion kernel construction and the memory ledger.
"""

import numpy as np
import pytest

from sdcnn.errors import InputError
from sdcnn.graph import generate_synthetic, transition_matrix
from sdcnn.kernel import (
    build_count,
    build_kernel,
    build_post,
    build_pre,
    density,
    diffuse_features,
    memory_report,
    reset_build_count,
    row_bound,
    slice_bound,
    slice_rows,
)
from sdcnn.sparse import DenseMatrix, SparseMatrix, spmm_sparse, threshold


@pytest.fixture
def sbm_transition():
    dataset = generate_synthetic("sbm", {"n_nodes": 60, "n_blocks": 3, "p_in": 0.2, "p_out": 0.02}, seed=1)
    return transition_matrix(dataset.adjacency)


class TestExactKernel:
    """Tests for unthresholded kernels."""

    def test_slices_are_powers(self, path_graph):
        p = transition_matrix(path_graph(6))
        dense = p.to_dense()

        kernel = build_kernel(p, "none", 0.0, 3)

        assert len(kernel.slices) == 4
        np.testing.assert_array_equal(kernel.slice(0).to_dense(), np.eye(6))
        for j in range(1, 4):
            np.testing.assert_allclose(kernel.slice(j).to_dense(), np.linalg.matrix_power(dense, j))

    def test_zero_threshold_pre_equals_none(self, sbm_transition):
        pre = build_pre(sbm_transition, 0.0, 3)
        exact = build_kernel(sbm_transition, "none", 0.5, 3)

        assert exact.threshold == 0.0
        for a, b in zip(pre.slices, exact.slices):
            assert a == b

    @pytest.mark.parametrize("seed", range(50))
    def test_zero_threshold_matches_power_series(self, stochastic, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 51))
        n_hops = int(rng.integers(0, 5))
        p = stochastic(n, float(rng.uniform(0.02, 0.5)), seed=seed)
        dense = p.to_dense()

        for mode in ("pre", "post"):
            kernel = build_kernel(p, mode, 0.0, n_hops)

            assert len(kernel.slices) == n_hops + 1
            for j, s in enumerate(kernel.slices):
                np.testing.assert_allclose(
                    s.to_dense(), np.linalg.matrix_power(dense, j), rtol=1e-10, atol=1e-12
                )

    def test_path_density(self, path_graph):
        kernel = build_kernel(transition_matrix(path_graph(3)), "none", 0.0, 2)

        assert kernel.ledger.per_slice_nnz == (3, 4, 5)
        assert density(kernel) == pytest.approx(12 / 27)

    def test_complete_graph_density(self):
        p = transition_matrix(generate_synthetic("complete", {"n_nodes": 5}).adjacency)

        assert density(build_kernel(p, "none", 0.0, 1)) == pytest.approx(0.5)

    @pytest.mark.parametrize("n_hops", [1, 2, 5])
    def test_density_floor(self, n_hops):
        """With every degree >= 2, a threshold above 0.5 leaves only the identity."""
        p = transition_matrix(generate_synthetic("complete", {"n_nodes": 4}).adjacency)

        kernel = build_pre(p, 0.6, n_hops)

        assert density(kernel) == 1 / (4 * (n_hops + 1))

    def test_zero_hops(self, path_graph):
        kernel = build_pre(transition_matrix(path_graph(5)), 0.1, 0)

        assert len(kernel.slices) == 1
        assert density(kernel) == pytest.approx(1 / 5)


class TestPreThreshold:
    """Tests for build_pre."""

    def test_slices_are_powers_of_thresholded_matrix(self, sbm_transition):
        sigma = 0.06
        p_bar = threshold(sbm_transition, sigma)

        kernel = build_pre(sbm_transition, sigma, 3)

        assert kernel.slice(1) == p_bar
        assert kernel.slice(2) == spmm_sparse(p_bar, p_bar)
        assert kernel.slice(3) == spmm_sparse(spmm_sparse(p_bar, p_bar), p_bar)
        for s in kernel.slices:
            s.validate()

    def test_path_endpoints_survive(self, path_graph):
        """On a path only the endpoint rows have a probability above 0.5."""
        kernel = build_pre(transition_matrix(path_graph(6)), 0.6, 2)

        assert kernel.slice(1).coordinates() == {(0, 1), (5, 4)}
        assert kernel.slice(2).nnz == 0

    def test_above_edge_cutoff(self, path_graph):
        p = transition_matrix(path_graph(5))

        kernel = build_pre(p, 1.0, 2)

        assert kernel.ledger.per_slice_nnz == (5, 2, 0)

    def test_peak_counts_retained_and_buffer(self, path_graph):
        p = transition_matrix(path_graph(4))

        kernel = build_pre(p, 0.0, 2)

        # interior rows of P^2 gather 3 partial products
        assert kernel.ledger.per_slice_nnz == (4, 6, 8)
        assert kernel.ledger.peak_stored_entries == 4 + 6 + 8 + 3

    def test_monotone_in_threshold(self, sbm_transition):
        totals = [build_pre(sbm_transition, s, 2).ledger.total_nnz for s in (0.0, 0.03, 0.06, 0.1, 0.5)]

        assert totals == sorted(totals, reverse=True)


class TestPostThreshold:
    """Tests for build_post."""

    def test_slices_are_thresholded_powers(self, sbm_transition):
        rho = 0.02
        dense = sbm_transition.to_dense()

        kernel = build_post(sbm_transition, rho, 3)

        power = dense
        for j in range(1, 4):
            if j > 1:
                power = power @ dense
            expected = SparseMatrix.from_dense(np.where(power >= rho, power, 0.0))
            assert kernel.slice(j) == expected

    def test_path_keeps_hop_two_return(self, path_graph):
        """Post keeps P^2[1,1] = 1 where pre has already lost the middle row."""
        p = transition_matrix(path_graph(3))

        post = build_post(p, 0.6, 2)
        pre = build_pre(p, 0.6, 2)

        assert post.slice(1).coordinates() == {(0, 1), (2, 1)}
        assert post.slice(2).coordinates() == {(1, 1)}
        assert pre.ledger.per_slice_nnz == (3, 2, 0)

    def test_zero_threshold_matches_pre(self, sbm_transition):
        post = build_post(sbm_transition, 0.0, 3)
        pre = build_pre(sbm_transition, 0.0, 3)

        for a, b in zip(post.slices, pre.slices):
            np.testing.assert_allclose(a.to_dense(), b.to_dense(), atol=1e-12)

    def test_dense_peak(self, sbm_transition):
        n = sbm_transition.n_rows

        kernel = build_post(sbm_transition, 0.05, 2)

        assert kernel.ledger.peak_stored_entries >= 3 * n * n

    def test_single_hop_stays_sparse(self, sbm_transition):
        n = sbm_transition.n_rows

        kernel = build_post(sbm_transition, 0.05, 1)

        assert kernel.slice(1) == threshold(sbm_transition, 0.05)
        assert kernel.ledger.peak_stored_entries < n * n

    def test_monotone_in_threshold(self, sbm_transition):
        totals = [build_post(sbm_transition, r, 3).ledger.total_nnz for r in (0.0, 0.01, 0.03, 0.1)]

        assert totals == sorted(totals, reverse=True)


class TestMemoryBounds:
    """Tests for the analytic nnz bounds."""

    @pytest.mark.parametrize("mode", ["pre", "post"])
    @pytest.mark.parametrize("t", [0.05, 0.1, 0.2, 0.5])
    def test_within_bounds(self, stochastic, mode, t):
        p = stochastic(40, 0.3, seed=2)

        report = memory_report(build_kernel(p, mode, t, 3))

        assert report.within_bounds
        assert report.bounds[0] == 40

    @pytest.mark.parametrize("seed", range(200))
    def test_rows_within_fanout_bound(self, stochastic, seed):
        """Every row of hop j keeps at most min(floor(1/t)^j, N) entries."""
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 41))
        t = float(rng.uniform(0.05, 0.9))
        n_hops = int(rng.integers(0, 6))
        mode = ("pre", "post")[seed % 2]
        p = stochastic(n, float(rng.uniform(0.05, 0.6)), seed=seed)

        kernel = build_kernel(p, mode, t, n_hops)

        for j, s in enumerate(kernel.slices):
            assert s.row_nnz().max(initial=0) <= row_bound(t, j, n), (mode, t, j)

    def test_bound_values(self):
        assert slice_bound(0.2, 0, 100) == 100
        assert slice_bound(0.2, 1, 100) == 500
        assert slice_bound(0.2, 2, 100) == 2500
        assert slice_bound(0.2, 3, 100) == 10000
        assert slice_bound(0.0, 2, 100) == 10000
        assert row_bound(0.2, 0, 100) == 1
        assert row_bound(0.2, 2, 100) == 25
        assert row_bound(0.3, 5, 100) == 100

    def test_slice_rows(self, path_graph):
        kernel = build_pre(transition_matrix(path_graph(10)), 0.5, 2)

        rows = slice_rows(kernel)

        assert [r["hop"] for r in rows] == [0, 1, 2]
        assert rows[0]["nnz"] == 10
        assert rows[0]["bound"] == 10
        assert rows[1]["density"] == pytest.approx(rows[1]["nnz"] / 100)


class TestDiffuseFeatures:
    """Tests for diffuse_features."""

    def test_hops_match_slices(self, sbm_transition):
        x = np.random.default_rng(0).standard_normal((60, 3))
        kernel = build_pre(sbm_transition, 0.04, 2)

        diffused = diffuse_features(kernel, DenseMatrix(x))

        assert diffused.values.shape == (60, 3, 3)
        np.testing.assert_array_equal(diffused.hop(0), x)
        for j in (1, 2):
            np.testing.assert_allclose(diffused.hop(j), kernel.slice(j).to_dense() @ x, atol=1e-12)

    def test_empty_slices_give_zero_hops(self, path_graph):
        kernel = build_pre(transition_matrix(path_graph(4)), 1.0, 2)
        x = np.ones((4, 2))

        diffused = diffuse_features(kernel, DenseMatrix(x))

        assert diffused.hop(2).tolist() == [[0.0, 0.0]] * 4

    def test_row_mismatch(self, path_graph):
        kernel = build_pre(transition_matrix(path_graph(4)), 0.0, 1)

        with pytest.raises(InputError):
            diffuse_features(kernel, DenseMatrix(np.ones((3, 2))))


class TestBuildErrors:
    """Tests for argument validation and the build counter."""

    @pytest.mark.parametrize("t", [-0.1, 1.5])
    def test_threshold_range(self, path_graph, t):
        with pytest.raises(InputError):
            build_pre(transition_matrix(path_graph(4)), t, 2)

    def test_negative_hops(self, path_graph):
        with pytest.raises(InputError):
            build_post(transition_matrix(path_graph(4)), 0.1, -1)

    def test_not_stochastic(self):
        with pytest.raises(InputError):
            build_pre(SparseMatrix.from_dense(np.array([[0.0, 2.0], [1.0, 0.0]])), 0.1, 2)

    def test_unknown_mode(self, path_graph):
        with pytest.raises(InputError):
            build_kernel(transition_matrix(path_graph(4)), "sideways", 0.1, 2)

    def test_build_count(self, path_graph):
        p = transition_matrix(path_graph(4))
        reset_build_count()

        build_pre(p, 0.1, 2)
        build_post(p, 0.1, 2)
        build_kernel(p, "none", 0.0, 1)

        assert build_count() == 3


@pytest.mark.slow
class TestScaling:
    """Peak stored entries grow linearly with pre-thresholding, quadratically with post."""

    SIZES = [200, 400, 800, 1600]

    @pytest.mark.parametrize("mode,ratio", [("pre", 2.0), ("post", 4.0)])
    def test_peak_growth(self, path_graph, mode, ratio):
        peaks = [
            build_kernel(transition_matrix(path_graph(n)), mode, 0.2, 3).ledger.peak_stored_entries
            for n in self.SIZES
        ]

        for small, large in zip(peaks, peaks[1:]):
            assert large / small == pytest.approx(ratio, rel=0.1)
