# ///////////////////////////////////////////////////////////////////////
#
#                            TEST LINALG
#   Tests for the sparse F_p matrices, the echelon span and the dense
#   oracle used to cross-check ranks.
#
# ///////////////////////////////////////////////////////////////////////

import unittest
import numpy as np
from utilities_linalg import (SparseMatFp, EchelonSpan, rank, kernel_basis, image_basis, solve, check_composable,
                              quotient_dimension, homology_representatives, rank_dense, quotient_dimension_dense,
                              matrix_power_dense, is_odd_prime, vec_add_scaled)
from utilities_exceptions import CompositionError

class TestSparseMatFp(unittest.TestCase):

    def setUp(self):
        self.p = 3
        # columns (1, 2) and (2, 1) are dependent mod 3
        self.mat = SparseMatFp.from_dense([[1, 2, 0], [2, 1, 1]], self.p)

    def test_from_dense_normalizes_entries(self):
        mat = SparseMatFp.from_dense([[4, 3], [-1, 0]], self.p)
        self.assertEqual(mat.columns, ({0: 1, 1: 2}, {}), "Entries should be reduced mod p and zeros dropped")

    def test_rank(self):
        self.assertEqual(rank(self.mat), 2, "Rank of the 2x3 matrix should be 2")
        self.assertEqual(rank(SparseMatFp.zeros(4, 5, self.p)), 0, "Zero matrix should have rank 0")
        self.assertEqual(rank(SparseMatFp.identity(4, self.p)), 4, "Identity should have full rank")

    def test_kernel_vectors_are_killed(self):
        kernel = kernel_basis(self.mat)
        self.assertEqual(len(kernel), 1, "Kernel dimension should be cols - rank")
        for vec in kernel:
            self.assertEqual(self.mat.apply(vec), {}, "Kernel vector should map to zero")

    def test_image_basis_size(self):
        self.assertEqual(len(image_basis(self.mat)), rank(self.mat), "Image basis size should equal the rank")

    def test_solve(self):
        target = {0: 1, 1: 1}
        x = solve(self.mat, target)
        self.assertIsNotNone(x, "Target in the image should be solvable")
        self.assertEqual(self.mat.apply(x), target, "Solution should reproduce the target")

        thin = SparseMatFp.from_columns(2, self.p, [{0: 1}])
        self.assertIsNone(solve(thin, {1: 1}), "Target outside the image should give None")

    def test_matmul_and_transpose(self):
        identity = SparseMatFp.identity(3, self.p)
        self.assertEqual(self.mat.matmul(identity), self.mat, "Multiplying by the identity should be a no-op")
        self.assertEqual(self.mat.transpose().transpose(), self.mat, "Double transpose should be the identity")

    def test_from_columns_rejects_out_of_range_rows(self):
        with self.assertRaises(ValueError):
            SparseMatFp.from_columns(2, self.p, [{5: 1}])

class TestEchelonSpan(unittest.TestCase):

    def test_insert_returns_relation_for_dependent_vector(self):
        span = EchelonSpan(5)
        self.assertIsNone(span.insert({0: 1, 1: 2}, label='u'), "Independent vector should be accepted")
        self.assertIsNone(span.insert({1: 1}, label='v'), "Independent vector should be accepted")
        relation = span.insert({0: 2, 1: 4}, label='w')
        self.assertEqual(relation, {'u': 3, 'w': 1}, "w should be recorded as 2u")
        self.assertEqual(len(span), 2, "Dependent vector should not grow the span")

    def test_untracked_insert(self):
        span = EchelonSpan(3, track=False)
        span.insert({0: 1})
        self.assertEqual(span.insert({0: 2}), {}, "Untracked span should report dependency as an empty relation")
        self.assertTrue(span.contains({0: 1}), "Span should contain its own vectors")

    def test_reduced_basis(self):
        span = EchelonSpan(3, track=False)
        span.insert({0: 1, 1: 1})
        span.insert({1: 1, 2: 1})
        self.assertEqual(span.reduced_basis(), [{0: 1, 2: 2}, {1: 1, 2: 1}], "Basis should be in reduced echelon form")

class TestHomology(unittest.TestCase):

    def setUp(self):
        self.p = 3
        # F_p --d0--> F_p^2 --d1--> F_p with d1 d0 = 0
        self.d0 = SparseMatFp.from_dense([[1], [2]], self.p)
        self.d1 = SparseMatFp.from_dense([[1, 1]], self.p)

    def test_quotient_dimension(self):
        self.assertEqual(quotient_dimension(self.d0, self.d1), 0, "Exact sequence should have no homology")
        self.assertEqual(quotient_dimension(SparseMatFp.zeros(2, 0, self.p), self.d1), 1, "Without boundaries the kernel survives")

    def test_homology_representatives(self):
        reps = homology_representatives(SparseMatFp.zeros(2, 0, self.p), self.d1)
        self.assertEqual(len(reps), 1, "One homology class expected")
        self.assertEqual(self.d1.apply(reps[0]), {}, "Representative should be a cycle")

    def test_check_composable_rejects_nonzero_composite(self):
        bad = SparseMatFp.from_dense([[1], [0]], self.p)
        with self.assertRaises(CompositionError):
            check_composable(bad, self.d1)

    def test_check_composable_rejects_shapes(self):
        with self.assertRaises(CompositionError):
            check_composable(SparseMatFp.zeros(3, 1, self.p), self.d1)

class TestDenseOracle(unittest.TestCase):

    def test_rank_matches_dense_oracle(self):
        rng = np.random.default_rng(7)
        for p in (3, 5, 7):
            for _ in range(20):
                rows, cols = rng.integers(1, 7, size=2)
                array = rng.integers(0, p, size=(rows, cols))
                # sparsify so low ranks show up
                array[rng.random((rows, cols)) < 0.5] = 0
                sparse = SparseMatFp.from_dense(array, p)
                self.assertEqual(rank(sparse), rank_dense(array, p), f"Sparse and dense ranks differ for p={p}")
                self.assertEqual(rank_dense(sparse.to_dense(), p), rank_dense(array, p), "to_dense should preserve the rank")

    def test_quotient_dimension_dense(self):
        self.assertEqual(quotient_dimension_dense([[1], [2]], [[1, 1]], 3), 0, "Dense homology of an exact sequence should vanish")

    def test_matrix_power_dense(self):
        nilpotent = [[0, 1, 0], [0, 0, 1], [0, 0, 0]]
        self.assertTrue(matrix_power_dense(nilpotent, 2, 3).any(), "Square of the shift should be nonzero")
        self.assertFalse(matrix_power_dense(nilpotent, 3, 3).any(), "Cube of the 3x3 shift should vanish")

class TestScalars(unittest.TestCase):

    def test_is_odd_prime(self):
        self.assertEqual([q for q in range(12) if is_odd_prime(q)], [3, 5, 7, 11], "Odd primes below 12")

    def test_vec_add_scaled_drops_zeros(self):
        target = {0: 1, 1: 2}
        vec_add_scaled(target, 2, {0: 1, 1: 2}, 3)
        self.assertEqual(target, {}, "Cancelling entries should be removed")

if __name__ == '__main__':
    unittest.main()
