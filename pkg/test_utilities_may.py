# ///////////////////////////////////////////////////////////////////////
#
#                              TEST MAY
#   Tests for the May filtration, the twisted complex, the pages of its
#   filtration spectral sequence, the abutment and the Segal pipeline.
#
# ///////////////////////////////////////////////////////////////////////

import unittest
import os
import tempfile
from unittest.mock import patch
from utilities_grading import SpokeDegree, TriDegree, DegreeWindow
from utilities_linalg import SparseMatFp
from utilities_hopf import instantiate_truncated
from utilities_cobar import ExtEntry, ExtTable
from utilities_may import (SSPage, MaySpectralSequence, may_filtration, may_e1_presentation, e1_closed_form,
                           TwistedComplex, OPERATOR_D, OPERATOR_D_POWER, OPERATOR_Z, compute_pages, apply_d1, apply_differential,
                           apply_d_p_minus_1, extra_differentials, d1_stages, abutment_dimensions, a_tower_rank,
                           window_margin, segal_pipeline, expected_survivors)
from utilities_exceptions import WindowTooSmallError, BookkeepingError, ConfigError
from utilities_config import RunConfig
from commands.cmd_may import run_may
from global_parameters import *

class TestMayFiltration(unittest.TestCase):

    def test_norm_square_has_weight_two(self):
        hopf, _ = instantiate_truncated(3, 1)
        filtration = may_filtration(hopf, DegreeWindow(4, 4, 8, 8))
        self.assertEqual(filtration.weights[SpokeDegree(4, 8)], [('Nm^2', 2)], "Nm^2 has May weight 2")
        self.assertEqual(filtration.graded_dimensions(SpokeDegree(4, 8)), {2: 1}, "Only weight 2 is nonzero in 4+8@")

    def test_primitives_have_weight_one(self):
        hopf, _ = instantiate_truncated(3, 1)
        filtration = may_filtration(hopf, DegreeWindow(1, 2, 1, 4))
        self.assertEqual(filtration.weights[SpokeDegree(1, 1)], [('mu', 1)], "mu is primitive")
        self.assertEqual(filtration.weights[SpokeDegree(2, 4)], [('Nm', 1)], "Nm is primitive")

class TestE1Presentation(unittest.TestCase):

    def test_generators(self):
        presentation = may_e1_presentation(3, 2)
        self.assertEqual(presentation.names, (GEN_A, GEN_U_LAMBDA, GEN_U_SPOKE, 'z', 'x_0', 'x_1', 'xp_0', 'xp_1'), "Generator order")
        x_1 = presentation.generators[presentation.index('x_1')]
        self.assertEqual((x_1.degree, x_1.s, x_1.f), (SpokeDegree(5, 12), 1, 1), "x_1 sits in the degree of N_1 shifted by s")
        xp_0 = presentation.generators[presentation.index('xp_0')]
        self.assertEqual((xp_0.degree, xp_0.s, xp_0.f), (SpokeDegree(4, 12), 2, 3), "x'_0 has s = 2 and weight p")

class TestTwistedComplex(unittest.TestCase):

    def setUp(self):
        self.complex_ = TwistedComplex(3, 1)
        self.presentation = self.complex_.presentation

    def test_d1_of_u_lambda(self):
        u = self.presentation.monomial({GEN_U_LAMBDA: 1})
        expected = {self.presentation.monomial({GEN_A: 6, 'x_0': 1}): 1}
        self.assertEqual(self.complex_.differential_terms(u), expected, "d_1(u_lambda) = a^6 x_0")

    def test_d1_of_u_spoke(self):
        u_spoke = self.presentation.monomial({GEN_U_SPOKE: 1})
        expected = {self.presentation.monomial({GEN_A: 2, 'z': 1}): 1}
        self.assertEqual(self.complex_.differential_terms(u_spoke), expected, "d_1(u_spoke) = a^2 z")

    def test_d_power(self):
        module = self.complex_.module
        u_squared = module.monomial({GEN_U_LAMBDA: 2})
        self.assertEqual(self.complex_.operator(OPERATOR_D_POWER, 0, u_squared), {module.monomial({GEN_A: 12}): 2}, "D^2(u_lambda^2) = 2 a^12")
        self.assertEqual(self.complex_.operator(OPERATOR_D, 0, module.monomial({GEN_U_LAMBDA: 3})), {}, "D(u_lambda^3) vanishes mod 3")

    def test_disable_d1(self):
        complex_ = TwistedComplex(3, 1, disable_d1=True)
        self.assertEqual(complex_.components, ((OPERATOR_D_POWER, 0),), "Only d_(p-1) is left")
        self.assertNotIn((OPERATOR_Z, None), complex_.components, "z component is dropped")
        u = complex_.presentation.monomial({GEN_U_LAMBDA: 1})
        self.assertEqual(complex_.differential_terms(u), {}, "u_lambda becomes a cycle")

    def test_square_zero(self):
        for internal in (SpokeDegree(6, -6), SpokeDegree(2, -2), SpokeDegree(1, -1)):
            self.complex_.check_square(internal, 0)

    def test_a_tower_rank(self):
        self.assertEqual(a_tower_rank(self.complex_, 0, 0, 0, -2), 1, "1 survives multiplication by a^2")
        self.assertEqual(a_tower_rank(self.complex_, 6, 0, -6, -8), 1, "u_lambda^3 is a cycle and a^2 u_lambda^3 is not a boundary")
        self.assertEqual(a_tower_rank(self.complex_, 2, 0, -2, -4), 0, "u_lambda is not a cycle")

class TestPages(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.window = DegreeWindow(-2, 2, -3, 1, s_max=1)
        cls.complex_ = TwistedComplex(3, 1)
        cls.sequence = compute_pages(cls.complex_, cls.window)

    def test_first_page_is_closed_form(self):
        closed = e1_closed_form(3, 1, self.window)
        self.assertEqual(self.sequence.page(1).dims, closed.dims, "E_1 computed from the complex equals the closed form")

    def test_e_infinity_matches_abutment(self):
        abutment = abutment_dimensions(self.complex_, self.window)
        expected = {(key.s, key.total): dim for key, dim in abutment.nonzero().items()}
        self.assertEqual(self.sequence.e_infinity.total_dimensions(), expected, "E_infinity has the size of the abutment")

    def test_pages_shrink(self):
        for r in range(1, self.sequence.infinity):
            before = sum(self.sequence.page(r).dims.values())
            after = sum(self.sequence.page(r + 1).dims.values())
            self.assertLessEqual(after, before, f"E_{r + 1} is a subquotient of E_{r}")

    def test_page_helpers(self):
        e2 = apply_d1(self.sequence)
        self.assertEqual((e2.r, e2.dims), (2, self.sequence.page(2).dims), "E_1 minus the d_1 ranks is E_2")
        e3 = apply_d_p_minus_1(self.sequence)
        self.assertEqual((e3.r, e3.dims), (3, self.sequence.page(3).dims), "E_2 minus the d_2 ranks is E_p at p=3")
        self.assertIs(self.sequence.page(100), self.sequence.e_infinity, "Pages past E_infinity are E_infinity")

    def test_threads_do_not_change_pages(self):
        threaded = compute_pages(self.complex_, self.window, threads=3)
        for r in range(1, self.sequence.infinity + 1):
            self.assertEqual(threaded.page(r).dims, self.sequence.page(r).dims, f"E_{r} should not depend on the thread count")

class TestPageBookkeeping(unittest.TestCase):

    def setUp(self):
        self.window = DegreeWindow(0, 1, -1, 0, s_max=1)
        self.source = TriDegree(SpokeDegree(1, -1), 0, 0)
        self.target = TriDegree(SpokeDegree(0, -1), 1, 1)
        self.first = SSPage(1, {self.source: 1, self.target: 1}, {self.source: ('u_spoke',), self.target: ('a^2*z',)},
                            {self.source: (SparseMatFp.identity(1, 3), 1)})

    def sequence(self, second: SSPage) -> MaySpectralSequence:
        return MaySpectralSequence(3, 1, self.window, {1: self.first, 2: second}, 2)

    def test_d1_kills_both_ends(self):
        e2 = apply_d1(self.sequence(SSPage(2)))
        self.assertEqual(e2.dims, {}, "A rank one d_1 kills its source and its target")

    def test_wrong_page_is_rejected(self):
        with self.assertRaises(BookkeepingError):
            apply_d1(self.sequence(SSPage(2, {self.target: 1}, {self.target: ('a^2*z',)})))
        stray = TriDegree(SpokeDegree(0, 0), 0, 0)
        with self.assertRaises(BookkeepingError):
            apply_d1(self.sequence(SSPage(2, {stray: 1})))

    def test_incoming_from_outside_the_window(self):
        edge = TriDegree(SpokeDegree(1, 0), 1, 1)
        first = SSPage(1, {edge: 1}, {edge: ('x',)})
        sequence = MaySpectralSequence(3, 1, self.window, {1: first, 2: SSPage(2, {edge: 1}, {edge: ('x',)})}, 2)
        self.assertEqual(apply_differential(sequence, 1).dims, {edge: 1}, "The computed page is kept where d_1 comes from outside")

    def test_d_p_minus_1_past_infinity(self):
        e3 = apply_d_p_minus_1(self.sequence(SSPage(2)))
        self.assertEqual((e3.r, e3.dims), (3, {}), "E_3 = E_2 = E_infinity")

class TestDifferentialReports(unittest.TestCase):

    def test_extra_differentials(self):
        key = TriDegree(SpokeDegree(0, 0), 0, 0)
        pages = {
            1: SSPage(1, {key: 1}, {}, {key: (SparseMatFp.identity(1, 5), 1)}),
            2: SSPage(2, {key: 1}, {}, {key: (SparseMatFp.identity(1, 5), 1)}),
            4: SSPage(4, {key: 1}, {}, {key: (SparseMatFp.zeros(1, 1, 5), 0)}),
        }
        sequence = MaySpectralSequence(5, 1, DegreeWindow(0, 0, 0, 0), pages, 4)
        with self.assertLogs(LOGGER_MAY_KEY, level='WARNING'):
            found = extra_differentials(sequence)
        self.assertEqual(found, [(2, key, 1)], "Only the nonzero d_2 is outside {d_1, d_(p-1)}")

    def test_d1_stages(self):
        ranks = d1_stages(TwistedComplex(3, 1), DegreeWindow(0, 2, -2, 0))
        self.assertGreater(ranks[0], 0, "z stage hits a^2 z from u_spoke")
        self.assertGreater(ranks[1], 0, "x_0 stage hits a^6 x_0 from u_lambda")

class TestSegal(unittest.TestCase):

    def test_window_margin(self):
        self.assertEqual(window_margin(DegreeWindow(-12, 2, -14, 14)), 14, "Half of the spoke range")
        self.assertEqual(window_margin(DegreeWindow(0, 0, -2, 2)), 2, "Smallest usable margin")
        for window in (DegreeWindow(0, 5, -2, 2), DegreeWindow(0, 0, -1, 1), DegreeWindow(0, 0, 1, 6)):
            with self.assertRaises(WindowTooSmallError, msg=f"{window} should be rejected"):
                window_margin(window)

    @patch('utilities_may.a_tower_rank')
    def test_verdict_after_stabilization(self, mock_a_tower_rank):
        # at n = 1 a stray class survives at m = -6; from n = 2 on only 1 survives
        mock_a_tower_rank.side_effect = lambda complex_, m, s, n_source, n_target: int((m == 0 and s == 0) or (complex_.n == 1 and m == -6 and s == 0))
        report = segal_pipeline(3, 3, DegreeWindow(-12, 2, -14, 14, s_max=1))
        self.assertTrue(report.stabilized, "Survivors repeat from n=2")
        self.assertEqual(report.n, 2, "Stable from n=2")
        self.assertTrue(report.verdict, "Only F_p[a^+-1] survives")
        self.assertEqual(sorted(report.per_n), [1, 2, 3], "All levels up to the repeat are computed")
        self.assertEqual(report.per_n[1].dimension(0, SpokeDegree(-6, -14)), 1, "n=1 has the stray class")

    @patch('utilities_may.a_tower_rank', return_value=0)
    def test_verdict_fails_without_unit(self, mock_a_tower_rank):
        report = segal_pipeline(3, 2, DegreeWindow(-2, 0, -4, 4))
        self.assertTrue(report.stabilized, "Empty tables repeat")
        self.assertFalse(report.verdict, "The unit class is missing")

    @patch('utilities_may.a_inverted_survivors')
    def test_single_level_is_rejected(self, mock_survivors):
        with self.assertRaises(ConfigError):
            segal_pipeline(3, 1, DegreeWindow(-2, 0, -4, 4))
        mock_survivors.assert_not_called()

    def test_expected_survivors(self):
        window = DegreeWindow(-1, 1, -2, 2)
        keys = [TriDegree(SpokeDegree(m, -2), 0) for m in (-1, 0, 1)]
        good = ExtTable(window, {key: ExtEntry(key, int(key.total.m == 0)) for key in keys})
        bad = ExtTable(window, {key: ExtEntry(key, 1) for key in keys})
        self.assertTrue(expected_survivors(good), "One class at m = 0 is F_p[a^+-1]")
        self.assertFalse(expected_survivors(bad), "Extra survivors break the verdict")

class TestMayCommand(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.window = DegreeWindow(-2, 2, -3, 1, s_max=1)
        cls.closed = e1_closed_form(3, 1, cls.window)
        entries = {key: ExtEntry(key, dim, cls.closed.labels[key]) for key, dim in cls.closed.dims.items()}
        cls.graded_ext = ExtTable(cls.window, entries, filtered=True)

    def run_may(self, tmp: str) -> tuple:
        config = RunConfig(command=COMMAND_MAY, p=3, n=1, window=self.window, out_dir=tmp)
        with patch('commands.cmd_may.build_cobar') as mock_build_cobar, \
             patch('commands.cmd_may.ext_dimensions', return_value=self.graded_ext):
            status = run_may(config)
        mock_build_cobar.assert_called_once()
        with open(os.path.join(tmp, f"{COMMAND_MAY}{REPORT_EXTENSION}"), encoding='utf-8') as file:
            return status, file.read()

    def test_e1_check_runs_by_default(self):
        with tempfile.TemporaryDirectory() as tmp:
            _, text = self.run_may(tmp)
        self.assertIn('# check_e1_associated_graded = True', text, "E_1 is compared with the associated graded without --cross-check")
        self.assertNotIn('check_e_infinity_cobar', text, "The Gamma_n oracle stays behind --cross-check")
        self.assertIn(f"# e1_classes = {sum(self.closed.dims.values())}", text, "The E_1 size is reported")

    def test_wrong_closed_form_fails(self):
        extra = TriDegree(SpokeDegree(0, 0), 1, 5)
        wrong = SSPage(1, {**self.closed.dims, extra: 1}, {**self.closed.labels, extra: ('bogus',)})
        with tempfile.TemporaryDirectory() as tmp:
            with patch('commands.cmd_may.e1_closed_form', return_value=wrong):
                status, text = self.run_may(tmp)
        self.assertEqual(status, EXIT_CHECK_FAILED, "A closed form that disagrees with Ext fails the run")
        self.assertIn('# check_e1_associated_graded = False', text, "The failed check is in the header")

if __name__ == '__main__':
    unittest.main()
