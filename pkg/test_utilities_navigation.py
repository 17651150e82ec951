# ///////////////////////////////////////////////////////////////////////
#
#                          TEST NAVIGATION
#   Tests for the command-line dispatch and the exit codes it reports.
#
# ///////////////////////////////////////////////////////////////////////

import unittest
import os
import tempfile
from unittest.mock import MagicMock, patch
from utilities_navigation import initial_navigation, build_parser, normalize_argv, COMMAND_TABLE
from app import truncate_log_file
from utilities_exceptions import ConfigError, WindowTooSmallError
from global_parameters import *

class TestDispatch(unittest.TestCase):

    @patch.dict(os.environ, {}, clear=True)
    def test_success(self):
        command = MagicMock(return_value=EXIT_OK)
        with patch.dict(COMMAND_TABLE, {COMMAND_SEGAL: command}):
            status = initial_navigation([COMMAND_SEGAL, '--window=-2:0:-4:4'])
        self.assertEqual(status, EXIT_OK, "A successful command exits with 0")
        self.assertEqual(command.call_args.args[0].window.n_min, -4, "The command gets the parsed configuration")

    @patch.dict(os.environ, {}, clear=True)
    def test_failed_checks(self):
        with patch.dict(COMMAND_TABLE, {COMMAND_CHECK: MagicMock(return_value=EXIT_CHECK_FAILED)}):
            self.assertEqual(initial_navigation([COMMAND_CHECK]), EXIT_CHECK_FAILED, "Failed checks exit with 1")

    @patch.dict(os.environ, {}, clear=True)
    def test_engine_errors(self):
        with patch.dict(COMMAND_TABLE, {COMMAND_EXT: MagicMock(side_effect=ConfigError('bad preset'))}):
            self.assertEqual(initial_navigation([COMMAND_EXT]), EXIT_CONFIG_ERROR, "ConfigError exits with 2")
        with patch.dict(COMMAND_TABLE, {COMMAND_SEGAL: MagicMock(side_effect=WindowTooSmallError('narrow'))}):
            self.assertEqual(initial_navigation([COMMAND_SEGAL]), EXIT_WINDOW_ERROR, "Window errors exit with 3")

    @patch.dict(os.environ, {}, clear=True)
    def test_unknown_error(self):
        with patch.dict(COMMAND_TABLE, {COMMAND_MAY: MagicMock(side_effect=RuntimeError('boom'))}):
            self.assertEqual(initial_navigation([COMMAND_MAY]), EXIT_INTERNAL_ERROR, "Unexpected errors exit with 4")

    @patch.dict(os.environ, {}, clear=True)
    def test_invalid_prime(self):
        command = MagicMock(return_value=EXIT_OK)
        with patch.dict(COMMAND_TABLE, {COMMAND_MK: command}):
            self.assertEqual(initial_navigation([COMMAND_MK, '--p', '4']), EXIT_CONFIG_ERROR, "p = 4 is rejected")
        command.assert_not_called()

    @patch.dict(os.environ, {}, clear=True)
    def test_acceptance_window(self):
        command = MagicMock(return_value=EXIT_OK)
        with patch.dict(COMMAND_TABLE, {COMMAND_SEGAL: command}):
            status = initial_navigation([COMMAND_SEGAL, '--p', '3', '--n-max', '3', '--window', '-12:2:-14:14'])
        self.assertEqual(status, EXIT_OK, "A window starting with a minus sign parses")
        config = command.call_args.args[0]
        self.assertEqual((config.window.m_min, config.window.n_min, config.window.n_max), (-12, -14, 14), "The whole window is read")
        self.assertEqual(config.n_max, 3, "Options after the window are kept")

    @patch.dict(os.environ, {}, clear=True)
    @patch('utilities_navigation.sys.argv', ['app.py', COMMAND_SEGAL, '--window', '-2:0:-4:4'])
    def test_window_from_process_arguments(self):
        command = MagicMock(return_value=EXIT_OK)
        with patch.dict(COMMAND_TABLE, {COMMAND_SEGAL: command}):
            self.assertEqual(initial_navigation(), EXIT_OK, "sys.argv is normalized too")
        self.assertEqual(command.call_args.args[0].window.m_min, -2, "The window comes from the process arguments")

    def test_normalize_argv(self):
        self.assertEqual(normalize_argv(['may', '--window', '-4:2:-6:2', '--svg']), ['may', '--window=-4:2:-6:2', '--svg'], "The value is glued to its option")
        self.assertEqual(normalize_argv(['may', '--window', '0:2:0:2']), ['may', '--window', '0:2:0:2'], "Non-negative windows are left alone")
        self.assertEqual(normalize_argv(['may', '--window=-1:1:-1:1']), ['may', '--window=-1:1:-1:1'], "Glued windows are left alone")

    @patch.dict(os.environ, {}, clear=True)
    def test_segal_needs_two_levels(self):
        with tempfile.TemporaryDirectory() as tmp:
            status = initial_navigation([COMMAND_SEGAL, '--n-max', '1', '--window', '-2:0:-4:4', '--out', tmp])
            self.assertEqual(status, EXIT_CONFIG_ERROR, "n_max = 1 cannot show stabilization")
            self.assertEqual(os.listdir(tmp), [], "No report is written")

    def test_unknown_command(self):
        with self.assertRaises(SystemExit):
            build_parser().parse_args(['bogus'])

class TestLogFile(unittest.TestCase):

    def test_truncate_keeps_the_tail(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'app.log')
            with open(path, 'w', encoding='utf-8') as file:
                file.writelines(f"line {i}\n" for i in range(10))
            truncate_log_file(path, max_lines=5, lines_to_leave=3)
            with open(path, encoding='utf-8') as file:
                lines = file.read().splitlines()
        self.assertEqual(lines, ['line 7', 'line 8', 'line 9'], "Only the last lines are kept")

    def test_missing_log_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            truncate_log_file(os.path.join(tmp, 'missing.log'))
            self.assertEqual(os.listdir(tmp), [], "No file is created")

class TestMkCommand(unittest.TestCase):

    def test_mk_report(self):
        with tempfile.TemporaryDirectory() as tmp:
            with patch.dict(os.environ, {}, clear=True):
                status = initial_navigation([COMMAND_MK, '--out', tmp, '--k-max', '5'])
            self.assertEqual(status, EXIT_OK, "Formula and oracle agree at p=3")
            with open(os.path.join(tmp, f"{COMMAND_MK}{REPORT_EXTENSION}"), encoding='utf-8') as file:
                text = file.read()
        self.assertIn('# formula_equals_oracle = True', text, "The verdict is in the header")
        self.assertIn('5 | 2 | 2', text, "m_5 = 2 at p=3")

if __name__ == '__main__':
    unittest.main()
