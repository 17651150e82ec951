# ///////////////////////////////////////////////////////////////////////
#
#                            TEST CONFIG
#   Tests for the environment defaults, the run configuration validation
#   and the report header built from it.
#
# ///////////////////////////////////////////////////////////////////////

import unittest
import os
from argparse import Namespace
from unittest.mock import patch
from utilities_grading import DegreeWindow
from utilities_config import RunConfig, get_env_config, get_run_config
from utilities_exceptions import ConfigError
from global_parameters import *

class TestEnvConfig(unittest.TestCase):

    @patch.dict(os.environ, {}, clear=True)
    def test_defaults_without_env(self):
        config = get_env_config()
        self.assertEqual(config['p'], DEFAULT_P, "p falls back to its default")
        self.assertEqual(config['threads'], DEFAULT_THREADS, "threads fall back to the default")
        self.assertEqual(config['out_dir'], DEFAULT_OUT_DIR, "out dir falls back to the default")

    @patch.dict(os.environ, {ENV_P_KEY: '5', ENV_THREADS_KEY: '2', ENV_SEED_KEY: ''}, clear=True)
    def test_values_from_env(self):
        config = get_env_config()
        self.assertEqual(config['p'], 5, "SPOKE_P is read")
        self.assertEqual(config['threads'], 2, "SPOKE_THREADS is read")
        self.assertEqual(config['seed'], DEFAULT_SEED, "An empty value keeps the default")

    @patch.dict(os.environ, {ENV_P_KEY: 'x'}, clear=True)
    def test_invalid_env_value(self):
        with self.assertRaises(ConfigError):
            get_env_config()

class TestRunConfig(unittest.TestCase):

    def setUp(self):
        self.window = DegreeWindow(-1, 1, -2, 2, s_max=3)

    def test_validation(self):
        with self.assertRaises(ConfigError):
            RunConfig(COMMAND_MK, p=4, window=self.window)
        with self.assertRaises(ConfigError):
            RunConfig(COMMAND_MK, beta=3, window=self.window)
        with self.assertRaises(ConfigError):
            RunConfig('bogus', window=self.window)
        with self.assertRaises(ConfigError):
            RunConfig(COMMAND_MK)
        with self.assertRaises(ConfigError):
            RunConfig(COMMAND_EXT, preset='bogus', window=self.window)

    def test_header_lines(self):
        lines = RunConfig(COMMAND_EXT, p=5, window=self.window, threads=4, out_dir='elsewhere').header_lines()
        self.assertEqual(lines[0], f"# command = {COMMAND_EXT}", "The command comes first")
        self.assertIn('# p = 5', lines, "p is recorded")
        self.assertIn('# window = -1:1:-2:2', lines, "The window is recorded in its CLI form")
        self.assertIn('# s_max = 3', lines, "s_max is recorded next to the window")
        self.assertFalse(any('threads' in line or 'out_dir' in line for line in lines), "Execution-only fields stay out of the header")

    def test_header_ignores_threads(self):
        single = RunConfig(COMMAND_MK, window=self.window, threads=1).header_lines()
        several = RunConfig(COMMAND_MK, window=self.window, threads=8).header_lines()
        self.assertEqual(single, several, "Reports do not depend on the thread count")

class TestGetRunConfig(unittest.TestCase):

    @patch.dict(os.environ, {}, clear=True)
    def test_flags_override_defaults(self):
        args = Namespace(command=COMMAND_EXT, p=5, window='0:2:-4:4', s_max=2, threads=None, n=2)
        config = get_run_config(args)
        self.assertEqual(config.p, 5, "--p overrides the default")
        self.assertEqual(config.window, DegreeWindow(0, 2, -4, 4, 2), "--window and --s-max build the window")
        self.assertEqual(config.n, 2, "--n is kept")
        self.assertEqual(config.threads, DEFAULT_THREADS, "Unset flags fall back to the defaults")

    @patch.dict(os.environ, {ENV_P_KEY: '7', ENV_S_MAX_KEY: '1'}, clear=True)
    def test_env_fills_unset_flags(self):
        config = get_run_config(Namespace(command=COMMAND_MK))
        self.assertEqual(config.p, 7, "SPOKE_P is used when --p is missing")
        self.assertEqual(config.window.s_max, 1, "SPOKE_S_MAX is used when --s-max is missing")

    @patch.dict(os.environ, {}, clear=True)
    def test_threads_are_logged(self):
        with self.assertLogs(LOGGER_CONFIG_KEY, level='INFO') as logs:
            config = get_run_config(Namespace(command=COMMAND_MK, threads=3))
        self.assertEqual(config.threads, 3, "--threads is kept")
        self.assertTrue(any('threads=3' in line for line in logs.output), "The thread count of a run is in the log")
        self.assertFalse(any('threads' in line for line in config.header_lines()), "but not in the report header")

    @patch.dict(os.environ, {}, clear=True)
    def test_bad_window(self):
        with self.assertRaises(ConfigError):
            get_run_config(Namespace(command=COMMAND_MK, window='1:2:3'))

if __name__ == '__main__':
    unittest.main()
