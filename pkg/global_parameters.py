# ///////////////////////////////////////////////////////////////////////
#
#                              GLOBAL PARAMETERS
#   File that contains all the constants and parameters used in the engine.
#
# ///////////////////////////////////////////////////////////////////////

# Logger constants
LOGGER_APP_KEY = 'app'
LOGGER_ERRORS_KEY = 'app.utilities.exceptions'
LOGGER_LINALG_KEY = 'app.utilities.linalg'
LOGGER_ALGEBRA_KEY = 'app.utilities.algebra'
LOGGER_HFP_KEY = 'app.utilities.hfp'
LOGGER_HOPF_KEY = 'app.utilities.hopf'
LOGGER_COBAR_KEY = 'app.utilities.cobar'
LOGGER_MAY_KEY = 'app.utilities.may'
LOGGER_CONFIG_KEY = 'app.utilities.config'
LOGGER_REPORT_KEY = 'app.utilities.report'
LOGGER_CHARTS_KEY = 'app.utilities.charts'
LOGGER_NAVIGATION_KEY = 'app.utilities.navigation'

# Log file
LOG_PATH = 'app.log'
LOG_MAX_LINES = 800
LOG_LINES_TO_LEAVE = 600

# Exit codes
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_WINDOW_ERROR = 3
EXIT_INTERNAL_ERROR = 4

# Environment variables
ENV_OUT_DIR_KEY = 'SPOKE_OUT_DIR'
ENV_THREADS_KEY = 'SPOKE_THREADS'
ENV_P_KEY = 'SPOKE_P'
ENV_S_MAX_KEY = 'SPOKE_S_MAX'
ENV_BETA_KEY = 'SPOKE_BETA'
ENV_BETA_PRIME_KEY = 'SPOKE_BETA_PRIME'
ENV_SEED_KEY = 'SPOKE_SEED'
ENV_MONOMIAL_CAP_KEY = 'SPOKE_MONOMIAL_CAP'

# Defaults
DEFAULT_OUT_DIR = 'reports'
DEFAULT_THREADS = 1
DEFAULT_P = 3
DEFAULT_N = 1
DEFAULT_N_MAX = 3
DEFAULT_S_MAX = 4
DEFAULT_BETA = 1
DEFAULT_BETA_PRIME = 1
DEFAULT_SEED = 0
DEFAULT_MONOMIAL_CAP = 64
DEFAULT_WINDOW = '-12:2:-14:14'
DEFAULT_K_MAX = 12

# Generator names
GEN_A = 'a'
GEN_U_LAMBDA = 'u_lambda'
GEN_U_SPOKE = 'u_spoke'
GEN_NORM = 'Nm'
GEN_MU = 'mu'
GEN_Y = 'y'
GEN_X = 'x'
GEN_Y_BAR = 'ybar'
GEN_X_BAR = 'xbar'
GEN_Z = 'z'
GEN_X_PREFIX = 'x_'
GEN_X_PRIME_PREFIX = 'xp_'
GEN_N_PREFIX = 'N_'
GEN_WEYL_PREFIX = 'mu_'

# Presets and variants
PRESET_STHH = 'sthh'
PRESET_TRUNCATED = 'truncated'
PRESET_GEOMETRIC = 'geometric'
PRESETS = [PRESET_STHH, PRESET_TRUNCATED, PRESET_GEOMETRIC]

VARIANT_FULL = 'full'
VARIANT_A_FREE = 'a_free'
VARIANT_A_INVERTED = 'a_inverted'
VARIANT_A_COMPLETED_INVERTED = 'a_completed_inverted'
VARIANT_SPOKE_SUSPENSION = 'spoke_suspension'
VARIANTS = [VARIANT_FULL, VARIANT_A_FREE, VARIANT_A_INVERTED, VARIANT_A_COMPLETED_INVERTED, VARIANT_SPOKE_SUSPENSION]

# Commands
COMMAND_PI_HFP = 'pi-hfp'
COMMAND_EXT = 'ext'
COMMAND_MAY = 'may'
COMMAND_SEGAL = 'segal'
COMMAND_MK = 'mk'
COMMAND_CHECK = 'check'
COMMANDS = [COMMAND_PI_HFP, COMMAND_EXT, COMMAND_MAY, COMMAND_SEGAL, COMMAND_MK, COMMAND_CHECK]

# Report files
REPORT_EXTENSION = '.txt'
CHART_EXTENSION = '.svg'
CHART_FORMAT = 'svg'
