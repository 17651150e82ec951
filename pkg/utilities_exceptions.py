# ///////////////////////////////////////////////////////////////////////
#
#                          UTILITIES EXCEPTIONS
#   Exception classes of the engine and the helpers that log them before
#   raising. Every class carries the exit code reported by the CLI.
#
# ///////////////////////////////////////////////////////////////////////

import logging as log
from global_parameters import LOGGER_ERRORS_KEY, EXIT_CONFIG_ERROR, EXIT_WINDOW_ERROR, EXIT_INTERNAL_ERROR

logger_errors = log.getLogger(LOGGER_ERRORS_KEY)

# -----------------------------------------------------------------------
#                           EXCEPTION CLASSES
# -----------------------------------------------------------------------

class EngineError(Exception):
    exit_code = EXIT_INTERNAL_ERROR

class ConfigError(EngineError):
    exit_code = EXIT_CONFIG_ERROR

# Window errors
class WindowError(EngineError):
    exit_code = EXIT_WINDOW_ERROR

class WindowIncompletenessError(WindowError):
    """An exponent cannot be bounded inside the requested degree."""

class WindowTooSmallError(WindowError):
    """The window cannot hold the a-towers needed for a verdict."""

# Internal consistency errors
class ConsistencyError(EngineError):
    exit_code = EXIT_INTERNAL_ERROR

class CompositionError(ConsistencyError):
    """Two composable maps do not compose to zero."""

class DifferentialSquareError(ConsistencyError):
    """A differential does not square to zero."""

class InhomogeneousElementError(ConsistencyError):
    pass

class InhomogeneousImageError(ConsistencyError):
    pass

class NonInvertibleImageError(ConsistencyError):
    pass

class BookkeepingError(ConsistencyError):
    """Page dimensions disagree with the ranks of the page differential."""

class UnsupportedVariantMapError(EngineError):
    exit_code = EXIT_CONFIG_ERROR

# -----------------------------------------------------------------------
#                          RAISE FUNCTIONS
# -----------------------------------------------------------------------

def raise_engine_error(engine_error: EngineError):
    logger_errors.error(f"[ERROR] {type(engine_error).__name__}:\n\t- Msg: {engine_error}\n\t- Exit Code: {engine_error.exit_code}")
    raise engine_error

def raise_unknown_error(unknown_error: Exception):
    logger_errors.error(f"[ERROR] An unknown error has occurred:\n\t- Msg: {unknown_error}")
    raise unknown_error

def raise_missing_env_variable(key: str, value: str):
    raise_engine_error(ConfigError(f"The environment variable {key} has an invalid value: {value!r}"))
