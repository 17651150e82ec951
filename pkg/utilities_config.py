# ///////////////////////////////////////////////////////////////////////
#
#                           UTILITIES CONFIG
#   Run configuration: defaults from the environment (.env), merged with
#   the command-line flags into a validated, frozen RunConfig that every
#   report embeds as its header.
#
# ///////////////////////////////////////////////////////////////////////

from dotenv import load_dotenv
from dataclasses import dataclass, fields
from utilities_grading import DegreeWindow, parse_window, format_window
from utilities_linalg import is_odd_prime
from utilities_exceptions import ConfigError, raise_engine_error, raise_missing_env_variable
from global_parameters import *
import logging as log
import os

logger_config = log.getLogger(LOGGER_CONFIG_KEY)
load_dotenv()

EXECUTION_FIELDS = ('threads', 'out_dir')

# -----------------------------------------------------------------------
#                          ENVIRONMENT DEFAULTS
# -----------------------------------------------------------------------

def _env_int(key: str, default: int) -> int:
    value = os.getenv(key)
    if value is None or value.strip() == '':
        return default
    try:
        return int(value)
    except ValueError:
        raise_missing_env_variable(key, value)

def get_env_config() -> dict:
    config = {}

    config['out_dir'] = str(os.getenv(ENV_OUT_DIR_KEY) or DEFAULT_OUT_DIR)
    config['threads'] = _env_int(ENV_THREADS_KEY, DEFAULT_THREADS)
    config['p'] = _env_int(ENV_P_KEY, DEFAULT_P)
    config['s_max'] = _env_int(ENV_S_MAX_KEY, DEFAULT_S_MAX)
    config['beta'] = _env_int(ENV_BETA_KEY, DEFAULT_BETA)
    config['beta_prime'] = _env_int(ENV_BETA_PRIME_KEY, DEFAULT_BETA_PRIME)
    config['seed'] = _env_int(ENV_SEED_KEY, DEFAULT_SEED)
    config['monomial_cap'] = _env_int(ENV_MONOMIAL_CAP_KEY, DEFAULT_MONOMIAL_CAP)

    return config

# -----------------------------------------------------------------------
#                             RUN CONFIG
# -----------------------------------------------------------------------

@dataclass(frozen=True)
class RunConfig:
    command: str
    p: int = DEFAULT_P
    n: int = DEFAULT_N
    n_max: int = DEFAULT_N_MAX
    window: DegreeWindow = None
    beta: int = DEFAULT_BETA
    beta_prime: int = DEFAULT_BETA_PRIME
    threads: int = DEFAULT_THREADS
    out_dir: str = DEFAULT_OUT_DIR
    svg: bool = False
    seed: int = DEFAULT_SEED
    monomial_cap: int = DEFAULT_MONOMIAL_CAP
    preset: str = PRESET_TRUNCATED
    variant: str = VARIANT_FULL
    k_max: int = DEFAULT_K_MAX
    disable_d1: bool = False
    associated_graded: bool = False
    cross_check: bool = False

    def __post_init__(self):
        validate_run_config(self)

    def header_lines(self) -> list:
        """One '# key = value' line per field, in declaration order, execution-only fields left out."""
        lines = []
        for item in fields(self):
            if item.name in EXECUTION_FIELDS:
                continue
            value = getattr(self, item.name)
            if isinstance(value, DegreeWindow):
                lines.append(f"# window = {format_window(value)}")
                lines.append(f"# s_max = {value.s_max}")
            else:
                lines.append(f"# {item.name} = {value}")
        return lines

def validate_run_config(config: RunConfig):
    if config.command not in COMMANDS:
        raise_engine_error(ConfigError(f"Unknown command {config.command!r}, expected one of {COMMANDS}"))
    if not is_odd_prime(config.p):
        raise_engine_error(ConfigError(f"p must be an odd prime, got {config.p}"))
    if config.n < 1 or config.n_max < 1:
        raise_engine_error(ConfigError(f"Truncation levels must be at least 1, got n={config.n}, n_max={config.n_max}"))
    if config.beta % config.p == 0 or config.beta_prime % config.p == 0:
        raise_engine_error(ConfigError(f"beta={config.beta} and beta'={config.beta_prime} must be units modulo {config.p}"))
    if config.window is None:
        raise_engine_error(ConfigError("A degree window is required"))
    if config.threads < 1:
        raise_engine_error(ConfigError(f"The thread count must be at least 1, got {config.threads}"))
    if config.monomial_cap < 1 or config.k_max < 0:
        raise_engine_error(ConfigError(f"Invalid monomial cap {config.monomial_cap} or k_max {config.k_max}"))
    if config.preset not in PRESETS:
        raise_engine_error(ConfigError(f"Unknown preset {config.preset!r}, expected one of {PRESETS}"))
    if config.variant not in VARIANTS:
        raise_engine_error(ConfigError(f"Unknown variant {config.variant!r}, expected one of {VARIANTS}"))

def get_run_config(args) -> RunConfig:
    """Parsed flags override the environment defaults; unset flags are None."""
    env = get_env_config()

    def pick(name: str, default):
        value = getattr(args, name, None)
        return default if value is None else value

    s_max = pick('s_max', env['s_max'])
    window = parse_window(pick('window', DEFAULT_WINDOW), s_max)

    config = RunConfig(
        command=args.command,
        p=pick('p', env['p']),
        n=pick('n', DEFAULT_N),
        n_max=pick('n_max', DEFAULT_N_MAX),
        window=window,
        beta=pick('beta', env['beta']),
        beta_prime=pick('beta_prime', env['beta_prime']),
        threads=pick('threads', env['threads']),
        out_dir=pick('out', env['out_dir']),
        svg=bool(pick('svg', False)),
        seed=pick('seed', env['seed']),
        monomial_cap=pick('monomial_cap', env['monomial_cap']),
        preset=pick('preset', PRESET_TRUNCATED),
        variant=pick('variant', VARIANT_FULL),
        k_max=pick('k_max', DEFAULT_K_MAX),
        disable_d1=bool(pick('disable_d1', False)),
        associated_graded=bool(pick('associated_graded', False)),
        cross_check=bool(pick('cross_check', False)),
    )

    logger_config.info(f"[INFO] Configuration for {config.command}: p={config.p}, window={format_window(config.window)}, s_max={config.window.s_max}, threads={config.threads}")
    return config
