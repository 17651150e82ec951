# ///////////////////////////////////////////////////////////////////////
#
#                              COMMAND MK
#   Number of free F_p[C_p]-summands of Sym^k of the reduced regular
#   representation: closed formula against the Jordan-block rank.
#
# ///////////////////////////////////////////////////////////////////////

from utilities_config import RunConfig
from utilities_hopf import m_k_formula, m_k_oracle
from utilities_report import frame_lines, serialize, write_report
from global_parameters import *
import pandas as pd
import logging as log

logger_app = log.getLogger(LOGGER_APP_KEY)

# -----------------------------------------------------------------------
#                              MAIN
# -----------------------------------------------------------------------

def m_k_table(p: int, k_max: int) -> pd.DataFrame:
    frame = pd.DataFrame({'k': range(k_max + 1)})
    frame['formula'] = frame['k'].apply(lambda k: m_k_formula(p, k))
    frame['oracle'] = frame['k'].apply(lambda k: m_k_oracle(p, k))
    return frame

def run_mk(config: RunConfig) -> int:
    frame = m_k_table(config.p, config.k_max)
    matches = bool((frame['formula'] == frame['oracle']).all())

    header = config.header_lines() + [f"# formula_equals_oracle = {matches}"]
    write_report(config.out_dir, COMMAND_MK, serialize(header, frame_lines(frame, ['k', 'formula', 'oracle'])))

    if not matches:
        logger_app.error(f"[ERROR] m_k formula and oracle differ at k = {list(frame.loc[frame['formula'] != frame['oracle'], 'k'])}")
        return EXIT_CHECK_FAILED
    logger_app.info(f"[SUCCESS] m_k formula matches the oracle for p={config.p}, k <= {config.k_max}")
    return EXIT_OK
