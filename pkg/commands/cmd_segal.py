# ///////////////////////////////////////////////////////////////////////
#
#                            COMMAND SEGAL
#   a-inverted survivors of the May abutment for n = 1 ... n_max, their
#   stabilization and the verdict: one class per a-power at m = 0, s = 0.
#
# ///////////////////////////////////////////////////////////////////////

from utilities_config import RunConfig
from utilities_may import segal_pipeline
from utilities_report import ext_frame, ext_lines, serialize, write_report
from global_parameters import *
import logging as log

logger_app = log.getLogger(LOGGER_APP_KEY)

# -----------------------------------------------------------------------
#                              MAIN
# -----------------------------------------------------------------------

def run_segal(config: RunConfig) -> int:
    report = segal_pipeline(config.p, config.n_max, config.window, config.beta, config.beta_prime,
                            config.disable_d1, config.threads, config.monomial_cap)

    header = config.header_lines() + [f"# margin = {report.margin}", f"# n = {report.n}",
                                      f"# stabilized = {report.stabilized}", f"# verdict = {report.verdict}"]
    header += [f"# survivors_n{n} = {sum(table.nonzero().values())}" for n, table in sorted(report.per_n.items())]
    write_report(config.out_dir, COMMAND_SEGAL, serialize(header, ext_lines(ext_frame(report.survivors))))

    return EXIT_OK if report.verdict else EXIT_CHECK_FAILED
