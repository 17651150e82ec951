# ///////////////////////////////////////////////////////////////////////
#
#                             COMMAND EXT
#   Cobar Ext table for a preset: the spoke THH algebroid, the truncated
#   Hopf algebra Gamma_n with its comodule (or its associated graded), or
#   the geometric fixed point algebroid. The s = 0 row is checked against
#   the comodule primitives.
#
# ///////////////////////////////////////////////////////////////////////

from utilities_config import RunConfig
from utilities_grading import enumerate_window
from utilities_hopf import CobarLevels, unit_comodule, instantiate_sthh, instantiate_truncated, instantiate_geometric, instantiate_associated_graded
from utilities_cobar import build_cobar, ext_dimensions, comodule_primitives
from utilities_report import ext_frame, ext_lines, serialize, write_report
from utilities_charts import chart_from_dimensions, emit_chart
from global_parameters import *
import logging as log

logger_app = log.getLogger(LOGGER_APP_KEY)

# -----------------------------------------------------------------------
#                             FUNCTIONS
# -----------------------------------------------------------------------

def comodule_for(config: RunConfig):
    if config.preset == PRESET_STHH:
        return unit_comodule(instantiate_sthh(config.p, config.beta, config.beta_prime))
    if config.preset == PRESET_GEOMETRIC:
        return unit_comodule(instantiate_geometric(config.p))
    if config.associated_graded:
        return instantiate_associated_graded(config.p, config.n)[1]
    return instantiate_truncated(config.p, config.n, config.beta, config.beta_prime)[1]

def primitive_row_mismatches(comodule, table, cap: int) -> list:
    levels = CobarLevels(comodule)
    mismatches = []
    for d in enumerate_window(table.window):
        expected = len(comodule_primitives(levels, d, cap))
        found = sum(entry.dim for key, entry in table.entries.items() if key.s == 0 and key.total == d)
        if found != expected:
            mismatches.append(d)
    return mismatches

# -----------------------------------------------------------------------
#                              MAIN
# -----------------------------------------------------------------------

def run_ext(config: RunConfig) -> int:
    comodule = comodule_for(config)
    filtered = config.associated_graded and config.preset == PRESET_TRUNCATED
    complex_slice = build_cobar(comodule, config.window, config.threads, config.monomial_cap)
    table = ext_dimensions(complex_slice, filtered=filtered)

    mismatches = primitive_row_mismatches(comodule, table, config.monomial_cap)
    header = config.header_lines() + [f"# comodule = {comodule.name}", f"# primitives_match = {not mismatches}"]
    write_report(config.out_dir, COMMAND_EXT, serialize(header, ext_lines(ext_frame(table))))

    if config.svg:
        rows = [(entry.tri_degree.total, entry.labels) for entry in table.sorted_entries() if entry.dim]
        write_report(config.out_dir, COMMAND_EXT, emit_chart(chart_from_dimensions(f"Ext over {comodule.hopf.name}", config.window, rows)), CHART_EXTENSION)

    if mismatches:
        logger_app.error(f"[ERROR] Ext row s=0 disagrees with the primitives in {len(mismatches)} degree(s), first {mismatches[0]}")
        return EXIT_CHECK_FAILED
    logger_app.info(f"[SUCCESS] ext for {comodule.name}: {sum(table.nonzero().values())} classes")
    return EXIT_OK
