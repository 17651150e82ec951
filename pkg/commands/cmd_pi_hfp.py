# ///////////////////////////////////////////////////////////////////////
#
#                           COMMAND PI-HFP
#   Basis and dimension tables of the homotopy of HF_p in spoke grading
#   for one variant, the RO(C_p)-graded relabelling of the full variant,
#   and the a-torsion check of the negative cone.
#
# ///////////////////////////////////////////////////////////////////////

from utilities_config import RunConfig
from utilities_grading import enumerate_window
from utilities_hfp import basis_keys, basis_in_degree, negative_cone_in_degree, positive_negative_split, a_torsion_order, ro_graded_basis
from utilities_report import dimension_frame, dimension_grid, frame_lines, serialize, write_report
from utilities_charts import chart_from_dimensions, emit_chart
from global_parameters import *
import logging as log

logger_app = log.getLogger(LOGGER_APP_KEY)

# -----------------------------------------------------------------------
#                              MAIN
# -----------------------------------------------------------------------

def run_pi_hfp(config: RunConfig) -> int:
    p, window, variant = config.p, config.window, config.variant
    rows = [(d, basis_in_degree(variant, d, p)) for d in enumerate_window(window)]
    frame = dimension_frame(rows)

    status = EXIT_OK
    header = config.header_lines()
    if variant == VARIANT_FULL:
        split_ok = all(sum(positive_negative_split(d, p)) == len(basis_keys(variant, d, p)) for d in enumerate_window(window))
        torsion_ok = all(a_torsion_order(y, p) == y.k for d in enumerate_window(window) for y in negative_cone_in_degree(d))
        header += [f"# cone_split = {split_ok}", f"# a_torsion_orders = {torsion_ok}"]
        if not (split_ok and torsion_ok):
            logger_app.error(f"[ERROR] pi-hfp consistency failed: cone split {split_ok}, a-torsion orders {torsion_ok}")
            status = EXIT_CHECK_FAILED

        ro_rows = [(d, ro_graded_basis(d, p)) for d in enumerate_window(window) if d.n % 2 == 0]
        ro_frame = dimension_frame(ro_rows)
        write_report(config.out_dir, f"{COMMAND_PI_HFP}-ro", serialize(config.header_lines(), frame_lines(ro_frame, ['degree', 'dim', 'labels'])))

    write_report(config.out_dir, COMMAND_PI_HFP, serialize(header, frame_lines(frame, ['degree', 'dim', 'labels'])))
    write_report(config.out_dir, f"{COMMAND_PI_HFP}-grid", serialize(config.header_lines(), dimension_grid(frame).to_string().splitlines()))

    if config.svg:
        chart = chart_from_dimensions(f"pi_*(HF_{p}) {variant}", window, rows)
        write_report(config.out_dir, COMMAND_PI_HFP, emit_chart(chart), CHART_EXTENSION)

    logger_app.info(f"[SUCCESS] pi-hfp {variant}: {int(frame['dim'].sum())} basis elements on {window}")
    return status
