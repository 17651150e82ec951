# ///////////////////////////////////////////////////////////////////////
#
#                             COMMAND MAY
#   Pages E_1 ... E_infinity of the May spectral sequence for Gamma_n with
#   coefficients in F_p[a, u_lambda^+-1]<u_spoke>. The E_1 closed form is
#   compared with the cobar Ext of the associated-graded algebroid, E_2 and
#   E_p are rebuilt from the ranks of d_1 and d_(p-1), and the d_1 stage
#   ranks and the nonzero differentials outside d_1, d_(p-1) are written
#   into the report header. With --cross-check E_infinity is also compared
#   with the cobar Ext of Gamma_n.
#
# ///////////////////////////////////////////////////////////////////////

from utilities_config import RunConfig
from utilities_grading import enumerate_window, format_tri_degree, virtual_dim
from utilities_hopf import instantiate_associated_graded
from utilities_cobar import build_cobar, ext_dimensions, truncated_ext
from utilities_may import TwistedComplex, compute_pages, e1_closed_form, apply_d1, apply_d_p_minus_1, extra_differentials, d1_stages, abutment_dimensions
from utilities_report import page_frame, page_lines, serialize, write_report
from utilities_charts import chart_from_page, emit_chart
from global_parameters import *
import logging as log

logger_app = log.getLogger(LOGGER_APP_KEY)

# -----------------------------------------------------------------------
#                             FUNCTIONS
# -----------------------------------------------------------------------

def filtered_dims(table) -> dict:
    return {key: entry.dim for key, entry in table.entries.items() if entry.dim}

def e1_matches_associated_graded(closed, p: int, n: int, window, threads: int, cap: int) -> bool:
    """Closed-form E_1 against the cobar Ext of E_0 Gamma_n, split by May weight."""
    _, graded = instantiate_associated_graded(p, n)
    graded_ext = ext_dimensions(build_cobar(graded, window, threads, cap), filtered=True)
    return filtered_dims(graded_ext) == {key: dim for key, dim in closed.dims.items() if dim}

def totals_match(page, table) -> bool:
    expected = {(key.s, key.total): dim for key, dim in table.nonzero().items()}
    return page.total_dimensions() == expected

def negative_virtual_survivors(page) -> dict:
    return {key: dim for key, dim in page.total_dimensions().items() if dim and virtual_dim(key[1]) < 0}

def expected_negative_survivors(p: int, n: int, window) -> dict:
    """F_p[a, u_lambda^(+-p^n)] in negative virtual degrees: one class at s = 0 where 2p^n divides m."""
    return {(0, d): 1 for d in enumerate_window(window) if virtual_dim(d) < 0 and d.m % (2 * p ** n) == 0}

# -----------------------------------------------------------------------
#                              MAIN
# -----------------------------------------------------------------------

def run_may(config: RunConfig) -> int:
    p, n, window = config.p, config.n, config.window
    complex_ = TwistedComplex(p, n, config.beta, config.beta_prime, config.disable_d1, config.monomial_cap)
    sequence = compute_pages(complex_, window, config.threads)

    checks = {}
    closed = e1_closed_form(p, n, window, config.monomial_cap)
    checks['e1_associated_graded'] = e1_matches_associated_graded(closed, p, n, window, config.threads, config.monomial_cap)
    e2 = apply_d1(sequence)
    e_p = apply_d_p_minus_1(sequence)
    checks['e_infinity_abutment'] = totals_match(sequence.e_infinity, abutment_dimensions(complex_, window))
    if not config.disable_d1:
        checks['e_p_negative_virtual'] = negative_virtual_survivors(e_p) == expected_negative_survivors(p, n, window)

    if config.cross_check and not config.disable_d1:
        checks['e_infinity_cobar'] = totals_match(sequence.e_infinity, truncated_ext(p, n, window, config.beta, config.beta_prime, config.threads, config.monomial_cap))

    header = config.header_lines() + [f"# e_infinity_page = {sequence.infinity}"]
    header += [f"# e1_classes = {sum(closed.dims.values())}", f"# e2_classes = {sum(e2.dims.values())}", f"# e{p}_classes = {sum(e_p.dims.values())}"]
    header += [f"# d1_stage_{stage} = {rank_}" for stage, rank_ in sorted(d1_stages(complex_, window).items())]
    header += [f"# extra_differential = {r} | {format_tri_degree(key)} | {rank_}" for r, key, rank_ in extra_differentials(sequence)]
    header += [f"# check_{name} = {ok}" for name, ok in checks.items()]
    write_report(config.out_dir, COMMAND_MAY, serialize(header, page_lines(page_frame(sequence.pages))))

    if config.svg:
        for r, page in sorted(sequence.pages.items()):
            chart = chart_from_page(f"May E_{r}, p={p}, n={n}", window, page)
            write_report(config.out_dir, f"{COMMAND_MAY}-E{r}", emit_chart(chart), CHART_EXTENSION)

    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        logger_app.error(f"[ERROR] may checks failed: {failed}")
        return EXIT_CHECK_FAILED
    logger_app.info(f"[SUCCESS] may for p={p}, n={n}: {len(sequence.pages)} pages, checks {sorted(checks)} passed")
    return EXIT_OK
