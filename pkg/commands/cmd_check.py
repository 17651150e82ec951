# ///////////////////////////////////////////////////////////////////////
#
#                            COMMAND CHECK
#   Axiom suite for a preset (counits, coassociativity, right unit,
#   comodule axioms, homogeneity). The truncated preset also checks the
#   May filtration against its associated graded.
#
# ///////////////////////////////////////////////////////////////////////

from utilities_config import RunConfig
from utilities_grading import enumerate_window
from utilities_algebra import monomials_in_degree
from utilities_hopf import (check_axioms, instantiate_sthh, instantiate_truncated, instantiate_geometric,
                            instantiate_associated_graded, right_unit_terms)
from utilities_may import may_filtration
from utilities_report import serialize, write_report
from global_parameters import *
import logging as log

logger_app = log.getLogger(LOGGER_APP_KEY)

# -----------------------------------------------------------------------
#                             FUNCTIONS
# -----------------------------------------------------------------------

def preset_structures(config: RunConfig) -> tuple:
    if config.preset == PRESET_STHH:
        return instantiate_sthh(config.p, config.beta, config.beta_prime), None
    if config.preset == PRESET_GEOMETRIC:
        return instantiate_geometric(config.p), None
    return instantiate_truncated(config.p, config.n, config.beta, config.beta_prime)

def right_unit_text(spec_terms: list) -> str:
    parts = []
    for coef, exponents in spec_terms:
        monomial = '*'.join(name if e == 1 else f"{name}^{e}" for name, e in exponents.items())
        parts.append(monomial if coef == 1 else f"{coef}*{monomial}")
    return ' + '.join(parts)

def filtration_matches_associated_graded(config: RunConfig) -> bool:
    """dim F_s / F_(s-1) per degree equals the weight-s part of E_0 Gamma_n."""
    hopf, _ = instantiate_truncated(config.p, config.n, config.beta, config.beta_prime)
    graded, _ = instantiate_associated_graded(config.p, config.n)
    filtration = may_filtration(hopf, config.window, config.monomial_cap)
    for d in enumerate_window(config.window):
        expected = {}
        for mono in monomials_in_degree(graded.total, d, config.monomial_cap):
            f = graded.total.f_of(mono)
            expected[f] = expected.get(f, 0) + 1
        if filtration.graded_dimensions(d) != expected:
            logger_app.error(f"[ERROR] May filtration in degree {d} is {filtration.graded_dimensions(d)}, associated graded gives {expected}")
            return False
    return True

# -----------------------------------------------------------------------
#                              MAIN
# -----------------------------------------------------------------------

def run_check(config: RunConfig) -> int:
    hopf, comodule = preset_structures(config)
    report = check_axioms(hopf, config.window, comodule)

    header = config.header_lines() + [f"# structure = {hopf.name}", f"# passed = {report.passed}", f"# first_failure = {report.first_failure}"]
    if config.preset == PRESET_STHH:
        terms = right_unit_terms(hopf.total, config.p, config.beta, config.beta_prime)
        header += [f"# eta_R({name}) = {right_unit_text(terms[name])}" for name in (GEN_U_LAMBDA, GEN_U_SPOKE)]
    passed = report.passed
    if config.preset == PRESET_TRUNCATED:
        filtration_ok = filtration_matches_associated_graded(config)
        header.append(f"# may_filtration_associated_graded = {filtration_ok}")
        passed = passed and filtration_ok

    body = [f"{axiom} | {count}" for axiom, count in sorted(report.counts.items())]
    write_report(config.out_dir, COMMAND_CHECK, serialize(header, body))
    return EXIT_OK if passed else EXIT_CHECK_FAILED
