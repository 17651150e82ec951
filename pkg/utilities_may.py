# ///////////////////////////////////////////////////////////////////////
#
#                          UTILITIES MAY
#   May filtration of the truncated Hopf algebras, the closed-form E_1
#   page, the twisted complex M (x) F_p[z] (x) E[x_t] (x) F_p[x'_t] whose
#   filtration spectral sequence is the May spectral sequence, its pages,
#   the a-inverted abutment and the Segal verdict.
#
# ///////////////////////////////////////////////////////////////////////

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from utilities_grading import SpokeDegree, TriDegree, DegreeWindow, enumerate_window, format_degree, format_tri_degree
from utilities_algebra import (GeneratorKind, GeneratorSpec, GradedAlgebraPresentation, AlgebraElement,
                               embed_element, monomial_element, monomials_in_degree)
from utilities_linalg import SparseMatFp, EchelonSpan, kernel_basis, rank, vec_add_scaled
from utilities_hopf import CobarLevels, HopfAlgebroidPresentation, unit_comodule, instantiate_truncated
from utilities_cobar import ExtEntry, ExtTable, stabilize_over_n
from utilities_exceptions import (BookkeepingError, ConfigError, DifferentialSquareError, InhomogeneousImageError,
                                  WindowTooSmallError, raise_engine_error)
from global_parameters import *
import logging as log

logger_may = log.getLogger(LOGGER_MAY_KEY)

# -----------------------------------------------------------------------
#                           MAY FILTRATION
# -----------------------------------------------------------------------

@dataclass
class MayFiltration:
    weights: dict = field(default_factory=dict)
    dimensions: dict = field(default_factory=dict)

    def graded_dimensions(self, degree: SpokeDegree) -> dict:
        """dim F_s / F_(s-1) per s in one degree."""
        dims = self.dimensions.get(degree, ())
        return {s: dims[s] - (dims[s - 1] if s else 0) for s in range(len(dims)) if dims[s] - (dims[s - 1] if s else 0)}

def _drop_unit_slots(levels: CobarLevels, s: int, x: AlgebraElement) -> AlgebraElement:
    terms = {mono: coef for mono, coef in x.terms.items() if not levels.has_unit_slot(s, mono)}
    return AlgebraElement(x.algebra, x.degree, terms)

def iterated_reduced_coproduct(levels: CobarLevels, x: AlgebraElement, k: int) -> AlgebraElement:
    """Image of x in Gammabar^(x)k, coproducts taken on the first slot."""
    image = _drop_unit_slots(levels, 1, embed_element(x, levels.level(1)))
    for s in range(1, k):
        image = _drop_unit_slots(levels, s + 1, levels.coface(s, 1).apply(image))
    return image

def filtration_weight(levels: CobarLevels, x: AlgebraElement) -> int:
    """Smallest s with x in F_s, the kernel of Gamma -> Gammabar^(x)(s+1)."""
    s = 0
    image = _drop_unit_slots(levels, 1, embed_element(x, levels.level(1)))
    while not image.is_zero():
        s += 1
        image = _drop_unit_slots(levels, s + 1, levels.coface(s, 1).apply(image))
    return s

def may_filtration(hopf: HopfAlgebroidPresentation, window: DegreeWindow, cap: int = DEFAULT_MONOMIAL_CAP) -> MayFiltration:
    levels = CobarLevels(unit_comodule(hopf))
    filtration = MayFiltration()
    for d in enumerate_window(window):
        basis = monomials_in_degree(hopf.total, d, cap)
        if not basis:
            continue
        elements = [monomial_element(hopf.total, mono) for mono in basis]
        weights = [filtration_weight(levels, x) for x in elements]
        filtration.weights[d] = [(hopf.total.label(mono), w) for mono, w in zip(basis, weights)]
        dims = []
        for s in range(max(weights) + 1):
            images = [iterated_reduced_coproduct(levels, x, s + 1) for x in elements]
            rows = {}
            columns = [{rows.setdefault(mono, len(rows)): coef for mono, coef in image.terms.items()} for image in images]
            dims.append(len(basis) - rank(SparseMatFp.from_columns(len(rows), hopf.p, columns)))
        filtration.dimensions[d] = tuple(dims)
    return filtration

# -----------------------------------------------------------------------
#                          E_1 PRESENTATION
# -----------------------------------------------------------------------

@lru_cache(maxsize=32)
def may_e1_presentation(p: int, n: int) -> GradedAlgebraPresentation:
    """F_p[a, u_lambda^+-1, z, x'_t] <u_spoke, x_t> with generators in total degree, weighted by s and f."""
    generators = [
        GeneratorSpec(GEN_A, SpokeDegree(0, -1), GeneratorKind.POLYNOMIAL),
        GeneratorSpec(GEN_U_LAMBDA, SpokeDegree(2, -2), GeneratorKind.INVERTIBLE),
        GeneratorSpec(GEN_U_SPOKE, SpokeDegree(1, -1), GeneratorKind.EXTERIOR),
        GeneratorSpec(GEN_Z, SpokeDegree(0, 1), GeneratorKind.POLYNOMIAL, None, 1, 1),
    ]
    generators += [GeneratorSpec(f"{GEN_X_PREFIX}{t}", SpokeDegree(2 * p ** t - 1, 2 * (p - 1) * p ** t), GeneratorKind.EXTERIOR, None, 1, 1)
                   for t in range(n)]
    generators += [GeneratorSpec(f"{GEN_X_PRIME_PREFIX}{t}", SpokeDegree(2 * p ** (t + 1) - 2, 2 * (p - 1) * p ** (t + 1)), GeneratorKind.POLYNOMIAL, None, 2, p)
                   for t in range(n)]
    return GradedAlgebraPresentation(p, tuple(generators), f"E1(p={p},n={n})")

# -----------------------------------------------------------------------
#                              PAGES
# -----------------------------------------------------------------------

@dataclass
class SSPage:
    r: int
    dims: dict = field(default_factory=dict)
    labels: dict = field(default_factory=dict)
    differentials: dict = field(default_factory=dict)

    def dimension(self, tri_degree: TriDegree) -> int:
        return self.dims.get(tri_degree, 0)

    def rank_out(self, tri_degree: TriDegree) -> int:
        entry = self.differentials.get(tri_degree)
        return entry[1] if entry else 0

    def total_dimensions(self) -> dict:
        """Dimensions summed over the May weight, keyed (s, total degree)."""
        totals = {}
        for key, dim in self.dims.items():
            totals[(key.s, key.total)] = totals.get((key.s, key.total), 0) + dim
        return totals

@dataclass
class MaySpectralSequence:
    p: int
    n: int
    window: DegreeWindow
    pages: dict = field(default_factory=dict)
    infinity: int = 1

    @property
    def e_infinity(self) -> SSPage:
        return self.pages[self.infinity]

    def page(self, r: int) -> SSPage:
        return self.pages[min(r, self.infinity)]

def _window_plan(window: DegreeWindow) -> dict:
    plan = {}
    for d in enumerate_window(window):
        for s in range(window.s_max + 1):
            plan.setdefault(d + SpokeDegree(s, 0), set()).add(s)
    return plan

def e1_closed_form(p: int, n: int, window: DegreeWindow, cap: int = DEFAULT_MONOMIAL_CAP) -> SSPage:
    """E_1 by enumerating the closed-form presentation per tri-degree."""
    presentation = may_e1_presentation(p, n)
    page = SSPage(1)
    for d in enumerate_window(window):
        for s in range(window.s_max + 1):
            grouped = {}
            for mono in monomials_in_degree(presentation, d, cap, s=s):
                grouped.setdefault(presentation.f_of(mono), []).append(presentation.label(mono))
            for f, labels in grouped.items():
                key = TriDegree(d, s, f)
                page.dims[key] = len(labels)
                page.labels[key] = tuple(labels)
    return page

# -----------------------------------------------------------------------
#                          TWISTED COMPLEX
# -----------------------------------------------------------------------

OPERATOR_Z = 'Z'
OPERATOR_D = 'D'
OPERATOR_D_POWER = 'Dp'

class TwistedComplex:
    """
    M (x) F_p[z] (x) E[x_t] (x) F_p[x'_t] with differential assembled from
    the coaction: Z = coefficient of mu, D_t = coefficient of Nm^(p^t).
    On a basis element m z^k prod x_t^e_t x'_t^c_t the factors contribute,
    in order z, x_0, ..., x_(n-1), with the sign of the s-degree passed:
      z:   Z(m) z^(k+1)
      x_t: D_t(m) x_t when e_t = 0, D_t^(p-1)(m) x'_t when e_t = 1.
    Its cohomology is Ext over Gamma_n; filtering by May weight gives the
    May spectral sequence with d_1 from Z, D_t and d_(p-1) from D_t^(p-1).
    """

    def __init__(self, p: int, n: int, beta: int = DEFAULT_BETA, beta_prime: int = DEFAULT_BETA_PRIME,
                 disable_d1: bool = False, cap: int = DEFAULT_MONOMIAL_CAP):
        self.p = p
        self.n = n
        self.disable_d1 = disable_d1
        self.cap = cap
        _, comodule = instantiate_truncated(p, n, beta, beta_prime)
        self.levels = CobarLevels(comodule)
        self.module = comodule.algebra
        self.presentation = may_e1_presentation(p, n)
        width = len(self.module)
        self.width = width
        self.z_position = width
        self.x_positions = tuple(width + 1 + t for t in range(n))
        self.xp_positions = tuple(width + 1 + n + t for t in range(n))
        self._coefficients = {}
        self._operators = {}
        self._bases = {}
        self._matrices = {}

    @property
    def components(self) -> tuple:
        kinds = [(OPERATOR_D_POWER, t) for t in range(self.n)]
        if not self.disable_d1:
            kinds = [(OPERATOR_Z, None)] + [(OPERATOR_D, t) for t in range(self.n)] + kinds
        return tuple(kinds)

    # ----- operators on M -----

    def _coaction(self, m: tuple) -> dict:
        if m not in self._coefficients:
            image = self.levels.coface(0, 0).apply(monomial_element(self.module, m))
            coefficients = {}
            for mono, coef in image.terms.items():
                coefficients.setdefault(mono[self.width:], {})[mono[:self.width]] = coef
            self._coefficients[m] = coefficients
        return self._coefficients[m]

    def operator(self, kind: str, t, m: tuple) -> dict:
        key = (kind, t, m)
        if key not in self._operators:
            if kind == OPERATOR_Z:
                result = dict(self._coaction(m).get((0, 1), {}))
            elif kind == OPERATOR_D:
                result = dict(self._coaction(m).get((self.p ** t, 0), {}))
            else:
                result = {m: 1}
                for _ in range(self.p - 1):
                    result = self.apply_operator(OPERATOR_D, t, result)
            self._operators[key] = result
        return self._operators[key]

    def apply_operator(self, kind: str, t, vector: dict) -> dict:
        result = {}
        for m, coef in vector.items():
            vec_add_scaled(result, coef, self.operator(kind, t, m), self.p)
        return result

    # ----- complex -----

    def basis(self, internal: SpokeDegree, s: int) -> list:
        key = (internal, s)
        if key not in self._bases:
            self._bases[key] = monomials_in_degree(self.presentation, internal - SpokeDegree(s, 0), self.cap, s=s) if s >= 0 else []
        return self._bases[key]

    def weight(self, mono: tuple) -> int:
        return self.presentation.f_of(mono)

    def differential_terms(self, mono: tuple, components: tuple = None) -> dict:
        components = self.components if components is None else components
        m = mono[:self.width]
        k = mono[self.z_position]
        result = {}
        if (OPERATOR_Z, None) in components:
            for image, coef in self.operator(OPERATOR_Z, None, m).items():
                target = image + (k + 1,) + mono[self.width + 1:]
                vec_add_scaled(result, coef, {target: 1}, self.p)
        sign = -1 if k % 2 else 1
        for t in range(self.n):
            e = mono[self.x_positions[t]]
            kind = OPERATOR_D_POWER if e else OPERATOR_D
            if (kind, t) in components:
                for image, coef in self.operator(kind, t, m).items():
                    target = list(image + mono[self.width:])
                    target[self.x_positions[t]] = 1 - e
                    if e:
                        target[self.xp_positions[t]] += 1
                    vec_add_scaled(result, sign * coef, {tuple(target): 1}, self.p)
            if e:
                sign = -sign
        return result

    def matrix(self, internal: SpokeDegree, s: int, components: tuple = None) -> SparseMatFp:
        """Differential from (internal, s) to (internal, s + 1)."""
        key = (internal, s, components)
        if key not in self._matrices:
            source, target = self.basis(internal, s), self.basis(internal, s + 1)
            index = {mono: row for row, mono in enumerate(target)}
            columns = []
            for mono in source:
                column = {}
                for image, coef in self.differential_terms(mono, components).items():
                    row = index.get(image)
                    if row is None:
                        raise_engine_error(InhomogeneousImageError(f"Twisted differential of {self.presentation.label(mono)} leaves internal degree {format_degree(internal)}"))
                    column[row] = coef
                columns.append(column)
            self._matrices[key] = SparseMatFp.from_columns(len(target), self.p, columns)
        return self._matrices[key]

    def check_square(self, internal: SpokeDegree, s: int):
        if not self.matrix(internal, s + 1).matmul(self.matrix(internal, s)).is_zero():
            raise_engine_error(DifferentialSquareError(f"d^2 != 0 on the twisted complex at internal degree {format_degree(internal)}, s={s}"))

    def a_shift(self, mono: tuple, k: int) -> tuple:
        return (mono[0] + k,) + mono[1:]

def twisted_complex(p: int, n: int, beta: int = DEFAULT_BETA, beta_prime: int = DEFAULT_BETA_PRIME,
                    disable_d1: bool = False, cap: int = DEFAULT_MONOMIAL_CAP) -> TwistedComplex:
    return TwistedComplex(p, n, beta, beta_prime, disable_d1, cap)

# -----------------------------------------------------------------------
#                     FILTERED COMPLEX PAGES
# -----------------------------------------------------------------------

def _restrict(matrix: SparseMatFp, rows: list, cols: list) -> SparseMatFp:
    row_index = {row: i for i, row in enumerate(rows)}
    columns = [{row_index[row]: value for row, value in matrix.columns[col].items() if row in row_index} for col in cols]
    return SparseMatFp.from_columns(len(rows), matrix.p, columns)

class _FilteredSlice:
    """
    One internal degree of the twisted complex filtered by May weight.
    E_r^(s,f) = Z_r^f / (Z_(r-1)^(f+1) + d Z_(r-1)^(f-r+1)) with
    Z_r^f = {x in F^f : dx in F^(f+r)}.
    """

    def __init__(self, complex_: TwistedComplex, internal: SpokeDegree, s_top: int):
        self.p = complex_.p
        self.internal = internal
        self.s_top = s_top
        self.presentation = complex_.presentation
        self.bases = {s: complex_.basis(internal, s) for s in range(s_top + 3)}
        self.weights = {s: [complex_.weight(mono) for mono in basis] for s, basis in self.bases.items()}
        self.matrices = {s: complex_.matrix(internal, s) for s in range(s_top + 2)}
        for s in range(s_top + 1):
            if not self.matrices[s + 1].matmul(self.matrices[s]).is_zero():
                raise_engine_error(DifferentialSquareError(f"d^2 != 0 on the twisted complex at internal degree {format_degree(internal)}, s={s}"))
        self._cycles = {}
        self._pages = {}

    def weight_span(self) -> int:
        weights = [w for values in self.weights.values() for w in values]
        return max(weights) - min(weights) if weights else 0

    def filtration_values(self, s: int) -> list:
        return sorted(set(self.weights.get(s, [])))

    def cycles(self, s: int, f: int, r: int) -> list:
        key = (s, f, r)
        if key not in self._cycles:
            cols = [i for i, w in enumerate(self.weights.get(s, [])) if w >= f]
            if s < 0 or not cols:
                result = []
            elif r <= 0:
                result = [{i: 1} for i in cols]
            else:
                rows = [j for j, w in enumerate(self.weights[s + 1]) if w < f + r]
                kernel = kernel_basis(_restrict(self.matrices[s], rows, cols))
                result = [{cols[i]: coef for i, coef in vector.items()} for vector in kernel]
            self._cycles[key] = result
        return self._cycles[key]

    def denominators(self, s: int, f: int, r: int) -> list:
        vectors = list(self.cycles(s, f + 1, r - 1))
        if s >= 1:
            vectors += [self.matrices[s - 1].apply(vector) for vector in self.cycles(s - 1, f - r + 1, r - 1)]
        return vectors

    def page(self, s: int, f: int, r: int) -> tuple:
        """(representatives, denominators) of E_r^(s,f)."""
        key = (s, f, r)
        if key not in self._pages:
            denominators = self.denominators(s, f, r)
            span = EchelonSpan(self.p, track=False)
            for vector in denominators:
                span.insert(vector)
            representatives = [vector for vector in self.cycles(s, f, r) if span.insert(vector) is None]
            self._pages[key] = (representatives, denominators)
        return self._pages[key]

    def differential(self, s: int, f: int, r: int) -> SparseMatFp:
        """d_r: E_r^(s,f) -> E_r^(s+1,f+r) in the chosen representatives."""
        sources, _ = self.page(s, f, r)
        targets, denominators = self.page(s + 1, f + r, r)
        span = EchelonSpan(self.p)
        for i, vector in enumerate(denominators):
            span.insert(vector, ('q', i))
        for j, vector in enumerate(targets):
            span.insert(vector, ('r', j))
        columns = []
        for vector in sources:
            residual, combination = span.reduce(self.matrices[s].apply(vector))
            if residual:
                raise_engine_error(BookkeepingError(f"d_{r} of a class at s={s}, f={f}, internal degree {format_degree(self.internal)} is not a cycle of page {r}"))
            columns.append({j: coef for (kind, j), coef in combination.items() if kind == 'r'})
        return SparseMatFp.from_columns(len(targets), self.p, columns)

    def label(self, s: int, vector: dict) -> str:
        return self.presentation.label(self.bases[s][min(vector)])

def _pages_for_internal(complex_: TwistedComplex, internal: SpokeDegree, s_values: set) -> tuple:
    filtered = _FilteredSlice(complex_, internal, max(s_values))
    r_top = filtered.weight_span() + 2
    s_range = range(filtered.s_top + 2)
    dims, labels, differentials = {}, {}, {}
    for r in range(1, r_top + 1):
        for s in s_range:
            for f in filtered.filtration_values(s):
                representatives, _ = filtered.page(s, f, r)
                dims[(r, s, f)] = len(representatives)
                labels[(r, s, f)] = tuple(filtered.label(s, vector) for vector in representatives)
        if r == r_top:
            break
        for s in range(filtered.s_top + 1):
            for f in filtered.filtration_values(s):
                if dims[(r, s, f)] and f + r in filtered.filtration_values(s + 1):
                    matrix = filtered.differential(s, f, r)
                    differentials[(r, s, f)] = (matrix, rank(matrix))
    for r in range(1, r_top):
        for s in range(filtered.s_top + 1):
            for f in filtered.filtration_values(s):
                out = differentials.get((r, s, f), (None, 0))[1]
                into = differentials.get((r, s - 1, f - r), (None, 0))[1]
                if dims[(r + 1, s, f)] != dims[(r, s, f)] - out - into:
                    raise_engine_error(BookkeepingError(f"E_{r + 1} at s={s}, f={f}, internal degree {format_degree(internal)} has dimension {dims[(r + 1, s, f)]}, expected {dims[(r, s, f)] - out - into}"))
    return internal, r_top, dims, labels, differentials

def compute_pages(complex_: TwistedComplex, window: DegreeWindow, threads: int = DEFAULT_THREADS) -> MaySpectralSequence:
    """All pages E_1 ... E_infinity on the window, one task per internal degree."""
    plan = _window_plan(window)
    internals = sorted(plan)
    logger_may.info(f"[INFO] Computing May pages for p={complex_.p}, n={complex_.n} on {len(internals)} internal degrees")

    def task(internal):
        return _pages_for_internal(complex_, internal, plan[internal])

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            results = list(executor.map(task, internals))
    else:
        results = [task(internal) for internal in internals]

    infinity = max((r_top for _, r_top, _, _, _ in results), default=1)
    sequence = MaySpectralSequence(complex_.p, complex_.n, window, {r: SSPage(r) for r in range(1, infinity + 1)}, infinity)
    for internal, r_top, dims, labels, differentials in results:
        for r in range(1, infinity + 1):
            page = sequence.pages[r]
            r_local = min(r, r_top)
            for s in plan[internal]:
                total = internal - SpokeDegree(s, 0)
                for (rr, ss, f), dim in dims.items():
                    if rr == r_local and ss == s and dim:
                        key = TriDegree(total, s, f)
                        page.dims[key] = dim
                        page.labels[key] = labels[(rr, ss, f)]
                        if r < r_top and (r, s, f) in differentials:
                            page.differentials[key] = differentials[(r, s, f)]
    logger_may.info(f"[SUCCESS] May pages computed up to E_{infinity} = E_infinity")
    return sequence

def apply_differential(sequence: MaySpectralSequence, r: int) -> SSPage:
    """
    E_(r+1) as dim E_r - rank d_r out - rank d_r in, per tri-degree, checked against the
    computed page. Classes whose incoming d_r starts outside the window keep the computed
    dimension.
    """
    source_page, computed = sequence.page(r), sequence.page(r + 1)
    stray = [key for key in computed.dims if key not in source_page.dims]
    if stray:
        raise_engine_error(BookkeepingError(f"E_{r + 1} has classes in {format_tri_degree(stray[0])} where E_{r} has none"))

    dims = {}
    for key, dim in source_page.dims.items():
        rank_in = 0
        if key.s > 0 and key.f >= r:
            rank_in = source_page.rank_out(TriDegree(key.total + SpokeDegree(1, 0), key.s - 1, key.f - r))
        if key.s > 0 and not sequence.window.contains(key.total + SpokeDegree(1, 0)):
            expected = computed.dimension(key)
        else:
            expected = dim - source_page.rank_out(key) - rank_in
        if expected != computed.dimension(key):
            raise_engine_error(BookkeepingError(f"E_{r + 1} in {format_tri_degree(key)} has dimension {computed.dimension(key)}, expected {expected} after d_{r}"))
        if expected:
            dims[key] = expected

    killed = sum(source_page.dims.values()) - sum(dims.values())
    logger_may.info(f"[INFO] d_{r} kills {killed} classes: E_{r + 1} has {sum(dims.values())}")
    return SSPage(r + 1, dims, {key: computed.labels.get(key, ()) for key in dims}, dict(computed.differentials))

def apply_d1(sequence: MaySpectralSequence) -> SSPage:
    """E_2 from E_1 and the ranks of d_1."""
    return apply_differential(sequence, 1)

def apply_d_p_minus_1(sequence: MaySpectralSequence) -> SSPage:
    """E_p from E_2 through d_2 ... d_(p-1); any nonzero d_r strictly between 1 and p-1 is reported."""
    for r, tri_degree, rank_ in extra_differentials(sequence):
        if r < sequence.p - 1:
            logger_may.warning(f"[WARNING] d_{r} out of {format_tri_degree(tri_degree)} has rank {rank_} before d_{sequence.p - 1}")
    page = sequence.page(2)
    for r in range(2, sequence.p):
        page = apply_differential(sequence, r)
    return page

def extra_differentials(sequence: MaySpectralSequence) -> list:
    """Every nonzero d_r with r outside {1, p-1}."""
    found = []
    for r, page in sorted(sequence.pages.items()):
        if r in (1, sequence.p - 1):
            continue
        for tri_degree, (_, rank_) in sorted(page.differentials.items(), key=lambda item: (item[0].s, item[0].total, item[0].f)):
            if rank_:
                found.append((r, tri_degree, rank_))
    for r, tri_degree, rank_ in found:
        logger_may.warning(f"[WARNING] Nonzero d_{r} of rank {rank_} out of {format_tri_degree(tri_degree)}")
    return found

def d1_stages(complex_: TwistedComplex, window: DegreeWindow) -> dict:
    """Rank of each piece of d_1 over the window: stage 0 is z, stage t + 1 is x_t."""
    stages = {0: ((OPERATOR_Z, None),)}
    stages.update({t + 1: ((OPERATOR_D, t),) for t in range(complex_.n)})
    ranks = {}
    plan = _window_plan(window)
    for stage, components in stages.items():
        ranks[stage] = sum(rank(complex_.matrix(internal, s, components)) for internal in sorted(plan) for s in sorted(plan[internal]))
    return ranks

# -----------------------------------------------------------------------
#                        ABUTMENT AND SURVIVORS
# -----------------------------------------------------------------------

def _homology_leads(boundary: SparseMatFp, cycle: SparseMatFp) -> list:
    span = EchelonSpan(cycle.p, track=False)
    for column in boundary.columns:
        span.insert(column)
    return [min(vector) for vector in kernel_basis(cycle) if span.insert(vector) is None]

def abutment_dimensions(complex_: TwistedComplex, window: DegreeWindow) -> ExtTable:
    """Cohomology of the twisted complex per (s, total degree): the Ext groups the May spectral sequence converges to."""
    table = ExtTable(window)
    for d in enumerate_window(window):
        for s in range(window.s_max + 1):
            internal = d + SpokeDegree(s, 0)
            basis = complex_.basis(internal, s)
            boundary = complex_.matrix(internal, s - 1) if s > 0 else SparseMatFp.zeros(len(basis), 0, complex_.p)
            cycle = complex_.matrix(internal, s)
            if s > 0:
                complex_.check_square(internal, s - 1)
            leads = _homology_leads(boundary, cycle)
            key = TriDegree(d, s, 0)
            table.entries[key] = ExtEntry(key, len(leads), tuple(complex_.presentation.label(basis[i]) for i in leads))
    return table

def a_tower_rank(complex_: TwistedComplex, m: int, s: int, n_source: int, n_target: int) -> int:
    """Rank of multiplication by a^(n_source - n_target) on cohomology from (m, n_source) to (m, n_target)."""
    k = n_source - n_target
    source_internal = SpokeDegree(m + s, n_source)
    target_internal = SpokeDegree(m + s, n_target)
    source_basis = complex_.basis(source_internal, s)
    target_basis = complex_.basis(target_internal, s)
    if not source_basis or not target_basis:
        return 0
    index = {mono: i for i, mono in enumerate(target_basis)}
    boundaries = complex_.matrix(target_internal, s - 1).columns if s > 0 else ()
    images = []
    for vector in kernel_basis(complex_.matrix(source_internal, s)):
        image = {}
        for i, coef in vector.items():
            shifted = index.get(complex_.a_shift(source_basis[i], k))
            if shifted is None:
                raise_engine_error(InhomogeneousImageError(f"a^{k} times {complex_.presentation.label(source_basis[i])} is missing from the target basis"))
            image[shifted] = coef
        images.append(image)
    with_images = SparseMatFp.from_columns(len(target_basis), complex_.p, list(boundaries) + images)
    only_boundaries = SparseMatFp.from_columns(len(target_basis), complex_.p, list(boundaries))
    return rank(with_images) - rank(only_boundaries)

def window_margin(window: DegreeWindow) -> int:
    """Length of the a-tower tested: half the spoke range, subject to the window straddling negative virtual degrees."""
    margin = (window.n_max - window.n_min) // 2
    if not (window.n_min + margin <= 0 <= window.n_max and window.m_max + window.n_min < 0 and margin >= 2):
        raise_engine_error(WindowTooSmallError(f"Window {window} cannot hold a-towers of length >= 2 ending in negative virtual degrees (margin {margin})"))
    return margin

def a_inverted_survivors(complex_: TwistedComplex, window: DegreeWindow, margin: int, threads: int = DEFAULT_THREADS) -> ExtTable:
    """Classes at spoke weight n_min reached from n_min + margin by a-multiplication, per (m, s)."""
    n_target = window.n_min
    rows = [(m, s) for m in range(window.m_min, window.m_max + 1) for s in range(window.s_max + 1)]

    def task(row):
        m, s = row
        return row, a_tower_rank(complex_, m, s, n_target + margin, n_target)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            ranks = dict(executor.map(task, rows))
    else:
        ranks = dict(task(row) for row in rows)

    table = ExtTable(window)
    for (m, s), value in sorted(ranks.items()):
        key = TriDegree(SpokeDegree(m, n_target), s, 0)
        table.entries[key] = ExtEntry(key, value)
    return table

# -----------------------------------------------------------------------
#                           SEGAL PIPELINE
# -----------------------------------------------------------------------

@dataclass
class SegalReport:
    p: int
    window: DegreeWindow
    margin: int
    n: int
    stabilized: bool
    survivors: ExtTable
    verdict: bool
    disable_d1: bool = False
    per_n: dict = field(default_factory=dict)

def expected_survivors(survivors: ExtTable) -> bool:
    """F_p[a^+-1]: one class at m = 0, s = 0 and nothing else."""
    for key, entry in survivors.entries.items():
        expected = 1 if key.total.m == 0 and key.s == 0 else 0
        if entry.dim != expected:
            return False
    return True

def segal_pipeline(p: int, n_max: int, window: DegreeWindow, beta: int = DEFAULT_BETA, beta_prime: int = DEFAULT_BETA_PRIME,
                   disable_d1: bool = False, threads: int = DEFAULT_THREADS, cap: int = DEFAULT_MONOMIAL_CAP) -> SegalReport:
    if n_max < 2:
        raise_engine_error(ConfigError(f"The Segal verdict compares two consecutive truncation levels, so n_max must be at least 2, got {n_max}"))
    margin = window_margin(window)
    per_n = {}

    def survivors_for(n: int) -> ExtTable:
        table = a_inverted_survivors(twisted_complex(p, n, beta, beta_prime, disable_d1, cap), window, margin, threads)
        per_n[n] = table
        logger_may.info(f"[INFO] n={n}: {sum(table.nonzero().values())} a-inverted survivors on {window}")
        return table

    result = stabilize_over_n(p, window, n_max, survivors_for)
    verdict = result.stabilized and expected_survivors(result.table)
    if verdict:
        logger_may.info(f"[SUCCESS] Segal verdict true at p={p}: survivors form F_p[a^+-1] on {window}")
    else:
        logger_may.warning(f"[WARNING] Segal verdict false at p={p} on {window} (stabilized={result.stabilized}, d_1 disabled={disable_d1})")
    return SegalReport(p, window, margin, result.n, result.stabilized, result.table, verdict, disable_d1, per_n)
