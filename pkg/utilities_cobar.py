# ///////////////////////////////////////////////////////////////////////
#
#                          UTILITIES COBAR
#   Reduced cobar complex M (x) Gammabar^s of a comodule, sliced by
#   internal degree, and its cohomology over a window of total degrees.
#
# ///////////////////////////////////////////////////////////////////////

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from utilities_grading import SpokeDegree, TriDegree, DegreeWindow, enumerate_window, format_degree
from utilities_algebra import AlgebraElement, embed_element, make_element, monomial_element, monomials_in_degree
from utilities_linalg import SparseMatFp, EchelonSpan, kernel_basis, rank
from utilities_hopf import CobarLevels, ComodulePresentation, instantiate_truncated
from utilities_exceptions import ConfigError, DifferentialSquareError, InhomogeneousImageError, raise_engine_error
from global_parameters import *
import logging as log

logger_cobar = log.getLogger(LOGGER_COBAR_KEY)

# -----------------------------------------------------------------------
#                               TYPES
# -----------------------------------------------------------------------

@dataclass
class CobarComplexSlice:
    levels: CobarLevels
    window: DegreeWindow
    bases: dict = field(default_factory=dict)
    differentials: dict = field(default_factory=dict)

    @property
    def p(self) -> int:
        return self.levels.hopf.p

    def basis(self, internal: SpokeDegree, s: int) -> list:
        return self.bases.get((internal, s), [])

    def differential(self, internal: SpokeDegree, s: int) -> SparseMatFp:
        """d from (internal, s) to (internal, s + 1); empty when either side is absent."""
        matrix = self.differentials.get((internal, s))
        if matrix is None:
            return SparseMatFp.zeros(len(self.basis(internal, s + 1)), len(self.basis(internal, s)), self.p)
        return matrix

@dataclass(frozen=True)
class ExtEntry:
    tri_degree: TriDegree
    dim: int
    labels: tuple = ()

@dataclass
class ExtTable:
    window: DegreeWindow
    entries: dict = field(default_factory=dict)
    filtered: bool = False

    def dimension(self, s: int, degree: SpokeDegree, f: int = 0) -> int:
        if not self.filtered:
            return sum(entry.dim for key, entry in self.entries.items() if key.s == s and key.total == degree)
        entry = self.entries.get(TriDegree(degree, s, f))
        return entry.dim if entry else 0

    def nonzero(self) -> dict:
        return {key: entry.dim for key, entry in self.entries.items() if entry.dim}

    def same_dimensions(self, other: 'ExtTable') -> bool:
        return self.nonzero() == other.nonzero()

    def sorted_entries(self) -> list:
        return [self.entries[key] for key in sorted(self.entries, key=lambda t: (t.s, t.total, t.f))]

@dataclass(frozen=True)
class StabilizedExt:
    table: ExtTable
    n: int
    stabilized: bool

# -----------------------------------------------------------------------
#                               LABELS
# -----------------------------------------------------------------------

def cobar_label(levels: CobarLevels, s: int, mono: tuple) -> str:
    """Bar notation: coefficient[slot1|slot2|...]."""
    coefficients = levels.coefficients
    head = coefficients.label(mono[:len(coefficients)])
    if s == 0:
        return head
    extras = levels.hopf.extras
    slots = []
    for positions in levels.slot_positions(s):
        parts = []
        for position, extra in zip(positions, extras):
            exponent = mono[position]
            if exponent == 1:
                parts.append(extra.name)
            elif exponent:
                parts.append(f"{extra.name}^{exponent}")
        slots.append('*'.join(parts) if parts else '1')
    return f"{'' if head == '1' else head}[{'|'.join(slots)}]"

# -----------------------------------------------------------------------
#                            DIFFERENTIAL
# -----------------------------------------------------------------------

def reduced_basis(levels: CobarLevels, internal: SpokeDegree, s: int, cap: int = DEFAULT_MONOMIAL_CAP) -> list:
    """Monomials of level s in the internal degree with every slot off the unit."""
    return [mono for mono in monomials_in_degree(levels.level(s), internal, cap) if not levels.has_unit_slot(s, mono)]

def cobar_differential_element(levels: CobarLevels, s: int, mono: tuple) -> dict:
    """sum_{i=0}^{s} (-1)^i d^i(mono) with unit-slot terms dropped; the last coface only produces those."""
    p = levels.hopf.p
    x = monomial_element(levels.level(s), mono)
    result = {}
    for i in range(s + 1):
        image = levels.coface(s, i).apply(x)
        sign = -1 if i % 2 else 1
        for target, coef in image.terms.items():
            if levels.has_unit_slot(s + 1, target):
                continue
            value = (result.get(target, 0) + sign * coef) % p
            if value:
                result[target] = value
            else:
                result.pop(target, None)
    return result

def cobar_matrix(levels: CobarLevels, s: int, source: list, target: list) -> SparseMatFp:
    p = levels.hopf.p
    index = {mono: row for row, mono in enumerate(target)}
    columns = []
    for mono in source:
        column = {}
        for image, coef in cobar_differential_element(levels, s, mono).items():
            row = index.get(image)
            if row is None:
                raise_engine_error(InhomogeneousImageError(f"Cobar differential of {cobar_label(levels, s, mono)} hits {cobar_label(levels, s + 1, image)} outside the enumerated basis"))
            column[row] = coef
        columns.append(column)
    return SparseMatFp.from_columns(len(target), p, columns)

def raw_coface_difference(levels: CobarLevels, x: AlgebraElement) -> AlgebraElement:
    """d^0(x) - d^1(x) on level 0, without normalization: psi(x) - x (x) 1."""
    return levels.coface(0, 0).apply(x) - levels.coface(0, 1).apply(x)

# -----------------------------------------------------------------------
#                               BUILD
# -----------------------------------------------------------------------

def _internal_plan(window: DegreeWindow) -> dict:
    """Internal degree -> cohomological degrees whose total degree lies in the window."""
    plan = {}
    for d in enumerate_window(window):
        for s in range(window.s_max + 1):
            plan.setdefault(d + SpokeDegree(s, 0), set()).add(s)
    return plan

def _build_internal(levels: CobarLevels, internal: SpokeDegree, s_values: set, cap: int) -> tuple:
    needed = set()
    for s in s_values:
        needed.update({s - 1, s, s + 1} - {-1})
    bases = {s: reduced_basis(levels, internal, s, cap) for s in sorted(needed)}
    differentials = {}
    for s in sorted(needed):
        if s + 1 in bases:
            differentials[s] = cobar_matrix(levels, s, bases[s], bases[s + 1])
    for s in sorted(differentials):
        if s + 1 in differentials and not differentials[s + 1].matmul(differentials[s]).is_zero():
            raise_engine_error(DifferentialSquareError(f"d^2 != 0 on the cobar complex of {levels.comodule.name} at internal degree {format_degree(internal)}, s={s}"))
    return internal, bases, differentials

def build_cobar(comodule: ComodulePresentation, window: DegreeWindow, threads: int = DEFAULT_THREADS,
                cap: int = DEFAULT_MONOMIAL_CAP) -> CobarComplexSlice:
    """Slices for every total degree of the window and s <= window.s_max, with d^2 = 0 checked on all of them."""
    levels = CobarLevels(comodule)
    plan = _internal_plan(window)
    internals = sorted(plan)
    logger_cobar.info(f"[INFO] Building the cobar complex of {comodule.name} on {len(internals)} internal degrees with {threads} thread(s)")

    def task(internal):
        return _build_internal(levels, internal, plan[internal], cap)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            results = list(executor.map(task, internals))
    else:
        results = [task(internal) for internal in internals]

    complex_slice = CobarComplexSlice(levels, window)
    for internal, bases, differentials in results:
        for s, basis in bases.items():
            complex_slice.bases[(internal, s)] = basis
        for s, matrix in differentials.items():
            complex_slice.differentials[(internal, s)] = matrix
    size = sum(len(basis) for basis in complex_slice.bases.values())
    logger_cobar.info(f"[SUCCESS] Cobar complex of {comodule.name} built: {size} basis elements, d^2 = 0 verified")
    return complex_slice

# -----------------------------------------------------------------------
#                             COHOMOLOGY
# -----------------------------------------------------------------------

def _restrict(matrix: SparseMatFp, rows: list, cols: list) -> SparseMatFp:
    row_index = {row: i for i, row in enumerate(rows)}
    columns = [{row_index[row]: value for row, value in matrix.columns[col].items() if row in row_index} for col in cols]
    return SparseMatFp.from_columns(len(rows), matrix.p, columns)

def _homology(boundary: SparseMatFp, cycle: SparseMatFp) -> list:
    """Indices of leading basis elements of homology representatives."""
    span = EchelonSpan(cycle.p, track=False)
    for column in boundary.columns:
        span.insert(column)
    leads = []
    for vector in kernel_basis(cycle):
        if span.insert(vector) is None:
            leads.append(min(vector))
    return leads

def _filtration_blocks(levels: CobarLevels, s: int, basis: list, filtered: bool) -> dict:
    blocks = {}
    algebra = levels.level(s)
    for i, mono in enumerate(basis):
        blocks.setdefault(algebra.f_of(mono) if filtered else 0, []).append(i)
    return blocks

def ext_dimensions(complex_slice: CobarComplexSlice, filtered: bool = False) -> ExtTable:
    """Cohomology per (s, total degree), split by May weight when `filtered` (the differential must preserve it)."""
    levels = complex_slice.levels
    window = complex_slice.window
    table = ExtTable(window, filtered=filtered)
    for d in enumerate_window(window):
        for s in range(window.s_max + 1):
            internal = d + SpokeDegree(s, 0)
            basis = complex_slice.basis(internal, s)
            incoming = complex_slice.differential(internal, s - 1) if s > 0 else SparseMatFp.zeros(len(basis), 0, complex_slice.p)
            outgoing = complex_slice.differential(internal, s)
            previous = complex_slice.basis(internal, s - 1) if s > 0 else []
            following = complex_slice.basis(internal, s + 1)
            here = _filtration_blocks(levels, s, basis, filtered)
            before = _filtration_blocks(levels, s - 1, previous, filtered) if s > 0 else {}
            after = _filtration_blocks(levels, s + 1, following, filtered)
            if filtered:
                _check_block_diagonal(incoming, before, here, internal, s - 1)
                _check_block_diagonal(outgoing, here, after, internal, s)
            for f in sorted(here) or [0]:
                cols = here.get(f, [])
                cycle = _restrict(outgoing, after.get(f, []), cols)
                boundary = _restrict(incoming, cols, before.get(f, []))
                leads = _homology(boundary, cycle)
                labels = tuple(cobar_label(levels, s, basis[cols[i]]) for i in leads)
                table.entries[TriDegree(d, s, f)] = ExtEntry(TriDegree(d, s, f), len(leads), labels)
    logger_cobar.info(f"[SUCCESS] Ext computed on {window}: {sum(table.nonzero().values())} classes")
    return table

def _check_block_diagonal(matrix: SparseMatFp, source_blocks: dict, target_blocks: dict, internal: SpokeDegree, s: int):
    target_weight = {row: f for f, rows in target_blocks.items() for row in rows}
    for f, cols in source_blocks.items():
        for col in cols:
            if any(target_weight.get(row) != f for row in matrix.columns[col]):
                raise_engine_error(InhomogeneousImageError(f"The differential out of s={s} at internal degree {format_degree(internal)} does not preserve the May weight {f}"))

# -----------------------------------------------------------------------
#                         PRIMITIVES AND LIMITS
# -----------------------------------------------------------------------

def comodule_primitives(levels: CobarLevels, degree: SpokeDegree, cap: int = DEFAULT_MONOMIAL_CAP) -> list:
    """Basis of {m : psi(m) = m (x) 1} in the given degree, computed on the unreduced level 1."""
    algebra = levels.coefficients
    source = monomials_in_degree(algebra, degree, cap)
    target = levels.level(1)
    rows = {}
    columns = []
    for mono in source:
        x = monomial_element(algebra, mono)
        difference = levels.coface(0, 0).apply(x) - embed_element(x, target)
        columns.append({rows.setdefault(image, len(rows)): coef for image, coef in difference.terms.items()})
    matrix = SparseMatFp.from_columns(len(rows), algebra.p, columns)
    return [make_element(algebra, {source[i]: coef for i, coef in vector.items()}, degree) for vector in kernel_basis(matrix)]

def truncated_ext(p: int, n: int, window: DegreeWindow, beta: int = DEFAULT_BETA, beta_prime: int = DEFAULT_BETA_PRIME,
                  threads: int = DEFAULT_THREADS, cap: int = DEFAULT_MONOMIAL_CAP) -> ExtTable:
    _, comodule = instantiate_truncated(p, n, beta, beta_prime)
    return ext_dimensions(build_cobar(comodule, window, threads, cap))

def stabilize_over_n(p: int, window: DegreeWindow, n_max: int, ext_fn=None) -> StabilizedExt:
    """Ext tables for n = 1, 2, ...; stop at the first n whose table equals the next one."""
    if n_max < 2:
        raise_engine_error(ConfigError(f"Stabilization needs n_max >= 2, got {n_max}"))
    ext_fn = ext_fn or (lambda n: truncated_ext(p, n, window))
    previous = ext_fn(1)
    for n in range(2, n_max + 1):
        current = ext_fn(n)
        if previous.same_dimensions(current):
            logger_cobar.info(f"[SUCCESS] Tables stabilize at n={n - 1} on {window}")
            return StabilizedExt(previous, n - 1, True)
        previous = current
    logger_cobar.warning(f"[WARNING] Tables have not stabilized by n={n_max} on {window}")
    return StabilizedExt(previous, n_max, False)
