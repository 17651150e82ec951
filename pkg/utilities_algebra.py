# ///////////////////////////////////////////////////////////////////////
#
#                          UTILITIES ALGEBRA
#   Finitely presented graded-commutative F_p-algebras built from
#   polynomial, invertible, exterior and truncated generators: monomial
#   bases per degree, multiplication and multiplicative maps.
#
# ///////////////////////////////////////////////////////////////////////

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
from math import lcm
from typing import Iterable
from utilities_grading import SpokeDegree, ZERO, format_degree, parse_degree
from utilities_linalg import is_odd_prime
from utilities_exceptions import (ConfigError, InhomogeneousElementError, InhomogeneousImageError,
                                  NonInvertibleImageError, WindowIncompletenessError, raise_engine_error)
from global_parameters import LOGGER_ALGEBRA_KEY, DEFAULT_MONOMIAL_CAP
import logging as log

logger_algebra = log.getLogger(LOGGER_ALGEBRA_KEY)

Monomial = tuple

# -----------------------------------------------------------------------
#                              GENERATORS
# -----------------------------------------------------------------------

class GeneratorKind(Enum):
    POLYNOMIAL = 'poly'
    INVERTIBLE = 'inv'
    EXTERIOR = 'ext'
    TRUNCATED = 'trunc'

@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    degree: SpokeDegree
    kind: GeneratorKind
    bound: int = None
    s: int = 0
    f: int = 0

    def __post_init__(self):
        if not self.name:
            raise_engine_error(ConfigError("Generator names cannot be empty"))
        if self.kind == GeneratorKind.TRUNCATED and (self.bound is None or self.bound < 1):
            raise_engine_error(ConfigError(f"Truncated generator {self.name} needs a bound e >= 1"))
        if self.kind == GeneratorKind.EXTERIOR and self.degree.parity == 0:
            raise_engine_error(ConfigError(f"Exterior generator {self.name} must sit in an odd degree, got {format_degree(self.degree)}"))
        if self.kind != GeneratorKind.EXTERIOR and self.degree.parity == 1:
            raise_engine_error(ConfigError(f"Polynomial-type generator {self.name} must sit in an even degree, got {format_degree(self.degree)}"))

    @property
    def is_bounded(self) -> bool:
        return self.kind in (GeneratorKind.EXTERIOR, GeneratorKind.TRUNCATED)

    @property
    def top_exponent(self) -> int:
        """Largest nonzero exponent of a bounded generator."""
        if self.kind == GeneratorKind.EXTERIOR:
            return 1
        return self.bound - 1

    def admits(self, exponent: int) -> bool:
        if self.kind == GeneratorKind.INVERTIBLE:
            return True
        if exponent < 0:
            return False
        return not self.is_bounded or exponent <= self.top_exponent

def renamed(generator: GeneratorSpec, name: str) -> GeneratorSpec:
    return GeneratorSpec(name, generator.degree, generator.kind, generator.bound, generator.s, generator.f)

# -----------------------------------------------------------------------
#                             PRESENTATION
# -----------------------------------------------------------------------

@dataclass(frozen=True)
class GradedAlgebraPresentation:
    p: int
    generators: tuple
    name: str = ''

    def __post_init__(self):
        if not is_odd_prime(self.p):
            raise_engine_error(ConfigError(f"The coefficient field needs an odd prime, got p={self.p}"))
        names = [generator.name for generator in self.generators]
        if len(set(names)) != len(names):
            raise_engine_error(ConfigError(f"Generator names must be unique in {self.name or 'presentation'}: {names}"))

    @cached_property
    def names(self) -> tuple:
        return tuple(generator.name for generator in self.generators)

    @cached_property
    def positions(self) -> dict:
        return {name: i for i, name in enumerate(self.names)}

    @cached_property
    def odd_positions(self) -> tuple:
        return tuple(i for i, generator in enumerate(self.generators) if generator.degree.parity)

    def __len__(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        if name not in self.positions:
            raise KeyError(f"{name} is not a generator of {self.name or 'the presentation'}")
        return self.positions[name]

    def unit(self) -> Monomial:
        return (0,) * len(self.generators)

    def monomial(self, exponents: dict) -> Monomial:
        """Monomial from a name -> exponent dict; None when a bounded exponent kills it."""
        mono = [0] * len(self.generators)
        for name, exponent in exponents.items():
            i = self.index(name)
            generator = self.generators[i]
            if exponent < 0 and generator.kind != GeneratorKind.INVERTIBLE:
                raise ValueError(f"Generator {name} is not invertible")
            if not generator.admits(exponent):
                return None
            mono[i] = exponent
        return tuple(mono)

    def degree_of(self, mono: Monomial) -> SpokeDegree:
        m = n = 0
        for exponent, generator in zip(mono, self.generators):
            if exponent:
                m += exponent * generator.degree.m
                n += exponent * generator.degree.n
        return SpokeDegree(m, n)

    def s_of(self, mono: Monomial) -> int:
        return sum(exponent * generator.s for exponent, generator in zip(mono, self.generators))

    def f_of(self, mono: Monomial) -> int:
        return sum(exponent * generator.f for exponent, generator in zip(mono, self.generators))

    def is_unit_monomial(self, mono: Monomial) -> bool:
        return all(exponent == 0 or generator.kind == GeneratorKind.INVERTIBLE for exponent, generator in zip(mono, self.generators))

    def is_nilpotent_monomial(self, mono: Monomial) -> bool:
        return any(exponent > 0 and generator.is_bounded for exponent, generator in zip(mono, self.generators))

    def multiply_monomials(self, x: Monomial, y: Monomial):
        """Return (sign, monomial) for x*y, or None when the product vanishes."""
        exponent = 0
        odd_seen_in_y = 0
        for i in self.odd_positions:
            if x[i] and y[i]:
                return None
            if x[i]:
                exponent += odd_seen_in_y
            if y[i]:
                odd_seen_in_y += 1
        product = []
        for xe, ye, generator in zip(x, y, self.generators):
            e = xe + ye
            if e and not generator.admits(e):
                return None
            product.append(e)
        return (-1 if exponent % 2 else 1), tuple(product)

    def label(self, mono: Monomial) -> str:
        parts = []
        for exponent, name in zip(mono, self.names):
            if exponent == 1:
                parts.append(name)
            elif exponent:
                parts.append(f"{name}^{exponent}")
        return '*'.join(parts) if parts else '1'

    def extended(self, generators: Iterable[GeneratorSpec], name: str = '') -> 'GradedAlgebraPresentation':
        return GradedAlgebraPresentation(self.p, self.generators + tuple(generators), name or self.name)

# -----------------------------------------------------------------------
#                     PRESENTATION TEXT FORMAT
# -----------------------------------------------------------------------

def format_generator(generator: GeneratorSpec) -> str:
    kind = generator.kind.value
    if generator.kind == GeneratorKind.TRUNCATED:
        kind = f"{kind}^{generator.bound}"
    line = f"{generator.name} : {format_degree(generator.degree)} : {kind}"
    if generator.s or generator.f:
        line += f" : {generator.s},{generator.f}"
    return line

def format_presentation(algebra: GradedAlgebraPresentation) -> str:
    return '\n'.join(format_generator(generator) for generator in algebra.generators)

def parse_presentation(text: str, p: int, name: str = '') -> GradedAlgebraPresentation:
    """Parse lines of the form 'name : degree : kind[^bound] [: s,f]'."""
    generators = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        fields = [part.strip() for part in line.split(':')]
        if len(fields) not in (3, 4):
            raise_engine_error(ConfigError(f"Invalid generator line {line!r}"))
        kind_text, _, bound_text = fields[2].partition('^')
        try:
            kind = GeneratorKind(kind_text)
            bound = int(bound_text) if bound_text else None
            s, f = (int(value) for value in fields[3].split(',')) if len(fields) == 4 else (0, 0)
        except ValueError:
            raise_engine_error(ConfigError(f"Invalid generator kind or weights in {line!r}"))
        generators.append(GeneratorSpec(fields[0], parse_degree(fields[1]), kind, bound, s, f))
    return GradedAlgebraPresentation(p, tuple(generators), name)

# -----------------------------------------------------------------------
#                              ELEMENTS
# -----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AlgebraElement:
    algebra: GradedAlgebraPresentation
    degree: SpokeDegree
    terms: dict = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mono: Monomial) -> int:
        return self.terms.get(mono, 0)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items())

    def _check_compatible(self, other: 'AlgebraElement'):
        if other.algebra != self.algebra:
            raise ValueError("Elements live in different algebras")
        if other.degree != self.degree:
            raise_engine_error(InhomogeneousElementError(f"Cannot add elements of degrees {format_degree(self.degree)} and {format_degree(other.degree)}"))

    def __add__(self, other: 'AlgebraElement') -> 'AlgebraElement':
        self._check_compatible(other)
        terms = dict(self.terms)
        for mono, coef in other.terms.items():
            value = (terms.get(mono, 0) + coef) % self.algebra.p
            if value:
                terms[mono] = value
            else:
                terms.pop(mono, None)
        return AlgebraElement(self.algebra, self.degree, terms)

    def scale(self, coef: int) -> 'AlgebraElement':
        p = self.algebra.p
        if coef % p == 0:
            return AlgebraElement(self.algebra, self.degree, {})
        return AlgebraElement(self.algebra, self.degree, {mono: (value * coef) % p for mono, value in self.terms.items()})

    def __neg__(self) -> 'AlgebraElement':
        return self.scale(-1)

    def __sub__(self, other: 'AlgebraElement') -> 'AlgebraElement':
        return self + (-other)

    def __mul__(self, other: 'AlgebraElement') -> 'AlgebraElement':
        return multiply(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra == other.algebra and self.degree == other.degree and self.terms == other.terms

    def __str__(self) -> str:
        if not self.terms:
            return '0'
        parts = []
        for mono, coef in self.sorted_terms():
            label = self.algebra.label(mono)
            parts.append(label if coef == 1 else f"{coef}*{label}")
        return ' + '.join(parts)

def make_element(algebra: GradedAlgebraPresentation, terms: dict, degree: SpokeDegree = None) -> AlgebraElement:
    p = algebra.p
    clean = {mono: coef % p for mono, coef in terms.items() if coef % p}
    for mono in clean:
        mono_degree = algebra.degree_of(mono)
        if degree is None:
            degree = mono_degree
        elif mono_degree != degree:
            raise_engine_error(InhomogeneousElementError(f"Term {algebra.label(mono)} has degree {format_degree(mono_degree)}, expected {format_degree(degree)}"))
    if degree is None:
        raise ValueError("The degree of a zero element must be given")
    return AlgebraElement(algebra, degree, clean)

def zero_element(algebra: GradedAlgebraPresentation, degree: SpokeDegree) -> AlgebraElement:
    return AlgebraElement(algebra, degree, {})

def unit_element(algebra: GradedAlgebraPresentation) -> AlgebraElement:
    return AlgebraElement(algebra, ZERO, {algebra.unit(): 1})

def monomial_element(algebra: GradedAlgebraPresentation, mono: Monomial, coef: int = 1) -> AlgebraElement:
    return make_element(algebra, {mono: coef}, algebra.degree_of(mono))

def generator_element(algebra: GradedAlgebraPresentation, name: str, exponent: int = 1) -> AlgebraElement:
    mono = algebra.monomial({name: exponent})
    if mono is None:
        return zero_element(algebra, algebra.generators[algebra.index(name)].degree * exponent)
    return monomial_element(algebra, mono)

def spec_terms_to_dict(algebra: GradedAlgebraPresentation, spec_terms: Iterable) -> dict:
    terms = {}
    for coef, exponents in spec_terms:
        mono = algebra.monomial(exponents)
        if mono is not None:
            terms[mono] = (terms.get(mono, 0) + coef) % algebra.p
    return terms

def element_from_spec(algebra: GradedAlgebraPresentation, spec_terms: Iterable, degree: SpokeDegree = None) -> AlgebraElement:
    """Element from terms written as (coefficient, {generator: exponent})."""
    return make_element(algebra, spec_terms_to_dict(algebra, spec_terms), degree)

def embed_element(x: AlgebraElement, target: GradedAlgebraPresentation) -> AlgebraElement:
    """Carry x into an algebra that contains its generators under the same names."""
    if x.algebra == target:
        return x
    names = x.algebra.names
    terms = {}
    for mono, coef in x.terms.items():
        image = target.monomial({name: exponent for name, exponent in zip(names, mono) if exponent})
        if image is not None:
            terms[image] = coef
    return AlgebraElement(target, x.degree, terms)

def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    if x.algebra != y.algebra:
        raise ValueError("Cannot multiply elements of different algebras")
    algebra = x.algebra
    p = algebra.p
    terms = {}
    for x_mono, x_coef in x.terms.items():
        for y_mono, y_coef in y.terms.items():
            product = algebra.multiply_monomials(x_mono, y_mono)
            if product is None:
                continue
            sign, mono = product
            value = (terms.get(mono, 0) + sign * x_coef * y_coef) % p
            if value:
                terms[mono] = value
            else:
                terms.pop(mono, None)
    return AlgebraElement(algebra, x.degree + y.degree, terms)

def power(x: AlgebraElement, exponent: int) -> AlgebraElement:
    if exponent < 0:
        raise ValueError("Use an algebra map inverse for negative powers")
    result = unit_element(x.algebra)
    for _ in range(exponent):
        result = multiply(result, x)
    return result

def forced_exponent(algebra: GradedAlgebraPresentation, target: SpokeDegree, rest: dict, name: str, printed: int = None) -> int:
    """
    Exponent of generator `name` that makes the term name^e * rest homogeneous
    of degree `target`. A printed value that disagrees is logged and ignored.
    """
    rest_mono = algebra.monomial(rest) if rest else algebra.unit()
    remaining = target - algebra.degree_of(rest_mono)
    step = algebra.generators[algebra.index(name)].degree
    candidates = {remaining.m // step.m if step.m else None, remaining.n // step.n if step.n else None} - {None}
    exponent = next((e for e in candidates if step * e == remaining), None)
    if exponent is None:
        raise_engine_error(InhomogeneousImageError(f"No power of {name} completes {algebra.label(rest_mono)} to degree {format_degree(target)}"))
    if printed is not None and printed != exponent:
        logger_algebra.warning(f"[WARNING] Exponent of {name} in a term of degree {format_degree(target)} forced to {exponent}, printed value {printed} ignored")
    return exponent

# -----------------------------------------------------------------------
#                         MONOMIAL ENUMERATION
# -----------------------------------------------------------------------

@dataclass(frozen=True)
class EnumerationPlan:
    coordinates: int
    vectors: tuple
    pivots: tuple
    pivot_coordinates: tuple
    denominator: int
    scaled_functionals: tuple
    others: tuple
    witnesses: tuple
    failure: str = None

def _constraint_vector(generator: GeneratorSpec, use_s: bool, use_f: bool) -> tuple:
    vector = (generator.degree.m, generator.degree.n)
    if use_s:
        vector += (generator.s,)
    if use_f:
        vector += (generator.f,)
    return vector

def _row_reduce(rows: list) -> tuple:
    """Rank and pivot columns of a list of rational rows."""
    rows = [list(map(Fraction, row)) for row in rows]
    pivot_columns = []
    r = 0
    width = len(rows[0]) if rows else 0
    for c in range(width):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c] / rows[r][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivot_columns.append(c)
        r += 1
    return r, pivot_columns

def _invert(square: list) -> list:
    size = len(square)
    augmented = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(size)] for i, row in enumerate(square)]
    for c in range(size):
        pivot = next(i for i in range(c, size) if augmented[i][c] != 0)
        augmented[c], augmented[pivot] = augmented[pivot], augmented[c]
        lead = augmented[c][c]
        augmented[c] = [value / lead for value in augmented[c]]
        for i in range(size):
            if i != c and augmented[i][c] != 0:
                factor = augmented[i][c]
                augmented[i] = [a - factor * b for a, b in zip(augmented[i], augmented[c])]
    return [row[size:] for row in augmented]

@lru_cache(maxsize=256)
def enumeration_plan(algebra: GradedAlgebraPresentation, use_s: bool = False, use_f: bool = False) -> EnumerationPlan:
    """
    Split the generators into pivots, whose exponents are solved from the
    degree, and the rest, which are enumerated. Every unbounded non-pivot
    generator gets witness functionals proving its exponent is bounded.
    """
    vectors = tuple(_constraint_vector(generator, use_s, use_f) for generator in algebra.generators)
    coordinates = 2 + int(use_s) + int(use_f)
    unbounded = [i for i, generator in enumerate(algebra.generators) if not generator.is_bounded]
    ordered = [i for i in unbounded if algebra.generators[i].kind == GeneratorKind.INVERTIBLE]
    ordered += [i for i in unbounded if algebra.generators[i].kind != GeneratorKind.INVERTIBLE]

    pivots = []
    for i in ordered:
        candidate_rank, _ = _row_reduce([vectors[j] for j in pivots + [i]])
        if candidate_rank > len(pivots):
            pivots.append(i)

    failure = None
    free_invertible = [i for i in unbounded if i not in pivots and algebra.generators[i].kind == GeneratorKind.INVERTIBLE]
    if free_invertible:
        failure = f"invertible generators {[algebra.names[i] for i in free_invertible]} are not determined by the degree"

    _, pivot_coordinates = _row_reduce([vectors[j] for j in pivots])
    square = [[vectors[j][c] for c in pivot_coordinates] for j in pivots]
    inverse = _invert(square) if pivots else []
    # functional[j][c]: coefficient of target coordinate c in the exponent of pivot j
    functionals = []
    for k in range(len(pivots)):
        functional = [Fraction(0)] * coordinates
        for row, c in enumerate(pivot_coordinates):
            functional[c] = inverse[row][k]
        functionals.append(functional)
    denominator = lcm(*(value.denominator for functional in functionals for value in functional)) if functionals else 1
    scaled_functionals = tuple(tuple(int(value * denominator) for value in functional) for functional in functionals)

    others = tuple(i for i in range(len(algebra.generators)) if i not in pivots)

    candidates = [functionals[k] for k, j in enumerate(pivots) if algebra.generators[j].kind == GeneratorKind.POLYNOMIAL]
    for c in range(coordinates):
        for sign in (1, -1):
            candidates.append([Fraction(sign if d == c else 0) for d in range(coordinates)])

    def evaluate(functional, vector):
        return sum(a * b for a, b in zip(functional, vector))

    witnesses = []
    for i in others:
        if algebra.generators[i].is_bounded:
            witnesses.append(())
            continue
        valid = []
        for functional in candidates:
            if evaluate(functional, vectors[i]) <= 0:
                continue
            admissible = True
            for j in unbounded:
                value = evaluate(functional, vectors[j])
                kind = algebra.generators[j].kind
                if (kind == GeneratorKind.INVERTIBLE and value != 0) or (kind == GeneratorKind.POLYNOMIAL and value < 0):
                    admissible = False
                    break
            if admissible:
                valid.append(tuple(functional))
        if not valid and failure is None:
            failure = f"the exponent of {algebra.names[i]} is not bounded by the degree"
        witnesses.append(tuple(valid))

    return EnumerationPlan(coordinates, vectors, tuple(pivots), tuple(pivot_coordinates), denominator,
                           scaled_functionals, others, tuple(witnesses), failure)

def _witness_bound(plan: EnumerationPlan, algebra: GradedAlgebraPresentation, i: int, witnesses: tuple, target: tuple) -> int:
    best = None
    for functional in witnesses:
        value = sum(a * b for a, b in zip(functional, plan.vectors[i]))
        slack = sum(a * b for a, b in zip(functional, target))
        for j in plan.others:
            generator = algebra.generators[j]
            if generator.is_bounded:
                contribution = sum(a * b for a, b in zip(functional, plan.vectors[j]))
                slack -= min(0, contribution * generator.top_exponent)
        bound = int(slack // value) if slack >= 0 else -1
        best = bound if best is None else min(best, bound)
    return best

def monomials_in_degree(algebra: GradedAlgebraPresentation, d: SpokeDegree, cap: int = DEFAULT_MONOMIAL_CAP,
                        s: int = None, f: int = None) -> list:
    """
    Complete list of monomials of degree d (and cohomological degree s,
    filtration f when given), sorted lexicographically on exponents.
    """
    use_s, use_f = s is not None, f is not None
    plan = enumeration_plan(algebra, use_s, use_f)
    if plan.failure is not None:
        raise_engine_error(WindowIncompletenessError(f"Cannot enumerate {algebra.name or 'the algebra'} in degree {format_degree(d)}: {plan.failure}"))

    target = (d.m, d.n) + ((s,) if use_s else ()) + ((f,) if use_f else ())
    ranges = []
    for position, i in enumerate(plan.others):
        generator = algebra.generators[i]
        if generator.is_bounded:
            ranges.append(range(generator.top_exponent + 1))
            continue
        bound = _witness_bound(plan, algebra, i, plan.witnesses[position], target)
        if bound > cap:
            raise_engine_error(WindowIncompletenessError(f"The exponent of {generator.name} in degree {format_degree(d)} can reach {bound}, above the cap {cap}"))
        if bound < 0:
            return []
        ranges.append(range(bound + 1))

    D = plan.denominator
    pivot_kinds = [algebra.generators[j].kind for j in plan.pivots]
    # minimal remaining contribution to D * (pivot exponent) from unassigned variables
    suffix_min = [[0] * (len(plan.others) + 1) for _ in plan.pivots]
    for k, functional in enumerate(plan.scaled_functionals):
        for position in range(len(plan.others) - 1, -1, -1):
            vector = plan.vectors[plan.others[position]]
            value = sum(a * b for a, b in zip(functional, vector))
            extreme = max(-value * e for e in (ranges[position][0], ranges[position][-1])) if ranges[position] else 0
            suffix_min[k][position] = suffix_min[k][position + 1] - extreme

    results = []
    exponents = [0] * len(algebra.generators)
    pivot_base = [sum(a * b for a, b in zip(functional, target)) for functional in plan.scaled_functionals]

    def descend(position: int, remaining: list, pivot_values: list):
        for k, kind in enumerate(pivot_kinds):
            if kind == GeneratorKind.POLYNOMIAL and pivot_values[k] + (-suffix_min[k][position]) < 0:
                return
        if position == len(plan.others):
            finish(remaining, pivot_values)
            return
        i = plan.others[position]
        vector = plan.vectors[i]
        shifts = [sum(a * b for a, b in zip(functional, vector)) for functional in plan.scaled_functionals]
        for e in ranges[position]:
            exponents[i] = e
            descend(position + 1,
                    [r - e * v for r, v in zip(remaining, vector)],
                    [value - e * shift for value, shift in zip(pivot_values, shifts)])
        exponents[i] = 0

    def finish(remaining: list, pivot_values: list):
        residual = list(remaining)
        for k, j in enumerate(plan.pivots):
            if pivot_values[k] % D:
                return
            e = pivot_values[k] // D
            if pivot_kinds[k] == GeneratorKind.POLYNOMIAL and e < 0:
                return
            exponents[j] = e
            residual = [r - e * v for r, v in zip(residual, plan.vectors[j])]
        if not any(residual):
            results.append(tuple(exponents))
        for j in plan.pivots:
            exponents[j] = 0

    descend(0, list(target), pivot_base)
    return sorted(results)

def basis_labels(algebra: GradedAlgebraPresentation, monomials: Iterable) -> list:
    return [algebra.label(mono) for mono in monomials]

# -----------------------------------------------------------------------
#                            ALGEBRA MAPS
# -----------------------------------------------------------------------

class AlgebraMap:
    """
    Multiplicative map determined by generator images. Images keep the
    degree of their generator; images of invertible generators must be a
    unit monomial times (1 + nilpotent).
    """

    def __init__(self, source: GradedAlgebraPresentation, target: GradedAlgebraPresentation, images: dict, name: str = ''):
        self.source = source
        self.target = target
        self.name = name
        self.images = []
        self.inverses = []
        for generator in source.generators:
            if generator.name in images:
                image = images[generator.name]
            elif generator.name in target.positions:
                image = generator_element(target, generator.name)
            else:
                raise KeyError(f"No image given for {generator.name} in {name or 'map'}")
            if image.algebra != target:
                raise ValueError(f"Image of {generator.name} does not live in the target algebra")
            if image.degree != generator.degree:
                raise_engine_error(InhomogeneousImageError(f"{name or 'map'}: image of {generator.name} has degree {format_degree(image.degree)}, expected {format_degree(generator.degree)}"))
            self.images.append(image)
            self.inverses.append(self._invert(generator, image) if generator.kind == GeneratorKind.INVERTIBLE else None)
        self._powers = {}
        self._monomials = {}

    @classmethod
    def from_spec(cls, source: GradedAlgebraPresentation, target: GradedAlgebraPresentation, spec: dict, name: str = '') -> 'AlgebraMap':
        """Build from raw (coefficient, {generator: exponent}) term lists, checking homogeneity term by term."""
        images = {}
        for generator_name, spec_terms in spec.items():
            generator = source.generators[source.index(generator_name)]
            terms = spec_terms_to_dict(target, spec_terms)
            for mono, coef in terms.items():
                if coef and target.degree_of(mono) != generator.degree:
                    raise_engine_error(InhomogeneousImageError(f"{name or 'map'}: term {target.label(mono)} of the image of {generator_name} has degree {format_degree(target.degree_of(mono))}, expected {format_degree(generator.degree)}"))
            images[generator_name] = make_element(target, terms, generator.degree)
        return cls(source, target, images, name)

    def _invert(self, generator: GeneratorSpec, image: AlgebraElement) -> AlgebraElement:
        target = self.target
        p = target.p
        units = [(mono, coef) for mono, coef in image.terms.items() if target.is_unit_monomial(mono)]
        rest = [mono for mono in image.terms if not target.is_unit_monomial(mono)]
        if len(units) != 1 or any(not target.is_nilpotent_monomial(mono) for mono in rest):
            raise_engine_error(NonInvertibleImageError(f"{self.name or 'map'}: image {image} of {generator.name} is not a unit times (1 + nilpotent)"))
        unit_mono, unit_coef = units[0]
        inverse_unit = monomial_element(target, tuple(-e for e in unit_mono), pow(unit_coef, -1, p))
        nilpotent = multiply(image - monomial_element(target, unit_mono, unit_coef), inverse_unit)
        # (1 + N)^-1 = sum (-N)^k, finite since N is nilpotent
        series = unit_element(target)
        term = unit_element(target)
        for _ in range(100000):
            term = multiply(term, -nilpotent)
            if term.is_zero():
                return multiply(inverse_unit, series)
            series = series + term
        raise_engine_error(NonInvertibleImageError(f"{self.name or 'map'}: geometric series for the inverse of {generator.name} does not terminate"))

    def power_of_image(self, i: int, exponent: int) -> AlgebraElement:
        key = (i, exponent)
        cached = self._powers.get(key)
        if cached is not None:
            return cached
        if exponent == 0:
            result = unit_element(self.target)
        elif exponent > 0:
            result = multiply(self.power_of_image(i, exponent - 1), self.images[i])
        else:
            result = multiply(self.power_of_image(i, exponent + 1), self.inverses[i])
        self._powers[key] = result
        return result

    def apply_monomial(self, mono: Monomial) -> AlgebraElement:
        cached = self._monomials.get(mono)
        if cached is not None:
            return cached
        result = unit_element(self.target)
        for i, exponent in enumerate(mono):
            if exponent:
                result = multiply(result, self.power_of_image(i, exponent))
                if result.is_zero():
                    break
        if result.is_zero():
            result = zero_element(self.target, self.source.degree_of(mono))
        self._monomials[mono] = result
        return result

    def apply(self, x: AlgebraElement) -> AlgebraElement:
        if x.algebra != self.source:
            raise ValueError(f"{self.name or 'map'} cannot be applied to an element of another algebra")
        result = zero_element(self.target, x.degree)
        for mono, coef in x.terms.items():
            result = result + self.apply_monomial(mono).scale(coef)
        return result

    def compose(self, inner: 'AlgebraMap', name: str = '') -> 'AlgebraMap':
        """self after inner."""
        if inner.target != self.source:
            raise ValueError("Maps are not composable")
        images = {generator.name: self.apply(image) for generator, image in zip(inner.source.generators, inner.images)}
        return AlgebraMap(inner.source, self.target, images, name)

def algebra_map_apply(f: AlgebraMap, x: AlgebraElement) -> AlgebraElement:
    return f.apply(x)
