# ///////////////////////////////////////////////////////////////////////
#
#                          UTILITIES HFP
#   Closed-form homotopy of the Eilenberg-MacLane spectrum of the constant
#   Mackey functor F_p in spoke grading: positive and negative cones, the
#   a-free quotient, a-inversion, completion-then-inversion and the spoke
#   suspension, with the fraction-rule multiplication.
#
# ///////////////////////////////////////////////////////////////////////

from dataclasses import dataclass, field
from functools import lru_cache
from utilities_grading import SpokeDegree, SPOKE, koszul_sign
from utilities_algebra import GeneratorKind, GeneratorSpec, GradedAlgebraPresentation, AlgebraElement, generator_element, monomials_in_degree, multiply
from utilities_exceptions import ConfigError, UnsupportedVariantMapError, raise_engine_error
from global_parameters import *
import logging as log

logger_hfp = log.getLogger(LOGGER_HFP_KEY)

DEGREE_A = SpokeDegree(0, -1)
DEGREE_U_LAMBDA = SpokeDegree(2, -2)
DEGREE_U_SPOKE = SpokeDegree(1, -1)
THETA_DEGREE = SpokeDegree(-2, 2)

SUPPORTED_VARIANT_MAPS = [(VARIANT_FULL, VARIANT_A_FREE), (VARIANT_A_FREE, VARIANT_A_INVERTED), (VARIANT_A_INVERTED, VARIANT_A_COMPLETED_INVERTED)]

# -----------------------------------------------------------------------
#                          VARIANT RINGS
# -----------------------------------------------------------------------

@dataclass(frozen=True)
class HfpVariant:
    tag: str

    def __post_init__(self):
        if self.tag not in VARIANTS:
            raise_engine_error(ConfigError(f"Unknown variant {self.tag!r}, expected one of {VARIANTS}"))

@lru_cache(maxsize=64)
def cone_presentation(p: int, a_invertible: bool = False, u_invertible: bool = False) -> GradedAlgebraPresentation:
    """F_p[a, u_lambda]<u_spoke> with a and/or u_lambda optionally inverted."""
    generators = (
        GeneratorSpec(GEN_A, DEGREE_A, GeneratorKind.INVERTIBLE if a_invertible else GeneratorKind.POLYNOMIAL),
        GeneratorSpec(GEN_U_LAMBDA, DEGREE_U_LAMBDA, GeneratorKind.INVERTIBLE if u_invertible else GeneratorKind.POLYNOMIAL),
        GeneratorSpec(GEN_U_SPOKE, DEGREE_U_SPOKE, GeneratorKind.EXTERIOR),
    )
    return GradedAlgebraPresentation(p, generators, f"cone[a_inv={a_invertible},u_inv={u_invertible}]")

def presentation_for(variant: str, p: int) -> GradedAlgebraPresentation:
    if variant in (VARIANT_FULL, VARIANT_A_FREE, VARIANT_SPOKE_SUSPENSION):
        return cone_presentation(p)
    if variant == VARIANT_A_INVERTED:
        return cone_presentation(p, a_invertible=True)
    if variant == VARIANT_A_COMPLETED_INVERTED:
        return cone_presentation(p, a_invertible=True, u_invertible=True)
    raise_engine_error(ConfigError(f"Unknown variant {variant!r}"))

# -----------------------------------------------------------------------
#                          NEGATIVE CONE
# -----------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class NegConeElement:
    epsilon: int
    j: int
    k: int

    def __post_init__(self):
        if self.epsilon not in (0, 1) or self.j < 1 or self.k < 1:
            raise ValueError(f"Invalid negative cone index ({self.epsilon}, {self.j}, {self.k})")

    @property
    def degree(self) -> SpokeDegree:
        return SpokeDegree(-1, 0) + DEGREE_U_SPOKE * self.epsilon + SpokeDegree(-2, 2) * self.j + SPOKE * self.k

    def denominator(self) -> tuple:
        """Exponents (a, u_lambda, u_spoke) of x in the fraction theta/x."""
        return (self.k - 1, self.j - 1, 1 - self.epsilon)

    @classmethod
    def from_denominator(cls, x: tuple) -> 'NegConeElement':
        a, u, u_spoke = x
        return cls(1 - u_spoke, u + 1, a + 1)

    def label(self) -> str:
        parts = ['S^-1']
        if self.epsilon:
            parts.append(GEN_U_SPOKE)
        parts.append(f"{GEN_U_LAMBDA}^-{self.j}")
        parts.append(f"{GEN_A}^-{self.k}")
        return '*'.join(parts)

THETA = NegConeElement(1, 1, 1)

def negative_cone_in_degree(d: SpokeDegree) -> list:
    elements = []
    for epsilon in (0, 1):
        twice_j = epsilon - 1 - d.m
        if twice_j % 2:
            continue
        j = twice_j // 2
        k = d.n + epsilon - 2 * j
        if j >= 1 and k >= 1:
            elements.append(NegConeElement(epsilon, j, k))
    return elements

# -----------------------------------------------------------------------
#                          BASIS ENUMERATION
# -----------------------------------------------------------------------

def basis_keys(variant: str, d: SpokeDegree, p: int) -> list:
    """Basis of the variant in degree d as monomials, negative cone classes or spoke tags."""
    HfpVariant(variant)
    if variant == VARIANT_SPOKE_SUSPENSION:
        shifted = d - SPOKE
        keys = [('spoke', key) for key in basis_keys(VARIANT_FULL, shifted, p)]
        if shifted.m % 2 == 0 and shifted.n == -shifted.m:
            j = shifted.m // 2
            keys += [('tilde', i, j) for i in range(1, p - 1)]
        return keys
    keys = list(monomials_in_degree(presentation_for(variant, p), d))
    if variant == VARIANT_FULL:
        keys += negative_cone_in_degree(d)
    return keys

def key_label(variant: str, key, p: int) -> str:
    if isinstance(key, NegConeElement):
        return key.label()
    if variant == VARIANT_SPOKE_SUSPENSION:
        if key[0] == 'tilde':
            _, i, j = key
            return f"1~_{i}" if j == 0 else f"1~_{i}*{GEN_U_LAMBDA}^{j}"
        inner = key_label(VARIANT_FULL, key[1], p)
        return '1^spoke' if inner == '1' else f"{inner}*1^spoke"
    return presentation_for(variant, p).label(key)

def basis_in_degree(variant: str, d: SpokeDegree, p: int) -> list:
    return [key_label(variant, key, p) for key in basis_keys(variant, d, p)]

def positive_negative_split(d: SpokeDegree, p: int) -> tuple:
    return len(monomials_in_degree(cone_presentation(p), d)), len(negative_cone_in_degree(d))

# -----------------------------------------------------------------------
#                          ELEMENTS AND PRODUCTS
# -----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class HfpElement:
    variant: str
    p: int
    degree: SpokeDegree
    terms: dict = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, HfpElement):
            return NotImplemented
        return (self.variant, self.p, self.degree, self.terms) == (other.variant, other.p, other.degree, other.terms)

    def labels(self) -> list:
        return [key_label(self.variant, key, self.p) for key in sorted(self.terms, key=str)]

def key_degree(variant: str, key, p: int) -> SpokeDegree:
    if isinstance(key, NegConeElement):
        return key.degree
    return presentation_for(variant, p).degree_of(key)

def hfp_element(variant: str, p: int, key, coef: int = 1) -> HfpElement:
    return HfpElement(variant, p, key_degree(variant, key, p), {key: coef % p} if coef % p else {})

def hfp_generator(variant: str, p: int, name: str, exponent: int = 1) -> HfpElement:
    algebra = presentation_for(variant, p)
    return hfp_element(variant, p, algebra.monomial({name: exponent}))

def _act_on_fraction(g: tuple, negative: NegConeElement):
    quotient = tuple(x - e for x, e in zip(negative.denominator(), g))
    if min(quotient) < 0 or quotient[2] > 1:
        return None
    return NegConeElement.from_denominator(quotient)

def _multiply_keys(x_key, y_key, p: int):
    algebra = cone_presentation(p)
    x_negative = isinstance(x_key, NegConeElement)
    y_negative = isinstance(y_key, NegConeElement)
    if x_negative and y_negative:
        return None
    if not x_negative and not y_negative:
        return algebra.multiply_monomials(x_key, y_key)
    if not x_negative:
        product = _act_on_fraction(x_key, y_key)
        return None if product is None else (1, product)
    product = _act_on_fraction(y_key, x_key)
    if product is None:
        return None
    return koszul_sign(x_key.degree, algebra.degree_of(y_key)), product

def multiply_full(x: HfpElement, y: HfpElement) -> HfpElement:
    """Positive cone products as in the ring; g * theta/x = theta/(x/g) when g divides x; negative squared is zero."""
    if x.variant != VARIANT_FULL or y.variant != VARIANT_FULL or x.p != y.p:
        raise ValueError("multiply_full expects two elements of the full variant with the same p")
    p = x.p
    terms = {}
    for x_key, x_coef in x.terms.items():
        for y_key, y_coef in y.terms.items():
            product = _multiply_keys(x_key, y_key, p)
            if product is None:
                continue
            sign, key = product
            value = (terms.get(key, 0) + sign * x_coef * y_coef) % p
            if value:
                terms[key] = value
            else:
                terms.pop(key, None)
    return HfpElement(VARIANT_FULL, p, x.degree + y.degree, terms)

def a_torsion_order(negative: NegConeElement, p: int) -> int:
    """Smallest e with a^e * y = 0."""
    y = hfp_element(VARIANT_FULL, p, negative)
    e = 0
    while not y.is_zero():
        y = multiply_full(hfp_generator(VARIANT_FULL, p, GEN_A), y)
        e += 1
    return e

def kappa_lambda(p: int) -> AlgebraElement:
    algebra = cone_presentation(p)
    return multiply(generator_element(algebra, GEN_A), generator_element(algebra, GEN_U_SPOKE))

# -----------------------------------------------------------------------
#                            VARIANT MAPS
# -----------------------------------------------------------------------

def variant_map(source: str, target: str, x: HfpElement) -> HfpElement:
    if (source, target) not in SUPPORTED_VARIANT_MAPS:
        raise_engine_error(UnsupportedVariantMapError(f"No map from {source} to {target}; supported pairs are {SUPPORTED_VARIANT_MAPS}"))
    if x.variant != source:
        raise ValueError(f"Element lives in {x.variant}, not in {source}")
    terms = {key: coef for key, coef in x.terms.items() if not isinstance(key, NegConeElement)}
    return HfpElement(target, x.p, x.degree, terms)

# -----------------------------------------------------------------------
#                        RO(C_p)-GRADED PART
# -----------------------------------------------------------------------

def ro_graded_label(key, p: int) -> str:
    """Relabel with a_lambda = a^2 and kappa_lambda = a*u_spoke."""
    if isinstance(key, NegConeElement):
        parts = ['S^-1']
        if key.epsilon:
            parts.append('kappa_lambda')
        parts.append(f"{GEN_U_LAMBDA}^-{key.j}")
        parts.append(f"a_lambda^-{(key.k + key.epsilon) // 2}")
        return '*'.join(parts)
    a, u, u_spoke = key
    parts = []
    if u_spoke:
        parts.append('kappa_lambda')
        a -= 1
    if a:
        parts.append('a_lambda' if a == 2 else f"a_lambda^{a // 2}")
    if u:
        parts.append(GEN_U_LAMBDA if u == 1 else f"{GEN_U_LAMBDA}^{u}")
    return '*'.join(parts) if parts else '1'

def ro_graded_basis(d: SpokeDegree, p: int) -> list:
    if d.n % 2:
        raise_engine_error(ConfigError(f"Degree {d} has odd spoke weight and is not an RO(C_p) degree"))
    return [ro_graded_label(key, p) for key in basis_keys(VARIANT_FULL, d, p)]
