# ///////////////////////////////////////////////////////////////////////
#
#                            TEST ALGEBRA
#   Tests for graded presentations, their elements, monomial enumeration
#   and multiplicative maps.
#
# ///////////////////////////////////////////////////////////////////////

import unittest
from utilities_grading import SpokeDegree
from utilities_algebra import (GeneratorKind, GeneratorSpec, GradedAlgebraPresentation, AlgebraMap, element_from_spec,
                               generator_element, unit_element, multiply, power, forced_exponent, monomials_in_degree,
                               format_presentation, parse_presentation, embed_element, basis_labels, algebra_map_apply)
from utilities_exceptions import (ConfigError, InhomogeneousElementError, InhomogeneousImageError,
                                  WindowIncompletenessError)
from global_parameters import LOGGER_ALGEBRA_KEY

def small_algebra(name: str = 'B') -> GradedAlgebraPresentation:
    return GradedAlgebraPresentation(3, (
        GeneratorSpec('a', SpokeDegree(0, -1), GeneratorKind.POLYNOMIAL),
        GeneratorSpec('u', SpokeDegree(2, -2), GeneratorKind.INVERTIBLE),
        GeneratorSpec('e', SpokeDegree(1, -1), GeneratorKind.EXTERIOR),
        GeneratorSpec('t', SpokeDegree(0, 0), GeneratorKind.TRUNCATED, bound=2),
    ), name)

class TestPresentation(unittest.TestCase):

    def setUp(self):
        self.algebra = small_algebra()

    def test_generator_parity_rules(self):
        with self.assertRaises(ConfigError):
            GeneratorSpec('x', SpokeDegree(0, 1), GeneratorKind.EXTERIOR)
        with self.assertRaises(ConfigError):
            GeneratorSpec('y', SpokeDegree(1, 0), GeneratorKind.POLYNOMIAL)
        with self.assertRaises(ConfigError):
            GeneratorSpec('z', SpokeDegree(0, 2), GeneratorKind.TRUNCATED)

    def test_presentation_rules(self):
        with self.assertRaises(ConfigError):
            GradedAlgebraPresentation(4, self.algebra.generators)
        with self.assertRaises(ConfigError):
            GradedAlgebraPresentation(3, self.algebra.generators + (self.algebra.generators[0],))

    def test_monomial_and_label(self):
        mono = self.algebra.monomial({'a': 2, 'u': -1})
        self.assertEqual(self.algebra.degree_of(mono), SpokeDegree(-2, 0), "a^2 u^-1 sits in degree -2+0@")
        self.assertEqual(self.algebra.label(mono), 'a^2*u^-1', "Label lists generators with exponents")
        self.assertEqual(self.algebra.label(self.algebra.unit()), '1', "The unit is labelled 1")
        self.assertIsNone(self.algebra.monomial({'t': 2}), "t^2 vanishes in a truncation at 2")
        with self.assertRaises(ValueError):
            self.algebra.monomial({'a': -1})

    def test_parse_presentation(self):
        text = format_presentation(self.algebra)
        self.assertIn('t : 0+0@ : trunc^2', text, "Truncated generators carry their bound")
        self.assertEqual(parse_presentation(text, 3, 'B'), self.algebra, "Parsing the text should rebuild the presentation")
        with self.assertRaises(ConfigError):
            parse_presentation('a : 0-1@ : bogus', 3)

class TestElements(unittest.TestCase):

    def setUp(self):
        self.algebra = small_algebra()

    def test_exterior_sign(self):
        algebra = GradedAlgebraPresentation(3, (
            GeneratorSpec('e1', SpokeDegree(1, -1), GeneratorKind.EXTERIOR),
            GeneratorSpec('e2', SpokeDegree(1, 0), GeneratorKind.EXTERIOR),
        ))
        e1, e2 = generator_element(algebra, 'e1'), generator_element(algebra, 'e2')
        self.assertEqual(multiply(e2, e1), -multiply(e1, e2), "Odd generators anticommute")
        self.assertTrue(multiply(e1, e1).is_zero(), "An exterior generator squares to zero")

    def test_arithmetic(self):
        a = generator_element(self.algebra, 'a')
        u = generator_element(self.algebra, 'u')
        x = multiply(a, u)
        self.assertEqual(x.degree, SpokeDegree(2, -3), "Degrees add under multiplication")
        self.assertTrue((x - x).is_zero(), "x - x vanishes")
        self.assertEqual(x.scale(3), x.scale(0), "Scaling by p kills an element")
        self.assertEqual(power(a, 3), generator_element(self.algebra, 'a', 3), "Powers agree with exponents")
        self.assertEqual(str(x + x), '2*a*u', "Coefficients are printed in front")
        with self.assertRaises(InhomogeneousElementError):
            a + u

    def test_truncation(self):
        t = generator_element(self.algebra, 't')
        self.assertTrue(multiply(t, t).is_zero(), "t^2 = 0")

    def test_embed_element(self):
        smaller = GradedAlgebraPresentation(3, self.algebra.generators[:2], 'A')
        a = generator_element(smaller, 'a')
        self.assertEqual(embed_element(a, self.algebra), generator_element(self.algebra, 'a'), "Embedding keeps names")

class TestEnumeration(unittest.TestCase):

    def setUp(self):
        self.algebra = small_algebra()

    def labels(self, d: SpokeDegree) -> list:
        return basis_labels(self.algebra, monomials_in_degree(self.algebra, d))

    def test_monomials_in_degree(self):
        self.assertEqual(self.labels(SpokeDegree(2, -3)), ['a*u', 'a*u*t'], "Degree 2-3@ holds a*u and a*u*t")
        self.assertEqual(self.labels(SpokeDegree(1, -1)), ['e', 'e*t'], "Degree 1-1@ holds e and e*t")
        self.assertEqual(self.labels(SpokeDegree(-2, 0)), ['a^2*u^-1', 'a^2*u^-1*t'], "Negative powers of u are allowed")
        self.assertEqual(self.labels(SpokeDegree(0, 2)), [], "Negative powers of a are not")

    def test_unbounded_exponent_is_reported(self):
        algebra = GradedAlgebraPresentation(3, (
            GeneratorSpec('v', SpokeDegree(2, 0), GeneratorKind.INVERTIBLE),
            GeneratorSpec('w', SpokeDegree(2, 0), GeneratorKind.INVERTIBLE),
        ))
        with self.assertRaises(WindowIncompletenessError):
            monomials_in_degree(algebra, SpokeDegree(0, 0))

    def test_cap(self):
        algebra = GradedAlgebraPresentation(3, (
            GeneratorSpec('a', SpokeDegree(0, -1), GeneratorKind.POLYNOMIAL),
            GeneratorSpec('b', SpokeDegree(0, -1), GeneratorKind.POLYNOMIAL),
        ))
        self.assertEqual(len(monomials_in_degree(algebra, SpokeDegree(0, -3))), 4, "a^i b^(3-i) for i = 0..3")
        with self.assertRaises(WindowIncompletenessError):
            monomials_in_degree(algebra, SpokeDegree(0, -20), cap=4)

    def test_forced_exponent(self):
        target = SpokeDegree(2, -3)
        self.assertEqual(forced_exponent(self.algebra, target, {'u': 1}, 'a'), 1, "a completes u to 2-3@")
        with self.assertLogs(LOGGER_ALGEBRA_KEY, level='WARNING'):
            self.assertEqual(forced_exponent(self.algebra, target, {'u': 1}, 'a', printed=2), 1, "A wrong printed exponent is overridden")
        with self.assertRaises(InhomogeneousImageError):
            forced_exponent(self.algebra, SpokeDegree(1, 0), {}, 'a')

class TestAlgebraMap(unittest.TestCase):

    def setUp(self):
        self.algebra = small_algebra()
        self.f = AlgebraMap.from_spec(self.algebra, self.algebra, {'u': [(1, {'u': 1}), (1, {'u': 1, 't': 1})]}, 'f')

    def test_inverse_image(self):
        u_inverse = self.algebra.monomial({'u': -1})
        expected = element_from_spec(self.algebra, [(1, {'u': -1}), (-1, {'u': -1, 't': 1})])
        self.assertEqual(self.f.apply_monomial(u_inverse), expected, "u^-1 maps to u^-1 (1 - t)")
        product = multiply(self.f.apply(generator_element(self.algebra, 'u')), self.f.apply_monomial(u_inverse))
        self.assertEqual(product, unit_element(self.algebra), "Images of u and u^-1 are inverse")

    def test_compose(self):
        g = self.f.compose(self.f)
        expected = element_from_spec(self.algebra, [(1, {'u': 1}), (2, {'u': 1, 't': 1})])
        self.assertEqual(g.apply(generator_element(self.algebra, 'u')), expected, "f(f(u)) = u + 2ut")

    def test_apply_extends_multiplicatively(self):
        a, u = generator_element(self.algebra, 'a'), generator_element(self.algebra, 'u')
        expected = element_from_spec(self.algebra, [(1, {'a': 1, 'u': 1}), (1, {'a': 1, 'u': 1, 't': 1})])
        self.assertEqual(algebra_map_apply(self.f, multiply(a, u)), expected, "f(au) = a f(u)")
        self.assertEqual(algebra_map_apply(self.f, a), a, "Generators without an image are fixed")

    def test_inhomogeneous_image(self):
        with self.assertRaises(InhomogeneousImageError):
            AlgebraMap.from_spec(self.algebra, self.algebra, {'a': [(1, {'u': 1})]}, 'bad')

if __name__ == '__main__':
    unittest.main()
