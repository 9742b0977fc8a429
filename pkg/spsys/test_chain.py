import unittest

from spsys.chain import (Combination, Tnpr, cmbn_sum, compose_morphisms,
                         differential_matrix, homology,
                         homology_with_coefficients, identity_morphism,
                         matrix_complex, tensor_complex, tensor_morphisms,
                         Morphism)
from spsys.utils import DegreeError, EffectivenessError


def projective_plane():
    """Cellular chains of RP^2: Z <-0- Z <-2- Z."""
    return matrix_complex({1: [[0]], 2: [[2]]}, label='RP2')


class CombinationAlgebra(unittest.TestCase):
    def runTest(self):
        a = Combination(2, {'x': 1, 'y': -2})
        b = Combination(2, {'y': 2, 'z': 3})
        self.assertEqual(a + b, Combination(2, {'x': 1, 'z': 3}))
        self.assertEqual(a - a, Combination.zero(2))
        self.assertTrue((a - a).is_zero())
        self.assertEqual(3 * a, Combination(2, {'x': 3, 'y': -6}))
        self.assertEqual(-a, (-1) * a)
        self.assertEqual(cmbn_sum(2, [a, b, -b]), a)
        # zero coefficients are dropped
        self.assertEqual(len(Combination(1, {'x': 0})), 0)
        with self.assertRaises(DegreeError):
            a + Combination.single(3, 'x')


class HomologyOfProjectivePlane(unittest.TestCase):
    def runTest(self):
        C = projective_plane()
        self.assertEqual(homology(C, 0).divisors, [0])
        self.assertEqual(homology(C, 1).divisors, [2])
        self.assertEqual(homology(C, 2).divisors, [])
        self.assertEqual(homology(C, -1).divisors, [])
        # Z/2 coefficients
        self.assertEqual(homology_with_coefficients(C, 1, [2]).divisors, [2])
        self.assertEqual(homology_with_coefficients(C, 2, [2]).divisors, [2])
        self.assertEqual(homology_with_coefficients(C, 2, [3]).divisors, [])
        self.assertEqual(homology_with_coefficients(C, 0, [2, 0]).divisors,
                         [2, 0])


class HomologyGeneratorsAreCycles(unittest.TestCase):
    def runTest(self):
        C = matrix_complex({1: [[1, -1, 0], [-1, 0, 1], [0, 1, -1]]})
        H1 = homology(C, 1)
        self.assertEqual(H1.divisors, [0])
        z = H1.generators[0]
        self.assertTrue(C.d(z).is_zero())
        self.assertEqual(differential_matrix(C, 1).shape, (3, 3))


class TensorComplexKoszul(unittest.TestCase):
    def runTest(self):
        C = projective_plane()
        T = tensor_complex(C, C)
        for n in range(5):
            for t in T.basis(n):
                self.assertTrue(T.d(T.dffr(n, t)).is_zero())
        # Künneth: H_2(RP2 x RP2) = Z/2 (from H_1 ⊗ H_1) and H_3 = Z/2 (Tor)
        self.assertEqual(homology(T, 2).divisors, [2])
        self.assertEqual(homology(T, 3).divisors, [2])
        # sign of the second term
        x = Tnpr(1, (1, 0), 2, (2, 0))
        self.assertEqual(T.dffr(3, x),
                         Combination(2, {Tnpr(1, (1, 0), 1, (1, 0)): -2}))


class MorphismDegrees(unittest.TestCase):
    def runTest(self):
        C = projective_plane()
        ident = identity_morphism(C)
        two = Morphism(C, C, 0, lambda n, g: Combination.single(n, g, 2))
        self.assertEqual(compose_morphisms(two, ident)(
            Combination.single(1, (1, 0))), Combination.single(1, (1, 0), 2))
        bad = Morphism(C, C, 1, lambda n, g: Combination.single(n, g))
        with self.assertRaises(DegreeError):
            bad(Combination.single(1, (1, 0)))
        T = tensor_complex(C, C)
        f = tensor_morphisms(ident, two, T, T)
        self.assertEqual(f(Combination.single(2, Tnpr(1, (1, 0), 1, (1, 0)))),
                         Combination.single(2, Tnpr(1, (1, 0), 1, (1, 0)), 2))


class MissingBasis(unittest.TestCase):
    def runTest(self):
        from spsys.chain import ChainComplex
        C = ChainComplex(lambda n, g: Combination.zero(n - 1), label='lazy')
        self.assertEqual(C.basis(-1), [])
        with self.assertRaises(EffectivenessError):
            C.basis(0)
        with self.assertRaises(EffectivenessError):
            homology(C, 0)


def _regroup(t):
    """(x ⊗ y) ⊗ z as x ⊗ (y ⊗ z)."""
    xy = t.gnrt1
    return Tnpr(xy.degree1, xy.gnrt1, xy.degree2 + t.degree2,
                Tnpr(xy.degree2, xy.gnrt2, t.degree2, t.gnrt2))


class TensorComplexAssociative(unittest.TestCase):
    def runTest(self):
        A = projective_plane()
        B = matrix_complex({1: [[2]]}, label='M2')
        C = matrix_complex({1: [[0, 3]]}, label='C')
        left = tensor_complex(tensor_complex(A, B), C)
        right = tensor_complex(A, tensor_complex(B, C))

        def regroup(cmbn):
            return Combination(cmbn.degree, dict((_regroup(t), c)
                                                 for t, c in cmbn.items()))

        for n in range(6):
            basis = left.basis(n)
            self.assertEqual(len(basis), len(right.basis(n)))
            self.assertEqual(set(_regroup(t) for t in basis),
                             set(right.basis(n)))
            for t in basis:
                dt = left.dffr(n, t)
                self.assertTrue(left.d(dt).is_zero())
                self.assertEqual(regroup(dt),
                                 right.dffr(n, _regroup(t)))
            self.assertEqual(sorted(homology(left, n).divisors),
                             sorted(homology(right, n).divisors))
