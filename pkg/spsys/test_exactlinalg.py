import itertools
import unittest

import numpy as np
import sympy

from spsys.exactlinalg import (BasisDivisors, IntMatrix, coordinates_in_subquotient,
                               image_basis, integer_kernel, lattice_intersection,
                               matmul, normalize_divisors, smith_normal_form,
                               solve, subquotient)
from spsys.utils import DimensionError


def _random_matrices(count, seed=0, max_size=6, bound=5):
    rng = np.random.RandomState(seed)
    for _ in range(count):
        m, n = rng.randint(1, max_size + 1, size=2)
        yield rng.randint(-bound, bound + 1, size=(m, n)).tolist()


class SmithNormalFormRandomOracle(unittest.TestCase):
    """U*A*V = S, divisor chain and unimodular transforms on 200 random
    matrices."""
    def runTest(self):
        for A in _random_matrices(200):
            snf = smith_normal_form(A)
            M = IntMatrix(A).A
            S = matmul(matmul(snf.U, M), snf.V)
            self.assertTrue((S == snf.S).all())
            d = snf.diagonal
            for a, b in zip(d, d[1:]):
                self.assertEqual(b % a, 0)
            self.assertTrue(all(x > 0 for x in d))
            # off diagonal entries vanish
            for i, j in zip(*np.nonzero(snf.S != 0)):
                self.assertEqual(i, j)
            self.assertIn(sympy.Matrix(snf.U.tolist()).det(), (1, -1))
            self.assertIn(sympy.Matrix(snf.V.tolist()).det(), (1, -1))
            self.assertTrue((matmul(snf.U, snf.Uinv)
                             == np.identity(len(A), dtype=object)).all())
            self.assertTrue((matmul(snf.V, snf.Vinv)
                             == np.identity(len(A[0]), dtype=object)).all())


class SmithNormalFormMinorsOracle(unittest.TestCase):
    """d_1 ... d_k is the gcd of the k-minors."""
    def runTest(self):
        for A in _random_matrices(60, seed=1, max_size=4):
            snf = smith_normal_form(A)
            M = sympy.Matrix(A)
            m, n = M.shape
            prod = 1
            for k in range(1, min(m, n) + 1):
                g = 0
                for rows in itertools.combinations(range(m), k):
                    for cols in itertools.combinations(range(n), k):
                        g = sympy.igcd(g, M.extract(list(rows),
                                                    list(cols)).det())
                if k <= snf.rank:
                    prod *= snf.diagonal[k - 1]
                    self.assertEqual(g, prod)
                else:
                    self.assertEqual(g, 0)


class SmithNormalFormExamples(unittest.TestCase):
    def runTest(self):
        self.assertEqual(smith_normal_form([[2, 4], [6, 8]]).diagonal, [2, 4])
        self.assertEqual(smith_normal_form([[0, 0], [0, 0]]).rank, 0)
        self.assertEqual(smith_normal_form([[4]]).diagonal, [4])
        self.assertEqual(smith_normal_form([[-3]]).diagonal, [3])
        self.assertEqual(smith_normal_form([[2, 0], [0, 3]]).diagonal, [1, 6])


class IntMatrixBounds(unittest.TestCase):
    def runTest(self):
        M = IntMatrix([[1, 2], [3, 4]])
        self.assertEqual(M[1, 0], 3)
        with self.assertRaises(IndexError):
            M[-1, 0]
        with self.assertRaises(IndexError):
            M[0, 2] = 1
        M[0, 1] = 7
        self.assertEqual(M.tolist(), [[1, 7], [3, 4]])
        self.assertEqual(M * [[1], [1]], IntMatrix([[8], [7]]))
        # entries are arbitrary precision
        big = IntMatrix([[2 ** 80]])
        self.assertEqual((big * big)[0, 0], 2 ** 160)


class KernelImageSolve(unittest.TestCase):
    def runTest(self):
        A = [[1, 2, 3], [2, 4, 6]]
        K = integer_kernel(A)
        self.assertEqual(len(K), 2)
        for k in K:
            self.assertEqual(matmul(IntMatrix(A).A,
                                    np.array([k], dtype=object).T)
                             .ravel().tolist(), [0, 0])
        self.assertEqual(integer_kernel([[0, 0]]), [[1, 0], [0, 1]])

        self.assertEqual(image_basis([[2, 0], [0, 2], [2, 2]]).__len__(), 2)

        snf = smith_normal_form([[2, 0], [0, 3]])
        self.assertEqual(solve(snf, [4, 9]), [2, 3])
        self.assertIsNone(solve(snf, [1, 0]))

        # 2Z ∩ 3Z = 6Z
        inter = lattice_intersection([[2]], [[3]])
        self.assertEqual([abs(v[0]) for v in inter], [6])


class SubquotientExamples(unittest.TestCase):
    def runTest(self):
        sq = subquotient([[1, 0], [0, 1]], [[2, 0], [0, 3]])
        self.assertEqual(sq.divisors, [6])

        # denominator not contained in the numerator: A/(A∩B)
        sq = subquotient([[2, 0]], [[1, 0], [0, 5]])
        self.assertEqual(sq.divisors, [])
        sq = subquotient([[1, 0]], [[0, 1]])
        self.assertEqual(sq.divisors, [0])

        # axes of the denominator given without vectors
        sq = subquotient([[1, 1, 0], [0, 2, 0]], [[0, 0, 4]], dim=3,
                         den_axes=[0])
        self.assertEqual(sq.divisors, [0])
        sq = subquotient([[0, 1, 1]], [[0, 2, 0]], dim=3, den_axes=[2])
        self.assertEqual(sq.divisors, [2])

        sq = subquotient([], [], dim=4)
        self.assertTrue(BasisDivisors(sq.generators, sq.divisors).is_zero())

        with self.assertRaises(DimensionError):
            subquotient([[1, 0]], [[1, 0, 0]])


class SubquotientCoordinates(unittest.TestCase):
    def runTest(self):
        sq = subquotient([[1, 0], [0, 1]], [[2, 0], [0, 0]])
        self.assertEqual(sorted(sq.divisors), [0, 2])
        # generators have coordinates e_i
        for i, g in enumerate(sq.generators):
            expected = [1 if j == i else 0 for j in range(len(sq.divisors))]
            self.assertEqual(coordinates_in_subquotient(g, sq), expected)
        self.assertEqual(coordinates_in_subquotient([2, 0], sq), [0, 0])
        self.assertEqual(coordinates_in_subquotient([0, 0], sq), [0, 0])

        sq = subquotient([[2, 0]], [], dim=2)
        self.assertIsNone(coordinates_in_subquotient([1, 0], sq))


class DivisorsAndRendering(unittest.TestCase):
    def runTest(self):
        self.assertEqual(normalize_divisors([2, 3]), [6])
        self.assertEqual(normalize_divisors([2, 0, 4]), [2, 4, 0])
        self.assertEqual(normalize_divisors([]), [])
        G = BasisDivisors.abstract([2, 0])
        self.assertEqual(G.render(), "Component Z/2Z\nComponent Z")
        self.assertEqual(G.betti, 1)
        self.assertEqual(G.torsion, [2])
        self.assertTrue(BasisDivisors.abstract([6]).same_group(
            BasisDivisors.abstract([2, 3])))
        self.assertEqual(BasisDivisors.abstract([]).render(), "NIL")
        with self.assertRaises(DimensionError):
            BasisDivisors.abstract([1])


def _order(divisors):
    out = 1
    for d in divisors:
        out *= d
    return out


class LatticeIntersectionExamples(unittest.TestCase):
    def runTest(self):
        self.assertEqual(lattice_intersection([[1, 0]], [[1, 1]]), [])
        for A in ([[2, 0]], [[1, 0], [0, 1]]):
            inter = lattice_intersection(A, [[2, 0]])
            self.assertEqual(len(inter), 1)
            self.assertIn(list(inter[0]), ([2, 0], [-2, 0]))
        self.assertEqual(lattice_intersection([], [], dim=3), [])
        with self.assertRaises(DimensionError):
            lattice_intersection([[1, 0]], [[1, 0, 0]])


class SubquotientIgnoresGeneratingSets(unittest.TestCase):
    """Adding combinations of existing generators changes nothing."""
    def runTest(self):
        self.assertEqual(subquotient([[1, 0], [0, 1]], [], dim=2).divisors,
                         [0, 0])
        self.assertEqual(subquotient([[1]], [[2]]).divisors, [2])
        rng = np.random.RandomState(1)
        for _ in range(40):
            N = rng.randint(1, 5)
            num = rng.randint(-3, 4, size=(rng.randint(1, 4), N)).tolist()
            den = rng.randint(-3, 4, size=(rng.randint(0, 4), N)).tolist()
            expected = sorted(subquotient(num, den, dim=N).divisors)

            def augment(gens):
                if not gens:
                    return gens
                c = rng.randint(-2, 3, size=len(gens))
                extra = [int(x) for x in np.dot(c, np.array(gens))]
                return gens + [extra]
            self.assertEqual(sorted(subquotient(augment(num), den,
                                                dim=N).divisors), expected)
            self.assertEqual(sorted(subquotient(num, augment(den),
                                                dim=N).divisors), expected)


class FiniteQuotientOrders(unittest.TestCase):
    """|Z^N / D| for kZ^N ⊆ D, counted in (Z/k)^N."""
    def runTest(self):
        rng = np.random.RandomState(2)
        for k in range(2, 9):
            for N in range(1, 5):
                if k ** N > 512:
                    continue
                extra = rng.randint(0, k, size=(rng.randint(0, 3), N)).tolist()
                den = [[k if i == j else 0 for j in range(N)]
                       for i in range(N)] + extra
                num = [[1 if i == j else 0 for j in range(N)]
                       for i in range(N)]
                subgroup = set([(0,) * N])
                frontier = list(subgroup)
                while frontier:
                    x = frontier.pop()
                    for v in extra:
                        y = tuple((a + b) % k for a, b in zip(x, v))
                        if y not in subgroup:
                            subgroup.add(y)
                            frontier.append(y)
                divisors = subquotient(num, den).divisors
                self.assertNotIn(0, divisors)
                self.assertEqual(_order(divisors), k ** N // len(subgroup),
                                 "k=%d N=%d %s" % (k, N, extra))
