import itertools
import unittest

import numpy as np

from spsys.chain import homology, matrix_complex
from spsys.exactlinalg import (BasisDivisors, IntMatrix, integer_kernel,
                               matmul, matrix_columns, subquotient)
from spsys.poset import (EmptyDownSet, FullDownSet, GeneratedDownSet,
                         LexDownSet, TermTuple, final_tuple, page_tuple_S,
                         unit_vector)
from spsys.spectra import (FiltrationAssignment, GenFilteredComplex,
                           check_downset, check_filtration,
                           differential_matrix_between_terms,
                           filtration_basis, final_group,
                           homology_of_sequence_check,
                           kernel_and_cokernel_terms,
                           natural_isomorphism_check, page_differential,
                           relative_homology, secondary_connection_check,
                           sequence_homology, term, term_differential)
from spsys.utils import FiltrationError

TOP_DEGREE = 3


def _below(X, Y):
    return all(a <= b for a, b in zip(X, Y))


def _unitriangular_inverse(U):
    n = U.shape[0]
    N = -(U - np.identity(n, dtype=object))
    inv = np.identity(n, dtype=object)
    power = np.identity(n, dtype=object)
    for _ in range(n):
        power = matmul(power, N)
        inv = inv + power
    return inv


def random_filtered_complex(seed, m=2, size=3, coordinate_bound=2):
    """A filtered complex whose differential respects the product order of
    multidegrees: a split complex conjugated by filtration preserving
    unitriangular changes of basis."""
    rng = np.random.RandomState(seed)
    degs = {}
    for n in range(TOP_DEGREE + 1):
        r = rng.randint(1, size + 1)
        pts = [tuple(int(x) for x in rng.randint(0, coordinate_bound + 1,
                                                 size=m))
               for _ in range(r)]
        degs[n] = sorted(pts, key=lambda X: (sum(X), X))
    busy = dict((n, set()) for n in degs)
    split = {}
    for n in range(1, TOP_DEGREE + 1):
        M = np.zeros((len(degs[n - 1]), len(degs[n])), dtype=object)
        for j, X in enumerate(degs[n]):
            if j in busy[n] or rng.rand() < 0.3:
                continue
            free = [i for i, Y in enumerate(degs[n - 1])
                    if i not in busy[n - 1] and _below(Y, X)]
            if not free:
                continue
            i = free[rng.randint(len(free))]
            M[i, j] = int(rng.randint(1, 4))
            busy[n].add(j)
            busy[n - 1].add(i)
        split[n] = M
    change = {}
    for n, pts in degs.items():
        U = np.identity(len(pts), dtype=object)
        for i, j in itertools.combinations(range(len(pts)), 2):
            if _below(pts[i], pts[j]):
                U[i, j] = int(rng.randint(-1, 2))
        change[n] = U
    mats = dict((n, matmul(matmul(change[n - 1], split[n]),
                           _unitriangular_inverse(change[n])))
                for n in split)
    C = matrix_complex(mats, label='random%d' % seed)
    FC = GenFilteredComplex(C, FiltrationAssignment(
        m, lambda n, g: degs[n][g[1]]))
    return FC, degs


def quotient_homology(FC, s, p, n):
    """H_n(F_p / F_s) from the quotient complex spanned by F_p minus F_s."""
    def cells(k):
        small = set(FC.indices(s, k))
        return [i for i in FC.indices(p, k) if i not in small]
    mats = {}
    for k in range(1, TOP_DEGREE + 1):
        mats[k] = FC.matrix(k)[np.ix_(cells(k - 1), cells(k))]
    return homology(matrix_complex(mats), n)


def _preimage(FC, a, b, n):
    """F_a C_n ∩ d^{-1}(F_b C_{n-1}) as vectors of Z^{C_n}."""
    dim = len(FC.basis(n))
    cols = FC.indices(a, n)
    if not cols:
        return []
    inside = set(FC.indices(b, n - 1))
    rows = [i for i in range(len(FC.basis(n - 1))) if i not in inside]
    out = []
    for k in integer_kernel(FC.matrix(n)[np.ix_(rows, cols)]):
        v = [0] * dim
        for i, c in zip(cols, k):
            v[i] = c
        out.append(v)
    return out


def classical_page(FC, p, r, n):
    """E^r_p in total degree n of a Z-filtered complex,
    Z^r_p / (Z^{r-1}_{p-1} + d Z^{r-1}_{p+r-1})."""
    def T(q):
        return LexDownSet(1, (q,))
    numerator = _preimage(FC, T(p), T(p - r), n)
    boundaries = _preimage(FC, T(p + r - 1), T(p), n + 1)
    image = []
    if boundaries:
        image = matrix_columns(matmul(FC.matrix(n + 1),
                                      np.array(boundaries, dtype=object).T))
    den = _preimage(FC, T(p - 1), T(p - r), n) + image
    return subquotient(numerator, den, dim=len(FC.basis(n)))


def divisible(product, divisors):
    for i, d in enumerate(divisors):
        for x in product[i, :]:
            if (d == 0 and x != 0) or (d and x % d):
                return False
    return True


class RandomComplexesAreFiltered(unittest.TestCase):
    def runTest(self):
        for seed in range(50):
            FC, _ = random_filtered_complex(seed)
            self.assertTrue(check_filtration(FC, TOP_DEGREE).ok)
            for n in range(1, TOP_DEGREE + 1):
                self.assertTrue(
                    (matmul(FC.matrix(n), FC.matrix(n + 1)) == 0).all())


class FinalGroupIsHomology(unittest.TestCase):
    def runTest(self):
        for seed in range(50):
            FC, _ = random_filtered_complex(seed)
            for n in range(TOP_DEGREE + 1):
                self.assertTrue(final_group(FC, n).same_group(
                    homology(FC.complex, n)))


class RelativeHomology(unittest.TestCase):
    """S[s, s, p, p] against the quotient complex F_p / F_s."""
    def runTest(self):
        rng = np.random.RandomState(7)
        for seed in range(50):
            FC, _ = random_filtered_complex(seed)
            small = [tuple(rng.randint(0, 3, size=2)) for _ in range(2)]
            big = small + [tuple(rng.randint(0, 3, size=2))]
            s = GeneratedDownSet(small[:rng.randint(0, 3)], m=2)
            p = GeneratedDownSet(big, m=2)
            for n in range(TOP_DEGREE + 1):
                self.assertTrue(relative_homology(FC, s, p, n).group
                                .same_group(quotient_homology(FC, s, p, n)))
            # lexicographic downsets
            s, p = LexDownSet(2, (1, 0)), LexDownSet(2, (1, 1))
            for n in range(TOP_DEGREE + 1):
                self.assertTrue(relative_homology(FC, s, p, n).group
                                .same_group(quotient_homology(FC, s, p, n)))


class SecondaryConnection(unittest.TestCase):
    """Homology in direction -e_k gives the starred terms."""
    def runTest(self):
        for seed in range(50):
            FC, _ = random_filtered_complex(seed)
            for P in ((1, 1), (2, 0), (0, 2)):
                for k in (1, 2):
                    for n in (1, 2):
                        report = secondary_connection_check(FC, P, k, n)
                        self.assertTrue(report.ok, "seed %d %s k=%d n=%d: %s"
                                        % (seed, P, k, n, report))


class HomologyOfSequenceGeneral(unittest.TestCase):
    """Generated downsets instead of lexicographic ones."""
    def runTest(self):
        G = GeneratedDownSet
        e = G([], m=2)
        a, b, c = G([(0, 0)]), G([(1, 0), (0, 1)]), G([(1, 1)])
        d, f = G([(2, 1), (1, 2)]), G([(2, 2)])
        t1 = TermTuple(e, e, a, b)
        t2 = TermTuple(a, b, c, d)
        t3 = TermTuple(c, d, f, FullDownSet(2))
        for seed in range(50):
            FC, _ = random_filtered_complex(seed)
            for n in (1, 2):
                report = homology_of_sequence_check(FC, t3, t2, t1, n)
                self.assertTrue(report.ok, str(report))
        with self.assertRaises(FiltrationError):
            homology_of_sequence_check(FC, t2, t2, t1, 1)


class KernelAndCokernel(unittest.TestCase):
    def runTest(self):
        for seed in range(50):
            FC, _ = random_filtered_complex(seed)
            for P, k, n in (((1, 1), 1, 2), ((2, 1), 2, 2), ((1, 2), 2, 1)):
                source = page_tuple_S(P, k)
                e = unit_vector(2, k)
                target = page_tuple_S((P[0] - e[0], P[1] - e[1]), k)
                M, src, tgt = differential_matrix_between_terms(
                    FC, source, target, n)
                ker, coker = kernel_and_cokernel_terms(FC, source, target, n)
                r, t = len(src.divisors), len(tgt.divisors)
                brute_ker = sequence_homology(IntMatrix(rows=r, cols=0), M,
                                              src.divisors, tgt.divisors)
                brute_coker = sequence_homology(M, IntMatrix(rows=0, cols=t),
                                                tgt.divisors, [])
                self.assertTrue(ker.group.same_group(brute_ker))
                self.assertTrue(coker.group.same_group(brute_coker))
        with self.assertRaises(FiltrationError):
            kernel_and_cokernel_terms(FC, page_tuple_S((1, 1), 2),
                                      page_tuple_S((1, 1), 2), 1)


class PageDifferentialSquaresToZero(unittest.TestCase):
    def runTest(self):
        for seed in range(50):
            FC, _ = random_filtered_complex(seed)
            for P in ((2, 2), (1, 2), (2, 1)):
                for k in (1, 2):
                    e = unit_vector(2, k)
                    Q = (P[0] - e[0], P[1] - e[1])
                    for n in (2, 3):
                        M1, _, _ = page_differential(FC, P, k, n)
                        M2, _, tgt = page_differential(FC, Q, k, n - 1)
                        self.assertTrue(divisible(matmul(M2.A, M1.A),
                                                  tgt.divisors))


class TermDifferentialClasses(unittest.TestCase):
    def runTest(self):
        FC, _ = random_filtered_complex(3)
        source, target = page_tuple_S((1, 1), 2), page_tuple_S((1, 0), 2)
        src = term(FC, source, 2)
        zero = [0] * len(src.divisors)
        self.assertEqual(term_differential(FC, source, target, zero, 2),
                         [0] * len(term(FC, target, 1).divisors))
        with self.assertRaises(FiltrationError):
            term_differential(FC, source, target, zero + [1], 2)
        with self.assertRaises(FiltrationError):
            term_differential(FC, page_tuple_S((2, 2), 2), target, [], 2)


class ClassicalSpectralSequence(unittest.TestCase):
    """With m = 1 the terms S[p-r, p-1, p, p+r-1] are the pages E^r_p."""
    def runTest(self):
        for seed in range(50):
            FC, _ = random_filtered_complex(seed, m=1, size=4,
                                            coordinate_bound=3)
            for p in range(4):
                for r in (1, 2, 3):
                    t = TermTuple(LexDownSet(1, (p - r,)),
                                  LexDownSet(1, (p - 1,)),
                                  LexDownSet(1, (p,)),
                                  LexDownSet(1, (p + r - 1,)))
                    for n in range(TOP_DEGREE + 1):
                        self.assertTrue(term(FC, t, n).group.same_group(
                            classical_page(FC, p, r, n)),
                            "seed %d p=%d r=%d n=%d" % (seed, p, r, n))


class FiltrationBasisAndDownsetChecks(unittest.TestCase):
    def runTest(self):
        FC, degs = random_filtered_complex(11)
        self.assertEqual(filtration_basis(FC, EmptyDownSet(2), 1), [])
        self.assertEqual(filtration_basis(FC, FullDownSet(2), 1),
                         FC.basis(1))
        p = LexDownSet(2, (0, 2))
        self.assertEqual(filtration_basis(FC, p, 2),
                         [g for g in FC.basis(2)
                          if sum(degs[2][g[1]]) < 2
                          or (sum(degs[2][g[1]]) == 2 and degs[2][g[1]][1]
                              <= 2)])
        check_downset(FC, p, range(TOP_DEGREE + 1))

        # (1, 1) has a boundary at (0, 2): a filtration that is not
        # compatible with T^2
        C = matrix_complex({1: [[1]]})
        bad = GenFilteredComplex(C, FiltrationAssignment(
            2, lambda n, g: (1, 1) if n == 1 else (0, 2)))
        self.assertFalse(check_filtration(bad, 1).ok)
        with self.assertRaises(FiltrationError):
            check_downset(bad, GeneratedDownSet([(1, 1)]), [1])
        with self.assertRaises(FiltrationError):
            term(bad, TermTuple(*[LexDownSet(1, (0,))] * 4), 0)
        # terms refuse a filtration that d does not respect
        with self.assertRaisesRegex(FiltrationError, "require_compatible"):
            term(bad, final_tuple(2, 3), 0)
        with self.assertRaises(FiltrationError):
            term(bad, final_tuple(2, 3), 1)
        # each generator is checked once
        FC.require_compatible(2)
        self.assertTrue(all((2, g) in FC._checked for g in FC.basis(2)))


class TermsIgnoreBasisOrder(unittest.TestCase):
    """Reordering the basis in each degree gives isomorphic terms."""
    def runTest(self):
        for seed in (3, 4):
            FC, degs = random_filtered_complex(seed)
            rng = np.random.RandomState(seed)
            perm = dict((n, list(rng.permutation(len(pts))))
                        for n, pts in degs.items())
            mats = dict((n, FC.matrix(n)[np.ix_(perm[n - 1], perm[n])])
                        for n in range(1, TOP_DEGREE + 1))
            shuffled = GenFilteredComplex(
                matrix_complex(mats),
                FiltrationAssignment(2, lambda n, g: degs[n][perm[n][g[1]]]))
            tuples = [page_tuple_S(P, k) for P in ((1, 1), (2, 0), (0, 3))
                      for k in (1, 2)] + [final_tuple(2, 4)]
            for t in tuples:
                for n in range(TOP_DEGREE + 1):
                    self.assertTrue(term(shuffled, t, n).group.same_group(
                        term(FC, t, n).group), "seed %d %r n=%d" % (seed, t, n))


class NaturalIsomorphismRange(unittest.TestCase):
    def runTest(self):
        FC, _ = random_filtered_complex(0)
        with self.assertRaises(FiltrationError):
            natural_isomorphism_check(FC, (1, 1), 2, 1)
        with self.assertRaises(FiltrationError):
            natural_isomorphism_check(FC, (1, 1), 0, 1)


class ZeroDifferentialSequence(unittest.TestCase):
    def runTest(self):
        d_in = IntMatrix(rows=2, cols=0)
        d_out = IntMatrix(rows=1, cols=2)
        self.assertEqual(sequence_homology(d_in, d_out, [2, 0], [0]).divisors,
                         [2, 0])
        self.assertTrue(sequence_homology(d_in, d_out, [], [0]).is_zero())
        # Z -2-> Z -0-> 0
        self.assertEqual(sequence_homology(IntMatrix([[2]]),
                                           IntMatrix(rows=0, cols=1), [0],
                                           []).divisors, [2])
        self.assertIsInstance(
            sequence_homology(d_in, d_out, [2, 0], [0]), BasisDivisors)
