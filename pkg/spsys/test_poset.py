import itertools
import unittest

import numpy as np

from spsys.poset import (EmptyDownSet, FullDownSet, GeneratedDownSet,
                         LexDownSet, TermTuple, b_downset, bstar_downset,
                         downset_eq, downset_leq, final_tuple, lex_member,
                         p_downset, page_tuple_S, page_tuple_Sstar, phi,
                         phi_inverse, s_downset, t_downset, unit_vector,
                         z_downset, zstar_downset)
from spsys.utils import FiltrationError


class LexicographicKeys(unittest.TestCase):
    def runTest(self):
        self.assertEqual(phi(3, (1, 2, 3)), (6, 5, 3))
        self.assertEqual(phi(2, (1, 2, 3)), (3, 3, 2))
        self.assertEqual(phi(1, (1, 2, 3)), (2, 3, 1))
        with self.assertRaises(FiltrationError):
            phi(0, (1, 2))
        with self.assertRaises(FiltrationError):
            phi(3, (1, 2))
        self.assertTrue(lex_member(3, (0, 0, 2), (0, 1, 1)))
        self.assertFalse(lex_member(3, (0, 1, 1), (0, 0, 2)))
        # graded: anything of smaller total degree is below
        self.assertTrue(lex_member(3, (0, 0, 2), (1, 0, 0)))
        self.assertTrue(lex_member(2, (5, 0, 1), (0, 3, 1)))
        self.assertFalse(lex_member(2, (5, 0, 1), (0, 0, 2)))
        with self.assertRaises(FiltrationError):
            lex_member(3, (0, 0), (0, 0, 0))
        self.assertEqual(unit_vector(3, 2), (0, 1, 0))
        self.assertEqual(unit_vector(3, 0), (0, 0, 0))


class Rendering(unittest.TestCase):
    def runTest(self):
        self.assertEqual(bstar_downset((0, 0, 0), 3).render(),
                         "((0 0 1) (0 1 0) (1 0 0))")
        self.assertEqual(z_downset((0, 0, 0), 3).render(), "NIL")
        self.assertEqual(EmptyDownSet(2).render(), "NIL")
        self.assertEqual(FullDownSet(2, 3).render(), "((3 3))")
        self.assertEqual(final_tuple(2, 3).render(),
                         "S[NIL,NIL,((3 3)),((3 3))]")
        self.assertEqual(GeneratedDownSet([(1, 0), (0, 1), (0, 0)]).render(),
                         "((0 1) (1 0))")
        with self.assertRaises(FiltrationError):
            LexDownSet(1, (0, 0)).render()
        self.assertEqual(LexDownSet(1, (0, 1)).render(2), "((0 1) (2 0))")


class Inclusions(unittest.TestCase):
    def runTest(self):
        a = LexDownSet(3, (0, 0, 1))
        b = LexDownSet(3, (0, 1, 0))
        self.assertTrue(downset_leq(b, a))
        self.assertFalse(downset_leq(a, b))
        self.assertTrue(downset_leq(EmptyDownSet(3), a))
        self.assertTrue(downset_leq(a, FullDownSet(3)))
        self.assertFalse(downset_leq(FullDownSet(3), a))
        self.assertTrue(downset_leq(GeneratedDownSet([(1, 0, 0)]), a))
        self.assertFalse(downset_leq(GeneratedDownSet([(0, 0, 2)]), a))
        self.assertTrue(downset_leq(GeneratedDownSet([], m=3), b))
        # different k is only decidable on a box
        c = LexDownSet(1, (0, 0, 0))
        with self.assertRaises(FiltrationError):
            downset_leq(c, LexDownSet(3, (0, 0, 0)))
        self.assertTrue(downset_leq(c, LexDownSet(3, (0, 0, 0)), bound=2))
        with self.assertRaises(FiltrationError):
            downset_leq(a, LexDownSet(2, (0, 0)))
        self.assertTrue(downset_eq(LexDownSet(3, (1, 0, 0)),
                                   LexDownSet(3, (1, 0, 0))))
        self.assertEqual(LexDownSet(2, (0, 1, 0)), LexDownSet(2, (0, 1, 0)))
        # T^k_P grows with P in direction e_k
        for k in (1, 2, 3):
            P = (1, 0, 2)
            Q = tuple(x + (i == k - 1) for i, x in enumerate(P))
            self.assertTrue(downset_leq(t_downset(P, k), t_downset(Q, k)))
            self.assertFalse(downset_leq(t_downset(Q, k), t_downset(P, k)))


class PageTuples(unittest.TestCase):
    def runTest(self):
        t = page_tuple_S((0, 0, 2), 3)
        self.assertEqual(t.m, 3)
        self.assertEqual(t.z.P, (0, 0, 1))
        self.assertEqual(t.s.P, (0, 1, 1))
        self.assertEqual(t.b.P, (0, 1, 2))
        t = page_tuple_Sstar((0, 0, 2), 3)
        self.assertEqual(t.z.P, (0, 1, 0))
        self.assertEqual(t.b.P, (0, 0, 3))
        self.assertEqual(t.z.render(), "((0 1 0) (1 0 0))")
        self.assertEqual(len(list(t)), 4)
        # k = 1 shifts only the first coordinate
        t = page_tuple_S((2, 1), 1)
        self.assertEqual((t.z.P, t.s.P, t.b.P), ((1, 1), (1, 1), (2, 1)))


class TermTupleValidation(unittest.TestCase):
    def runTest(self):
        p = LexDownSet(3, (0, 0, 2))
        z = LexDownSet(3, (0, 0, 1))
        with self.assertRaises(FiltrationError):
            TermTuple(p, z, p, p)
        with self.assertRaises(FiltrationError):
            TermTuple(EmptyDownSet(2), z, p, p)
        TermTuple(z, z, p, FullDownSet(3))


class LexicographicKeysAreBijective(unittest.TestCase):
    def runTest(self):
        for m in (1, 2, 3):
            for X in itertools.product(range(-2, 3), repeat=m):
                for k in range(1, m + 1):
                    self.assertEqual(phi_inverse(k, phi(k, X)), X)
                    self.assertEqual(phi(k, phi_inverse(k, X)), X)
        self.assertEqual(phi_inverse(3, (6, 5, 3)), (1, 2, 3))
        self.assertEqual(phi_inverse(2, (3, 3, 2)), (1, 2, 3))
        self.assertEqual(phi_inverse(1, (2, 3, 1)), (1, 2, 3))
        with self.assertRaises(FiltrationError):
            phi_inverse(4, (1, 2, 3))


class LexDownSetsAreDownSets(unittest.TestCase):
    """X in T^k_P and Y <= X give Y in T^k_P."""
    def runTest(self):
        self.assertTrue(lex_member(2, (3, 2), (0, 4)))
        self.assertFalse(lex_member(2, (3, 2), (1, 4)))
        rng = np.random.RandomState(0)
        checked = 0
        for _ in range(500):
            m = rng.randint(1, 4)
            k = rng.randint(1, m + 1)
            P = tuple(int(x) for x in rng.randint(-3, 6, size=m))
            X = tuple(int(x) for x in rng.randint(-3, 6, size=m))
            Y = tuple(x - int(d) for x, d in
                      zip(X, rng.randint(0, 4, size=m)))
            self.assertTrue(lex_member(k, P, P))
            if lex_member(k, P, X):
                checked += 1
                self.assertTrue(lex_member(k, P, Y), (k, P, X, Y))
        self.assertGreater(checked, 50)


class DownsetFamiliesAsSetOperations(unittest.TestCase):
    """s = p minus P, z = p - e_k, b = s + e_k, z* = z minus (P - e_k) and
    b* = b plus (P + e_k), on a 7^m grid."""
    def runTest(self):
        for m in (1, 2, 3):
            grid = list(itertools.product(range(-2, 5), repeat=m))
            for P in ((1,) * m, tuple(range(m)), tuple(range(m, 0, -1))):
                for k in range(1, m + 1):
                    e = unit_vector(m, k)
                    p = p_downset(P, k)
                    s, z = s_downset(P, k), z_downset(P, k)
                    b = b_downset(P, k)
                    zs, bs = zstar_downset(P, k), bstar_downset(P, k)
                    below = tuple(a - c for a, c in zip(P, e))
                    above = tuple(a + c for a, c in zip(P, e))
                    for X in grid:
                        Xp = tuple(a + c for a, c in zip(X, e))
                        Xm = tuple(a - c for a, c in zip(X, e))
                        self.assertEqual(s.contains(X),
                                         p.contains(X) and X != P)
                        self.assertEqual(z.contains(X), p.contains(Xp))
                        self.assertEqual(b.contains(X), s.contains(Xm))
                        self.assertEqual(zs.contains(X),
                                         z.contains(X) and X != below)
                        self.assertEqual(bs.contains(X),
                                         b.contains(X) or X == above)
                    t = page_tuple_S(P, k)
                    for X in grid:
                        chain = [d.contains(X) for d in t]
                        self.assertEqual(chain, sorted(chain))


class DisplayGenerators(unittest.TestCase):
    def runTest(self):
        T = LexDownSet(2, (3, 2))
        box = list(itertools.product(range(10), repeat=2))
        inside = [X for X in box if T.contains(X)]
        maximal = sorted(X for X in inside
                         if not any(Y != X and Y[0] >= X[0] and Y[1] >= X[1]
                                    for Y in inside))
        self.assertEqual(T.display_generators(9), maximal)
        self.assertEqual(maximal, [(0, 4), (1, 3), (3, 2), (4, 1), (5, 0)])
        self.assertEqual(T.render(), "((0 4) (1 3) (3 2) (4 1) (5 0))")
