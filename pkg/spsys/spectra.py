# -*- coding: utf-8 -*-
"""
Terms and differentials of spectral systems of generalized filtered
complexes.

A generalized filtered complex assigns a multidegree X_σ in N^m to every
generator σ; for a downset p of Z^m the subcomplex F_p is spanned by the
generators with X_σ in p. Given downsets z ⊆ s ⊆ p ⊆ b the term

    S[z, s, p, b]_n = (F_p C_n ∩ d^{-1}(F_z C_{n-1})) / (d(F_b C_{n+1}) + F_s C_n)

is computed exactly with Smith normal forms.

*Example*. The 2-page term S*_2((0, 0, 2); 3) of a filtered complex FC.

.. code-block:: python

    from spsys.spectra import two_page_term
    t = two_page_term(FC, (0, 0, 2), 2)
    print(t.render())

"""
import functools
import itertools
import logging

import numpy as np

from spsys.chain import cmbn_to_vector, differential_matrix, vector_to_cmbn
from spsys.exactlinalg import (BasisDivisors, IntMatrix, columns_to_matrix,
                               coordinates_in_subquotient, integer_kernel,
                               matrix_columns, subquotient)
from spsys.homotopy import LawReport
from spsys.poset import (EmptyDownSet, FullDownSet, TermTuple, downset_eq,
                         downset_leq, final_tuple, lex_member, page_tuple_S,
                         page_tuple_Sstar, unit_vector)
from spsys.utils import FiltrationError, stack

logger = logging.getLogger(__name__)


class FiltrationAssignment(object):
    """Multidegrees of generators.

    Parameters
    ----------
    m : int
        Number of coordinates.
    multidegree : callable
        ``multidegree(degree, gnrt)`` returns a tuple of m nonnegative
        integers.
    support : (OPTIONAL) callable
        ``support(degree, X)`` lists the generators of the given degree and
        multidegree X, for every X with |X| <= degree. Filtered bases are
        then assembled without enumerating the whole basis.
    """

    def __init__(self, m, multidegree, support=None):
        self.m = m
        self._multidegree = functools.lru_cache(maxsize=None)(multidegree)
        self.support = support

    def __call__(self, degree, gnrt):
        return self._multidegree(degree, gnrt)


class GenFilteredComplex(object):
    """A chain complex with a generalized filtration over downsets of Z^m.

    Parameters
    ----------
    complex : ChainComplex
        Needs a basis in the degrees where terms are computed.
    filtration : FiltrationAssignment
    """

    def __init__(self, complex, filtration, label=''):
        self.complex = complex
        self.filtration = filtration
        self.m = filtration.m
        self.label = label or complex.label
        self._matrix = functools.lru_cache(maxsize=None)(self._build_matrix)
        self._checked = set()

    def basis(self, n):
        return self.complex.basis(n)

    def multidegree(self, n, gnrt):
        return self.filtration(n, gnrt)

    def _build_matrix(self, n):
        return differential_matrix(self.complex, n)

    def matrix(self, n):
        """Matrix of d_n in the bases of degrees n and n-1 (cached)."""
        return self._matrix(n)

    def indices(self, p, n):
        """Positions in the basis of degree n of the generators of F_p."""
        if isinstance(p, EmptyDownSet) or n < 0:
            return []
        basis = self.basis(n)
        if isinstance(p, FullDownSet):
            return list(range(len(basis)))
        return [i for i, g in enumerate(basis)
                if p.contains(self.multidegree(n, g))]

    def filtered_basis(self, p, n):
        """Generators of degree n of F_p."""
        if isinstance(p, EmptyDownSet) or n < 0:
            return []
        support = self.filtration.support
        if support is None or isinstance(p, FullDownSet):
            basis = self.basis(n)
            return [basis[i] for i in self.indices(p, n)]
        return [g for X in _multidegrees(self.m, n) if p.contains(X)
                for g in support(n, X)]

    def require_compatible(self, n, gnrts=None):
        """Raise unless d maps each generator of degree n into T^m of its
        multidegree. Generators default to the whole basis and are checked
        once.

        Raises
        ------
        FiltrationError
            Naming the first generator whose boundary leaves T^m of its
            multidegree.
        """
        if n < 1:
            return
        for g in self.basis(n) if gnrts is None else gnrts:
            if (n, g) in self._checked:
                continue
            X = self.multidegree(n, g)
            if min(X) < 0:
                raise FiltrationError(
                    "GenFilteredComplex.require_compatible(): negative "
                    "multidegree %r of %r" % (X, g))
            for h, _ in self.complex.dffr(n, g).items():
                Y = self.multidegree(n - 1, h)
                if not _compatible(self.m, X, Y):
                    raise FiltrationError(
                        "GenFilteredComplex.require_compatible(): d of %r "
                        "at %r has the term %r at %r in degree %d"
                        % (g, X, h, Y, n))
            self._checked.add((n, g))


def _multidegrees(m, n):
    """X in N^m with |X| <= n."""
    return [X for X in itertools.product(range(n + 1), repeat=m)
            if sum(X) <= n]


def filtration_basis(FC, p, n):
    """Generators of degree n of F_p."""
    return FC.filtered_basis(p, n)


def _compatible(m, X, Y):
    return min(X) >= 0 and min(Y) >= 0 and lex_member(m, X, Y)


def check_filtration(FC, degree_bound):
    """Sample d-compatibility: each term of dσ has its multidegree in
    T^m of the multidegree of σ.

    Returns
    -------
    LawReport
    """
    report = LawReport()
    m = FC.m
    for n in range(1, degree_bound + 1):
        for g in FC.basis(n):
            X = FC.multidegree(n, g)
            holds = all(_compatible(m, X, FC.multidegree(n - 1, h))
                        for h, _ in FC.complex.dffr(n, g).items())
            report.record('d-compatible', n, g, holds and min(X) >= 0)
    logger.debug("check_filtration(%s): %s", FC.label, report)
    return report


def check_downset(FC, p, degrees):
    """Raise unless d maps F_p into F_p on the given degrees.

    Raises
    ------
    FiltrationError
        Naming the first generator whose differential leaves F_p.
    """
    if isinstance(p, (EmptyDownSet, FullDownSet)):
        return
    for n in degrees:
        if n < 1:
            continue
        for g in filtration_basis(FC, p, n):
            for h, _ in FC.complex.dffr(n, g).items():
                if not p.contains(FC.multidegree(n - 1, h)):
                    raise FiltrationError(
                        "check_downset(): d of %r leaves F_%r in degree %d"
                        % (g, p, n))


class SpectralTerm(object):
    """A computed term S[z, s, p, b]_n.

    Attributes
    ----------
    tuple : TermTuple
    n : int
    group : BasisDivisors
        Generators are Combinations of degree n.
    presentation : Subquotient
        The lattice data used for coordinates of classes.
    """

    def __init__(self, tuple, n, group, presentation, basis):
        self.tuple = tuple
        self.n = n
        self.group = group
        self.presentation = presentation
        self.basis = basis

    @property
    def divisors(self):
        return self.group.divisors

    def header(self, bound=None):
        return "Generalized spectral sequence %s_{%d}" % (
            self.tuple.render(bound), self.n)

    def render(self, bound=None):
        return "%s\n%s" % (self.header(bound), self.group.render())

    def __repr__(self):
        return "<SpectralTerm %r_%d: %s>" % (self.tuple, self.n, self.group)


def _member(p, X):
    if isinstance(p, EmptyDownSet):
        return False
    return isinstance(p, FullDownSet) or p.contains(X)


def term(FC, t, n):
    """The term S[z, s, p, b]_n of FC.

    Lattices are taken in the coordinates of the generators they involve:
    F_p C_n, F_s C_n and the boundaries of F_b C_{n+1}.

    Parameters
    ----------
    FC : GenFilteredComplex
    t : TermTuple
    n : int

    Returns
    -------
    SpectralTerm

    Raises
    ------
    FiltrationError
        If d moves a generator of F_p C_n or F_b C_{n+1} out of T^m of its
        multidegree.
    """
    if t.m != FC.m:
        raise FiltrationError("term(): tuple over Z^%d for a filtration over "
                              "Z^%d" % (t.m, FC.m))
    z, s, p, b = t
    gens_p = FC.filtered_basis(p, n)
    gens_b = FC.filtered_basis(b, n + 1)
    FC.require_compatible(n, gens_p)
    FC.require_compatible(n + 1, gens_b)
    boundaries = [FC.complex.dffr(n + 1, g) for g in gens_b]

    basis, index = [], {}

    def position(g):
        if g not in index:
            index[g] = len(basis)
            basis.append(g)
        return index[g]

    den_axes = [position(g) for g in FC.filtered_basis(s, n)]
    cols = [position(g) for g in gens_p]
    for c in boundaries:
        for h, _ in c.items():
            position(h)
    dim = len(basis)

    numerator = []
    if gens_p:
        images = [FC.complex.dffr(n, g) for g in gens_p]
        rows = {}
        for c in images:
            for h, _ in c.items():
                if h not in rows and not _member(z, FC.multidegree(n - 1, h)):
                    rows[h] = len(rows)
        D = np.zeros((len(rows), len(gens_p)), dtype=object)
        for j, c in enumerate(images):
            for h, x in c.items():
                if h in rows:
                    D[rows[h], j] = x
        for k in integer_kernel(D):
            v = [0] * dim
            for i, x in zip(cols, k):
                v[i] = x
            numerator.append(v)
    denominator = [cmbn_to_vector(c, index) for c in boundaries]
    sq = subquotient(numerator, denominator, dim=dim, den_axes=den_axes)
    group = BasisDivisors([vector_to_cmbn(n, v, basis)
                           for v in sq.generators], sq.divisors)
    logger.debug("term(): %r in degree %d: %s", t, n, group)
    return SpectralTerm(t, n, group, sq, basis)


def _check_legal(source, target, bound):
    if not downset_leq(source.z, target.p, bound):
        raise FiltrationError("term_differential(): z2 is not contained in p1")
    if not downset_leq(source.s, target.b, bound):
        raise FiltrationError("term_differential(): s2 is not contained in b1")


def _class_image(FC, src, tgt, coords):
    """Target coordinates of d applied to the class with the given source
    coordinates."""
    gens = src.presentation.generators
    if len(coords) != len(gens):
        raise FiltrationError("term_differential(): %d coordinates for a "
                              "term with %d generators"
                              % (len(coords), len(gens)))
    chain = [0] * len(src.basis)
    for c, v in zip(coords, gens):
        for i, x in enumerate(v):
            chain[i] += c * x
    image = FC.complex.d(vector_to_cmbn(src.n, chain, src.basis))
    if image.is_zero():
        return [0] * len(tgt.divisors)
    index = dict((g, i) for i, g in enumerate(tgt.basis))
    if any(g not in index for g, _ in image.items()):
        raise FiltrationError("term_differential(): image is not a member of "
                              "the target term")
    result = coordinates_in_subquotient(cmbn_to_vector(image, index),
                                        tgt.presentation)
    if result is None:
        raise FiltrationError("term_differential(): image is not a member of "
                              "the target term")
    return result


def term_differential(FC, source, target, class_coords, n):
    """Coordinates in the target term of the differential of a class.

    Parameters
    ----------
    source : TermTuple
        Tuple of the source term, in degree n.
    target : TermTuple
        Tuple of the target term, in degree n - 1.
    class_coords : list of int
        Coordinates of the class in the source term.

    Raises
    ------
    FiltrationError
        If z2 ⊄ p1 or s2 ⊄ b1.
    """
    _check_legal(source, target, source.bound)
    src, tgt = term(FC, source, n), term(FC, target, n - 1)
    return _class_image(FC, src, tgt, class_coords)


def differential_matrix_between_terms(FC, source, target, n):
    """Matrix of the induced differential S_n[source] -> S_{n-1}[target].

    Returns
    -------
    (IntMatrix, SpectralTerm, SpectralTerm)
        Columns are the images of the source generators.
    """
    _check_legal(source, target, source.bound)
    src, tgt = term(FC, source, n), term(FC, target, n - 1)
    cols = [_class_image(FC, src, tgt, [1 if i == j else 0
                                        for i in range(len(src.divisors))])
            for j in range(len(src.divisors))]
    M = IntMatrix(columns_to_matrix(cols, len(tgt.divisors)))
    return M, src, tgt


def kernel_and_cokernel_terms(FC, source, target, n):
    """Kernel S[s1, s2, p2, b2]_n and cokernel S[z1, s1, p1, p2]_{n-1} of
    the differential S_n[source] -> S_{n-1}[target].

    Raises
    ------
    FiltrationError
        Unless z2 = p1 and s2 = b1.
    """
    bound = source.bound
    if not (downset_eq(source.z, target.p, bound)
            and downset_eq(source.s, target.b, bound)):
        raise FiltrationError("kernel_and_cokernel_terms(): requires z2 = p1 "
                              "and s2 = b1")
    kernel = TermTuple(target.s, source.s, source.p, source.b, bound)
    cokernel = TermTuple(target.z, target.s, target.p, source.p, bound)
    return term(FC, kernel, n), term(FC, cokernel, n - 1)


def sequence_homology(d_in, d_out, divisors_mid, divisors_out):
    """Homology ker d_out / im d_in at the middle of a sequence of finitely
    generated abelian groups given by their divisors.

    Parameters
    ----------
    d_in, d_out : IntMatrix
        Matrices in generator coordinates.
    divisors_mid, divisors_out : list of int

    Returns
    -------
    BasisDivisors
        Abstract.
    """
    r = len(divisors_mid)
    if r == 0:
        return BasisDivisors.abstract([])
    D = d_out.A if isinstance(d_out, IntMatrix) else np.asarray(d_out)
    t = len(divisors_out)
    if t:
        T = np.zeros((t, t), dtype=object)
        for i, a in enumerate(divisors_out):
            T[i, i] = a
        kernel = [k[:r] for k in integer_kernel(stack(((D, -T),)))]
    else:
        kernel = [[1 if i == j else 0 for i in range(r)] for j in range(r)]
    A = d_in.A if isinstance(d_in, IntMatrix) else np.asarray(d_in)
    image = matrix_columns(A) if A.size else []
    relations = [[a if i == j else 0 for i in range(r)]
                 for j, a in enumerate(divisors_mid) if a]
    sq = subquotient(kernel, image + relations, dim=r)
    return BasisDivisors.abstract(sq.divisors)


class SequenceReport(object):
    """Outcome of a homology-of-sequence comparison."""

    def __init__(self, computed, expected):
        self.computed = computed
        self.expected = expected

    @property
    def ok(self):
        return self.computed.same_group(self.expected)

    def __str__(self):
        return "ker/im = %s, term = %s" % (self.computed, self.expected)


def homology_of_sequence_check(FC, t3, t2, t1, n):
    """Compare the homology of S_{n+1}[t3] -> S_n[t2] -> S_{n-1}[t1] with
    the term S[s1, s2, p2, p3]_n.

    Raises
    ------
    FiltrationError
        Unless z3 = p2, s3 = b2, z2 = p1 and s2 = b1.
    """
    bound = t2.bound
    if not (downset_eq(t3.z, t2.p, bound) and downset_eq(t3.s, t2.b, bound)
            and downset_eq(t2.z, t1.p, bound)
            and downset_eq(t2.s, t1.b, bound)):
        raise FiltrationError("homology_of_sequence_check(): indices do not "
                              "form a sequence")
    d_in, _, mid = differential_matrix_between_terms(FC, t3, t2, n + 1)
    d_out, _, out = differential_matrix_between_terms(FC, t2, t1, n)
    computed = sequence_homology(d_in, d_out, mid.divisors, out.divisors)
    expected = term(FC, TermTuple(t1.s, t2.s, t2.p, t3.p, bound), n).group
    report = SequenceReport(computed, expected)
    logger.debug("homology_of_sequence_check(): %s", report)
    return report


def final_group(FC, n):
    """S[Empty, Empty, Full, Full]_n, that is H_n of the complex."""
    return term(FC, final_tuple(FC.m), n).group


def relative_homology(FC, s, p, n):
    """S[s, s, p, p]_n = H_n(F_p / F_s)."""
    return term(FC, TermTuple(s, s, p, p), n)


def one_page_term(FC, P, n):
    """The 1-page term S_n(P; 1)."""
    return term(FC, page_tuple_S(P, 1), n)


def two_page_term(FC, P, n):
    """The 2-page term S*_n(P; m)."""
    return term(FC, page_tuple_Sstar(P, FC.m), n)


def _minus(P, k):
    e = unit_vector(len(P), k)
    return tuple(a - b for a, b in zip(P, e))


def _plus(P, k):
    e = unit_vector(len(P), k)
    return tuple(a + b for a, b in zip(P, e))


def page_differential(FC, P, k, n):
    """The differential in direction -e_k, S_n(P; k) -> S_{n-1}(P - e_k; k),
    as an integer matrix in generator coordinates."""
    return differential_matrix_between_terms(
        FC, page_tuple_S(P, k), page_tuple_S(_minus(P, k), k), n)


def secondary_connection_check(FC, P, k, n):
    """Homology of S(P + e_k; k) -> S(P; k) -> S(P - e_k; k) against
    S*(P; k)."""
    return homology_of_sequence_check(
        FC, page_tuple_S(_plus(P, k), k), page_tuple_S(P, k),
        page_tuple_S(_minus(P, k), k), n)


def natural_isomorphism_check(FC, P, k, n):
    """Compare S*_n(P; k) with S_n(P; k + 1) for 1 <= k <= m - 1."""
    if not 1 <= k < FC.m:
        raise FiltrationError("natural_isomorphism_check(): k=%d out of "
                              "range for m=%d" % (k, FC.m))
    return SequenceReport(term(FC, page_tuple_Sstar(P, k), n).group,
                          term(FC, page_tuple_S(P, k + 1), n).group)


__all__ = ['FiltrationAssignment', 'GenFilteredComplex', 'filtration_basis',
           'check_filtration', 'check_downset', 'SpectralTerm', 'term',
           'term_differential',
           'differential_matrix_between_terms', 'kernel_and_cokernel_terms',
           'sequence_homology', 'homology_of_sequence_check', 'final_group',
           'relative_homology', 'one_page_term', 'two_page_term',
           'page_differential', 'secondary_connection_check',
           'natural_isomorphism_check']
