# -*- coding: utf-8 -*-
"""
Chain complexes over Z with lazily evaluated differentials.

A chain complex is given by a differential defined on generators and,
optionally, a finite basis in every degree. Complexes without a basis
(locally effective complexes) can still be used as a source of values, but
their homology cannot be computed.

*Example*. The complex Z --2--> Z concentrated in degrees 1 and 0.

.. code-block:: python

    from spsys.chain import matrix_complex, homology
    C = matrix_complex({1: [[2]]})
    print(homology(C, 0).divisors)  # [2]

"""
import functools
import logging
from collections import namedtuple

import numpy as np
from sympy import igcd

from spsys.exactlinalg import (BasisDivisors, as_array, integer_kernel,
                               normalize_divisors, subquotient)
from spsys.utils import DegreeError, DimensionError, EffectivenessError

logger = logging.getLogger(__name__)


class Combination(object):
    """A finite Z-linear combination of generators of one degree.

    Zero coefficients are never stored. Combinations are treated as
    immutable values.

    Parameters
    ----------
    degree : int
    terms : (OPTIONAL) dict or iterable of (generator, coefficient) pairs
    """

    __slots__ = ('degree', 'terms')

    def __init__(self, degree, terms=None):
        self.degree = degree
        if terms is None:
            self.terms = {}
        elif isinstance(terms, dict):
            self.terms = dict((g, c) for g, c in terms.items() if c != 0)
        else:
            acc = {}
            for g, c in terms:
                acc[g] = acc.get(g, 0) + c
            self.terms = dict((g, c) for g, c in acc.items() if c != 0)

    @classmethod
    def zero(cls, degree):
        return cls(degree)

    @classmethod
    def single(cls, degree, gnrt, coef=1):
        return cls(degree, {gnrt: coef})

    def is_zero(self):
        return not self.terms

    def items(self):
        return self.terms.items()

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda t: repr(t[0])))

    def __len__(self):
        return len(self.terms)

    def coefficient(self, gnrt):
        return self.terms.get(gnrt, 0)

    def _check(self, other, op):
        if self.degree != other.degree:
            raise DegreeError("Combination.%s(): degrees %d and %d"
                              % (op, self.degree, other.degree))

    def __add__(self, other):
        self._check(other, '__add__')
        terms = dict(self.terms)
        for g, c in other.terms.items():
            v = terms.get(g, 0) + c
            if v:
                terms[g] = v
            else:
                terms.pop(g, None)
        out = Combination(self.degree)
        out.terms = terms
        return out

    def __neg__(self):
        out = Combination(self.degree)
        out.terms = dict((g, -c) for g, c in self.terms.items())
        return out

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        if k == 0:
            return Combination(self.degree)
        out = Combination(self.degree)
        out.terms = dict((g, k * c) for g, c in self.terms.items())
        return out

    def __eq__(self, other):
        return (isinstance(other, Combination) and self.degree == other.degree
                and self.terms == other.terms)

    def __ne__(self, other):
        return not self.__eq__(other)

    __hash__ = None

    def __repr__(self):
        body = ", ".join("%d*%r" % (c, g) for g, c in self)
        return "<%d: %s>" % (self.degree, body)


def cmbn_add(a, b):
    """Sum of two combinations of the same degree."""
    return a + b


def cmbn_scale(k, a):
    return k * a


def cmbn_sum(degree, cmbns):
    """Sum of an iterable of combinations, all of the given degree."""
    terms = {}
    for c in cmbns:
        if c.degree != degree:
            raise DegreeError("cmbn_sum(): combination of degree %d in a sum "
                              "of degree %d" % (c.degree, degree))
        for g, k in c.terms.items():
            terms[g] = terms.get(g, 0) + k
    return Combination(degree, terms)


class ChainComplex(object):
    """A chain complex of free Z-modules.

    Parameters
    ----------
    differential : callable
        ``differential(degree, gnrt)`` returns the Combination of degree
        ``degree - 1`` which is the differential of the generator.
    basis : (OPTIONAL) callable
        ``basis(degree)`` returns the list of generators in that degree, or
        None if the degree is not effective. Negative degrees are empty.
    label : (OPTIONAL) str

    Notes
    -----
    Differentials and bases are memoised per generator with
    :func:`functools.lru_cache`, which is safe under concurrent use.
    """

    def __init__(self, differential, basis=None, label=''):
        self.label = label
        self._differential = differential
        self._dffr = functools.lru_cache(maxsize=None)(differential)
        self._basis_fn = basis
        self._basis = (functools.lru_cache(maxsize=None)(basis)
                       if basis is not None else None)

    @property
    def has_basis(self):
        return self._basis is not None

    def dffr(self, degree, gnrt):
        """Differential of a single generator."""
        return self._dffr(degree, gnrt)

    def d(self, cmbn):
        """Differential of a combination."""
        terms = {}
        for g, c in cmbn.items():
            for h, k in self._dffr(cmbn.degree, g).items():
                terms[h] = terms.get(h, 0) + c * k
        return Combination(cmbn.degree - 1, terms)

    def basis(self, degree):
        """The list of generators of the given degree.

        Raises
        ------
        EffectivenessError
            If the complex is only locally effective.
        """
        if degree < 0:
            return []
        if self._basis is None:
            raise EffectivenessError("ChainComplex.basis(): %s has no basis"
                                     % (self.label or 'complex'))
        result = self._basis(degree)
        if result is None:
            raise EffectivenessError("ChainComplex.basis(): %s has no basis "
                                     "in degree %d"
                                     % (self.label or 'complex', degree))
        return result

    def __repr__(self):
        return "<ChainComplex %s>" % self.label


class Morphism(object):
    """A graded Z-linear map between chain complexes.

    Parameters
    ----------
    source, target : ChainComplex
    degree : int
    action : callable
        ``action(degree, gnrt)`` returns a Combination of degree
        ``degree + self.degree``.
    label : (OPTIONAL) str
    cache : (OPTIONAL, default=True) bool
        Memoise the action per generator.
    """

    def __init__(self, source, target, degree, action, label='', cache=True):
        self.source = source
        self.target = target
        self.degree = degree
        self.label = label
        self.action = action
        self._action = (functools.lru_cache(maxsize=None)(action) if cache
                        else action)

    def on_gnrt(self, degree, gnrt):
        return self._action(degree, gnrt)

    def __call__(self, cmbn):
        out = cmbn.degree + self.degree
        terms = {}
        for g, c in cmbn.items():
            value = self._action(cmbn.degree, g)
            if value.degree != out:
                raise DegreeError("Morphism %s: image of degree %d, expected "
                                  "%d" % (self.label, value.degree, out))
            for h, k in value.items():
                terms[h] = terms.get(h, 0) + c * k
        return Combination(out, terms)

    def __repr__(self):
        return "<Morphism %s of degree %d>" % (self.label, self.degree)


def apply(m, cmbn):
    """Apply a morphism to a combination."""
    return m(cmbn)


def identity_morphism(C):
    return Morphism(C, C, 0, lambda n, g: Combination.single(n, g),
                    label='id', cache=False)


def zero_morphism(source, target, degree):
    return Morphism(source, target, degree,
                    lambda n, g: Combination.zero(n + degree),
                    label='0', cache=False)


def compose_morphisms(f, g, label=''):
    """The composite f∘g (g applied first)."""
    return Morphism(g.source, f.target, f.degree + g.degree,
                    lambda n, x: f(g.on_gnrt(n, x)),
                    label=label or '%s.%s' % (f.label, g.label))


def add_morphisms(f, g, sign=1, label=''):
    """f + sign * g for morphisms of the same degree."""
    if f.degree != g.degree:
        raise DegreeError("add_morphisms(): degrees %d and %d"
                          % (f.degree, g.degree))
    if sign == 1:
        action = lambda n, x: f.on_gnrt(n, x) + g.on_gnrt(n, x)
    else:
        action = lambda n, x: f.on_gnrt(n, x) + sign * g.on_gnrt(n, x)
    return Morphism(f.source, f.target, f.degree, action,
                    label=label or '%s+%s' % (f.label, g.label))


def differential_morphism(C):
    return Morphism(C, C, -1, C.dffr, label='d', cache=False)


#: Generator of a tensor product: g1 (of degree1) ⊗ g2 (of degree2).
Tnpr = namedtuple('Tnpr', ['degree1', 'gnrt1', 'degree2', 'gnrt2'])


def tensor_product_cmbn(a, b, sign=1):
    """The combination sign * (a ⊗ b)."""
    terms = {}
    for g, c in a.items():
        for h, k in b.items():
            terms[Tnpr(a.degree, g, b.degree, h)] = sign * c * k
    out = Combination(a.degree + b.degree)
    out.terms = terms
    return out


def tensor_complex(C, D, label=''):
    """The tensor product C ⊗ D with the Koszul sign
    ``d(x ⊗ y) = dx ⊗ y + (-1)^|x| x ⊗ dy``.

    The product has a basis exactly when both factors have one.
    """
    def differential(n, t):
        dx = C.dffr(t.degree1, t.gnrt1)
        dy = D.dffr(t.degree2, t.gnrt2)
        left = tensor_product_cmbn(dx, Combination.single(t.degree2, t.gnrt2))
        sign = -1 if t.degree1 % 2 else 1
        right = tensor_product_cmbn(Combination.single(t.degree1, t.gnrt1), dy,
                                    sign)
        return left + right

    basis = None
    if C.has_basis and D.has_basis:
        def basis(n):
            return [Tnpr(p, g, n - p, h)
                    for p in range(n + 1)
                    for g in C.basis(p)
                    for h in D.basis(n - p)]

    return ChainComplex(differential, basis,
                        label=label or '(%s)x(%s)' % (C.label, D.label))


def tensor_morphisms(f, g, source, target):
    """The tensor product f ⊗ g with Koszul sign
    ``(f ⊗ g)(x ⊗ y) = (-1)^(|g| |x|) f(x) ⊗ g(y)``."""
    def action(n, t):
        sign = -1 if (g.degree * t.degree1) % 2 else 1
        return tensor_product_cmbn(f.on_gnrt(t.degree1, t.gnrt1),
                                   g.on_gnrt(t.degree2, t.gnrt2), sign)
    return Morphism(source, target, f.degree + g.degree, action,
                    label='%s*%s' % (f.label, g.label))


def matrix_complex(matrices, label=''):
    """A finite complex from its differential matrices.

    Parameters
    ----------
    matrices : dict
        ``matrices[n]`` is the matrix of d_n: C_n -> C_{n-1} with rows
        indexed by the basis of C_{n-1}. Generators are ``(n, i)``.
        Degrees whose rank cannot be read from a matrix have rank 0 unless
        given in ``ranks``.
    """
    mats = dict((n, as_array(M)) for n, M in matrices.items())
    ranks = {}
    for n, M in mats.items():
        for deg, r in ((n, M.shape[1]), (n - 1, M.shape[0])):
            if ranks.setdefault(deg, r) != r:
                raise DimensionError("matrix_complex(): inconsistent rank in "
                                     "degree %d" % deg)

    def differential(n, g):
        M = mats.get(n)
        if M is None or n - 1 < 0:
            return Combination.zero(n - 1)
        col = M[:, g[1]]
        return Combination(n - 1, dict(((n - 1, i), int(c))
                                       for i, c in enumerate(col) if c))

    def basis(n):
        return [(n, i) for i in range(ranks.get(n, 0))]

    return ChainComplex(differential, basis, label=label or 'matrix')


def differential_matrix(C, n, columns=None):
    """Matrix of d_n: C_n -> C_{n-1} in the bases of C.

    Parameters
    ----------
    columns : (OPTIONAL) list
        Generators of degree n to use as columns instead of the whole basis.
    """
    rows = C.basis(n - 1)
    cols = C.basis(n) if columns is None else columns
    index = dict((g, i) for i, g in enumerate(rows))
    M = np.zeros((len(rows), len(cols)), dtype=object)
    for j, g in enumerate(cols):
        for h, c in C.dffr(n, g).items():
            try:
                M[index[h], j] = c
            except KeyError:
                raise EffectivenessError("differential_matrix(): %r is not in "
                                         "the basis of degree %d" % (h, n - 1))
    return M


def cmbn_to_vector(cmbn, index):
    """Coordinates of a combination in a basis given by a position index."""
    v = [0] * len(index)
    for g, c in cmbn.items():
        try:
            v[index[g]] = c
        except KeyError:
            raise EffectivenessError("cmbn_to_vector(): %r is not a basis "
                                     "element" % (g,))
    return v


def vector_to_cmbn(degree, vector, basis):
    return Combination(degree, dict((basis[i], int(c))
                                    for i, c in enumerate(vector) if c))


def homology(C, n):
    """The homology group H_n(C) with generators.

    Returns
    -------
    BasisDivisors
        Generators are Combinations of degree n.
    """
    if n < 0:
        return BasisDivisors([], [])
    Cn = C.basis(n)
    kernel = integer_kernel(differential_matrix(C, n)) if Cn else []
    image = [[int(x) for x in col]
             for col in differential_matrix(C, n + 1).T]
    sq = subquotient(kernel, image, dim=len(Cn))
    gens = [vector_to_cmbn(n, v, Cn) for v in sq.generators]
    logger.debug("homology(): H_%d(%s) = %s", n, C.label, sq)
    return BasisDivisors(gens, sq.divisors)


def homology_with_coefficients(C, n, coefficients):
    """H_n(C; M) for M = ⊕ Z/m_i given by its divisors (0 for Z).

    Uses the universal coefficient theorem
    ``H_n(C; M) = H_n(C) ⊗ M ⊕ Tor(H_{n-1}(C), M)``.

    Returns
    -------
    BasisDivisors
        Abstract, without generators.
    """
    orders = []
    for a in homology(C, n).divisors:
        orders.extend(igcd(a, m) for m in coefficients)
    for a in homology(C, n - 1).divisors:
        if a == 0:
            continue
        orders.extend(igcd(a, m) for m in coefficients if m != 0)
    return BasisDivisors.abstract(normalize_divisors(
        [o for o in orders if o != 1]))
