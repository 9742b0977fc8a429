# -*- coding: utf-8 -*-
"""
Simplicial sets, simplicial groups and the Eilenberg-Zilber reductions.

A simplex is an :class:`AbstractSimplex` ``(dim, dgop, gmsm)``: a canonical
degeneracy word applied to a nondegenerate geometric simplex ``gmsm``. The
word ``dgop = (j_1, ..., j_k)`` is strictly decreasing and stands for
η_{j_1} ... η_{j_k}. Internally a degeneracy word is handled as the monotone
surjection it induces on vertices, which makes composing faces and
degeneracies mechanical.

Simplicial groups are given by explicit elements (:class:`SimplicialGroup`);
the classifying space W̄G of a simplicial abelian group is again one, so the
Eilenberg-MacLane spaces K(Z/ℓ, n) = W̄^n(Z/ℓ) are obtained by iteration.

*Example*. The nondegenerate 3-simplices of K(Z/2, 2).

.. code-block:: python

    from spsys.simplicial import eilenberg_maclane
    K = eilenberg_maclane(2, 2)
    print(K.basis(3))

"""
import abc
import functools
import itertools
import logging
from collections import namedtuple

from spsys.chain import (ChainComplex, Combination, Morphism, Tnpr,
                         tensor_complex)
from spsys.homotopy import LawReport, Perturbation, Reduction, bpl
from spsys.utils import DEFAULT_BPL_BUDGET, DimensionError, TwistingError

logger = logging.getLogger(__name__)

#: A simplex: degeneracy word ``dgop`` applied to geometric simplex ``gmsm``.
AbstractSimplex = namedtuple('AbstractSimplex', ['dim', 'dgop', 'gmsm'])


def dgop_to_surjection(dgop, dim):
    """The vertex surjection [dim] -> [dim - len(dgop)] of a canonical
    degeneracy word."""
    repeat = set(dgop)
    s = [0]
    for j in range(dim):
        s.append(s[-1] if j in repeat else s[-1] + 1)
    return s


def surjection_to_dgop(s):
    """Canonical (strictly decreasing) degeneracy word of a surjection."""
    return tuple(j for j in range(len(s) - 2, -1, -1) if s[j] == s[j + 1])


def canonical_dgop(word, base_dim):
    """Canonical form of the degeneracy word η_{w_0} ... η_{w_k} applied to a
    simplex of dimension ``base_dim``.

    Raises
    ------
    DimensionError
        If some η index exceeds the dimension it is applied in.
    """
    s = list(range(base_dim + 1))
    for i in reversed(list(word)):
        if not 0 <= i < len(s):
            raise DimensionError("canonical_dgop(): degeneracy %d on a "
                                 "simplex of dimension %d" % (i, len(s) - 1))
        s = s[:i + 1] + s[i:]
    return surjection_to_dgop(s)


def degeneracy_degree(absm):
    """Dimension of the underlying geometric simplex."""
    return absm.dim - len(absm.dgop)


class SimplicialSet(object, metaclass=abc.ABCMeta):
    """Simplicial set with faces defined on nondegenerate simplices.

    Subclasses implement :meth:`face`; :meth:`basis` is optional (locally
    effective sets have none).
    """

    def __init__(self, label=''):
        self.label = label
        self._face_cache = functools.lru_cache(maxsize=None)(self.face)

    @abc.abstractmethod
    def face(self, i, dim, gmsm):
        """The i-th face of the nondegenerate simplex ``gmsm`` of dimension
        ``dim`` as an AbstractSimplex."""
        raise NotImplementedError("SimplicialSet.face() not implemented!")

    def basis(self, dim):
        """Nondegenerate simplices of dimension dim, or None."""
        return None

    @property
    def base_point(self):
        """The canonical vertex, first in the basis of dimension 0.

        Raises
        ------
        DimensionError
            If the set lists no vertex.
        """
        vertices = self.basis(0)
        if not vertices:
            raise DimensionError("SimplicialSet.base_point: %s lists no "
                                 "vertex" % self.label)
        return AbstractSimplex(0, (), vertices[0])

    def absm_face(self, i, absm):
        """The i-th face of any simplex."""
        n, dgop, gmsm = absm
        if n == 0 or not 0 <= i <= n:
            raise DimensionError("SimplicialSet.absm_face(): face %d of a "
                                 "%d-simplex" % (i, n))
        s = dgop_to_surjection(dgop, n)
        t = s[:i] + s[i + 1:]
        v = s[i]
        if (i > 0 and s[i - 1] == v) or (i < n and s[i + 1] == v):
            return AbstractSimplex(n - 1, surjection_to_dgop(t), gmsm)
        inner = self._face_cache(v, s[-1], gmsm)
        u = dgop_to_surjection(inner.dgop, inner.dim)
        total = [u[x if x < v else x - 1] for x in t]
        return AbstractSimplex(n - 1, surjection_to_dgop(total), inner.gmsm)

    def degeneracy(self, i, absm):
        """η_i of any simplex."""
        n, dgop, gmsm = absm
        if not 0 <= i <= n:
            raise DimensionError("SimplicialSet.degeneracy(): degeneracy %d "
                                 "of a %d-simplex" % (i, n))
        s = dgop_to_surjection(dgop, n)
        return AbstractSimplex(n + 1, surjection_to_dgop(s[:i + 1] + s[i:]),
                               gmsm)

    def faces(self, indices, absm):
        """Apply faces ∂_{indices[0]} first, then ∂_{indices[1]}, ..."""
        for i in indices:
            absm = self.absm_face(i, absm)
        return absm

    def degeneracies(self, indices, absm):
        """Apply degeneracies η_{indices[0]} first, then the next ones."""
        for i in indices:
            absm = self.degeneracy(i, absm)
        return absm

    def simplices(self, dim):
        """All simplices of dimension dim, degenerate ones included."""
        out = []
        for p in range(dim + 1):
            for R in itertools.combinations(range(dim), dim - p):
                dgop = tuple(sorted(R, reverse=True))
                out.extend(AbstractSimplex(dim, dgop, g)
                           for g in self.basis(p))
        return out

    def __repr__(self):
        return "<%s %s>" % (self.__class__.__name__, self.label)


class Sphere(SimplicialSet):
    """The simplicial sphere S^n with one vertex ``'v'`` and one
    nondegenerate n-simplex ``'s'``."""

    def __init__(self, n):
        if n < 1:
            raise DimensionError("Sphere(): dimension must be positive")
        self.n = n
        super(Sphere, self).__init__(label='S^%d' % n)

    def face(self, i, dim, gmsm):
        return AbstractSimplex(dim - 1, tuple(range(dim - 2, -1, -1)), 'v')

    def basis(self, dim):
        if dim == 0:
            return ['v']
        if dim == self.n:
            return ['s']
        return []


def sphere(n):
    return Sphere(n)


class SimplicialGroup(SimplicialSet):
    """Simplicial abelian group with explicit elements.

    Subclasses provide the explicit model: :meth:`elements`, :meth:`efface`,
    :meth:`edegen`, :meth:`mul`, :meth:`inv` and :meth:`unit`. Nondegenerate
    simplices, normal forms and faces of geometric simplices are derived.
    """

    def __init__(self, label=''):
        super(SimplicialGroup, self).__init__(label)
        self.normalize = functools.lru_cache(maxsize=None)(self._normalize)
        self.expand = functools.lru_cache(maxsize=None)(self._expand)
        self._basis = functools.lru_cache(maxsize=None)(self._find_basis)

    @abc.abstractmethod
    def elements(self, dim):
        raise NotImplementedError("SimplicialGroup.elements() not "
                                  "implemented!")

    @abc.abstractmethod
    def efface(self, i, dim, x):
        raise NotImplementedError("SimplicialGroup.efface() not implemented!")

    @abc.abstractmethod
    def edegen(self, i, dim, x):
        raise NotImplementedError("SimplicialGroup.edegen() not implemented!")

    @abc.abstractmethod
    def mul(self, dim, x, y):
        raise NotImplementedError("SimplicialGroup.mul() not implemented!")

    @abc.abstractmethod
    def inv(self, dim, x):
        raise NotImplementedError("SimplicialGroup.inv() not implemented!")

    @abc.abstractmethod
    def unit(self, dim):
        raise NotImplementedError("SimplicialGroup.unit() not implemented!")

    def _normalize(self, dim, x):
        R = [k for k in range(dim)
             if self.edegen(k, dim - 1, self.efface(k, dim, x)) == x]
        y, n = x, dim
        for k in sorted(R, reverse=True):
            y = self.efface(k, n, y)
            n -= 1
        return AbstractSimplex(dim, tuple(sorted(R, reverse=True)), y)

    def _expand(self, absm):
        n, dgop, y = absm
        cur = n - len(dgop)
        for k in sorted(dgop):
            y = self.edegen(k, cur, y)
            cur += 1
        return y

    def _find_basis(self, dim):
        result = [x for x in self.elements(dim)
                  if not self.normalize(dim, x).dgop]
        logger.debug("%s: %d nondegenerate %d-simplices", self.label,
                     len(result), dim)
        return result

    def face(self, i, dim, gmsm):
        return self.normalize(dim - 1, self.efface(i, dim, gmsm))

    def basis(self, dim):
        return self._basis(dim)

    def absm_mul(self, a, b):
        """Product of two simplices of the same dimension."""
        if a.dim != b.dim:
            raise DimensionError("SimplicialGroup.absm_mul(): dimensions %d "
                                 "and %d" % (a.dim, b.dim))
        return self.normalize(a.dim, self.mul(a.dim, self.expand(a),
                                              self.expand(b)))


class DiscreteGroup(SimplicialGroup):
    """The constant simplicial group Z/ℓ."""

    def __init__(self, order):
        if order < 2:
            raise DimensionError("DiscreteGroup(): order must be at least 2")
        self.order = order
        super(DiscreteGroup, self).__init__(label='Z/%d' % order)

    def elements(self, dim):
        return list(range(self.order))

    def efface(self, i, dim, x):
        return x

    def edegen(self, i, dim, x):
        return x

    def mul(self, dim, x, y):
        return (x + y) % self.order

    def inv(self, dim, x):
        return (-x) % self.order

    def unit(self, dim):
        return 0


def discrete_group(order):
    return DiscreteGroup(order)


class ClassifyingSpace(SimplicialGroup):
    """The classifying space W̄G of a simplicial abelian group G.

    An n-simplex is a tuple ``(g_{n-1}, ..., g_0)`` with g_j in G_j. Faces:

      - ∂_n drops g_{n-1},
      - ∂_k for 0 < k < n applies ∂_k to g_{n-1}, ..., g_k and replaces
        the pair (g_k, g_{k-1}) by ∂_k g_k · g_{k-1},
      - ∂_0 applies ∂_0 to g_{n-1}, ..., g_1 and drops g_0.

    Degeneracies: η_n puts the unit first, η_k (k < n) applies η_k to
    g_{n-1}, ..., g_k and inserts the unit of G_k in front of g_{k-1}.
    The universal twisting operator picks g_{n-1}.
    """

    def __init__(self, group, label=''):
        self.group = group
        super(ClassifyingSpace, self).__init__(
            label=label or 'W(%s)' % group.label)

    def elements(self, dim):
        G = self.group
        return list(itertools.product(
            *[G.elements(j) for j in range(dim - 1, -1, -1)]))

    def efface(self, i, n, c):
        G = self.group
        if i == n:
            return c[1:]
        if i == 0:
            return tuple(G.efface(0, n - 1 - idx, c[idx])
                         for idx in range(n - 1))
        out = [G.efface(i, n - 1 - idx, c[idx]) for idx in range(n - 1 - i)]
        out.append(G.mul(i - 1, G.efface(i, i, c[n - 1 - i]), c[n - i]))
        out.extend(c[n - i + 1:])
        return tuple(out)

    def edegen(self, k, n, c):
        G = self.group
        if k == n:
            return (G.unit(n),) + tuple(c)
        out = [G.edegen(k, n - 1 - idx, c[idx]) for idx in range(n - k)]
        out.append(G.unit(k))
        out.extend(c[n - k:])
        return tuple(out)

    def mul(self, n, a, b):
        G = self.group
        return tuple(G.mul(n - 1 - idx, x, y)
                     for idx, (x, y) in enumerate(zip(a, b)))

    def inv(self, n, a):
        G = self.group
        return tuple(G.inv(n - 1 - idx, x) for idx, x in enumerate(a))

    def unit(self, n):
        G = self.group
        return tuple(G.unit(j) for j in range(n - 1, -1, -1))


def classifying_space(G):
    return ClassifyingSpace(G)


@functools.lru_cache(maxsize=None)
def eilenberg_maclane(order, n):
    """K(Z/order, n) as the n-fold classifying space of Z/order.

    K(Z/ℓ, 1) is the bar model: its k-simplices are k-tuples over Z/ℓ and
    exactly those without zero entries are nondegenerate. The same object is
    returned for the same arguments.
    """
    if n < 1:
        raise DimensionError("eilenberg_maclane(): n must be positive")
    inner = (discrete_group(order) if n == 1
             else eilenberg_maclane(order, n - 1))
    return ClassifyingSpace(inner, label='K(Z/%d,%d)' % (order, n))


def is_one_reduced(X):
    """The base point is the only vertex and there is no nondegenerate
    edge."""
    vertices = X.basis(0)
    return bool(vertices) and len(vertices) == 1 and not X.basis(1)


class TwistingOperator(object):
    """A twisting operator τ: B_n -> G_{n-1}.

    Parameters
    ----------
    group : SimplicialGroup
    base : SimplicialSet
    value : callable or None
        ``value(n, absm)`` returns an explicit element of G_{n-1} for a
        simplex of B of dimension n. None gives the trivial operator.
    """

    def __init__(self, group, base, value=None, label=''):
        self.group = group
        self.base = base
        self.is_trivial = value is None
        self._value = value
        self.label = label or ('trivial' if value is None else 'tau')

    def value(self, n, absm):
        """τ of a simplex of dimension n >= 1, as an explicit element."""
        if self.is_trivial:
            return self.group.unit(n - 1)
        return self._value(n, absm)


def trivial_twisting(G, B):
    return TwistingOperator(G, B, None)


def universal_twisting(G, base=None):
    """The universal twisting operator W̄G -> G.

    Parameters
    ----------
    base : (OPTIONAL) ClassifyingSpace
        A classifying space of G; a new one is built if omitted.
    """
    base = base if base is not None else classifying_space(G)
    if not isinstance(base, ClassifyingSpace) or base.group is not G:
        raise TwistingError("universal_twisting(): base is not W of %s"
                            % G.label)
    return TwistingOperator(G, base, lambda n, absm: base.expand(absm)[0],
                            label='universal')


def check_twisting_operator(tau, dim_bound):
    """Check the four twisting identities on all simplices of the base up to
    dimension ``dim_bound``.

    Returns
    -------
    LawReport
    """
    G, B = tau.group, tau.base
    report = LawReport()
    for n in range(dim_bound + 1):
        for b in B.simplices(n):
            if n + 1 <= dim_bound:
                report.record('tau(eta_n b)=e', n, b,
                              tau.value(n + 1, B.degeneracy(n, b))
                              == G.unit(n))
            if n < 1:
                continue
            t = tau.value(n, b)
            for i in range(n - 1):
                report.record('d_i tau=tau d_i', n, b,
                              G.efface(i, n - 1, t)
                              == tau.value(n - 1, B.absm_face(i, b)))
            if n >= 2:
                rhs = G.mul(n - 2,
                            G.inv(n - 2, tau.value(n - 1, B.absm_face(n, b))),
                            tau.value(n - 1, B.absm_face(n - 1, b)))
                report.record('d_(n-1) tau', n, b,
                              G.efface(n - 1, n - 1, t) == rhs)
            if n + 1 <= dim_bound:
                for i in range(n):
                    report.record('eta_i tau=tau eta_i', n, b,
                                  G.edegen(i, n - 1, t)
                                  == tau.value(n + 1, B.degeneracy(i, b)))
    logger.debug("check_twisting_operator(): %s", report)
    return report


#: Dimension up to which constructors sample the twisting identities.
TWIST_CHECK_DIM = 3


def require_twisting(tau, owner, dim_bound=TWIST_CHECK_DIM):
    """Raise unless τ satisfies the twisting identities up to ``dim_bound``.

    Raises
    ------
    TwistingError
        Naming the first violated identity.
    """
    if tau.is_trivial:
        return
    report = check_twisting_operator(tau, dim_bound)
    if not report.ok:
        law, degree, b = report.violations[0]
        raise TwistingError("%s: %s is not a twisting operator, '%s' fails "
                            "in degree %d at %r (%d violations up to "
                            "degree %d)" % (owner, tau.label, law,
                                            degree, b,
                                            len(report.violations),
                                            dim_bound))


def check_simplicial_identities(X, dim_bound):
    """Check the simplicial identities on all simplices up to ``dim_bound``
    (on explicit elements too when X is a simplicial group).

    Returns
    -------
    LawReport
    """
    report = LawReport()
    for n in range(dim_bound + 1):
        for x in X.simplices(n):
            if n >= 2:
                for j in range(n + 1):
                    for i in range(j):
                        report.record('d_i d_j', n, x,
                                      X.faces((j, i), x)
                                      == X.faces((i, j - 1), x))
            for j in range(n + 1):
                y = X.degeneracy(j, x)
                for i in range(n + 2):
                    lhs = X.absm_face(i, y)
                    if i < j:
                        rhs = X.degeneracy(j - 1, X.absm_face(i, x))
                    elif i in (j, j + 1):
                        rhs = x
                    else:
                        rhs = X.degeneracy(j, X.absm_face(i - 1, x))
                    report.record('d_i eta_j', n, x, lhs == rhs)
                for i in range(j + 1):
                    report.record('eta_i eta_j', n, x,
                                  X.degeneracy(i, y)
                                  == X.degeneracy(j + 1, X.degeneracy(i, x)))
    if isinstance(X, SimplicialGroup):
        for n in range(2, dim_bound + 1):
            for x in X.elements(n):
                for j in range(n + 1):
                    for i in range(j):
                        report.record('explicit d_i d_j', n, x,
                                      X.efface(i, n - 1, X.efface(j, n, x))
                                      == X.efface(j - 1, n - 1,
                                                  X.efface(i, n, x)))
    logger.debug("check_simplicial_identities(%s): %s", X.label, report)
    return report


class CartesianProduct(SimplicialSet):
    """The product X × Y. Geometric simplices are pairs of simplices of the
    same dimension without common degeneracy."""

    def __init__(self, X, Y, label=''):
        self.X = X
        self.Y = Y
        super(CartesianProduct, self).__init__(
            label=label or '%sx%s' % (X.label, Y.label))
        self._basis = functools.lru_cache(maxsize=None)(self._find_basis)

    def _last_face(self, n, x, y):
        return self.X.absm_face(n, x), self.Y.absm_face(n, y)

    def face(self, i, dim, gmsm):
        x, y = gmsm
        if i == dim:
            fx, fy = self._last_face(dim, x, y)
        else:
            fx, fy = self.X.absm_face(i, x), self.Y.absm_face(i, y)
        return normalize_pair(dim - 1, fx, fy)

    def _find_basis(self, n):
        BX = dict((p, self.X.basis(p)) for p in range(n + 1))
        BY = dict((q, self.Y.basis(q)) for q in range(n + 1))
        out = []
        for p in range(n + 1):
            for q in range(n + 1):
                if (n - p) + (n - q) > n or not BX[p] or not BY[q]:
                    continue
                for R in itertools.combinations(range(n), n - p):
                    rest = [j for j in range(n) if j not in R]
                    for S in itertools.combinations(rest, n - q):
                        dx = tuple(sorted(R, reverse=True))
                        dy = tuple(sorted(S, reverse=True))
                        for x in BX[p]:
                            for y in BY[q]:
                                out.append((AbstractSimplex(n, dx, x),
                                            AbstractSimplex(n, dy, y)))
        logger.debug("%s: %d nondegenerate %d-simplices", self.label,
                     len(out), n)
        return out

    def basis(self, dim):
        return self._basis(dim)


def normalize_pair(n, x, y):
    """The pair (x, y) of n-simplices as an AbstractSimplex of the product,
    common degeneracies factored out."""
    common = set(x.dgop) & set(y.dgop)
    if not common:
        return AbstractSimplex(n, (), (x, y))
    out = []
    for a in (x, y):
        s = dgop_to_surjection(a.dgop, n)
        for j in sorted(common, reverse=True):
            del s[j + 1]
        out.append(AbstractSimplex(n - len(common), surjection_to_dgop(s),
                                   a.gmsm))
    return AbstractSimplex(n, tuple(sorted(common, reverse=True)),
                           (out[0], out[1]))


def cartesian_product(X, Y):
    return CartesianProduct(X, Y)


class TwistedProduct(CartesianProduct):
    """The twisted Cartesian product G ×_τ B: only the last face changes,
    ``∂_n (g, b) = (τ(b) · ∂_n g, ∂_n b)``."""

    def __init__(self, tau, label=''):
        self.tau = tau
        super(TwistedProduct, self).__init__(
            tau.group, tau.base,
            label=label or '%sx[%s]%s' % (tau.group.label, tau.label,
                                          tau.base.label))

    def _last_face(self, n, x, y):
        G = self.X
        fx = G.absm_face(n, x)
        fy = self.Y.absm_face(n, y)
        if self.tau.is_trivial:
            return fx, fy
        t = self.tau.value(n, y)
        return G.normalize(n - 1, G.mul(n - 1, t, G.expand(fx))), fy


def twisted_product(G, tau, B):
    if tau.group is not G or tau.base is not B:
        raise TwistingError("twisted_product(): operator %s does not go from "
                            "%s to %s" % (tau.label, B.label, G.label))
    require_twisting(tau, "twisted_product()")
    return TwistedProduct(tau)


def chain_complex(X):
    """The normalized chain complex C_*(X); generators are the geometric
    simplices."""
    def differential(n, x):
        terms = {}
        if n > 0:
            absm = AbstractSimplex(n, (), x)
            for i in range(n + 1):
                fc = X.absm_face(i, absm)
                if fc.dgop:
                    continue
                terms[fc.gmsm] = terms.get(fc.gmsm, 0) + (-1) ** i
        return Combination(n - 1, terms)

    basis = None if X.basis(0) is None else X.basis
    C = ChainComplex(differential, basis, label='C(%s)' % X.label)
    C.space = X
    return C


def _shuffles(total, size):
    """Pairs (alpha, beta) of complementary increasing sequences of
    {0, ..., total-1} with len(alpha) = size."""
    universe = range(total)
    for alpha in itertools.combinations(universe, size):
        beta = tuple(j for j in universe if j not in alpha)
        yield alpha, beta


def _shuffle_sign(alpha):
    return -1 if sum(a - i for i, a in enumerate(alpha)) % 2 else 1


def ez_reduction(X, Y, top=None):
    """The Eilenberg-Zilber reduction C_*(X × Y) ⇒ C_*(X) ⊗ C_*(Y).

    ``f`` is Alexander-Whitney, ``g`` Eilenberg-MacLane (shuffles) and ``h``
    the Shih homotopy.

    Parameters
    ----------
    top : (OPTIONAL) ChainComplex
        The normalized complex of the product to use as top complex.
    """
    if top is None:
        top = chain_complex(CartesianProduct(X, Y))
    bottom = tensor_complex(chain_complex(X), chain_complex(Y))

    def aw(n, gmsm):
        x, y = gmsm
        terms = {}
        for i in range(n + 1):
            fx = X.faces(range(n, i, -1), x)
            by = Y.faces([0] * i, y)
            if fx.dgop or by.dgop:
                continue
            terms[Tnpr(i, fx.gmsm, n - i, by.gmsm)] = 1
        return Combination(n, terms)

    def eml(n, t):
        p, q = t.degree1, t.degree2
        terms = {}
        for alpha, beta in _shuffles(p + q, p):
            pair = (AbstractSimplex(n, tuple(reversed(beta)), t.gnrt1),
                    AbstractSimplex(n, tuple(reversed(alpha)), t.gnrt2))
            terms[pair] = _shuffle_sign(alpha)
        return Combination(n, terms)

    def shih(n, gmsm):
        x, y = gmsm
        terms = {}
        for q in range(n):
            fx = X.faces(range(n, n - q, -1), x)
            for p in range(n - q):
                shift = n - p - q
                fy = Y.faces(range(n - q - 1, n - p - q - 1, -1), y)
                for alpha, beta in _shuffles(p + q + 1, p + 1):
                    sx = X.degeneracies(
                        [shift - 1] + [b + shift for b in beta], fx)
                    sy = Y.degeneracies([a + shift for a in alpha], fy)
                    if set(sx.dgop) & set(sy.dgop):
                        continue
                    sign = _shuffle_sign(alpha) * (-1) ** shift
                    key = (sx, sy)
                    terms[key] = terms.get(key, 0) + sign
        return Combination(n + 1, terms)

    f = Morphism(top, bottom, 0, aw, label='AW')
    g = Morphism(bottom, top, 0, eml, label='EML')
    h = Morphism(top, top, 1, shih, label='SH')
    return Reduction(top, bottom, f, g, h, label='EZ')


def twist_perturbation(E, complex=None):
    """The perturbation C_*(G × B) -> C_*(G ×_τ B) of the differential:
    ``δ(g, b) = (-1)^n [(τ(b) · ∂_n g, ∂_n b) - (∂_n g, ∂_n b)]``.

    Parameters
    ----------
    E : TwistedProduct
    complex : (OPTIONAL) ChainComplex
        The untwisted normalized complex the perturbation lives on.
    """
    if complex is None:
        complex = chain_complex(CartesianProduct(E.X, E.Y))
    if E.tau.is_trivial:
        return Perturbation(complex)
    G, B = E.X, E.Y

    def action(n, gmsm):
        terms = {}
        if n == 0:
            return Combination(-1)
        x, y = gmsm
        fx, fy = G.absm_face(n, x), B.absm_face(n, y)
        sign = -1 if n % 2 else 1
        untwisted = normalize_pair(n - 1, fx, fy)
        twisted = normalize_pair(n - 1, *E._last_face(n, x, y))
        if not twisted.dgop:
            terms[twisted.gmsm] = terms.get(twisted.gmsm, 0) + sign
        if not untwisted.dgop:
            terms[untwisted.gmsm] = terms.get(untwisted.gmsm, 0) - sign
        return Combination(n - 1, terms)

    return Perturbation(complex, action, label='twist')


def twisted_ez_reduction(E, budget=DEFAULT_BPL_BUDGET):
    """The twisted Eilenberg-Zilber reduction
    C_*(G ×_τ B) ⇒ C_*(G) ⊗_t C_*(B), obtained by transporting the twist
    perturbation across :func:`ez_reduction` with :func:`bpl`."""
    rho = ez_reduction(E.X, E.Y)
    if E.tau.is_trivial:
        return rho
    delta = twist_perturbation(E, rho.top)
    result = bpl(rho, delta, budget)
    result.label = 'TEZ'
    return result


__all__ = ['AbstractSimplex', 'SimplicialSet', 'SimplicialGroup', 'Sphere',
           'sphere', 'DiscreteGroup', 'discrete_group', 'ClassifyingSpace',
           'classifying_space', 'eilenberg_maclane', 'is_one_reduced',
           'TwistingOperator', 'trivial_twisting', 'universal_twisting',
           'check_twisting_operator', 'require_twisting', 'TWIST_CHECK_DIM',
           'check_simplicial_identities',
           'CartesianProduct', 'cartesian_product', 'TwistedProduct',
           'twisted_product', 'normalize_pair', 'chain_complex',
           'ez_reduction', 'twist_perturbation', 'twisted_ez_reduction',
           'canonical_dgop', 'degeneracy_degree']
