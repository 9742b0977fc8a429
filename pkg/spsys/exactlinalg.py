# -*- coding: utf-8 -*-
"""
Exact integer linear algebra.

Matrices are dense numpy arrays of ``dtype=object`` holding Python integers,
so no computation here can overflow. Everything is derived from
:func:`smith_normal_form`: integer kernels, lattice bases, intersections of
lattices and the presentation of a subquotient of lattices as a direct sum of
cyclic groups.

*Example*. The group Z^2 / <(2, 0), (0, 3)> is cyclic of order 6.

.. code-block:: python

    from spsys.exactlinalg import subquotient
    sq = subquotient([[1, 0], [0, 1]], [[2, 0], [0, 3]])
    print(sq.divisors)  # [6]

"""
import logging

import numpy as np

from spsys.utils import DimensionError, stack

logger = logging.getLogger(__name__)


def _zeros(rows, cols):
    return np.zeros((rows, cols), dtype=object)


def _identity(n):
    I = _zeros(n, n)
    for i in range(n):
        I[i, i] = 1
    return I


def as_array(entries, rows=None, cols=None):
    """Convert nested lists, numpy arrays or :class:`IntMatrix` into a 2-dim
    numpy array of Python integers."""
    if isinstance(entries, IntMatrix):
        return entries.A
    if entries is None or (not isinstance(entries, np.ndarray)
                           and len(entries) == 0):
        return _zeros(rows or 0, cols or 0)
    A = np.asarray(entries)
    if A.ndim != 2:
        raise DimensionError("as_array(): expected a 2-dim array, got %d "
                             "dimensions" % A.ndim)
    out = np.empty(A.shape, dtype=object)
    out.flat[:] = [int(x) for x in A.flat]
    return out


def matmul(A, B):
    """Exact matrix product, also for empty inner dimensions."""
    if A.shape[1] != B.shape[0]:
        raise DimensionError("matmul(): cannot multiply %dx%d by %dx%d"
                             % (A.shape + B.shape))
    if A.shape[1] == 0:
        return _zeros(A.shape[0], B.shape[1])
    return A.dot(B)


def columns_to_matrix(vectors, dim=None):
    """Place a list of integer vectors as the columns of a matrix.

    Parameters
    ----------
    vectors : list of lists of int
    dim : (OPTIONAL) int
        The ambient dimension. Required when ``vectors`` is empty.
    """
    vectors = [list(v) for v in vectors]
    if dim is None:
        if not vectors:
            raise DimensionError("columns_to_matrix(): ambient dimension of "
                                 "an empty family is unknown")
        dim = len(vectors[0])
    M = _zeros(dim, len(vectors))
    for j, v in enumerate(vectors):
        if len(v) != dim:
            raise DimensionError("columns_to_matrix(): vector %d has length "
                                 "%d, expected %d" % (j, len(v), dim))
        for i, x in enumerate(v):
            M[i, j] = int(x)
    return M


def matrix_columns(M):
    """The columns of M as lists of Python integers."""
    return [[int(x) for x in M[:, j]] for j in range(M.shape[1])]


class IntMatrix(object):
    """Dense matrix of arbitrary precision integers.

    Entry access is bounds-checked: negative or too large indices raise
    IndexError instead of wrapping around.

    Parameters
    ----------
    entries : nested lists, numpy array or IntMatrix
        The entries. An empty list together with ``rows`` and ``cols`` gives
        a zero matrix.
    rows, cols : (OPTIONAL) int
    """

    def __init__(self, entries=None, rows=None, cols=None):
        #: The underlying numpy array of dtype object.
        self.A = as_array(entries, rows, cols).copy()
        if rows is not None and self.A.shape[0] != rows:
            if self.A.size == 0:
                self.A = _zeros(rows, cols or 0)
            else:
                raise DimensionError("IntMatrix(): %d rows given, %d "
                                     "expected" % (self.A.shape[0], rows))

    @property
    def rows(self):
        return self.A.shape[0]

    @property
    def cols(self):
        return self.A.shape[1]

    def __getitem__(self, key):
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError("IntMatrix.__getitem__(): entry (%d, %d) out of "
                             "bounds for a %dx%d matrix"
                             % (i, j, self.rows, self.cols))
        return self.A[i, j]

    def __setitem__(self, key, value):
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError("IntMatrix.__setitem__(): entry (%d, %d) out of "
                             "bounds for a %dx%d matrix"
                             % (i, j, self.rows, self.cols))
        self.A[i, j] = int(value)

    def __eq__(self, other):
        other = as_array(other)
        return self.A.shape == other.shape and bool((self.A == other).all())

    def __ne__(self, other):
        return not self.__eq__(other)

    def __mul__(self, other):
        return IntMatrix(matmul(self.A, as_array(other)))

    def tolist(self):
        return [[int(x) for x in row] for row in self.A]

    def __repr__(self):
        return "IntMatrix(%r)" % self.tolist()


class SNFDecomposition(object):
    """Result of :func:`smith_normal_form`: ``U * A * V = S``.

    Attributes
    ----------
    S : numpy array
        Diagonal, nonnegative, each diagonal entry dividing the next one.
    U, V : numpy arrays
        Unimodular. V is None when the right transform was not requested.
    Uinv, Vinv : numpy arrays
        The inverses of U and V.
    rank : int
        Number of nonzero diagonal entries.
    """

    def __init__(self, S, U, V, Uinv, Vinv, rank):
        self.S = S
        self.U = U
        self.V = V
        self.Uinv = Uinv
        self.Vinv = Vinv
        self.rank = rank

    @property
    def diagonal(self):
        """The nonzero diagonal entries d_1 | d_2 | ... | d_rank."""
        return [int(self.S[i, i]) for i in range(self.rank)]


def smith_normal_form(A, right=True):
    """Smith normal form ``U * A * V = S`` of an integer matrix.

    The pivot is always the entry of smallest nonzero absolute value in the
    remaining submatrix, ties broken by (row, col) order, so the result is
    deterministic.

    Parameters
    ----------
    A : IntMatrix, numpy array or nested lists
    right : (OPTIONAL, default=True) bool
        Track the column transform V. Image bases only need U.

    Returns
    -------
    SNFDecomposition
    """
    S = as_array(A).copy()
    m, n = S.shape
    U, Uinv = _identity(m), _identity(m)
    V = _identity(n) if right else None
    Vinv = _identity(n) if right else None

    t = 0
    while t < min(m, n):
        sub = S[t:, t:]
        nonzero = sub != 0
        if not nonzero.any():
            break
        absval = np.abs(sub)
        masked = np.where(nonzero, absval, absval.max() + 1)
        i, j = divmod(int(np.argmin(masked)), n - t)
        i, j = i + t, j + t
        if i != t:
            S[[t, i], :] = S[[i, t], :]
            U[[t, i], :] = U[[i, t], :]
            Uinv[:, [t, i]] = Uinv[:, [i, t]]
        if j != t:
            S[:, [t, j]] = S[:, [j, t]]
            if right:
                V[:, [t, j]] = V[:, [j, t]]
                Vinv[[t, j], :] = Vinv[[j, t], :]
        p = S[t, t]

        q = S[t + 1:, t] // p
        if (q != 0).any():
            S[t + 1:, :] -= np.outer(q, S[t, :])
            U[t + 1:, :] -= np.outer(q, U[t, :])
            Uinv[:, t] += Uinv[:, t + 1:].dot(q)
        q = S[t, t + 1:] // p
        if (q != 0).any():
            S[:, t + 1:] -= np.outer(S[:, t], q)
            if right:
                V[:, t + 1:] -= np.outer(V[:, t], q)
                Vinv[t, :] += q.dot(Vinv[t + 1:, :])

        if (S[t + 1:, t] != 0).any() or (S[t, t + 1:] != 0).any():
            continue
        rest = S[t + 1:, t + 1:]
        if rest.size:
            bad = np.argwhere((rest % p) != 0)
            if len(bad):
                r = t + 1 + int(bad[0][0])
                S[t, :] += S[r, :]
                U[t, :] += U[r, :]
                Uinv[:, r] -= Uinv[:, t]
                continue
        if p < 0:
            S[t, :] *= -1
            U[t, :] *= -1
            Uinv[:, t] *= -1
        t += 1

    logger.debug("smith_normal_form(): %dx%d matrix of rank %d", m, n, t)
    return SNFDecomposition(S, U, V, Uinv, Vinv, t)


def solve(snf, b):
    """Integer solution w of ``A w = b`` given the SNF of A, or None.

    Parameters
    ----------
    snf : SNFDecomposition
        Computed with ``right=True``.
    b : list of int
    """
    m = snf.U.shape[0]
    if len(b) != m:
        raise DimensionError("solve(): right hand side has length %d, "
                             "expected %d" % (len(b), m))
    y = matmul(snf.U, columns_to_matrix([b], m))[:, 0]
    z = []
    for i in range(snf.rank):
        d = snf.S[i, i]
        if y[i] % d != 0:
            return None
        z.append(y[i] // d)
    for i in range(snf.rank, m):
        if y[i] != 0:
            return None
    n = snf.V.shape[0]
    if snf.rank == 0:
        return [0] * n
    w = snf.V[:, :snf.rank].dot(np.array(z, dtype=object))
    return [int(x) for x in w]


def integer_kernel(A):
    """Basis of the lattice ``{x in Z^n : A x = 0}``.

    The basis vectors are the columns of V (from ``U * A * V = S``) beyond
    the rank; they span a saturated sublattice.

    Returns
    -------
    list of lists of int
    """
    A = as_array(A)
    n = A.shape[1]
    if n == 0:
        return []
    snf = smith_normal_form(A)
    return matrix_columns(snf.V[:, snf.rank:])


def image_basis(vectors, dim=None):
    """A basis of the lattice spanned by the given vectors."""
    M = columns_to_matrix(vectors, dim)
    return matrix_columns(_image_basis_matrix(M))


def _image_basis_matrix(M):
    if M.shape[1] == 0:
        return _zeros(M.shape[0], 0)
    snf = smith_normal_form(M, right=False)
    B = snf.Uinv[:, :snf.rank].copy()
    for i in range(snf.rank):
        B[:, i] *= snf.S[i, i]
    return B


def lattice_intersection(gens_a, gens_b, dim=None):
    """Generators of span(gens_a) ∩ span(gens_b).

    The intersection is read off the kernel of ``[A | -B]``.

    Raises
    ------
    DimensionError
        If the two families live in different ambient dimensions.
    """
    if dim is None:
        dims = set(len(v) for v in list(gens_a) + list(gens_b))
        if len(dims) > 1:
            raise DimensionError("lattice_intersection(): vectors of lengths "
                                 "%s" % sorted(dims))
        if not dims:
            return []
        dim = dims.pop()
    A = _image_basis_matrix(columns_to_matrix(gens_a, dim))
    B = _image_basis_matrix(columns_to_matrix(gens_b, dim))
    return matrix_columns(_intersect(A, B))


def _intersect(A, B):
    a = A.shape[1]
    if a == 0 or B.shape[1] == 0:
        return _zeros(A.shape[0], 0)
    K = integer_kernel(stack(((A, -B),)))
    if not K:
        return _zeros(A.shape[0], 0)
    X = columns_to_matrix([k[:a] for k in K], a)
    return _image_basis_matrix(matmul(A, X))


def normalize_divisors(orders):
    """Invariant factor form of a direct sum of cyclic groups.

    Parameters
    ----------
    orders : list of int
        Orders of the cyclic summands, 0 standing for Z.

    Returns
    -------
    list of int
        Torsion divisors greater than one in divisibility order, followed by
        one zero per free summand.
    """
    k = len(orders)
    snf = smith_normal_form(np.diag(np.array(list(orders) or [0],
                                             dtype=object))[:k, :k],
                            right=False)
    result = [d for d in snf.diagonal if d != 1]
    return result + [0] * (k - snf.rank)


class BasisDivisors(object):
    """A finitely generated abelian group ⊕ Z/a_i ⊕ Z^β with generators.

    Attributes
    ----------
    generators : list
        One generator per cyclic summand, torsion summands first. Integer
        vectors at this level, combinations for chain level groups, or None
        when the group is only known abstractly.
    divisors : list of int
        Orders of the summands, each greater than one, 0 standing for Z.
    """

    def __init__(self, generators, divisors):
        divisors = [int(d) for d in divisors]
        if generators is not None and len(generators) != len(divisors):
            raise DimensionError("BasisDivisors(): %d generators for %d "
                                 "divisors" % (len(generators), len(divisors)))
        if any(d == 1 or d < 0 for d in divisors):
            raise DimensionError("BasisDivisors(): invalid divisors %s"
                                 % divisors)
        self.generators = generators
        self.divisors = divisors

    @classmethod
    def abstract(cls, divisors):
        """A group given only by its invariant factors."""
        return cls(None, divisors)

    def is_zero(self):
        return len(self.divisors) == 0

    @property
    def betti(self):
        """Rank of the free part."""
        return sum(1 for d in self.divisors if d == 0)

    @property
    def torsion(self):
        return [d for d in self.divisors if d != 0]

    def same_group(self, other):
        """True if the groups are isomorphic."""
        return (normalize_divisors(self.divisors)
                == normalize_divisors(other.divisors))

    def components(self):
        """Names of the cyclic summands, e.g. ``['Z/2Z', 'Z']``."""
        return ['Z' if d == 0 else 'Z/%dZ' % d for d in self.divisors]

    def render(self):
        """Component lines, or NIL for the zero group."""
        if self.is_zero():
            return "NIL"
        return "\n".join("Component %s" % c for c in self.components())

    def __str__(self):
        return " + ".join(self.components()) if self.divisors else "0"

    def __repr__(self):
        return "BasisDivisors(%s)" % self.divisors


class Subquotient(BasisDivisors):
    """Presentation of N / (N ∩ D) keeping the data needed for coordinates.

    Built by :func:`subquotient`; see :func:`coordinates_in_subquotient`.
    """

    def __init__(self, generators, divisors, dim, keep, basis, dbasis,
                 transform, kept):
        super(Subquotient, self).__init__(generators, divisors)
        #: Ambient dimension.
        self.dim = dim
        #: Coordinate axes not absorbed by the denominator.
        self.keep = keep
        #: Projected basis of the numerator lattice (columns).
        self.basis = basis
        #: Projected basis of the denominator lattice (columns).
        self.dbasis = dbasis
        #: U of the relation matrix.
        self.transform = transform
        #: Indices of the relation SNF rows giving nontrivial summands.
        self.kept = kept
        self._membership = None

    def membership(self):
        if self._membership is None:
            self._membership = smith_normal_form(
                stack(((self.basis, self.dbasis),)))
        return self._membership


def subquotient(num_gens, den_gens, dim=None, den_axes=()):
    """Present the group N / (N ∩ D) as a direct sum of cyclic groups.

    Parameters
    ----------
    num_gens : list of integer vectors
        Generators of the numerator lattice N.
    den_gens : list of integer vectors
        Generators of the denominator lattice D.
    dim : (OPTIONAL) int
        Ambient dimension; required if both families are empty.
    den_axes : (OPTIONAL) iterable of int
        Coordinate axes whose unit vectors also belong to D.

    Returns
    -------
    Subquotient
        Generators are vectors of N; divisors greater than one first, then
        zeros for free summands.
    """
    num_gens, den_gens = list(num_gens), list(den_gens)
    if dim is None:
        dims = set(len(v) for v in num_gens + den_gens)
        if len(dims) != 1:
            raise DimensionError("subquotient(): cannot infer ambient "
                                 "dimension from vector lengths %s"
                                 % sorted(dims))
        dim = dims.pop()
    N = columns_to_matrix(num_gens, dim)
    D = columns_to_matrix(den_gens, dim)
    axes = set(den_axes)
    if any(not 0 <= a < dim for a in axes):
        raise DimensionError("subquotient(): denominator axis out of range")
    keep = [i for i in range(dim) if i not in axes]
    Np, Dp = N[keep, :], D[keep, :]

    # basis of the projected numerator, with lifts inside N
    if Np.shape[1]:
        snf = smith_normal_form(Np)
        W = snf.V[:, :snf.rank]
        basis = matmul(Np, W)
        lifts = matmul(N, W)
    else:
        basis = _zeros(len(keep), 0)
        lifts = _zeros(dim, 0)
    r = basis.shape[1]
    dbasis = _image_basis_matrix(Dp)

    relations = []
    if r and dbasis.shape[1]:
        relations = [k[:r] for k in integer_kernel(stack(((basis, -dbasis),)))]
    R = columns_to_matrix(relations, r)
    rsnf = smith_normal_form(R, right=False)

    generators, divisors, kept = [], [], []
    for i in range(r):
        d = int(rsnf.S[i, i]) if i < rsnf.rank else 0
        if d == 1:
            continue
        generators.append([int(x) for x in lifts.dot(rsnf.Uinv[:, i])])
        divisors.append(d)
        kept.append(i)
    logger.debug("subquotient(): dim %d, numerator rank %d, divisors %s",
                 dim, r, divisors)
    return Subquotient(generators, divisors, dim, keep, basis, dbasis,
                       rsnf.U, kept)


def coordinates_in_subquotient(x, sq):
    """Coordinates of the class of x in the presentation sq.

    Parameters
    ----------
    x : list of int
        A vector of the ambient lattice.
    sq : Subquotient

    Returns
    -------
    list of int or None
        Coordinates reduced modulo the divisors (free coordinates are not
        reduced), or None if x is not a member of N + D.
    """
    if len(x) != sq.dim:
        raise DimensionError("coordinates_in_subquotient(): vector of length "
                             "%d in a %d-dimensional lattice"
                             % (len(x), sq.dim))
    xp = [int(x[i]) for i in sq.keep]
    r = sq.basis.shape[1]
    if r + sq.dbasis.shape[1] == 0:
        return None if any(xp) else []
    w = solve(sq.membership(), xp)
    if w is None:
        return None
    if r == 0:
        return []
    y = matmul(sq.transform, columns_to_matrix([w[:r]], r))[:, 0]
    coords = []
    for i, d in zip(sq.kept, sq.divisors):
        c = int(y[i])
        coords.append(c % d if d else c)
    return coords
