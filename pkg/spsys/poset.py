# -*- coding: utf-8 -*-
"""
Downsets of Z^m indexing generalized filtrations.

The spectral systems of a tower of fibrations are indexed by the lexicographic
downsets

    T^k_P = { X in Z^m : φ_k(X) ≤lex φ_k(P) },
    φ_k(X) = (x_{k+1}, ..., x_m, x_1 + ... + x_k, x_2 + ... + x_k, ..., x_k),

with 1 ≤ k ≤ m. For k = m these are the downsets of the total order
"graded lexicographic" on Z^m. A term S[z, s, p, b] of a spectral system is
indexed by four nested downsets z ⊆ s ⊆ p ⊆ b.

*Example*. The 2-page tuple of P = (0, 0, 2) with k = 3.

.. code-block:: python

    from spsys.poset import page_tuple_Sstar
    t = page_tuple_Sstar((0, 0, 2), 3)
    print(t.render())

"""
import itertools
import logging

from spsys.utils import FiltrationError

logger = logging.getLogger(__name__)


def phi(k, X):
    """The key φ_k(X) of the lexicographic downsets T^k."""
    X = tuple(X)
    m = len(X)
    if not 1 <= k <= m:
        raise FiltrationError("phi(): k=%d out of range for m=%d" % (k, m))
    return X[k:] + tuple(sum(X[j:k]) for j in range(k))


def phi_inverse(k, Y):
    """The point X with φ_k(X) = Y."""
    Y = tuple(Y)
    m = len(Y)
    if not 1 <= k <= m:
        raise FiltrationError("phi_inverse(): k=%d out of range for m=%d"
                              % (k, m))
    sums = Y[m - k:] + (0,)
    return tuple(sums[j] - sums[j + 1] for j in range(k)) + Y[:m - k]


def lex_member(k, P, X):
    """True if X belongs to T^k_P."""
    if len(P) != len(X):
        raise FiltrationError("lex_member(): points of lengths %d and %d"
                              % (len(P), len(X)))
    return phi(k, X) <= phi(k, P)


def unit_vector(m, k):
    """e_k in Z^m (1-based); e_0 is the zero vector."""
    return tuple(1 if j == k - 1 else 0 for j in range(m))


def _shift(P, *terms):
    out = list(P)
    for coef, k in terms:
        if k > 0:
            out[k - 1] += coef
    return tuple(out)


class DownSet(object):
    """A downset of Z^m."""

    #: Number of coordinates.
    m = None

    def contains(self, X):
        raise NotImplementedError("DownSet.contains() not implemented!")

    def __contains__(self, X):
        return self.contains(tuple(X))

    def natural_bound(self):
        """A bound B such that all points of the downset in N^m lie in
        [0, B]^m, or None if there is none."""
        return None

    def display_generators(self, bound=None):
        """Sorted maximal points of the downset inside [0, bound]^m."""
        if bound is None:
            bound = self.natural_bound()
        if bound is None:
            raise FiltrationError("%s.display_generators(): a bound is "
                                  "required" % self.__class__.__name__)
        if bound < 0:
            return []
        out = []
        for X in itertools.product(range(bound + 1), repeat=self.m):
            if not self.contains(X):
                continue
            maximal = True
            for i in range(self.m):
                if X[i] < bound:
                    Y = X[:i] + (X[i] + 1,) + X[i + 1:]
                    if self.contains(Y):
                        maximal = False
                        break
            if maximal:
                out.append(X)
        return sorted(out)

    def render(self, bound=None):
        """Display as ``((0 0 1) (0 1 0) (1 0 0))``, or NIL if there is no
        point in N^m."""
        points = self.display_generators(bound)
        if not points:
            return "NIL"
        return "(%s)" % " ".join("(%s)" % " ".join(str(x) for x in X)
                                 for X in points)


class EmptyDownSet(DownSet):

    def __init__(self, m):
        self.m = m

    def contains(self, X):
        return False

    def natural_bound(self):
        return 0

    def __repr__(self):
        return "Empty"


class FullDownSet(DownSet):
    """All of Z^m; ``bound`` only limits the display."""

    def __init__(self, m, bound=None):
        self.m = m
        self.bound = bound

    def contains(self, X):
        return True

    def natural_bound(self):
        return self.bound

    def __repr__(self):
        return "Full"


class LexDownSet(DownSet):
    """The downset T^k_P."""

    def __init__(self, k, P):
        self.P = tuple(int(x) for x in P)
        self.m = len(self.P)
        if not 1 <= k <= self.m:
            raise FiltrationError("LexDownSet(): k=%d out of range for m=%d"
                                  % (k, self.m))
        self.k = k
        self.key = phi(k, self.P)

    def contains(self, X):
        return phi(self.k, X) <= self.key

    def natural_bound(self):
        if self.k == self.m:
            return max(sum(self.P), -1)
        return None

    def __eq__(self, other):
        return (isinstance(other, LexDownSet) and self.k == other.k
                and self.key == other.key)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(('lex', self.k, self.key))

    def __repr__(self):
        return "T^%d_%s" % (self.k, self.P)


class GeneratedDownSet(DownSet):
    """The downset generated by a finite set of points."""

    def __init__(self, generators, m=None):
        gens = set(tuple(int(x) for x in g) for g in generators)
        if m is None:
            if not gens:
                raise FiltrationError("GeneratedDownSet(): m is required "
                                      "without generators")
            m = len(next(iter(gens)))
        if any(len(g) != m for g in gens):
            raise FiltrationError("GeneratedDownSet(): points of different "
                                  "lengths")
        self.m = m
        #: The antichain of maximal generators.
        self.generators = sorted(
            g for g in gens
            if not any(h != g and all(a <= b for a, b in zip(g, h))
                       for h in gens))

    def contains(self, X):
        return any(all(a <= b for a, b in zip(X, g)) for g in self.generators)

    def natural_bound(self):
        return max([max(g) for g in self.generators] or [-1])

    def __repr__(self):
        return "Generated%s" % (self.generators,)


def downset_leq(p, q, bound=None):
    """Inclusion p ⊆ q.

    Inclusions are exact in Z^m except between lexicographic downsets with
    different k, which are compared on N^m ∩ [0, bound]^m when a bound is
    given.

    Raises
    ------
    FiltrationError
        If the inclusion cannot be decided exactly and no bound is given.
    """
    if p.m != q.m:
        raise FiltrationError("downset_leq(): downsets of Z^%d and Z^%d"
                              % (p.m, q.m))
    if isinstance(p, GeneratedDownSet) and not p.generators:
        return True
    if isinstance(p, EmptyDownSet) or isinstance(q, FullDownSet):
        return True
    if isinstance(p, FullDownSet) or isinstance(q, EmptyDownSet):
        return False
    if isinstance(p, GeneratedDownSet):
        if isinstance(q, GeneratedDownSet) or isinstance(q, LexDownSet):
            return all(q.contains(g) for g in p.generators)
    if isinstance(p, LexDownSet) and isinstance(q, LexDownSet):
        if p.k == q.k:
            return p.key <= q.key
    elif isinstance(p, LexDownSet) and isinstance(q, GeneratedDownSet):
        if p.m == 1:
            return q.contains(p.P)
        return False
    if bound is None:
        raise FiltrationError("downset_leq(): cannot compare %r and %r "
                              "without a bound" % (p, q))
    return all(q.contains(X) for X in
               itertools.product(range(bound + 1), repeat=p.m)
               if p.contains(X))


def downset_eq(p, q, bound=None):
    """Equality of downsets, decided as two inclusions."""
    return downset_leq(p, q, bound) and downset_leq(q, p, bound)


def t_downset(P, k):
    """T^k_P, the points X with phi_k(X) <= phi_k(P) lexicographically."""
    return LexDownSet(k, P)


def z_downset(P, k):
    return t_downset(_shift(P, (-1, k)), k)


def s_downset(P, k):
    return t_downset(_shift(P, (1, k - 1), (-1, k)), k)


def p_downset(P, k):
    return t_downset(P, k)


def b_downset(P, k):
    return t_downset(_shift(P, (1, k - 1)), k)


def zstar_downset(P, k):
    return t_downset(_shift(P, (1, k - 1), (-2, k)), k)


def bstar_downset(P, k):
    return t_downset(_shift(P, (1, k)), k)


class TermTuple(object):
    """Four nested downsets z ⊆ s ⊆ p ⊆ b.

    Parameters
    ----------
    z, s, p, b : DownSet
    bound : (OPTIONAL) int
        Used for inclusions that are only decidable on a box of N^m, and as
        display bound.

    Raises
    ------
    FiltrationError
        If the downsets are not nested.
    """

    def __init__(self, z, s, p, b, bound=None):
        self.z, self.s, self.p, self.b = z, s, p, b
        self.bound = bound
        ms = set(d.m for d in (z, s, p, b))
        if len(ms) != 1:
            raise FiltrationError("TermTuple(): downsets of different "
                                  "dimensions")
        self.m = ms.pop()
        for small, big, names in ((z, s, 'z<=s'), (s, p, 's<=p'),
                                  (p, b, 'p<=b')):
            if not downset_leq(small, big, bound):
                raise FiltrationError("TermTuple(): %s violated by %r and %r"
                                      % (names, small, big))

    def __iter__(self):
        return iter((self.z, self.s, self.p, self.b))

    def render(self, bound=None):
        bound = bound if bound is not None else self.bound
        return "S[%s]" % ",".join(d.render(bound) for d in self)

    def __repr__(self):
        return "TermTuple(%r, %r, %r, %r)" % (self.z, self.s, self.p, self.b)


def page_tuple_S(P, k):
    """(z, s, p, b) of the term S(P; k)."""
    P = tuple(P)
    return TermTuple(z_downset(P, k), s_downset(P, k), p_downset(P, k),
                     b_downset(P, k))


def page_tuple_Sstar(P, k):
    """(z*, s, p, b*) of the term S*(P; k)."""
    P = tuple(P)
    return TermTuple(zstar_downset(P, k), s_downset(P, k), p_downset(P, k),
                     bstar_downset(P, k))


def final_tuple(m, bound=None):
    """(Empty, Empty, Full, Full): the term is the homology."""
    return TermTuple(EmptyDownSet(m), EmptyDownSet(m), FullDownSet(m, bound),
                     FullDownSet(m, bound), bound)

