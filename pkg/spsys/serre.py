# -*- coding: utf-8 -*-
"""
Towers of principal fibrations and their Serre spectral systems.

A tower

    G_0 -> E_0 -> E_1 <- G_1, ..., E_{m-1} -> E_m = B

is given by simplicial groups G_i, a base B and twisting operators
τ_i: E_{i+1} -> G_i with E_i = G_i ×_{τ_i} E_{i+1}. The normalized chains
of E_0 are filtered over downsets of Z^m by the multidegree of a simplex;
the effective homology pipeline produces a small complex

    D = C(G_0) ⊗_t (C(G_1) ⊗_t (... ⊗_t C(B)))

filtered by the chain degrees of its factors whose 2-page agrees with the
one of C(E_0).

*Example*. 2-page term S*_2((0, 0, 2); 3) of a tower of Eilenberg-MacLane
spaces.

.. code-block:: python

    from spsys.serre import SerreSpectralSystem, untwisted_tower
    from spsys.simplicial import eilenberg_maclane as K
    t = untwisted_tower([K(2, 5), K(2, 4), K(2, 3)], K(2, 2))
    print(SerreSpectralSystem(t).two_page_term((0, 0, 2), 2).render())

"""
import functools
import itertools
import logging

from spsys import spectra
from spsys.chain import Tnpr, homology, homology_with_coefficients
from spsys.exactlinalg import BasisDivisors
from spsys.homotopy import (LawReport, Perturbation, bpl,
                            bottom_perturbation, check_reduction_laws,
                            compose_reductions, minimal_equivalence,
                            tensor_reductions, tpl, trivial_equivalence,
                            trivial_reduction)
from spsys.poset import page_tuple_S, page_tuple_Sstar
from spsys.simplicial import (ClassifyingSpace, TwistedProduct,
                              TwistingOperator, chain_complex,
                              check_twisting_operator, ez_reduction,
                              is_one_reduced, require_twisting,
                              twist_perturbation, universal_twisting)
from spsys.utils import (ConfigError, DimensionError, TwistingError,
                         bpl_budget)

logger = logging.getLogger(__name__)


class Tower(object):
    """A tower of m principal fibrations.

    Parameters
    ----------
    fibers : list of SimplicialGroup
        G_0, ..., G_{m-1}.
    base : SimplicialSet
    twists : list of TwistingOperator
        τ_i with base E_{i+1}; build them with :func:`build_tower` when the
        intermediate total spaces are not at hand.

    Raises
    ------
    TwistingError
        If a twisting operator does not fit its level or fails the twisting
        identities up to dimension 3, or if one of G_1, ..., G_{m-1}, B is
        not 1-reduced.
    """

    def __init__(self, fibers, base, twists, spaces=None):
        self.fibers = list(fibers)
        self.base = base
        self.twists = list(twists)
        self.m = len(self.fibers)
        if self.m < 1 or len(self.twists) != self.m:
            raise TwistingError("Tower(): %d fibers and %d twisting operators"
                                % (self.m, len(self.twists)))
        for X in self.fibers[1:] + [base]:
            if not is_one_reduced(X):
                raise TwistingError("Tower(): %s is not 1-reduced" % X.label)
        if spaces is None:
            spaces = [None] * self.m + [base]
            for i in range(self.m - 1, -1, -1):
                spaces[i] = TwistedProduct(self.twists[i])
        #: E_0, ..., E_m with E_m the base.
        self.spaces = spaces
        for i, tau in enumerate(self.twists):
            if tau.group is not self.fibers[i] or tau.base is not spaces[i + 1]:
                raise TwistingError("Tower(): twisting operator %d does not go "
                                    "from E_%d to G_%d" % (i, i + 1, i))
            require_twisting(tau, "Tower(): level %d" % i)
        self._complex = functools.lru_cache(maxsize=None)(chain_complex)

    def complex(self, X):
        """Normalized chain complex of a space of the tower (shared)."""
        return self._complex(X)

    @property
    def factors(self):
        """G_0, ..., G_{m-1}, B."""
        return self.fibers + [self.base]

    def check(self, dim_bound):
        """Sample the twisting identities of every level.

        Returns
        -------
        LawReport
        """
        report = LawReport()
        for tau in self.twists:
            if not tau.is_trivial:
                report.merge(check_twisting_operator(tau, dim_bound))
        return report

    def __repr__(self):
        return "<Tower %s>" % " <- ".join(X.label for X in self.factors)


def build_tower(fibers, base, kinds):
    """Build a tower from twist kinds, innermost level last.

    Parameters
    ----------
    fibers : list of SimplicialGroup
    base : SimplicialSet
    kinds : list of str
        ``'trivial'`` or ``'universal'`` per level. A universal twist is
        only possible at level m-1, where B must be the classifying space
        of G_{m-1}.
    """
    m = len(fibers)
    if len(kinds) != m:
        raise TwistingError("build_tower(): %d twist kinds for %d fibers"
                            % (len(kinds), m))
    spaces = [None] * m + [base]
    twists = [None] * m
    for i in range(m - 1, -1, -1):
        kind = kinds[i]
        if kind == 'trivial':
            twists[i] = TwistingOperator(fibers[i], spaces[i + 1])
        elif kind == 'universal':
            if i != m - 1 or not isinstance(base, ClassifyingSpace):
                raise TwistingError("build_tower(): a universal twist needs "
                                    "the classifying space of G_%d below it"
                                    % i)
            twists[i] = universal_twisting(fibers[i], base)
        else:
            raise TwistingError("build_tower(): unknown twist kind %r" % kind)
        spaces[i] = TwistedProduct(twists[i])
    return Tower(fibers, base, twists, spaces)


def untwisted_tower(fibers, base):
    """The tower of iterated Cartesian products."""
    return build_tower(fibers, base, ['trivial'] * len(fibers))


def total_space(t):
    """E_0."""
    return t.spaces[0]


def product_multidegree(t):
    """Filtration of C_*(E_0) by degeneracy degrees.

    For σ = (g_0, (g_1, (..., (g_{m-1}, b)))) let x'_j be the degeneracy
    degree of (g_j, (..., b)) and x'_m the one of b. The multidegree is
    (x'_1 - x'_2, ..., x'_{m-1} - x'_m, x'_m).
    """
    m = t.m

    def multidegree(n, gmsm):
        degs = []
        inner = gmsm
        for _ in range(m):
            y = inner[1]
            degs.append(y.dim - len(y.dgop))
            inner = y.gmsm
        return tuple(degs[j] - degs[j + 1] for j in range(m - 1)) + \
            (degs[-1],)

    return spectra.FiltrationAssignment(m, multidegree)


def _nested_basis(factors, degrees):
    """Generators g_0 ⊗ (g_1 ⊗ (...)) with |g_i| = degrees[i]."""
    if len(factors) == 1:
        return factors[0].basis(degrees[0])
    inner = _nested_basis(factors[1:], degrees[1:])
    if not inner:
        return []
    rest = sum(degrees[1:])
    return [Tnpr(degrees[0], g, rest, h)
            for g in factors[0].basis(degrees[0]) for h in inner]


def tensor_multidegree(m, factors=None):
    """Filtration of g_0 ⊗ (g_1 ⊗ (... ⊗ b)) by (|g_1|, ..., |g_{m-1}|, |b|).

    Parameters
    ----------
    m : int
    factors : (OPTIONAL) list of ChainComplex
        The m + 1 factors, base last. When given, filtered bases are built
        factor by factor.
    """
    def multidegree(n, gnrt):
        out = []
        t = gnrt
        for _ in range(m - 1):
            t = t.gnrt2
            out.append(t.degree1)
        out.append(t.degree2)
        return tuple(out)

    support = None
    if factors is not None:
        if len(factors) != m + 1:
            raise DimensionError("tensor_multidegree(): %d factors for m=%d"
                                 % (len(factors), m))

        def support(n, X):
            q0 = n - sum(X)
            if q0 < 0:
                return []
            return _nested_basis(factors, (q0,) + tuple(X))

    return spectra.FiltrationAssignment(m, multidegree, support)


class TowerEquivalences(object):
    """Effective homology of the factors G_0, ..., G_{m-1}, B.

    Parameters
    ----------
    equivalences : list of Equivalence
        One per factor, base last. ``equivalences[i].complex`` has the
        generators of the normalized chains of the factor.
    trivial : (OPTIONAL, default=False) bool
        True if all equivalences are identities, which skips the transport.
    """

    def __init__(self, equivalences, trivial=False):
        self.equivalences = list(equivalences)
        self.trivial = trivial

    def __len__(self):
        return len(self.equivalences)


def tower_equivalences(t, kind='trivial', bound=None):
    """Equivalences for all factors of t.

    Parameters
    ----------
    kind : (OPTIONAL, default='trivial') str
        ``'trivial'`` for identities on the normalized complexes,
        ``'minimal'`` for reductions onto minimal complexes.
    bound : int
        Degree bound of the minimal reductions; required for ``'minimal'``.

    Raises
    ------
    ConfigError
        For an unknown kind, or a minimal kind without a bound.
    """
    if kind == 'trivial':
        return TowerEquivalences(
            [trivial_equivalence(t.complex(X)) for X in t.factors],
            trivial=True)
    if kind == 'minimal':
        if bound is None:
            raise ConfigError("tower_equivalences(): minimal equivalences need "
                              "a degree bound", "bound")
        return TowerEquivalences(
            [minimal_equivalence(t.complex(X), bound) for X in t.factors])
    raise ConfigError("tower_equivalences(): unknown kind %r" % kind,
                      "equivalences")


def _shifted(perturbation, complex, label):
    """The same perturbation acting on another complex with the same
    generators and differential."""
    if perturbation.is_zero:
        return Perturbation(complex)
    return Perturbation(complex, perturbation.morphism.on_gnrt, label=label)


def _difference(perturbed, original, label):
    """d' - d between two differentials on the same generators."""
    def action(n, x):
        return perturbed.dffr(n, x) - original.dffr(n, x)

    return Perturbation(original, action, label=label)


def _level_reduction(t, i, budget):
    """The reduction C_*(E_i) ⇒ C(G_i) ⊗_t (... ⊗_t C(B))."""
    E = t.spaces[i]
    rho = ez_reduction(t.fibers[i], t.spaces[i + 1])
    tez = bpl(rho, twist_perturbation(E, rho.top), budget)
    if i == t.m - 1:
        return tez
    inner = _level_reduction(t, i + 1, budget)
    lifted = tensor_reductions(trivial_reduction(t.complex(t.fibers[i])),
                               inner)
    delta = _shifted(bottom_perturbation(tez, rho.bottom), lifted.top,
                     'twist-%d' % i)
    level = bpl(lifted, delta, budget)
    logger.debug("_level_reduction(): level %d of %r", i, t)
    return compose_reductions(tez, level)


def effective_reduction(t, budget=None):
    """The reduction C_*(E_0) ⇒ C(G_0) ⊗_t (... ⊗_t C(B)) built from twisted
    Eilenberg-Zilber reductions and the basic perturbation lemma."""
    budget = bpl_budget() if budget is None else budget
    return _level_reduction(t, 0, budget)


def _nested(reductions):
    if len(reductions) == 1:
        return reductions[0]
    return tensor_reductions(reductions[0], _nested(reductions[1:]))


def _transport(T, eq, budget):
    """Carry the twisted tensor differential of T across the factor
    equivalences."""
    L = _nested([e.left for e in eq.equivalences])
    R = _nested([e.right for e in eq.equivalences])
    lifted = tpl(L, _difference(T, L.bottom, 'twisted-tensor'))
    return bpl(R, _difference(lifted.top, R.top, 'lifted'), budget).bottom


def effective_bottom(t, eq=None, budget=None):
    """The filtered effective complex D of the tower.

    Parameters
    ----------
    t : Tower
    eq : (OPTIONAL) TowerEquivalences
        Trivial equivalences when omitted.
    budget : (OPTIONAL) int
        Perturbation budget, default from ``SPECTRA_BPL_BUDGET``.

    Returns
    -------
    GenFilteredComplex
    """
    budget = bpl_budget() if budget is None else budget
    T = effective_reduction(t, budget).bottom
    if eq is not None and not eq.trivial:
        if len(eq) != t.m + 1:
            raise DimensionError("effective_bottom(): %d equivalences for %d "
                                 "factors" % (len(eq), t.m + 1))
        T = _transport(T, eq, budget)
        factors = [e.effective for e in eq.equivalences]
    else:
        factors = [t.complex(X) for X in t.factors]
    return spectra.GenFilteredComplex(T, tensor_multidegree(t.m, factors),
                                      label='D(%r)' % t)


def direct_complex(t):
    """C_*(E_0) filtered by :func:`product_multidegree`."""
    return spectra.GenFilteredComplex(t.complex(total_space(t)),
                                      product_multidegree(t))


def two_page_term(t, eq, P, n, budget=None):
    """S*_n(P; m) computed on the effective complex."""
    FC = effective_bottom(t, eq, budget)
    return spectra.two_page_term(FC, tuple(P), n)


def coefficient_homology_oracle(t, P, n):
    """H_{p_m}(B; H_{p_{m-1}}(G_{m-1}; ... H_{p_0}(G_0))) with
    p_0 = n - |P|.

    Returns
    -------
    BasisDivisors
        Abstract.
    """
    P = tuple(P)
    if len(P) != t.m:
        raise DimensionError("coefficient_homology_oracle(): point of length "
                             "%d for %d fibrations" % (len(P), t.m))
    p0 = n - sum(P)
    if p0 < 0 or min(P) < 0:
        return BasisDivisors.abstract([])
    divisors = homology(t.complex(t.fibers[0]), p0).divisors
    for X, p in zip(t.factors[1:], P):
        if not divisors:
            break
        divisors = homology_with_coefficients(t.complex(X), p,
                                              divisors).divisors
    return BasisDivisors.abstract(divisors)


class TermComparison(object):
    """Comparison of two families of groups indexed by (P, n).

    Attributes
    ----------
    entries : list of (P, n, left, right)
    """

    def __init__(self, left_name, right_name):
        self.left_name = left_name
        self.right_name = right_name
        self.entries = []

    def record(self, P, n, left, right):
        self.entries.append((tuple(P), n, left, right))

    @property
    def mismatches(self):
        return [e for e in self.entries if not e[2].same_group(e[3])]

    @property
    def ok(self):
        return not self.mismatches

    def diff(self):
        """One line per mismatch."""
        return ["P=%s n=%d: %s=%s %s=%s" % (P, n, self.left_name, a,
                                            self.right_name, b)
                for P, n, a, b in self.mismatches]

    def __str__(self):
        return "%d comparisons, %d mismatches" % (len(self.entries),
                                                  len(self.mismatches))


def points(m, bound):
    """P in N^m with |P| <= bound, in graded lexicographic order."""
    out = [P for P in itertools.product(range(bound + 1), repeat=m)
           if sum(P) <= bound]
    return sorted(out, key=lambda P: (sum(P), P))


class SerreSpectralSystem(object):
    """The Serre spectral system of a tower, computed directly on C_*(E_0)
    or on the effective complex D.

    Parameters
    ----------
    tower : Tower
    equivalences : (OPTIONAL) TowerEquivalences
    budget : (OPTIONAL) int
    """

    def __init__(self, tower, equivalences=None, budget=None):
        self.tower = tower
        self.m = tower.m
        self.equivalences = equivalences
        self.budget = bpl_budget() if budget is None else budget
        self._direct = None
        self._effective = None

    @property
    def direct(self):
        if self._direct is None:
            self._direct = direct_complex(self.tower)
        return self._direct

    @property
    def effective(self):
        if self._effective is None:
            self._effective = effective_bottom(self.tower, self.equivalences,
                                               self.budget)
        return self._effective

    def _fc(self, direct):
        return self.direct if direct else self.effective

    def two_page_term(self, P, n, direct=False):
        return spectra.two_page_term(self._fc(direct), tuple(P), n)

    def one_page_term(self, P, n, direct=False):
        return spectra.one_page_term(self._fc(direct), tuple(P), n)

    def page_term(self, P, k, n, star=False, direct=False):
        """S_n(P; k), or S*_n(P; k) when ``star`` is set."""
        t = (page_tuple_Sstar if star else page_tuple_S)(tuple(P), k)
        return spectra.term(self._fc(direct), t, n)

    def term(self, t, n, direct=False):
        return spectra.term(self._fc(direct), t, n)

    def final_group(self, n, direct=False):
        return spectra.final_group(self._fc(direct), n)

    def oracle(self, P, n):
        return coefficient_homology_oracle(self.tower, P, n)

    def __repr__(self):
        return "<SerreSpectralSystem of %r>" % self.tower


def direct_vs_effective_check(t, eq, degree_bound, budget=None):
    """Compare S*(P; m)_n on C_*(E_0) and on D for |P|, n <= degree_bound.

    Returns
    -------
    TermComparison
    """
    system = SerreSpectralSystem(t, eq, budget)
    report = TermComparison('direct', 'effective')
    for n in range(degree_bound + 1):
        for P in points(t.m, degree_bound):
            report.record(P, n,
                          system.two_page_term(P, n, direct=True).group,
                          system.two_page_term(P, n).group)
    logger.info("direct_vs_effective_check(): %s", report)
    return report


def oracle_check(t, eq, degree_bound, budget=None):
    """Compare S*(P; m)_n on D with iterated homology with coefficients."""
    system = SerreSpectralSystem(t, eq, budget)
    report = TermComparison('effective', 'oracle')
    for n in range(degree_bound + 1):
        for P in points(t.m, n):
            report.record(P, n, system.two_page_term(P, n).group,
                          system.oracle(P, n))
    logger.info("oracle_check(): %s", report)
    return report


def compare_systems(s1, s2, degree_bound, pages):
    """Compare page terms of two systems with the same m.

    Parameters
    ----------
    pages : list of (k, star)
        Which terms to compare, e.g. ``[(2, False), (2, True)]``.
    """
    report = TermComparison(repr(s1.tower), repr(s2.tower))
    for n in range(degree_bound + 1):
        for P in points(s1.m, degree_bound):
            for k, star in pages:
                report.record(P, n, s1.page_term(P, k, n, star).group,
                              s2.page_term(P, k, n, star).group)
    return report


def check_tower_laws(t, degree_bound, sample_size=None, budget=None):
    """Twisting identities, reduction laws of the effective reduction,
    d-compatibility of both filtrations and d∘d = 0 on D.

    Returns
    -------
    LawReport
    """
    report = t.check(degree_bound)
    rho = effective_reduction(t, bpl_budget() if budget is None else budget)
    report.merge(check_reduction_laws(rho, degree_bound, sample_size))
    D = spectra.GenFilteredComplex(rho.bottom, tensor_multidegree(t.m))
    report.merge(spectra.check_filtration(D, degree_bound))
    report.merge(spectra.check_filtration(direct_complex(t), degree_bound))
    for n in range(2, degree_bound + 1):
        for x in rho.bottom.basis(n):
            report.record('dd=0', n, x, rho.bottom.d(rho.bottom.dffr(n, x))
                          .is_zero())
    logger.info("check_tower_laws(%r): %s", t, report)
    return report


__all__ = ['Tower', 'build_tower', 'untwisted_tower', 'total_space',
           'product_multidegree', 'tensor_multidegree', 'TowerEquivalences',
           'tower_equivalences', 'effective_reduction', 'effective_bottom',
           'direct_complex', 'two_page_term', 'coefficient_homology_oracle',
           'TermComparison', 'points', 'SerreSpectralSystem',
           'direct_vs_effective_check', 'oracle_check', 'compare_systems',
           'check_tower_laws']
