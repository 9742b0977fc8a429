# -*- coding: utf-8 -*-
"""
Reductions, equivalences and the perturbation lemmas.

A reduction ρ = (f, g, h): C ⇒ D of chain complexes satisfies

    f g = id_D,  g f + d h + h d = id_C,  f h = 0,  h g = 0,  h h = 0.

Perturbations are transported across reductions with the basic perturbation
lemma (:func:`bpl`, perturbation of the top complex) and the trivial
perturbation lemma (:func:`tpl`, perturbation of the bottom complex).
All maps are evaluated lazily, generator by generator.

*Example*. Transport a perturbation across a reduction.

.. code-block:: python

    from spsys.homotopy import bpl, Perturbation
    rho2 = bpl(rho, Perturbation(rho.top, delta))
    print(rho2.bottom.dffr(3, x))

"""
import logging

import numpy as np

from spsys.chain import (ChainComplex, Combination, Morphism,
                         add_morphisms, compose_morphisms, differential_matrix,
                         identity_morphism, tensor_complex, tensor_morphisms,
                         vector_to_cmbn)
from spsys.exactlinalg import (columns_to_matrix, matmul, smith_normal_form,
                               solve)
from spsys.utils import (DEFAULT_BPL_BUDGET, EffectivenessError,
                         NilpotencyError)

logger = logging.getLogger(__name__)


class Reduction(object):
    """A reduction (f, g, h): top ⇒ bottom.

    Parameters
    ----------
    top, bottom : ChainComplex
    f : Morphism top -> bottom of degree 0
    g : Morphism bottom -> top of degree 0
    h : Morphism top -> top of degree +1
    """

    def __init__(self, top, bottom, f, g, h, label=''):
        self.top = top
        self.bottom = bottom
        self.f = f
        self.g = g
        self.h = h
        self.label = label

    def __repr__(self):
        return "<Reduction %s: %s => %s>" % (self.label, self.top.label,
                                            self.bottom.label)


class Equivalence(object):
    """A strong chain equivalence C ⇐ Ĉ ⇒ D made of two reductions with
    the same top complex Ĉ."""

    def __init__(self, left, right):
        self.left = left
        self.right = right

    @property
    def complex(self):
        """The complex C the equivalence is about."""
        return self.left.bottom

    @property
    def effective(self):
        """The effective complex D."""
        return self.right.bottom


class Perturbation(object):
    """A degree -1 map δ on a complex such that (d + δ)^2 = 0.

    Parameters
    ----------
    complex : ChainComplex
    action : callable or None
        ``action(degree, gnrt)``; None stands for the zero perturbation.
    """

    def __init__(self, complex, action=None, label='delta'):
        self.complex = complex
        self.is_zero = action is None
        if action is None:
            action = lambda n, g: Combination.zero(n - 1)
        self.morphism = Morphism(complex, complex, -1, action, label=label)

    def __call__(self, cmbn):
        return self.morphism(cmbn)


def perturbed_complex(C, delta, label=''):
    """The complex (C, d + δ) with the same basis as C."""
    if getattr(delta, 'is_zero', False):
        return C
    m = delta.morphism if isinstance(delta, Perturbation) else delta

    def differential(n, g):
        return C.dffr(n, g) + m.on_gnrt(n, g)

    return ChainComplex(differential, C._basis_fn,
                        label=label or '%s+%s' % (C.label, m.label))


def trivial_reduction(C):
    """The identity reduction C ⇒ C with h = 0."""
    ident = identity_morphism(C)
    h = Morphism(C, C, 1, lambda n, g: Combination.zero(n + 1), label='0',
                 cache=False)
    return Reduction(C, C, ident, ident, h, label='id')


def trivial_equivalence(C):
    rho = trivial_reduction(C)
    return Equivalence(rho, rho)


def compose_reductions(r1, r2):
    """The composite top(r1) ⇒ bottom(r2) of r1: C ⇒ D and r2: D ⇒ E.

    ``f = f2 f1``, ``g = g1 g2``, ``h = h1 + g1 h2 f1``.
    """
    f = compose_morphisms(r2.f, r1.f)
    g = compose_morphisms(r1.g, r2.g)
    h = add_morphisms(r1.h, compose_morphisms(r1.g, compose_morphisms(
        r2.h, r1.f)))
    return Reduction(r1.top, r2.bottom, f, g, h,
                     label='%s.%s' % (r2.label, r1.label))


def tensor_reductions(r1, r2):
    """The tensor product of two reductions.

    ``f = f1 ⊗ f2``, ``g = g1 ⊗ g2``, ``h = h1 ⊗ id + g1 f1 ⊗ h2``, all with
    the Koszul sign convention.
    """
    top = tensor_complex(r1.top, r2.top)
    bottom = tensor_complex(r1.bottom, r2.bottom)
    f = tensor_morphisms(r1.f, r2.f, top, bottom)
    g = tensor_morphisms(r1.g, r2.g, bottom, top)
    h1 = tensor_morphisms(r1.h, identity_morphism(r2.top), top, top)
    gf1 = compose_morphisms(r1.g, r1.f)
    h2 = tensor_morphisms(gf1, r2.h, top, top)
    return Reduction(top, bottom, f, g, add_morphisms(h1, h2),
                     label='%s*%s' % (r1.label, r2.label))


def tpl(rdct, delta):
    """Trivial perturbation lemma.

    Parameters
    ----------
    rdct : Reduction
    delta : Perturbation
        A perturbation of the bottom complex.

    Returns
    -------
    Reduction
        Same f, g, h between (top, d + g δ f) and (bottom, d + δ).
    """
    if delta.is_zero:
        return rdct
    dl = delta.morphism
    top = perturbed_complex(rdct.top, compose_morphisms(
        rdct.g, compose_morphisms(dl, rdct.f), label='g.delta.f'))
    bottom = perturbed_complex(rdct.bottom, delta)
    f = Morphism(top, bottom, 0, rdct.f.on_gnrt, label='f', cache=False)
    g = Morphism(bottom, top, 0, rdct.g.on_gnrt, label='g', cache=False)
    h = Morphism(top, top, 1, rdct.h.on_gnrt, label='h', cache=False)
    return Reduction(top, bottom, f, g, h, label='tpl(%s)' % rdct.label)


def _series(first, second, budget, name):
    """The alternating series x - (first second) x + ... evaluated until it
    vanishes."""
    def action(n, g):
        term = Combination.single(n, g)
        total = term
        for _ in range(budget):
            term = -first(second(term))
            if term.is_zero():
                return total
            total = total + term
        raise NilpotencyError("bpl(): %s series on %r did not vanish after %d "
                              "terms" % (name, g, budget), element=(n, g))
    return action


def bpl(rdct, delta, budget=DEFAULT_BPL_BUDGET):
    """Basic perturbation lemma.

    Parameters
    ----------
    rdct : Reduction
    delta : Perturbation
        A perturbation of the top complex such that hδ is locally nilpotent.
    budget : (OPTIONAL) int
        Maximal number of nonzero terms of the series per element.

    Returns
    -------
    Reduction
        (top, d + δ) ⇒ (bottom, d + f δ φ g) with ``φ = Σ (-1)^i (hδ)^i``,
        ``ψ = Σ (-1)^i (δh)^i``, ``f' = f ψ``, ``g' = φ g``, ``h' = φ h``.
        The zero perturbation returns rdct itself.

    Raises
    ------
    NilpotencyError
        Lazily, when a series does not vanish within the budget.
    """
    if delta.is_zero:
        return rdct
    dl, f, g, h = delta.morphism, rdct.f, rdct.g, rdct.h
    top = perturbed_complex(rdct.top, delta)
    phi = Morphism(top, top, 0, _series(h, dl, budget, 'phi'), label='phi')
    psi = Morphism(top, top, 0, _series(dl, h, budget, 'psi'), label='psi')

    def bottom_delta(n, x):
        return f(dl(phi(g.on_gnrt(n, x))))

    bottom = perturbed_complex(rdct.bottom, Morphism(
        rdct.bottom, rdct.bottom, -1, bottom_delta, label='f.delta.phi.g'))
    f2 = Morphism(top, bottom, 0, lambda n, x: f(psi.on_gnrt(n, x)),
                  label='f.psi')
    g2 = Morphism(bottom, top, 0, lambda n, x: phi(g.on_gnrt(n, x)),
                  label='phi.g')
    h2 = Morphism(top, top, 1, lambda n, x: phi(h.on_gnrt(n, x)),
                  label='phi.h')
    logger.debug("bpl(): perturbing %s with budget %d", rdct.label, budget)
    return Reduction(top, bottom, f2, g2, h2, label='bpl(%s)' % rdct.label)


def bottom_perturbation(rdct, original_bottom):
    """The perturbation d' - d of a bottom complex produced by :func:`bpl`
    with respect to the unperturbed one."""
    if rdct.bottom is original_bottom:
        return Perturbation(original_bottom)

    def action(n, x):
        return rdct.bottom.dffr(n, x) - original_bottom.dffr(n, x)

    return Perturbation(original_bottom, action, label='bottom-delta')


class LawReport(object):
    """Outcome of a law check.

    Attributes
    ----------
    checks : int
        Number of (law, generator) pairs evaluated.
    violations : list of (law, degree, generator)
    """

    def __init__(self):
        self.checks = 0
        self.violations = []

    @property
    def ok(self):
        return not self.violations

    def record(self, law, degree, gnrt, holds):
        self.checks += 1
        if not holds:
            self.violations.append((law, degree, gnrt))

    def merge(self, other):
        self.checks += other.checks
        self.violations.extend(other.violations)
        return self

    def __str__(self):
        return "%d checks, %d violations" % (self.checks,
                                             len(self.violations))


def _sample(gnrts, sample_size, rng):
    if sample_size is None or len(gnrts) <= sample_size:
        return list(gnrts)
    idx = rng.choice(len(gnrts), size=sample_size, replace=False)
    return [gnrts[i] for i in sorted(idx)]


def check_reduction_laws(rdct, degree_bound, sample_size=None, seed=0):
    """Check the five reduction laws on basis generators.

    Parameters
    ----------
    rdct : Reduction
        Both complexes need bases up to ``degree_bound``.
    degree_bound : int
    sample_size : (OPTIONAL) int
        Check at most this many generators per degree and complex.
    seed : (OPTIONAL) int

    Returns
    -------
    LawReport
    """
    rng = np.random.RandomState(seed)
    report = LawReport()
    top, bottom, f, g, h = rdct.top, rdct.bottom, rdct.f, rdct.g, rdct.h
    for n in range(degree_bound + 1):
        for x in _sample(top.basis(n), sample_size, rng):
            c = Combination.single(n, x)
            hc = h(c)
            lhs = g(f(c)) + top.d(hc) + h(top.d(c))
            report.record('gf+dh+hd=id', n, x, lhs == c)
            report.record('fh=0', n, x, f(hc).is_zero())
            report.record('hh=0', n, x, h(hc).is_zero())
        for y in _sample(bottom.basis(n), sample_size, rng):
            c = Combination.single(n, y)
            gc = g(c)
            report.record('fg=id', n, y, f(gc) == c)
            report.record('hg=0', n, y, h(gc).is_zero())
    logger.debug("check_reduction_laws(): %s", report)
    return report


def check_chain_map(m, degree_bound, sample_size=None, seed=0):
    """Check ``d m = (-1)^|m| m d`` on basis generators of the source."""
    rng = np.random.RandomState(seed)
    report = LawReport()
    sign = -1 if m.degree % 2 else 1
    for n in range(degree_bound + 1):
        for x in _sample(m.source.basis(n), sample_size, rng):
            c = Combination.single(n, x)
            report.record('dm=md', n, x,
                          m.target.d(m(c)) == sign * m(m.source.d(c)))
    return report


def check_perturbation(delta, degree_bound, sample_size=None, seed=0):
    """Check ``(d + δ)^2 = 0`` on basis generators."""
    rng = np.random.RandomState(seed)
    report = LawReport()
    C = perturbed_complex(delta.complex, delta)
    for n in range(1, degree_bound + 1):
        for x in _sample(delta.complex.basis(n), sample_size, rng):
            c = Combination.single(n, x)
            report.record('(d+delta)^2=0', n, x, C.d(C.d(c)).is_zero())
    return report


class _MinimalModel(object):
    """Adapted bases of a finite type complex, degree by degree."""

    def __init__(self, C, degree_bound):
        self.C = C
        self.bound = degree_bound
        #: per degree: list of (kind, index, vector) for the adapted basis
        self.adapted = {}
        #: per degree: inverse of the adapted basis matrix
        self.inverse = {}
        #: per degree: minimal generators in order
        self.gens = {}
        #: per degree: torsion coefficients a_i of the kernel basis
        self.coefs = {}
        #: per degree: vectors of the lifts w with d w = a z
        self.lifts = {}
        self._indices = {}
        self._build()

    def _build(self):
        C = self.C
        kernel_data = {}
        for k in range(self.bound + 2):
            Dk = differential_matrix(C, k)
            dim = Dk.shape[1]
            if dim == 0:
                kernel_data[k] = ([], None, 0)
                continue
            snf = smith_normal_form(Dk)
            kernel_data[k] = (snf, snf.rank, dim)

        z_vectors, coefs = {}, {}
        for k in range(self.bound + 1):
            snf, rank, dim = kernel_data[k]
            if dim == 0:
                z_vectors[k], coefs[k] = [], []
                continue
            K = snf.V[:, rank:]
            Dnext = differential_matrix(C, k + 1)
            Y = matmul(snf.Vinv, Dnext)[rank:, :]
            ysnf = smith_normal_form(Y, right=False)
            Z = matmul(K, ysnf.Uinv)
            z_vectors[k] = [Z[:, i] for i in range(Z.shape[1])]
            coefs[k] = [int(ysnf.S[i, i]) if i < ysnf.rank else 0
                        for i in range(Z.shape[1])]

        for k in range(self.bound + 2):
            if k > 0 and (k - 1) in z_vectors:
                snf = kernel_data[k][0]
                lifts = []
                for i, (z, a) in enumerate(zip(z_vectors[k - 1], coefs[k - 1])):
                    if a == 0:
                        continue
                    w = solve(snf, [int(a * x) for x in z])
                    lifts.append((a, w, i))
                self.lifts[k] = lifts
            else:
                self.lifts[k] = []

        for k in range(self.bound + 1):
            adapted, gens = [], []
            for i, (z, a) in enumerate(zip(z_vectors[k], coefs[k])):
                adapted.append(('z', i, a, [int(x) for x in z]))
                if a != 1:
                    gens.append(('h' if a == 0 else 'x', k, i))
            for j, (a, w, _) in enumerate(self.lifts[k]):
                adapted.append(('w', j, a, w))
                if a != 1:
                    gens.append(('y', k, j))
            self.adapted[k] = adapted
            self.gens[k] = gens
            self.coefs[k] = coefs[k]
            if adapted:
                Q = columns_to_matrix([v for _, _, _, v in adapted])
                qsnf = smith_normal_form(Q)
                self.inverse[k] = matmul(qsnf.V, qsnf.U)
            else:
                self.inverse[k] = None

    def coordinates(self, k, gnrt):
        if k > self.bound:
            raise EffectivenessError("minimal_reduction(): degree %d beyond "
                                     "the bound %d" % (k, self.bound))
        index = self._index(k)
        return self.inverse[k][:, index[gnrt]]

    def _index(self, k):
        if k not in self._indices:
            self._indices[k] = dict(
                (g, i) for i, g in enumerate(self.C.basis(k)))
        return self._indices[k]

    def vector(self, kind, k, i):
        for kd, idx, a, v in self.adapted[k]:
            if kd == kind and idx == i:
                return v
        raise EffectivenessError("minimal_reduction(): no generator %s%d in "
                                 "degree %d" % (kind, i, k))


def minimal_reduction(C, degree_bound):
    """Reduction of a finite type complex onto its minimal complex.

    The minimal complex has one generator ``('h', k, i)`` per free summand of
    H_k and a pair ``('x', k, i)``, ``('y', k + 1, i)`` with ``dy = a x`` per
    torsion summand Z/a of H_k. Everything is read off Smith normal forms of
    the differentials.

    Parameters
    ----------
    C : ChainComplex
        Needs a basis up to ``degree_bound + 1``.
    degree_bound : int
        The maps are available on degrees up to this bound.

    Returns
    -------
    Reduction
    """
    model = _MinimalModel(C, degree_bound)

    def check(k):
        if k > degree_bound:
            raise EffectivenessError("minimal_reduction(): degree %d beyond "
                                     "the bound %d" % (k, degree_bound))

    def m_basis(k):
        if k > degree_bound:
            return None
        return list(model.gens.get(k, []))

    def m_dffr(k, g):
        check(k)
        if g[0] == 'y':
            a, _, i = model.lifts[k][g[2]]
            return Combination.single(k - 1, ('x', k - 1, i), a)
        return Combination.zero(k - 1)

    M = ChainComplex(m_dffr, m_basis, label='min(%s)' % C.label)

    def f_action(k, x):
        c = model.coordinates(k, x)
        terms = {}
        for pos, (kind, i, a, _) in enumerate(model.adapted[k]):
            if a == 1 or not c[pos]:
                continue
            if kind == 'z':
                terms[('h' if a == 0 else 'x', k, i)] = int(c[pos])
            else:
                terms[('y', k, i)] = int(c[pos])
        return Combination(k, terms)

    def g_action(k, m):
        check(k)
        kind = 'w' if m[0] == 'y' else 'z'
        return vector_to_cmbn(k, model.vector(kind, k, m[2]), C.basis(k))

    def h_action(k, x):
        c = model.coordinates(k, x)
        total = Combination.zero(k + 1)
        lifts = model.lifts[k + 1]
        lift_of = {}
        j = 0
        for i, a in enumerate(model.coefs[k]):
            if a != 0:
                lift_of[i] = j
                j += 1
        for pos, (kind, i, a, _) in enumerate(model.adapted[k]):
            if kind == 'z' and a == 1 and c[pos]:
                w = lifts[lift_of[i]][1]
                total = total + int(c[pos]) * vector_to_cmbn(
                    k + 1, w, C.basis(k + 1))
        return total

    f = Morphism(C, M, 0, f_action, label='f')
    g = Morphism(M, C, 0, g_action, label='g')
    h = Morphism(C, C, 1, h_action, label='h')
    logger.debug("minimal_reduction(): %s up to degree %d", C.label,
                 degree_bound)
    return Reduction(C, M, f, g, h, label='min')


def minimal_equivalence(C, degree_bound):
    """The equivalence C ⇐ C ⇒ min(C)."""
    return Equivalence(trivial_reduction(C), minimal_reduction(C, degree_bound))


__all__ = ['Reduction', 'Equivalence', 'Perturbation', 'perturbed_complex',
           'trivial_reduction', 'trivial_equivalence', 'compose_reductions',
           'tensor_reductions', 'tpl', 'bpl', 'bottom_perturbation',
           'LawReport', 'check_reduction_laws', 'check_chain_map',
           'check_perturbation', 'minimal_reduction', 'minimal_equivalence']
