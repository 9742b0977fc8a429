# -*- coding: utf-8 -*-
"""
Command line front end.

A tower is declared in a JSON document:

.. code-block:: json

    {"spaces": [{"kind": "k", "modulus": 2, "degree": 5},
                {"kind": "k", "modulus": 2, "degree": 4},
                {"kind": "k", "modulus": 2, "degree": 3},
                {"kind": "k", "modulus": 2, "degree": 2}],
     "twists": ["trivial", "trivial", "trivial"],
     "max_degree": 5,
     "bpl_budget": 64}

The last space is the base, the others are the fibers G_0, ..., G_{m-1}.

*Example*.

.. code-block:: bash

    spectra e2 --config tower.json -P 0,0,2 -n 2
    spectra term --config tower.json --z lex:3:0,0,1 --s lex:3:0,1,1 \\
        --p lex:3:0,0,2 --b lex:3:0,1,2 -n 2
    spectra final --config tower.json -n 3
    spectra verify --config tower.json --mode oracle-2page --bound 5

Exit codes are 0 on success, 1 when a verification finds a mismatch and 2
on usage or configuration errors.
"""
import argparse
import json
import logging
import os
import sys

from spsys import serre, spectra
from spsys.poset import (EmptyDownSet, FullDownSet, GeneratedDownSet,
                         LexDownSet, TermTuple)
from spsys.simplicial import eilenberg_maclane, sphere
from spsys.utils import (DEFAULT_BPL_BUDGET, ConfigError, SpsysError,
                         bpl_budget)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2

TWIST_KINDS = ('trivial', 'universal')
EQUIVALENCE_KINDS = ('trivial', 'minimal')


def _require_int(value, location, minimum=0):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError("expected an integer, got %r" % (value,), location)
    if value < minimum:
        raise ConfigError("expected an integer >= %d, got %d"
                          % (minimum, value), location)
    return value


class SpaceSpec(object):
    """One entry of ``spaces``: ``{"kind": "k", "modulus": l, "degree": n}``
    for K(Z/l, n) or ``{"kind": "sphere", "dim": n}``."""

    def __init__(self, kind, modulus=None, degree=None, dim=None):
        self.kind = kind
        self.modulus = modulus
        self.degree = degree
        self.dim = dim

    @classmethod
    def from_dict(cls, data, location):
        if not isinstance(data, dict):
            raise ConfigError("expected an object", location)
        kind = data.get('kind')
        if kind == 'k':
            unknown = set(data) - set(('kind', 'modulus', 'degree'))
            if unknown:
                raise ConfigError("unknown fields %s" % sorted(unknown),
                                  location)
            return cls('k', modulus=_require_int(
                data.get('modulus'), location + '.modulus', 2),
                degree=_require_int(data.get('degree'), location + '.degree',
                                    1))
        if kind == 'sphere':
            unknown = set(data) - set(('kind', 'dim'))
            if unknown:
                raise ConfigError("unknown fields %s" % sorted(unknown),
                                  location)
            return cls('sphere', dim=_require_int(data.get('dim'),
                                                  location + '.dim', 1))
        raise ConfigError("kind must be 'k' or 'sphere', got %r" % (kind,),
                          location + '.kind')

    def build(self):
        if self.kind == 'k':
            return eilenberg_maclane(self.modulus, self.degree)
        return sphere(self.dim)

    def classifies(self, other):
        """True if this space is the classifying space of ``other``."""
        return (self.kind == 'k' and other.kind == 'k'
                and self.modulus == other.modulus
                and self.degree == other.degree + 1)

    def __repr__(self):
        if self.kind == 'k':
            return "K(Z/%d,%d)" % (self.modulus, self.degree)
        return "S^%d" % self.dim


class TowerConfig(object):
    """Validated contents of a configuration file.

    Attributes
    ----------
    spaces : list of SpaceSpec
        Fibers first, base last.
    twists : list of str
    max_degree : int
    bpl_budget : int
    equivalences : str
    """

    def __init__(self, spaces, twists, max_degree,
                 bpl_budget=DEFAULT_BPL_BUDGET, equivalences='trivial'):
        self.spaces = spaces
        self.twists = twists
        self.max_degree = max_degree
        self.bpl_budget = bpl_budget
        self.equivalences = equivalences

    @property
    def m(self):
        return len(self.twists)

    @classmethod
    def from_dict(cls, data):
        """Validate a decoded JSON document.

        Raises
        ------
        ConfigError
            With the JSON path of the offending field.
        """
        if not isinstance(data, dict):
            raise ConfigError("the configuration must be an object", '$')
        known = ('spaces', 'twists', 'max_degree', 'bpl_budget',
                 'equivalences')
        unknown = set(data) - set(known)
        if unknown:
            raise ConfigError("unknown fields %s" % sorted(unknown), '$')
        for key in ('spaces', 'twists', 'max_degree'):
            if key not in data:
                raise ConfigError("missing field", key)
        if not isinstance(data['spaces'], list) or len(data['spaces']) < 2:
            raise ConfigError("expected a list of at least two spaces",
                              'spaces')
        spaces = [SpaceSpec.from_dict(s, 'spaces[%d]' % i)
                  for i, s in enumerate(data['spaces'])]
        for i, s in enumerate(spaces[:-1]):
            if s.kind != 'k':
                raise ConfigError("fibers must be simplicial groups",
                                  'spaces[%d]' % i)
        twists = data['twists']
        if not isinstance(twists, list):
            raise ConfigError("expected a list", 'twists')
        if len(twists) != len(spaces) - 1:
            raise ConfigError("expected %d twists for %d spaces, got %d"
                              % (len(spaces) - 1, len(spaces), len(twists)),
                              'twists')
        for i, kind in enumerate(twists):
            if kind not in TWIST_KINDS:
                raise ConfigError("expected one of %s, got %r"
                                  % (TWIST_KINDS, kind), 'twists[%d]' % i)
            if kind == 'universal':
                if i != len(twists) - 1 or not spaces[i + 1].classifies(
                        spaces[i]):
                    raise ConfigError("a universal twist needs the base to be "
                                      "the classifying space of the last "
                                      "fiber", 'twists[%d]' % i)
        equivalences = data.get('equivalences', 'trivial')
        if equivalences not in EQUIVALENCE_KINDS:
            raise ConfigError("expected one of %s, got %r"
                              % (EQUIVALENCE_KINDS, equivalences),
                              'equivalences')
        return cls(spaces, list(twists),
                   _require_int(data['max_degree'], 'max_degree'),
                   _require_int(data.get('bpl_budget', DEFAULT_BPL_BUDGET),
                                'bpl_budget', 1),
                   equivalences)

    @classmethod
    def load(cls, path):
        """Read and validate a configuration file."""
        try:
            with open(path, 'r') as f:
                text = f.read()
        except (IOError, OSError) as e:
            raise ConfigError("cannot read configuration: %s" % e, path)
        try:
            data = json.loads(text)
        except ValueError as e:
            lineno, colno = getattr(e, 'lineno', None), getattr(e, 'colno',
                                                               None)
            location = ("%s: line %d, column %d" % (path, lineno, colno)
                        if lineno is not None else path)
            raise ConfigError(getattr(e, 'msg', str(e)), location)
        return cls.from_dict(data)

    def tower(self):
        factors = [s.build() for s in self.spaces]
        base = factors[-1]
        logger.info("tower of %d fibrations over %s, base point %r",
                    len(factors) - 1, base.label, base.base_point)
        return serre.build_tower(factors[:-1], base, self.twists)

    def system(self):
        """The spectral system, budget overridable from the environment."""
        t = self.tower()
        eq = serre.tower_equivalences(t, self.equivalences,
                                      bound=self.max_degree + 1)
        return serre.SerreSpectralSystem(t, eq,
                                         budget=bpl_budget(self.bpl_budget))


def parse_point(text, m=None, name='point'):
    """Parse ``0,0,2`` into a tuple."""
    try:
        P = tuple(int(x) for x in text.split(','))
    except ValueError:
        raise ConfigError("expected comma separated integers, got %r" % text,
                          name)
    if m is not None and len(P) != m:
        raise ConfigError("expected %d coordinates, got %d" % (m, len(P)),
                          name)
    return P


def parse_downset(text, m, bound, name):
    """Parse a downset descriptor.

    ``empty``, ``full``, ``lex:k:P`` for T^k_P, or a semicolon separated
    list of points for the downset they generate.
    """
    if text == 'empty':
        return EmptyDownSet(m)
    if text == 'full':
        return FullDownSet(m, bound)
    if text.startswith('lex:'):
        parts = text.split(':')
        if len(parts) != 3:
            raise ConfigError("expected lex:k:P, got %r" % text, name)
        try:
            k = int(parts[1])
        except ValueError:
            raise ConfigError("invalid k in %r" % text, name)
        if not 1 <= k <= m:
            raise ConfigError("k must lie in 1..%d" % m, name)
        return LexDownSet(k, parse_point(parts[2], m, name))
    return GeneratedDownSet([parse_point(p, m, name)
                             for p in text.split(';')], m)


def _check_degree(config, n):
    if n < 0 or n > config.max_degree:
        raise ConfigError("degree %d outside 0..%d" % (n, config.max_degree),
                          '-n')


def cmd_e1(config, P, n):
    """Rendered S_n(P; 1)."""
    _check_degree(config, n)
    system = config.system()
    return system.one_page_term(parse_point(P, config.m, '-P'), n).render()


def cmd_e2(config, P, n):
    """Rendered S*_n(P; m)."""
    _check_degree(config, n)
    system = config.system()
    return system.two_page_term(parse_point(P, config.m, '-P'), n).render()


def cmd_term(config, z, s, p, b, n):
    """Rendered S[z, s, p, b]_n for arbitrary downset descriptors."""
    _check_degree(config, n)
    m, bound = config.m, config.max_degree
    t = TermTuple(parse_downset(z, m, bound, '--z'),
                  parse_downset(s, m, bound, '--s'),
                  parse_downset(p, m, bound, '--p'),
                  parse_downset(b, m, bound, '--b'), bound)
    system = config.system()
    for d in t:
        spectra.check_downset(system.effective, d, (n, n + 1))
    return system.term(t, n).render(bound)


def cmd_final(config, n):
    """Rendered H_n of the total space."""
    _check_degree(config, n)
    group = config.system().final_group(n)
    return "Final group H_{%d}\n%s" % (n, group.render())


def cmd_verify(config, mode, bound):
    """Run a check suite.

    Returns
    -------
    (str, int)
        The report and the exit code.
    """
    system = config.system()
    t = system.tower
    if mode == 'laws':
        report = serre.check_tower_laws(t, bound, budget=system.budget)
        lines = ["laws: %s" % report]
        lines.extend("violated %s in degree %d on %r" % v
                     for v in report.violations)
    elif mode == 'direct-vs-effective':
        report = serre.direct_vs_effective_check(t, system.equivalences,
                                                 bound, system.budget)
        lines = ["direct-vs-effective: %s" % report] + report.diff()
    elif mode == 'oracle-2page':
        report = serre.oracle_check(t, system.equivalences, bound,
                                    system.budget)
        lines = ["oracle-2page: %s" % report] + report.diff()
    else:
        raise ConfigError("unknown mode %r" % mode, '--mode')
    return "\n".join(lines), EXIT_OK if report.ok else EXIT_MISMATCH


def _parser():
    parser = argparse.ArgumentParser(
        prog='spectra',
        description="Serre spectral systems of towers of fibrations.")
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help="log progress (twice for debugging output)")
    sub = parser.add_subparsers(dest='command', metavar='command')
    sub.required = True

    def common(p):
        p.add_argument('--config', required=True, metavar='FILE',
                       help="JSON tower configuration")

    p = sub.add_parser('e1', help="a term of the 1-page")
    common(p)
    p.add_argument('-P', required=True, metavar='P', help="point, e.g. 0,0,2")
    p.add_argument('-n', type=int, required=True, help="total degree")

    p = sub.add_parser('e2', help="a term of the 2-page")
    common(p)
    p.add_argument('-P', required=True, metavar='P', help="point, e.g. 0,0,2")
    p.add_argument('-n', type=int, required=True, help="total degree")

    p = sub.add_parser('term', help="an arbitrary term S[z,s,p,b]")
    common(p)
    for name in ('z', 's', 'p', 'b'):
        p.add_argument('--' + name, required=True, metavar='DOWNSET',
                       help="empty, full, lex:k:P or points a;b;...")
    p.add_argument('-n', type=int, required=True, help="total degree")

    p = sub.add_parser('final', help="homology of the total space")
    common(p)
    p.add_argument('-n', type=int, required=True, help="total degree")

    p = sub.add_parser('verify', help="run a verification suite")
    common(p)
    p.add_argument('--mode', required=True,
                   choices=('laws', 'direct-vs-effective', 'oracle-2page'))
    p.add_argument('--bound', type=int, default=None,
                   help="degree bound (default max_degree)")
    return parser


def _configure_logging(verbose):
    if verbose:
        level = logging.DEBUG if verbose > 1 else logging.INFO
    else:
        name = os.environ.get('SPECTRA_LOG_LEVEL', 'WARNING').upper()
        level = getattr(logging, name, None)
        if not isinstance(level, int):
            raise ConfigError("unknown logging level %r" % name,
                              'SPECTRA_LOG_LEVEL')
    logging.basicConfig(level=level,
                        format="%(asctime)s %(name)s %(levelname)s "
                               "%(message)s")


def main(argv=None, out=None):
    """Entry point of the ``spectra`` command.

    Returns
    -------
    int
        The exit code.
    """
    out = out if out is not None else sys.stdout
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        _configure_logging(args.verbose)
        config = TowerConfig.load(args.config)
        code = EXIT_OK
        if args.command == 'e1':
            text = cmd_e1(config, args.P, args.n)
        elif args.command == 'e2':
            text = cmd_e2(config, args.P, args.n)
        elif args.command == 'term':
            text = cmd_term(config, args.z, args.s, args.p, args.b, args.n)
        elif args.command == 'final':
            text = cmd_final(config, args.n)
        else:
            bound = config.max_degree if args.bound is None else args.bound
            text, code = cmd_verify(config, args.mode, bound)
    except SpsysError as e:
        logger.debug("command failed", exc_info=True)
        sys.stderr.write("spectra: %s\n" % e)
        return EXIT_USAGE
    out.write(text + "\n")
    return code


__all__ = ['TowerConfig', 'SpaceSpec', 'parse_point', 'parse_downset',
           'cmd_e1', 'cmd_e2', 'cmd_term', 'cmd_final', 'cmd_verify', 'main']
