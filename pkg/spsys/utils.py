# -*- coding: utf-8 -*-
"""
Utility functions and the error classes shared by all modules.
"""
import logging
import os

import numpy as np

logger = logging.getLogger(__name__)

#: Default number of perturbation series terms evaluated before giving up.
DEFAULT_BPL_BUDGET = 64


class SpsysError(Exception):
    """Base class of all errors raised by spsys."""


class DimensionError(SpsysError):
    """Vector or matrix shapes do not match."""


class DegreeError(SpsysError):
    """Combinations or morphisms of incompatible degrees were mixed."""


class EffectivenessError(SpsysError):
    """A basis was required from a complex or space which has none."""


class NilpotencyError(SpsysError):
    """A perturbation series did not terminate within its budget.

    Attributes
    ----------
    element : object
        The combination on which the series was being evaluated.
    """

    def __init__(self, message, element=None):
        super(NilpotencyError, self).__init__(message)
        self.element = element


class TwistingError(SpsysError):
    """A twisting operator violates one of its identities."""


class FiltrationError(SpsysError):
    """Invalid downset tuple, illegal differential pair or undecidable
    inclusion of downsets."""


class ConfigError(SpsysError):
    """Invalid configuration of a computation or of the command line.

    Attributes
    ----------
    location : str
        A JSON path such as ``spaces[1].n`` or ``line 3, column 7``.
    """

    def __init__(self, message, location=None):
        if location is not None:
            message = "%s: %s" % (location, message)
        super(ConfigError, self).__init__(message)
        self.location = location


def stack(block):
    """Stack integer matrices given as a 2-dim tuple of blocks.

    Parameters
    ----------
    block : tuple of tuples
        A 2-dim tuple array of numpy arrays of ``dtype=object``.
        Blocks in one row must have the same number of rows.

    Returns
    -------
    numpy array of ``dtype=object``.
    """
    rows = [np.hstack(r) if len(r) > 1 else r[0] for r in block]
    if len(rows) == 1:
        return rows[0].astype(object)
    return np.vstack(rows).astype(object)


def env_int(name, default):
    """Read a nonnegative integer from the environment.

    Raises
    ------
    ConfigError
        If the variable is set but is not a nonnegative integer.
    """
    value = os.environ.get(name)
    if value is None or value == '':
        return default
    try:
        result = int(value)
    except ValueError:
        raise ConfigError("expected an integer, got %r" % value, name)
    if result < 0:
        raise ConfigError("expected a nonnegative integer, got %d" % result,
                          name)
    logger.debug("%s=%d from the environment", name, result)
    return result


def bpl_budget(default=DEFAULT_BPL_BUDGET):
    """The perturbation budget, overridable by ``SPECTRA_BPL_BUDGET``."""
    return env_int('SPECTRA_BPL_BUDGET', default)
