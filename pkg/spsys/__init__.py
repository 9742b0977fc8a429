from spsys.utils import *
from spsys.exactlinalg import *
from spsys.chain import *
from spsys.homotopy import *
from spsys.simplicial import *
from spsys.poset import *
from spsys.spectra import *
from spsys.serre import SerreSpectralSystem, Tower, build_tower, untwisted_tower, tower_equivalences

__all__ = ['SpsysError', 'smith_normal_form', 'subquotient', 'IntMatrix', 'BasisDivisors', 'ChainComplex', 'Combination', 'homology', 'Reduction', 'bpl', 'tpl', 'eilenberg_maclane', 'TermTuple', 'LexDownSet', 'GenFilteredComplex', 'term', 'SerreSpectralSystem', 'Tower', 'build_tower', 'untwisted_tower', 'tower_equivalences']
