"""Exact computer algebra for the generalized Weyl-Heisenberg algebra A(r).

Submodules:

* :mod:`whg.exactnum` - rational combinations of square roots
* :mod:`whg.grassmann` - commuting nilpotent variables and Berezin integrals
* :mod:`whg.fock` - the finite Fock representation and su(r+1) generators
* :mod:`whg.qukit` - A(1) on k qubits and Dicke states
* :mod:`whg.bargmann` - the analytic realization on truncated polynomials
* :mod:`whg.coherent` - Barut-Girardello coherent states
* :mod:`whg.cli` - the ``whg`` command
"""
from __future__ import annotations

from .exactnum import Radical
from .fock import FockBasis, annihilation, basis, creation, number
from .operators import SparseOperator, commutator
from .report import CheckReport

__version__ = "0.1.0"

__all__ = [
    "CheckReport",
    "FockBasis",
    "Radical",
    "SparseOperator",
    "annihilation",
    "basis",
    "commutator",
    "creation",
    "number",
]
