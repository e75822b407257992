"""Exact computations in monomorphism categories of bound quiver algebras over GF(p).

Modules:

* ``exactlin``: linear algebra over GF(p)
* ``algebra``: quivers with relations and their path algebras
* ``repmod``: representations, Hom spaces, decomposition, τ and syzygies
* ``morcat``: chains of modules, Mimo/Mepi, Cok/Ker and the morphism-category translate
* ``artrans``: translates and almost split sequences of S_n and F_n
* ``stable``: stable categories, rotation, Serre functor and periodicity checks
* ``arq``: knitting of Auslander-Reiten quivers
* ``cli``: the ``arkit`` command
"""

from .algebra import BoundQuiverAlgebra, Quiver, load, nakayama
from .exactlin import FieldSpec
from .morcat import ChainMap, ChainObject
from .repmod import ModuleMap, Representation

__all__ = [
    "BoundQuiverAlgebra",
    "ChainMap",
    "ChainObject",
    "FieldSpec",
    "ModuleMap",
    "Quiver",
    "Representation",
    "load",
    "nakayama",
]
__version__ = "0.1.0"
