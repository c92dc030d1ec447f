"""Exact-arithmetic computations with finite-dimensional weak Hopf algebras."""

from .algebra import FiniteAlgebra
from .coalgebra import FiniteCoalgebra
from .convolution import ConvMap, EFWitness
from .groupoid import FiniteGroupoid
from .linalg import Mat, Subspace
from .weakhopf import WeakHopfAlgebra

__all__ = [
    "ConvMap",
    "EFWitness",
    "FiniteAlgebra",
    "FiniteCoalgebra",
    "FiniteGroupoid",
    "Mat",
    "Subspace",
    "WeakHopfAlgebra",
]
