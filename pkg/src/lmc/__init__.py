"""Exact symbolic kernel for the free metabelian nilpotent Lie algebra L_{m,c}.

Composition convention used everywhere in this package:
compose(phi, psi) applies psi first, i.e. compose(phi, psi)(x) = phi(psi(x)).
"""

from .arith import KERNEL, Rational, TruncPoly
from .liealg import (
    BasisForm,
    Context,
    LieElement,
    bracket,
    enumerate_basis,
    from_basis,
    generator,
    ideal_closure,
    to_basis,
)

__version__ = "0.1.0"

__all__ = [
    "KERNEL",
    "Rational",
    "TruncPoly",
    "BasisForm",
    "Context",
    "LieElement",
    "bracket",
    "enumerate_basis",
    "from_basis",
    "generator",
    "ideal_closure",
    "to_basis",
    "__version__",
]
