"""Exact approximation theory for finite-dimensional quiver representations.

Submodules, bottom up: ``exactlin`` (linear algebra over F_p and Q),
``quivrep`` (quivers, representations, morphisms, projectives, tau),
``homext`` (Hom, Ext^1, conflations, pushouts and pullbacks), ``arrowcat``
(the arrow category, Leibniz Ext, mono-epi extensions), ``ideals`` (morphism
ideals and their fibers), ``approx`` (special preenvelopes and precovers with
verification reports) and ``cli``.
"""

__version__ = "0.1.0"

from .exactlin import ContractViolation, Field, Matrix
from .quivrep import Quiver, Rep, RepMorphism, happel_unger_quiver, linear_quiver

__all__ = ["ContractViolation", "Field", "Matrix", "Quiver", "Rep", "RepMorphism",
           "happel_unger_quiver", "linear_quiver", "__version__"]
