"""Algebraic characters of Harish-Chandra modules at desk scale.

Exact integer arithmetic on weight lattices, rational characters in the
localized group ring, truncated Laurent series for the localization kernel,
and the (sl2, SO(2)) branching catalogue.
"""

from .char_ring import LaurentPoly
from .lattice import InnerProduct, LatticeError, RootDatum, Weight
from .localization import RationalChar, exact_divide, rc_dual, rc_eq
from .series import KernelSpec, TruncatedSeries

__all__ = [
    "InnerProduct",
    "KernelSpec",
    "LatticeError",
    "LaurentPoly",
    "RationalChar",
    "RootDatum",
    "TruncatedSeries",
    "Weight",
    "exact_divide",
    "rc_dual",
    "rc_eq",
]
