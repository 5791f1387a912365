"""Exact polynomial representation of an affine iquantum group of type AIII, with relation checks."""

from .flagcomb import Composition, ThetaMatrix
from .repmodule import ModuleElement
from .symalg import RatFun, SignedPerm, XLaurent

__version__ = "0.1.0"

__all__ = ["Composition", "ThetaMatrix", "ModuleElement", "RatFun", "SignedPerm", "XLaurent", "__version__"]
