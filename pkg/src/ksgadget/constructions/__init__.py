from .base import CONSTRUCTION_TOL, Construction
from .gadgets import *  # noqa: F401,F403
from .gadgets import __all__ as _gadgets_all
from .assemblies import *  # noqa: F401,F403
from .assemblies import __all__ as _assemblies_all
from .ks import build_ks_from_gadget, doubled_angle

__all__ = ["CONSTRUCTION_TOL", "Construction", "build_ks_from_gadget", "doubled_angle",
           *_gadgets_all, *_assemblies_all]
