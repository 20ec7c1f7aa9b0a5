"""
Niemytzki Lab - toolkit for tangent-neighborhood topologies on the upper half-plane
"""

# Core imports
from .core.profile import BasicFamily, verify_basic
from .core.geometry import LensRegion, Neighborhood, mutual_refinement
from .core.criterion import refute
from .core.liminf import liminf_estimate
from .core.registry import families

__version__ = "0.1.0"
