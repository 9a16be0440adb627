"""Coherent configurations, spherical representations and polyhedral graph searches."""
from .ccstruct import ColorGraph, tensor, validate
from .perm import Perm, PermGroup, inv
from .wl import wl_close, wl_close_graph

__version__ = "0.1.0"

__all__ = ["ColorGraph", "Perm", "PermGroup", "inv", "tensor", "validate", "wl_close",
           "wl_close_graph", "__version__"]
