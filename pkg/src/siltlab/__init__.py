"""siltlab: a workbench for silting objects over path algebras with relations."""

from .linalg import Field
from .quiver import QuiverPresentation, AlgebraTable, build_algebra

__all__ = ["Field", "QuiverPresentation", "AlgebraTable", "build_algebra"]
__version__ = "0.1.0"
