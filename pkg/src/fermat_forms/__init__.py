"""Real forms of Fermat hypersurfaces via Galois cohomology, in exact arithmetic."""

from .group import AutElement, GroupParams
from .cohomology import Label, classify, expected_count

__version__ = "0.1.0"

__all__ = ["AutElement", "GroupParams", "Label", "classify", "expected_count", "__version__"]
