"""bswidth: finite matrix-group computations around the pi-radical,
Baer-Suzuki-type tuple criteria, generation widths and class structure
constants, with exact arithmetic over small finite fields."""

from .kernel import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
