"""Signed max-plus linear algebra and a numeric valuation lab.

The subpackages split the work into layers: ``semiring`` holds the scalar
arithmetic, ``matrix`` the exact linear algebra, ``polynomial`` the root
machinery, ``spectral`` the definiteness and eigen theory, and ``valuation``
the bridge to classical floating-point spectra.  Everything public in those
modules is re-exported here.
"""

from . import matrix, polynomial, semiring, spectral, valuation
from .matrix import *  # noqa: F401,F403
from .polynomial import *  # noqa: F401,F403
from .semiring import *  # noqa: F401,F403
from .spectral import *  # noqa: F401,F403
from .valuation import *  # noqa: F401,F403

__version__ = "0.1.0"

__all__ = (
    semiring.__all__
    + matrix.__all__
    + polynomial.__all__
    + spectral.__all__
    + valuation.__all__
)
