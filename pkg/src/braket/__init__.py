"""Bra-ket formalism on finite-dimensional complex Hilbert spaces."""

from .spaces import *  # noqa: F401,F403
from .operators import *  # noqa: F401,F403
from .hilbert_schmidt import *  # noqa: F401,F403
from .tensor import *  # noqa: F401,F403
from .quantum import *  # noqa: F401,F403

__version__ = "0.1.0"
