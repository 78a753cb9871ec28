"""Two-qubit separability and steerability from 4D steering-outcome geometry."""

from ._steergeo import *  # noqa: F401,F403
from ._steergeo import __doc__  # noqa: F401
