"""Maximum-entropy pure-state ensembles with a conserved U(1) charge."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
