"""SRS ambient backscatter simulator and detector."""

from ._srsbs import *  # noqa: F401,F403
from ._srsbs import __version__  # noqa: F401
