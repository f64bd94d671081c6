"""Multi-view shot summarization by joint embedding and row-sparse selection."""

from ._mvsumm import *  # noqa: F401,F403
from ._mvsumm import __doc__  # noqa: F401

__version__ = "0.1.0"
