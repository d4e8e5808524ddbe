"""Single-photon response of finite-level open quantum systems."""

from ._photon_slh import *  # noqa: F401,F403
from ._photon_slh import __doc__  # noqa: F401

__version__ = "0.1.0"
