"""Monogamy scores of quantum correlation measures for n-qubit pure states."""

from ._qorrelate import *  # noqa: F401,F403
from ._qorrelate import MEASURES, __doc__  # noqa: F401

__version__ = "0.1.0"
