"""Closed-form steady state of a driven microring photon-pair source."""

from ._ringpair import *  # noqa: F401,F403
from ._ringpair import __doc__  # noqa: F401

__version__ = "0.1.0"
