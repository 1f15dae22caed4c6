"""Graded equivariant twistings of finite groupoids: cohomology, extensions,
transgression and twisted representations."""

from ._twistbench import *  # noqa: F401,F403
from ._twistbench import __doc__  # noqa: F401

__version__ = "0.1.0"
