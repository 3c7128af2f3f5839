"""Python bindings for the k2u schedulability library."""

from ._core import *  # noqa: F401,F403
from ._core import ModelError, Task, TaskSet, Verdict  # noqa: F401

__version__ = "0.1.0"
