"""Two programming paradigms modelled as plain Python classes.

``paradigms.dataflow`` holds bounded pipes, firing nodes and network
schedulers; ``paradigms.constraint`` holds interval constraints over shared
real unknowns, built on the outward-rounded arithmetic in
``paradigms.interval``.
"""
from .interval import EMPTY, Interval, entire, make

__version__ = "0.1.0"

__all__ = ["EMPTY", "Interval", "entire", "make"]
