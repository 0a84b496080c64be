"""Rational functions with prescribed real critical points.

Continuation solver for all equivalence classes, exact combinatorial
counts, the Fuchsian/Bethe dictionary, the electrostatic model, and net
tracing.
"""

__version__ = "0.1.0"
