"""Frequency analysis for single-clock timed automata.

Thin re-export of the native module.  Rationals cross the boundary as
canonical "p/q" strings; use :func:`fraction` to turn them into
:class:`fractions.Fraction` values.
"""

from fractions import Fraction

from _tafreq import (  # noqa: F401
    ModelRuntimeError,
    ModelSemanticError,
    ModelSyntaxError,
    MultiClockError,
    NotDeterministicError,
    TimedAutomaton,
    bounds,
    cornerpoint_dot,
    cornerpoint_summary,
    emptiness,
    parse,
    parse_file,
    print_model,
    render_dot,
    sample_frequencies,
    universality,
    zeno_universality,
)

__all__ = [
    "ModelRuntimeError",
    "ModelSemanticError",
    "ModelSyntaxError",
    "MultiClockError",
    "NotDeterministicError",
    "TimedAutomaton",
    "bounds",
    "cornerpoint_dot",
    "cornerpoint_summary",
    "emptiness",
    "fraction",
    "parse",
    "parse_file",
    "print_model",
    "render_dot",
    "sample_frequencies",
    "universality",
    "zeno_universality",
]


def fraction(text: str) -> Fraction:
    """Parse a canonical "p/q" rational string."""
    return Fraction(text)
