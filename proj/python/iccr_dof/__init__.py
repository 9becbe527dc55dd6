"""DoF regions and scheme simulation for the two-user interference channel
with a cognitive relay under delayed feedback."""

from ._core import (
    classify,
    cognitive_ic,
    region,
    scheme_summary,
    simulate,
    sweep,
    table2,
)

__all__ = [
    "classify",
    "cognitive_ic",
    "region",
    "scheme_summary",
    "simulate",
    "sweep",
    "table2",
]
