"""Figure rendering for ergokit sweep output files."""

from .render import FigureSpec, render, rmt_value

__all__ = ["FigureSpec", "render", "rmt_value"]
