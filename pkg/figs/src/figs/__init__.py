"""Figure rendering and summary tables for congestion-lab experiment CSVs."""

from .core import FigsError, FigureSpec, read_rows, render, summarize

__all__ = ["FigsError", "FigureSpec", "read_rows", "render", "summarize"]
