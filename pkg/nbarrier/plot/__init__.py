"""Phase-plane SVG figures for nbarrier."""

from .svg_plot import COLORS, conic_points, render_svg  # noqa: F401

__all__ = ["COLORS", "conic_points", "render_svg"]
