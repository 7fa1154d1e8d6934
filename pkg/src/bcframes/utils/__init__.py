"""Shared utilities: JSON codec, quadrature rules and window presets."""

from .quadrature import tensor_grid, trapezoid_rule
from .windows import discrete_window, line_window

__all__ = ["tensor_grid", "trapezoid_rule", "discrete_window", "line_window"]
