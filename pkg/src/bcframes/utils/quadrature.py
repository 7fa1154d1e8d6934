"""Uniform trapezoid quadrature on boxes."""

import numpy as np


def trapezoid_rule(lo: float, hi: float, points: int) -> tuple[np.ndarray, np.ndarray]:
    """
    Nodes and weights of the composite trapezoid rule on [lo, hi].

    Args:
        lo: Left end of the interval
        hi: Right end of the interval
        points: Number of nodes (>= 2)

    Returns:
        (nodes, weights), both of length `points`
    """
    if points < 2:
        raise ValueError(f"trapezoid rule needs at least 2 points, got {points}")
    if not hi > lo:
        raise ValueError(f"empty interval [{lo}, {hi}]")

    nodes = np.linspace(lo, hi, points)
    step = (hi - lo) / (points - 1)
    weights = np.full(points, step)
    weights[0] = weights[-1] = step / 2
    return nodes, weights


def tensor_grid(lo: float, hi: float, points: int, dim: int) -> tuple[np.ndarray, np.ndarray]:
    """
    Tensor-product trapezoid grid on the cube [lo, hi]^dim.

    Returns:
        (nodes, weights) with nodes of shape (points**dim, dim)
    """
    x, w = trapezoid_rule(lo, hi, points)
    axes = np.meshgrid(*([x] * dim), indexing="ij")
    nodes = np.stack([a.ravel() for a in axes], axis=1)

    weights = w
    for _ in range(dim - 1):
        weights = np.multiply.outer(weights, w)
    return nodes, weights.ravel()


def gaussian_half_width(rate: float, rel_tail: float = 1e-8) -> float:
    """Half width T with exp(-rate * T^2) below `rel_tail`."""
    if rate <= 0:
        raise ValueError("gaussian rate must be positive")
    return float(np.sqrt(-np.log(rel_tail) / rate))
