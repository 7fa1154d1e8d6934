"""Normalized Hermite functions on a real grid."""

import logging
import math

import numpy as np
from numpy.polynomial import hermite as npherm

from ..exceptions import OrderTooHigh


logger = logging.getLogger(__name__)

HERMITE_ORDER_CAP = 8


def hermite_table(order: int, x: np.ndarray) -> np.ndarray:
    """
    Rows h_0..h_order sampled on x, built by the normalized three-term recurrence

        h_0 = pi^(-1/4) exp(-x^2/2),  h_1 = sqrt(2) x h_0,
        h_u = sqrt(2/u) x h_(u-1) - sqrt((u-1)/u) h_(u-2).
    """
    if order < 0:
        raise ValueError(f"Hermite order must be >= 0, got {order}")
    x = np.asarray(x, dtype=float)
    table = np.empty((order + 1, x.size))
    table[0] = math.pi ** -0.25 * np.exp(-(x ** 2) / 2)
    if order >= 1:
        table[1] = math.sqrt(2.0) * x * table[0]
    for u in range(2, order + 1):
        table[u] = math.sqrt(2.0 / u) * x * table[u - 1] - math.sqrt((u - 1) / u) * table[u - 2]
    return table


def hermite_function(u: int, x: np.ndarray, cap: int = HERMITE_ORDER_CAP) -> np.ndarray:
    """
    L^2-normalized Hermite function h_u on the grid x.

    Raises:
        OrderTooHigh: When u exceeds the order cap
    """
    if u > cap:
        raise OrderTooHigh(f"Hermite order {u} exceeds cap {cap}")
    return hermite_table(u, x)[u]


def hermite_polynomial_form(u: int, x: np.ndarray) -> np.ndarray:
    """h_u = (2^u u! sqrt(pi))^(-1/2) H_u(x) exp(-x^2/2), via numpy's physicists' series."""
    coeffs = np.zeros(u + 1)
    coeffs[u] = 1.0
    norm = (2.0 ** u * math.factorial(u) * math.sqrt(math.pi)) ** -0.5
    return norm * npherm.hermval(x, coeffs) * np.exp(-(np.asarray(x) ** 2) / 2)


def orthonormality_residual(x: np.ndarray, weights: np.ndarray, order: int) -> float:
    """max |<h_u, h_v> - delta_uv| for u, v <= order under the given quadrature."""
    table = hermite_table(order, x)
    gram = (table * weights) @ table.T
    residual = float(np.max(np.abs(gram - np.eye(order + 1))))
    logger.debug(f"Hermite orthonormality residual (order {order}, {x.size} nodes): {residual:.3e}")
    return residual
