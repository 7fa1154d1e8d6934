"""Window presets for discrete (cyclic) and line Gabor systems.

Presets are strings:

    "indicator:k"     ones on 0..k-1
    "gaussian:sigma"  cyclic Gaussian centred at 0 (discrete) or exp(-x^2/(2 sigma^2)) (line)
    "delta"           unit impulse at 0
    "hermite:u"       Hermite function h_u (line only)

Explicit windows are lists of reals or of [re, im] pairs.
"""

import math
from typing import Any, Optional, Union

import numpy as np

from ..exceptions import ParseError


WindowSpec = Union[str, list, np.ndarray]


def _split_preset(spec: str) -> tuple[str, str]:
    name, _, arg = spec.partition(":")
    return name.strip().lower(), arg.strip()


def _float_arg(name: str, arg: str) -> float:
    try:
        return float(arg)
    except ValueError:
        raise ParseError(f"window preset {name!r} needs a numeric argument, got {arg!r}")


def _int_arg(name: str, arg: str) -> int:
    value = _float_arg(name, arg)
    if not value.is_integer():
        raise ParseError(f"window preset {name!r} needs an integer argument, got {arg!r}")
    return int(value)


def _explicit(values: Any, length: Optional[int] = None) -> np.ndarray:
    try:
        arr = [complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v) for v in values]
    except (TypeError, ValueError, IndexError) as e:
        raise ParseError(f"malformed window vector: {e}") from e
    window = np.array(arr, dtype=complex)
    if length is not None and window.size != length:
        raise ParseError(f"window has {window.size} samples, expected {length}")
    return window


def discrete_window(spec: WindowSpec, length: int) -> np.ndarray:
    """A complex window of the given length on Z_N."""
    if isinstance(spec, np.ndarray):
        return _explicit(spec.tolist(), length)
    if not isinstance(spec, str):
        return _explicit(spec, length)

    name, arg = _split_preset(spec)
    t = np.arange(length)
    if name == "delta":
        window = np.zeros(length, dtype=complex)
        window[0] = 1.0
        return window
    if name == "indicator":
        k = _int_arg(name, arg)
        if not 0 < k <= length:
            raise ParseError(f"indicator width must be in 1..{length}, got {k}")
        return (t < k).astype(complex)
    if name == "gaussian":
        sigma = _float_arg(name, arg)
        if sigma <= 0:
            raise ParseError(f"gaussian width must be positive, got {sigma}")
        dist = np.minimum(t, length - t)
        return np.exp(-(dist ** 2) / (2 * sigma ** 2)).astype(complex)
    raise ParseError(f"unknown window preset {spec!r}")


def line_window(spec: WindowSpec, x: np.ndarray) -> np.ndarray:
    """An L^2-normalized window sampled on the real grid x."""
    from ..gabor.hermite import hermite_function

    if not isinstance(spec, str):
        return _explicit(spec, x.size)

    name, arg = _split_preset(spec)
    if name == "gaussian":
        sigma = _float_arg(name, arg or "1")
        if sigma <= 0:
            raise ParseError(f"gaussian width must be positive, got {sigma}")
        return (math.pi * sigma ** 2) ** -0.25 * np.exp(-(x ** 2) / (2 * sigma ** 2)) + 0j
    if name == "hermite":
        return hermite_function(_int_arg(name, arg), x) + 0j
    raise ParseError(f"unknown line window preset {spec!r}")


def describe(spec: WindowSpec) -> Any:
    """JSON-friendly echo of a window spec."""
    if isinstance(spec, str):
        return spec
    values = np.asarray(spec, dtype=complex)
    return [[v.real, v.imag] for v in values]
