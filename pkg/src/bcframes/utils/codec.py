"""JSON decoding of request documents and encoding of reports."""

import json
import logging
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np

from ..exceptions import ParseError
from ..frames.analysis import FrameFamily
from ..frames.hilbert import BcVector


logger = logging.getLogger(__name__)


def loads(text: str, source: str = "<input>") -> Any:
    """
    Parse a JSON document.

    Raises:
        ParseError: With the line and column of the offending token
    """
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{source}: {e.msg}", line=e.lineno, column=e.colno) from e


def load_document(source: Union[str, Path]) -> Any:
    """
    Load a request from a file path or an inline JSON string.

    Anything starting with '{' or '[' after whitespace is treated as inline JSON.
    """
    text = str(source)
    if text.lstrip()[:1] in ("{", "["):
        return loads(text, "<inline>")
    path = Path(text)
    try:
        content = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from e
    logger.debug(f"Read request document {path} ({len(content)} bytes)")
    return loads(content, str(path))


def _require(data: Any, key: str, what: str) -> Any:
    if not isinstance(data, dict) or key not in data:
        raise ParseError(f"{what} needs a {key!r} field")
    return data[key]


def decode_frame(data: Any) -> FrameFamily:
    """Frame spec {"dim": d, "vectors": [BcVector, ...]}."""
    return FrameFamily.from_dict(data)


def decode_signals(data: Any) -> Optional[list[BcVector]]:
    """Optional "signal" (one BcVector) or "signals" (a list) next to a frame spec."""
    if not isinstance(data, dict):
        return None
    if "signals" in data:
        return [BcVector.from_dict(s) for s in data["signals"]]
    if "signal" in data:
        return [BcVector.from_dict(data["signal"])]
    return None


def decode_gabor(data: Any) -> dict[str, Any]:
    """
    Gabor spec {"N": n, "plus": {"a", "M", "window"}, "minus": {...}}.

    Returns:
        Keyword arguments N, a, m_plus, c, m_minus, g, h
    """
    N = _require(data, "N", "Gabor spec")
    plus = _require(data, "plus", "Gabor spec")
    minus = _require(data, "minus", "Gabor spec")
    try:
        return {
            "N": int(N),
            "a": int(_require(plus, "a", "plus component")),
            "m_plus": int(_require(plus, "M", "plus component")),
            "c": int(_require(minus, "a", "minus component")),
            "m_minus": int(_require(minus, "M", "minus component")),
            "g": plus.get("window", "delta"),
            "h": minus.get("window", "delta"),
        }
    except (TypeError, ValueError) as e:
        raise ParseError(f"malformed Gabor spec: {e}") from e


def decode_psi(data: Any, defaults: Optional[dict[str, Any]] = None) -> dict[str, Any]:
    """
    Psi spec {"plus": {"a", "M", "window"}, "minus": {...}, "half_width", "points", "frequency_cutoff"}.

    Missing grid fields fall back to `defaults` (the config "quadrature" section).
    """
    defaults = defaults or {}
    plus = _require(data, "plus", "psi spec")
    minus = _require(data, "minus", "psi spec")
    try:
        return {
            "plus": (float(_require(plus, "a", "plus line")), int(_require(plus, "M", "plus line")),
                     plus.get("window", "gaussian:1")),
            "minus": (float(_require(minus, "a", "minus line")), int(_require(minus, "M", "minus line")),
                      minus.get("window", "gaussian:1")),
            "half_width": float(data.get("half_width", defaults.get("plane_half_width", 8.0))),
            "points": int(data.get("points", defaults.get("plane_points", 257))),
            "frequency_cutoff": float(data.get("frequency_cutoff", defaults.get("frequency_cutoff", 10.0))),
            "hermite_order_cap": int(data.get("hermite_order_cap", defaults.get("hermite_order_cap", 8))),
        }
    except (TypeError, ValueError) as e:
        raise ParseError(f"malformed psi spec: {e}") from e


def _default(obj: Any) -> Any:
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(report: Any, indent: Optional[int] = 2) -> str:
    """Deterministic JSON: sorted keys, numpy scalars and arrays unwrapped."""
    return json.dumps(report, indent=indent, sort_keys=True, default=_default)
