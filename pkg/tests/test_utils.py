"""Tests for the JSON codec, quadrature rules and window presets."""

import json
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from bcframes.exceptions import ParseError
from bcframes.frames.analysis import embedded_onb
from bcframes.frames.bicomplex import Hyperbolic
from bcframes.utils.codec import (
    decode_frame,
    decode_gabor,
    decode_psi,
    decode_signals,
    dumps,
    load_document,
    loads,
)
from bcframes.utils.quadrature import gaussian_half_width, tensor_grid, trapezoid_rule
from bcframes.utils.windows import describe, discrete_window, line_window


class TestCodec:
    """Test request decoding and report encoding."""

    def test_parse_error_position(self):
        """Test ParseError carries line and column."""
        with pytest.raises(ParseError) as exc_info:
            loads('{\n  "dim": 2,\n  "vectors": [}\n')
        assert exc_info.value.line == 3
        assert exc_info.value.column is not None
        assert "line 3" in str(exc_info.value)

    def test_inline_document(self):
        """Test inline JSON is recognized."""
        assert load_document(' {"fixture": "cexp"}') == {"fixture": "cexp"}

    def test_file_document(self, tmp_path):
        """Test reading a spec file."""
        path = tmp_path / "frame.json"
        path.write_text(json.dumps(embedded_onb(2).to_dict()))
        family = decode_frame(load_document(str(path)))
        assert len(family) == 2

    def test_missing_file(self, tmp_path):
        """Test ParseError for an unreadable path."""
        with pytest.raises(ParseError):
            load_document(str(tmp_path / "missing.json"))

    def test_frame_without_vectors(self):
        """Test a frame spec without vectors."""
        with pytest.raises(ParseError):
            decode_frame({"dim": 2})

    def test_signals(self):
        """Test single and multiple signals next to a frame spec."""
        vector = {"plus": [[1, 0]], "minus": [[0, 1]]}
        assert len(decode_signals({"signal": vector})) == 1
        assert len(decode_signals({"signals": [vector, vector]})) == 2
        assert decode_signals({"vectors": []}) is None

    def test_gabor(self):
        """Test the Gabor spec with the default delta window."""
        args = decode_gabor({"N": 8, "plus": {"a": 2, "M": 4}, "minus": {"a": 4, "M": 2, "window": "indicator:2"}})
        assert args == {"N": 8, "a": 2, "m_plus": 4, "c": 4, "m_minus": 2, "g": "delta", "h": "indicator:2"}

    def test_gabor_missing_field(self):
        """Test a Gabor spec without N."""
        with pytest.raises(ParseError):
            decode_gabor({"plus": {"a": 2, "M": 4}, "minus": {"a": 2, "M": 4}})

    def test_psi_defaults(self):
        """Test grid fields fall back to the quadrature config."""
        args = decode_psi(
            {"plus": {"a": 1, "M": 2}, "minus": {"a": 0.5, "M": 4, "window": "hermite:1"}},
            {"plane_points": 129},
        )
        assert args["plus"] == (1.0, 2, "gaussian:1")
        assert args["minus"] == (0.5, 4, "hermite:1")
        assert args["points"] == 129
        assert args["half_width"] == 8.0

    def test_psi_malformed(self):
        """Test ParseError on a non-numeric step."""
        with pytest.raises(ParseError):
            decode_psi({"plus": {"a": "x", "M": 2}, "minus": {"a": 1, "M": 2}})

    def test_dumps(self):
        """Test numpy values, complex numbers, sets and to_dict objects."""
        text = dumps({
            "b": np.float64(1.5),
            "a": np.arange(2),
            "z": 1 + 2j,
            "s": {3, 1},
            "h": Hyperbolic(1.0, 2.0),
            "flag": np.bool_(True),
        })
        data = json.loads(text)
        assert data == {"a": [0, 1], "b": 1.5, "z": [1.0, 2.0], "s": [1, 3], "h": {"plus": 1.0, "minus": 2.0}, "flag": True}
        assert text.index('"a"') < text.index('"b"')

    def test_dumps_rejects_unknown(self):
        """Test TypeError for unsupported objects."""
        with pytest.raises(TypeError):
            dumps({"x": object()})


class TestQuadrature:
    """Test trapezoid rules."""

    def test_weights(self):
        """Test end weights are halved."""
        x, w = trapezoid_rule(0.0, 1.0, 5)
        assert_allclose(x, [0, 0.25, 0.5, 0.75, 1.0])
        assert_allclose(w, [0.125, 0.25, 0.25, 0.25, 0.125])

    @pytest.mark.parametrize("points,lo,hi", [(1, 0.0, 1.0), (3, 1.0, 1.0)])
    def test_invalid(self, points, lo, hi):
        """Test degenerate rules."""
        with pytest.raises(ValueError):
            trapezoid_rule(lo, hi, points)

    def test_tensor_grid(self):
        """Test the tensor grid integrates a Gaussian in two dimensions."""
        nodes, weights = tensor_grid(-6.0, 6.0, 49, 2)
        assert nodes.shape == (49 * 49, 2)
        total = np.sum(weights * np.exp(-np.sum(nodes ** 2, axis=1)))
        assert total == pytest.approx(math.pi, rel=1e-10)

    def test_gaussian_half_width(self):
        """Test the tail cut for exp(-x^2 / 2)."""
        T = gaussian_half_width(0.5, 1e-8)
        assert math.exp(-0.5 * T ** 2) == pytest.approx(1e-8)
        with pytest.raises(ValueError):
            gaussian_half_width(0.0)


class TestWindows:
    """Test window presets."""

    def test_discrete_presets(self):
        """Test delta, indicator and cyclic Gaussian windows."""
        assert_allclose(discrete_window("delta", 4), [1, 0, 0, 0])
        assert_allclose(discrete_window("indicator:2", 4), [1, 1, 0, 0])
        g = discrete_window("gaussian:1", 8)
        assert g[1] == pytest.approx(g[7])

    def test_explicit(self):
        """Test explicit real and complex windows."""
        assert_allclose(discrete_window([1, [0, 1]], 2), [1, 1j])
        with pytest.raises(ParseError):
            discrete_window([1, 2, 3], 2)

    @pytest.mark.parametrize(
        "spec", ["indicator:0", "indicator:9", "indicator:2.5", "indicator:inf", "gaussian:-1", "gaussian:x", "box:2"]
    )
    def test_invalid_discrete(self, spec):
        """Test malformed presets."""
        with pytest.raises(ParseError):
            discrete_window(spec, 8)

    def test_line_windows_are_normalized(self):
        """Test Gaussian and Hermite line windows have unit norm."""
        x, w = trapezoid_rule(-10.0, 10.0, 401)
        for spec in ("gaussian:1", "gaussian:2", "hermite:3"):
            window = line_window(spec, x)
            assert np.sum(w * np.abs(window) ** 2) == pytest.approx(1.0, rel=1e-10)

    def test_integral_preset_arguments(self):
        """Test fractional widths and orders are rejected, integral floats accepted."""
        assert_allclose(discrete_window("indicator:2.0", 4), [1, 1, 0, 0])
        with pytest.raises(ParseError, match="integer"):
            discrete_window("indicator:2.5", 8)
        with pytest.raises(ParseError, match="integer"):
            line_window("hermite:1.5", np.zeros(3))

    def test_unknown_line_window(self):
        """Test ParseError for a discrete-only preset on the line."""
        with pytest.raises(ParseError):
            line_window("delta", np.zeros(3))

    def test_describe(self):
        """Test the JSON echo of a window."""
        assert describe("delta") == "delta"
        assert describe([1, 2j]) == [[1.0, 0.0], [0.0, 2.0]]
