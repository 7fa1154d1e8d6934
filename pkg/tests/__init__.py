"""Tests for bicomplex-frames."""
