"""Configuration loading: config.json, environment and defaults."""

import copy
import json
import logging
import os
from pathlib import Path
from typing import Any, Optional


logger = logging.getLogger(__name__)

SEED_ENV = "BCFRAMES_SEED"
CONFIG_ENV = "BCFRAMES_CONFIG"


def get_default_config() -> dict[str, Any]:
    """Get default configuration."""
    return {
        "tolerances": {
            "frame_rank": 1e-10,
            "tight_rel": 1e-9,
            "reconstruction": 1e-9,
            "hyperbolic": 1e-10,
            "zero_divisor": 1e-12,
            "jacobi": 1e-13,
            "jacobi_max_sweeps": 100,
            "quadrature": 1e-3,
            "hermite": 1e-8,
        },
        "random": {
            "seed": 20211,
            "signals": 100,
            "rayleigh_samples": 10000,
        },
        "quadrature": {
            "box": [-4.0, 4.0],
            "points_per_axis": 17,
            "refined_points_per_axis": 21,
            "nu": 1.0,
            "plane_half_width": 8.0,
            "plane_points": 257,
            "frequency_cutoff": 10.0,
            "hermite_order_cap": 8,
        },
        "selftest": {
            "quick": [
                "algebra",
                "schwarz",
                "component_bounds",
                "weighted_onb",
                "exactness",
                "operator",
                "heil_walnut",
                "critical_density",
            ],
        },
        "logging": {
            "level": "INFO",
        },
    }


def _merge(base: dict[str, Any], override: dict[str, Any], path: str = "") -> dict[str, Any]:
    for key, value in override.items():
        if key not in base:
            logger.warning(f"Unknown config key ignored: {path}{key}")
            continue
        if isinstance(base[key], dict) and isinstance(value, dict):
            _merge(base[key], value, f"{path}{key}.")
        else:
            base[key] = value
    return base


def load_config(config_path: Optional[Path] = None) -> dict[str, Any]:
    """
    Load configuration from config.json, layered over the defaults.

    Args:
        config_path: Path to config file (default: $BCFRAMES_CONFIG, then project root config.json)

    Returns:
        Configuration dictionary
    """
    config = get_default_config()
    if config_path is None:
        env_path = os.environ.get(CONFIG_ENV)
        config_path = Path(env_path) if env_path else Path(__file__).parent.parent.parent / "config.json"

    if not config_path.exists():
        logger.warning(f"Config file not found: {config_path}, using defaults")
        return config

    try:
        with open(config_path, "r", encoding="utf-8") as f:
            loaded = json.load(f)
        logger.info(f"Loaded configuration from {config_path}")
        return _merge(config, loaded)
    except Exception as e:
        logger.error(f"Error loading config: {e}, using defaults")
        return get_default_config()


def resolve_seed(config: dict[str, Any], flag: Optional[int] = None) -> int:
    """CLI flag, then $BCFRAMES_SEED, then the config file value."""
    if flag is not None:
        return int(flag)
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            logger.warning(f"Ignoring non-integer {SEED_ENV}={env!r}")
    return int(config["random"]["seed"])


def apply_overrides(config: dict[str, Any], overrides: Optional[dict[str, float]] = None) -> dict[str, Any]:
    """Copy of the config with tolerance overrides (from --tolerance name=value) applied."""
    config = copy.deepcopy(config)
    for name, value in (overrides or {}).items():
        if name not in config["tolerances"]:
            logger.warning(f"Unknown tolerance ignored: {name}")
            continue
        config["tolerances"][name] = value
    return config
