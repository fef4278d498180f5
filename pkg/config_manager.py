import copy
import json
import os
import sys
from typing import Any, Optional


CONFIG_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "config.json")


DEFAULT_CONFIG: dict[str, Any] = {
    "seed": 20240917,
    "profile": "balanced",
    "boundary": {
        "samples": 1024,
        "min_samples": 4,
        "pinned": False,
    },
    "oracle": {
        "n_outer": 256,
        "n_inner": 256,
        "log_min_steps": 64,
        "log_max_steps": 4096,
        "log_stable_tol": 1e-10,
    },
    "tolerances": {
        "inflate": 1e-9,
        "pointwise": 1e-9,
        "hausdorff": 2e-2,
        "residual": 1e-9,
        "fd": 1e-6,
    },
    "solvers": {
        "starlike_tol": 1e-7,
        "nonconvexity_tol": 1e-6,
        "witness_tol": 1e-9,
        "theta_scan": 1024,
        "nonconvexity_samples": 4096,
    },
    "verify": {
        "radii": [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9],
        "nesting_radii": [0.2, 0.4, 0.6, 0.8],
        "witness_targets": 1000,
        "plane_targets": 100,
        "jacobian_grid": 100,
        "corner_a": [0.5, 1.0, 2.0, 4.0],
        "corner_deltas": [1e-2, 1e-3, 1e-4, 1e-5, 1e-6],
        "include_timing": True,
    },
    "telemetry": {
        "enabled": True,
        "log_path": "logs/verify_metrics.jsonl",
    },
}


# "custom" keeps the sizes written in the config sections.
GRID_PROFILES: dict[str, Any] = {
    "custom": {},
    "fast": {
        "boundary_samples": 256,
        "oracle_n": 48,
        "jacobian_grid": 40,
        "witness_targets": 100,
        "plane_targets": 20,
    },
    "balanced": {
        "boundary_samples": 1024,
        "oracle_n": 256,
        "jacobian_grid": 100,
        "witness_targets": 1000,
        "plane_targets": 100,
    },
    "thorough": {
        "boundary_samples": 4096,
        "oracle_n": 384,
        "jacobian_grid": 200,
        "witness_targets": 5000,
        "plane_targets": 500,
    },
}

_MIN_ORACLE = 8
_MIN_STEPS = 2


def _deep_merge(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    out = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _deep_merge(out[key], value)
        else:
            out[key] = value
    return out


def _as_int(value: Any, default: int, minimum: int) -> int:
    try:
        out = int(value)
    except (TypeError, ValueError):
        out = default
    return max(out, minimum)


def _as_float(value: Any, default: float) -> float:
    try:
        out = float(value)
    except (TypeError, ValueError):
        return default
    return out if out > 0 else default


def _sanitize_radii(values: Any, default: list[float]) -> list[float]:
    if not isinstance(values, list):
        return list(default)
    out = []
    for v in values:
        try:
            r = float(v)
        except (TypeError, ValueError):
            continue
        if 0.0 < r < 1.0:
            out.append(r)
    return sorted(set(out)) or list(default)


def _normalize(config: dict[str, Any]) -> dict[str, Any]:
    defaults = DEFAULT_CONFIG
    for section, value in defaults.items():
        if isinstance(value, dict) and not isinstance(config.get(section), dict):
            config[section] = copy.deepcopy(value)
    config["seed"] = _as_int(config.get("seed"), int(defaults["seed"]), 0)
    config["profile"] = str(config.get("profile", "balanced")).lower()

    boundary = config["boundary"]
    boundary["min_samples"] = _as_int(boundary.get("min_samples"), 4, 4)
    boundary["samples"] = _as_int(
        boundary.get("samples"), 1024, boundary["min_samples"]
    )
    boundary["pinned"] = bool(boundary.get("pinned", False))

    oracle = config["oracle"]
    oracle["n_outer"] = _as_int(oracle.get("n_outer"), 256, _MIN_ORACLE)
    oracle["n_inner"] = _as_int(oracle.get("n_inner"), 256, _MIN_ORACLE)
    oracle["log_min_steps"] = _as_int(oracle.get("log_min_steps"), 64, _MIN_STEPS)
    oracle["log_max_steps"] = _as_int(
        oracle.get("log_max_steps"), 4096, 2 * oracle["log_min_steps"]
    )
    oracle["log_stable_tol"] = _as_float(oracle.get("log_stable_tol"), 1e-10)

    tolerances = config["tolerances"]
    for key, default in DEFAULT_CONFIG["tolerances"].items():
        tolerances[key] = _as_float(tolerances.get(key), default)

    solvers = config["solvers"]
    solvers["starlike_tol"] = max(_as_float(solvers.get("starlike_tol"), 1e-7), 1e-12)
    solvers["nonconvexity_tol"] = max(
        _as_float(solvers.get("nonconvexity_tol"), 1e-6), 1e-6
    )
    solvers["witness_tol"] = _as_float(solvers.get("witness_tol"), 1e-9)
    solvers["theta_scan"] = _as_int(solvers.get("theta_scan"), 1024, 64)
    solvers["nonconvexity_samples"] = _as_int(
        solvers.get("nonconvexity_samples"), 4096, 16
    )

    verify = config["verify"]
    verify_defaults = DEFAULT_CONFIG["verify"]
    verify["radii"] = _sanitize_radii(verify.get("radii"), verify_defaults["radii"])
    verify["nesting_radii"] = _sanitize_radii(
        verify.get("nesting_radii"), verify_defaults["nesting_radii"]
    )
    verify["witness_targets"] = _as_int(verify.get("witness_targets"), 1000, 1)
    verify["plane_targets"] = _as_int(verify.get("plane_targets"), 100, 1)
    verify["jacobian_grid"] = _as_int(verify.get("jacobian_grid"), 100, 8)
    corner_a = [
        float(a) for a in verify.get("corner_a", []) if isinstance(a, (int, float))
    ]
    verify["corner_a"] = [a for a in corner_a if a > 0] or [0.5, 1.0, 2.0, 4.0]
    deltas = [
        float(d)
        for d in verify.get("corner_deltas", [])
        if isinstance(d, (int, float)) and 0 < d < 1
    ]
    verify["corner_deltas"] = sorted(set(deltas), reverse=True)
    if len(verify["corner_deltas"]) < 2:
        verify["corner_deltas"] = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6]
    verify["include_timing"] = bool(verify.get("include_timing", True))

    telemetry = config["telemetry"]
    telemetry["enabled"] = bool(telemetry.get("enabled", True))
    telemetry["log_path"] = str(
        telemetry.get("log_path") or "logs/verify_metrics.jsonl"
    )
    return config


def load_config(path: Optional[str] = None) -> dict[str, Any]:
    config = copy.deepcopy(DEFAULT_CONFIG)
    config_path = path or CONFIG_PATH
    if os.path.exists(config_path):
        try:
            with open(config_path, "r", encoding="utf-8") as f:
                user_cfg = json.load(f)
            if not isinstance(user_cfg, dict):
                raise ValueError("top level must be an object")
            config = _deep_merge(config, user_cfg)
        except Exception as exc:
            print(
                f"[config] Could not load {config_path}, using defaults: {exc}",
                file=sys.stderr,
            )
    elif path is not None:
        print(f"[config] {config_path} not found, using defaults", file=sys.stderr)
    return _normalize(config)


def save_config(config: dict[str, Any], path: Optional[str] = None) -> None:
    with open(path or CONFIG_PATH, "w", encoding="utf-8") as f:
        json.dump(config, f, indent=4, ensure_ascii=False)


def get_profile_grid(config: dict[str, Any]) -> dict[str, Any]:
    """Concrete grid sizes for a run; unknown profile names fall back to balanced."""
    verify = config["verify"]
    grid = {
        "boundary_samples": int(config["boundary"]["samples"]),
        "oracle_n": int(config["oracle"]["n_outer"]),
        "oracle_n_inner": int(config["oracle"]["n_inner"]),
        "jacobian_grid": int(verify["jacobian_grid"]),
        "witness_targets": int(verify["witness_targets"]),
        "plane_targets": int(verify["plane_targets"]),
    }
    profile_name = str(config.get("profile", "balanced")).lower()
    profile = GRID_PROFILES.get(profile_name, GRID_PROFILES["balanced"])
    grid.update(profile)
    if "oracle_n" in profile:
        grid["oracle_n_inner"] = profile["oracle_n"]
    # an explicit --grid beats the profile
    if config["boundary"].get("pinned"):
        grid["boundary_samples"] = int(config["boundary"]["samples"])
    return grid
