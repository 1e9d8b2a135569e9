"""JSON scenario files for the command line."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

MODELS = ("double_jc", "tavis", "multimode_steady")


class ConfigError(ValueError):
    """Invalid scenario; ``field`` names the offending key."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass(frozen=True)
class Bath:
    Gamma: float = 1.0
    gamma: float = 10.0
    t_max: float = 50.0
    dt: float = 0.01


@dataclass(frozen=True)
class Scenario:
    model: str = "tavis"
    family: str = "phi"
    alpha_deg: float = 45.0
    photons: int = 0
    tau_max: float = 20.0
    tau_steps: int = 4001
    omega_over_lambda: float = 0.0
    pair: str = "same"
    bath: Bath | None = None
    with_rho: bool = False
    alpha_grid_deg: tuple[float, ...] = field(default=())

    @property
    def alpha(self) -> float:
        return math.radians(self.alpha_deg)

    def taus(self) -> np.ndarray:
        return np.linspace(0.0, self.tau_max, self.tau_steps)


def _number(raw: dict, key: str, default, kind=float):
    if key not in raw:
        return default
    val = raw[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ConfigError(key, f"expected a number, got {val!r}")
    if kind is int:
        if float(val) != int(val):
            raise ConfigError(key, f"expected an integer, got {val!r}")
        return int(val)
    if not math.isfinite(val):
        raise ConfigError(key, "must be finite")
    return float(val)


def _choice(raw: dict, key: str, default: str, options) -> str:
    val = raw.get(key, default)
    if val not in options:
        raise ConfigError(key, f"must be one of {list(options)}, got {val!r}")
    return val


def _alpha_grid(raw: dict) -> tuple[float, ...]:
    if "alpha_grid_deg" in raw:
        grid = raw["alpha_grid_deg"]
        if not isinstance(grid, list) or not grid:
            raise ConfigError("alpha_grid_deg", "must be a non-empty list of angles")
        for a in grid:
            if isinstance(a, bool) or not isinstance(a, (int, float)) or not 0 <= a <= 90:
                raise ConfigError("alpha_grid_deg", f"angle {a!r} outside [0, 90]")
        return tuple(float(a) for a in grid)
    if any(k in raw for k in ("alpha_start_deg", "alpha_stop_deg", "alpha_step_deg")):
        start = _number(raw, "alpha_start_deg", 0.0)
        stop = _number(raw, "alpha_stop_deg", 90.0)
        step = _number(raw, "alpha_step_deg", 0.5)
        if step <= 0:
            raise ConfigError("alpha_step_deg", "must be positive")
        if not 0 <= start <= stop <= 90:
            raise ConfigError("alpha_start_deg", "need 0 <= start <= stop <= 90")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return tuple(round(start + i * step, 12) for i in range(count))
    return ()


def parse_scenario(raw: dict) -> Scenario:
    if not isinstance(raw, dict):
        raise ConfigError("<root>", "scenario must be a JSON object")
    known = {f for f in Scenario.__dataclass_fields__} | {
        "alpha_start_deg", "alpha_stop_deg", "alpha_step_deg"
    }
    for key in raw:
        if key not in known:
            raise ConfigError(key, "unknown field")
    model = _choice(raw, "model", "tavis", MODELS)
    family = _choice(raw, "family", "phi", ("phi", "psi"))
    pair = _choice(raw, "pair", "same", ("same", "cross"))
    alpha_deg = _number(raw, "alpha_deg", 45.0)
    if not 0 <= alpha_deg <= 90:
        raise ConfigError("alpha_deg", f"must lie in [0, 90], got {alpha_deg}")
    photons = _number(raw, "photons", 0, int)
    if photons < 0:
        raise ConfigError("photons", "must be >= 0")
    tau_max = _number(raw, "tau_max", 20.0)
    if tau_max <= 0:
        raise ConfigError("tau_max", "must be positive")
    tau_steps = _number(raw, "tau_steps", 4001, int)
    if tau_steps < 2:
        raise ConfigError("tau_steps", "must be >= 2")
    omega = _number(raw, "omega_over_lambda", 0.0)
    with_rho = raw.get("with_rho", False)
    if not isinstance(with_rho, bool):
        raise ConfigError("with_rho", "must be true or false")
    if model == "double_jc" and pair != "same":
        raise ConfigError("pair", "the double JC model only has the A1 A2 pair")

    bath = None
    if "bath" in raw:
        b = raw["bath"]
        if not isinstance(b, dict):
            raise ConfigError("bath", "must be an object")
        for key in b:
            if key not in Bath.__dataclass_fields__:
                raise ConfigError(f"bath.{key}", "unknown field")
        vals = {}
        for key, default in (("Gamma", 1.0), ("gamma", 10.0), ("t_max", 50.0), ("dt", 0.01)):
            v = _number(b, key, default)
            if v <= 0:
                raise ConfigError(f"bath.{key}", "must be positive")
            vals[key] = v
        bath = Bath(**vals)
    elif model == "multimode_steady":
        bath = Bath()

    return Scenario(
        model=model,
        family=family,
        alpha_deg=alpha_deg,
        photons=photons,
        tau_max=tau_max,
        tau_steps=tau_steps,
        omega_over_lambda=omega,
        pair=pair,
        bath=bath,
        with_rho=with_rho,
        alpha_grid_deg=_alpha_grid(raw),
    )


def load_scenario(path: str | Path) -> Scenario:
    try:
        raw = json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise ConfigError("--config", f"no such file {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("--config", f"invalid JSON: {exc}") from exc
    return parse_scenario(raw)
