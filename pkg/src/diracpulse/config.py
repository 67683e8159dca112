"""JSON experiment configuration with defaults and strict key checking."""
import json
import math
from dataclasses import dataclass
from typing import Optional

DEFAULTS = {
    "grid": {"n_points": 1024, "length": 64.0},
    "physics": {"mass": 1.0, "charge": 1.0},
    "packet": {"kind": "gaussian", "k0": 1.0, "sigma_x": 4.0, "x0": None,
               "branch": "+", "mode_index": None},
    "pulse": {"t_a": 1.0, "t_b": 2.0, "f": None, "f_list": None, "delta_target": None},
    "integrator": {"enabled": True, "n_steps": 512, "step_counts": [64, 128, 256, 512]},
    "outputs": {"csv_path": None, "svg_path": None},
}
# used when no f / f_list / delta_target is given
DEFAULT_F = 8.0
# verify runs dense checks; without an explicit grid it uses this one
VERIFY_GRID = {"n_points": 64, "length": 64.0}


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    n_points: int
    length: float
    mass: float
    charge: float
    kind: str
    k0: float
    sigma_x: float
    x0: Optional[float]
    branch: str
    mode_index: Optional[int]
    t_a: float
    t_b: float
    f: Optional[float]
    f_list: Optional[list]
    delta_target: Optional[float]
    integrator_enabled: bool
    n_steps: int
    step_counts: list
    csv_path: Optional[str]
    svg_path: Optional[str]

    @property
    def packet_center(self):
        return self.length / 2 if self.x0 is None else self.x0


def _number(section, key, value, positive=False, allow_none=False):
    if value is None and allow_none:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigError(f"{section}.{key} must be a finite number, got {value!r}")
    if positive and value <= 0:
        raise ConfigError(f"{section}.{key} must be positive, got {value!r}")
    return float(value)


def parse_config(raw, for_verify=False):
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(raw) - set(DEFAULTS)
    if unknown:
        raise ConfigError(f"unknown config sections: {sorted(unknown)}")
    merged = {}
    for section, defaults in DEFAULTS.items():
        given = raw.get(section, {})
        if not isinstance(given, dict):
            raise ConfigError(f"section {section!r} must be an object")
        bad = set(given) - set(defaults)
        if bad:
            raise ConfigError(f"unknown keys in {section!r}: {sorted(bad)}")
        merged[section] = {**defaults, **given}
    if for_verify and "grid" not in raw:
        merged["grid"] = dict(VERIFY_GRID)

    g, ph, pk, pu, it, out = (merged[s] for s in
                              ("grid", "physics", "packet", "pulse", "integrator", "outputs"))
    n = g["n_points"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise ConfigError(f"grid.n_points must be an integer, got {n!r}")
    if n < 8 or n % 2:
        raise ConfigError(f"grid.n_points must be even and >= 8, got {n}")
    length = _number("grid", "length", g["length"], positive=True)
    mass = _number("physics", "mass", ph["mass"], positive=True)
    charge = _number("physics", "charge", ph["charge"])
    if charge == 0:
        raise ConfigError("physics.charge must be nonzero")

    if pk["kind"] not in ("gaussian", "plane"):
        raise ConfigError(f"packet.kind must be 'gaussian' or 'plane', got {pk['kind']!r}")
    if pk["branch"] not in ("+", "-"):
        raise ConfigError(f"packet.branch must be '+' or '-', got {pk['branch']!r}")
    mode_index = pk["mode_index"]
    if mode_index is not None and (isinstance(mode_index, bool) or not isinstance(mode_index, int)):
        raise ConfigError(f"packet.mode_index must be an integer, got {mode_index!r}")

    t_a = _number("pulse", "t_a", pu["t_a"], positive=True)
    t_b = _number("pulse", "t_b", pu["t_b"], positive=True)
    if t_b < t_a:
        raise ConfigError(f"need t_b >= t_a, got t_a={t_a}, t_b={t_b}")
    present = [k for k in ("f", "f_list", "delta_target") if pu[k] is not None]
    if len(present) > 1:
        raise ConfigError(f"give exactly one of pulse.f / f_list / delta_target, got {present}")
    f = _number("pulse", "f", pu["f"], allow_none=True)
    if not present:
        f = DEFAULT_F
    f_list = pu["f_list"]
    if f_list is not None:
        if not isinstance(f_list, list) or not f_list:
            raise ConfigError("pulse.f_list must be a nonempty list")
        f_list = [_number("pulse", "f_list", v) for v in f_list]
        if any(b <= a for a, b in zip(f_list, f_list[1:])):
            raise ConfigError("pulse.f_list must be strictly ascending")
    delta_target = _number("pulse", "delta_target", pu["delta_target"], allow_none=True)
    if delta_target is not None and delta_target > 0:
        raise ConfigError("pulse.delta_target must be <= 0")

    if not isinstance(it["enabled"], bool):
        raise ConfigError("integrator.enabled must be true or false")
    n_steps = it["n_steps"]
    if isinstance(n_steps, bool) or not isinstance(n_steps, int) or n_steps < 4:
        raise ConfigError(f"integrator.n_steps must be an integer >= 4, got {n_steps!r}")
    counts = it["step_counts"]
    if (not isinstance(counts, list) or not counts
            or any(isinstance(c, bool) or not isinstance(c, int) or c < 4 for c in counts)
            or any(b <= a for a, b in zip(counts, counts[1:]))):
        raise ConfigError(f"integrator.step_counts must be increasing integers >= 4, got {counts!r}")

    for key in ("csv_path", "svg_path"):
        if out[key] is not None and not isinstance(out[key], str):
            raise ConfigError(f"outputs.{key} must be a string path")

    return ExperimentConfig(
        n_points=n, length=length, mass=mass, charge=charge,
        kind=pk["kind"], k0=_number("packet", "k0", pk["k0"]),
        sigma_x=_number("packet", "sigma_x", pk["sigma_x"], positive=True),
        x0=_number("packet", "x0", pk["x0"], allow_none=True),
        branch=pk["branch"], mode_index=mode_index,
        t_a=t_a, t_b=t_b, f=f, f_list=f_list, delta_target=delta_target,
        integrator_enabled=it["enabled"], n_steps=n_steps, step_counts=list(counts),
        csv_path=out["csv_path"], svg_path=out["svg_path"],
    )


def load_config(path, for_verify=False):
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(raw, for_verify=for_verify)
