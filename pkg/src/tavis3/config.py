"""Run configuration for the command line front end.

A config is a JSON object. Keys::

    mode        "evolve" | "verify" | "spectrum"            (required)
    coupling    gamma, labelling only                        (default 1.0)
    initial     {"atoms": "ggg", "field": {"type": "fock", "n": 3}}
                {"atoms": "ggg", "field": {"type": "coherent", "alpha": [re, im]}}
    cutoff      maximum photon number                       (evolve)
    tau         {"start": 0, "stop": 25, "steps": 1000}       (evolve; steps = grid points)
    tau_list    [0.1, 1, 10, 100]                           (verify; this is the default)
    sectors     {"min": 0, "max": 40}                       (verify, spectrum)
    engine      "analytic" | "oracle" | "both"              (default "both")
    output      path, "-" for stdout                        (default "-")
    format      "csv" | "json"                              (default "csv")
    tolerance   verification threshold                      (default 1e-9)

Unknown keys are rejected.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .dynamics import CoherentField, FockField, InitialStateSpec

MODES = ("evolve", "verify", "spectrum")
ENGINES = ("analytic", "oracle", "both")
FORMATS = ("csv", "json")
DEFAULT_TAU_LIST = (0.1, 1.0, 10.0, 100.0)
DEFAULT_TOLERANCE = 1e-9

_TOP_KEYS = {
    "mode", "coupling", "initial", "cutoff", "tau", "tau_list",
    "sectors", "engine", "output", "format", "tolerance",
}


class ConfigError(ValueError):
    def __init__(self, message: str, field: str | None = None):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field


@dataclass(frozen=True)
class RunConfig:
    mode: str
    coupling: float = 1.0
    initial: InitialStateSpec | None = None
    tau_grid: tuple[float, float, int] | None = None
    tau_list: tuple[float, ...] = DEFAULT_TAU_LIST
    sector_range: tuple[int, int] = (0, 40)
    engine: str = "both"
    output_path: str = "-"
    format: str = "csv"
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"must be one of {MODES}, got {self.mode!r}", "mode")
        if not (math.isfinite(self.coupling) and self.coupling > 0):
            raise ConfigError("must be finite and > 0", "coupling")
        if self.engine not in ENGINES:
            raise ConfigError(f"must be one of {ENGINES}, got {self.engine!r}", "engine")
        if self.format not in FORMATS:
            raise ConfigError(f"must be one of {FORMATS}, got {self.format!r}", "format")
        if not (math.isfinite(self.tolerance) and self.tolerance > 0):
            raise ConfigError("must be finite and > 0", "tolerance")
        lo, hi = self.sector_range
        if lo < 0:
            raise ConfigError("must be >= 0", "sectors.min")
        if hi < lo:
            raise ConfigError("must be >= sectors.min", "sectors.max")
        if not all(math.isfinite(t) for t in self.tau_list):
            raise ConfigError("values must be finite", "tau_list")
        if self.mode == "evolve":
            if self.initial is None:
                raise ConfigError("required in evolve mode", "initial")
            if self.tau_grid is None:
                raise ConfigError("required in evolve mode", "tau")
            start, stop, steps = self.tau_grid
            if steps < 1:
                raise ConfigError("must be >= 1", "steps")
            if not (math.isfinite(start) and math.isfinite(stop)):
                raise ConfigError("start and stop must be finite", "tau")
            if stop < start:
                raise ConfigError("must be >= tau.start", "stop")

    @property
    def taus(self) -> list[float]:
        start, stop, steps = self.tau_grid
        if steps == 1:
            return [start]
        return [start + (stop - start) * k / (steps - 1) for k in range(steps)]


def _require(d: dict, key: str, where: str):
    if key not in d:
        raise ConfigError("missing", f"{where}.{key}" if where else key)
    return d[key]


def _strict(d, allowed: set[str], where: str) -> dict:
    if not isinstance(d, dict):
        raise ConfigError("must be an object", where)
    unknown = sorted(set(d) - allowed)
    if unknown:
        name = f"{where}.{unknown[0]}" if where else unknown[0]
        raise ConfigError("unknown key", name)
    return d


def _number(x, name: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ConfigError(f"must be a number, got {x!r}", name)
    return float(x)


def _integer(x, name: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ConfigError(f"must be an integer, got {x!r}", name)
    return x


def _parse_initial(d, cutoff) -> InitialStateSpec:
    d = _strict(d, {"atoms", "field"}, "initial")
    atoms = _require(d, "atoms", "initial")
    if not isinstance(atoms, str) or len(atoms) != 3 or set(atoms) - {"e", "g"}:
        raise ConfigError(f"must be 3 characters over e/g, got {atoms!r}", "initial.atoms")
    f = _strict(_require(d, "field", "initial"), {"type", "n", "alpha"}, "initial.field")
    kind = _require(f, "type", "initial.field")
    if kind == "fock":
        _strict(f, {"type", "n"}, "initial.field")
        n = _integer(_require(f, "n", "initial.field"), "initial.field.n")
        if not 0 <= n <= cutoff:
            raise ConfigError(f"must be in 0..cutoff ({cutoff})", "initial.field.n")
        field_spec = FockField(n)
    elif kind == "coherent":
        _strict(f, {"type", "alpha"}, "initial.field")
        alpha = _require(f, "alpha", "initial.field")
        if not isinstance(alpha, list) or len(alpha) != 2:
            raise ConfigError("must be a two-element array [re, im]", "initial.field.alpha")
        re, im = (_number(x, "initial.field.alpha") for x in alpha)
        field_spec = CoherentField(complex(re, im))
    else:
        raise ConfigError(f"must be 'fock' or 'coherent', got {kind!r}", "initial.field.type")
    return InitialStateSpec(atoms, field_spec, cutoff)


def config_from_dict(d: dict) -> RunConfig:
    d = _strict(d, _TOP_KEYS, "")
    kw = {"mode": _require(d, "mode", "")}
    if "coupling" in d:
        kw["coupling"] = _number(d["coupling"], "coupling")
    for key, name in (("engine", "engine"), ("format", "format"), ("output", "output_path")):
        if key in d:
            if not isinstance(d[key], str):
                raise ConfigError("must be a string", key)
            kw[name] = d[key]
    if "tolerance" in d:
        kw["tolerance"] = _number(d["tolerance"], "tolerance")
    if "sectors" in d:
        s = _strict(d["sectors"], {"min", "max"}, "sectors")
        kw["sector_range"] = (
            _integer(s.get("min", 0), "sectors.min"),
            _integer(s.get("max", 40), "sectors.max"),
        )
    if "tau_list" in d:
        if not isinstance(d["tau_list"], list) or not d["tau_list"]:
            raise ConfigError("must be a non-empty array", "tau_list")
        kw["tau_list"] = tuple(_number(t, "tau_list") for t in d["tau_list"])
    if "tau" in d:
        t = _strict(d["tau"], {"start", "stop", "steps"}, "tau")
        kw["tau_grid"] = (
            _number(t.get("start", 0.0), "tau.start"),
            _number(_require(t, "stop", "tau"), "tau.stop"),
            _integer(_require(t, "steps", "tau"), "steps"),
        )
    if "initial" in d:
        cutoff = _integer(_require(d, "cutoff", ""), "cutoff")
        if cutoff < 3:
            raise ConfigError("must be >= 3", "cutoff")
        kw["initial"] = _parse_initial(d["initial"], cutoff)
    elif "cutoff" in d:
        _integer(d["cutoff"], "cutoff")
    return RunConfig(**kw)


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON config document."""
    try:
        d = json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigError(f"malformed JSON at line {err.lineno}, column {err.colno}: {err.msg}") from None
    return config_from_dict(d)
