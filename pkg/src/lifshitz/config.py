"""Run configuration: mirror specs, unit parsing, and TOML config files.

A mirror is written as a compact spec string:

    au-drude                      bulk mirror
    au-drude@20nm                 free-standing 20 nm slab
    vo2-ins@100nm/al2o3           100 nm film on a bulk substrate
    au-drude@1nm,si@100nm         stacked free-standing layers

i.e. comma-separated layers (``model@thickness``) optionally over a bulk
backing after ``/``; a bare model id alone means a bulk mirror.

Config files are TOML; see the README for the full grammar.  Validation
collects every problem before reporting, not just the first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

try:
    import tomllib  # Python >= 3.11
except ModuleNotFoundError:  # pragma: no cover - depends on interpreter
    import tomli as tomllib

from .casimir import QuadratureSpec
from .constants import ev_to_rad_s
from .dielectric import (
    ConstantOffset,
    DielectricModel,
    Drude,
    HighFreqPole,
    Lorentz,
    Plasma,
    resolve_model,
)
from .optical_data import read_table
from .reflection import Mirror

__all__ = [
    "ConfigError",
    "RunConfig",
    "parse_config",
    "parse_length",
    "parse_mirror_spec",
]

COMMANDS = ("eta", "sweep", "epsilon", "reflect", "asym", "figure")

_LENGTH_UNITS = {"nm": 1e-9, "um": 1e-6, "µm": 1e-6, "mm": 1e-3, "m": 1.0}
_LENGTH_RE = re.compile(r"^\s*([-+0-9.eE]+)\s*(nm|um|µm|mm|m)?\s*$")


class ConfigError(ValueError):
    """Carries every validation problem found in a config."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


def parse_length(text: str) -> float:
    """Parse a length like '100nm', '0.1um' or '1e-7' (bare means meters)."""
    m = _LENGTH_RE.match(str(text))
    if not m:
        raise ValueError(f"cannot parse length {text!r}")
    value = float(m.group(1))
    unit = m.group(2) or "m"
    return value * _LENGTH_UNITS[unit]


def parse_mirror_spec(spec: str, extra_models: dict | None = None) -> Mirror:
    """Build a Mirror from its compact spec string."""
    spec = spec.strip()
    if not spec:
        raise ValueError("empty mirror spec")
    if "/" in spec:
        stack_part, _, backing_part = spec.rpartition("/")
        backing = resolve_model(backing_part.strip(), extra_models)
    else:
        stack_part, backing = spec, None

    entries = [e.strip() for e in stack_part.split(",") if e.strip()]
    if not entries and backing is not None:
        return Mirror.bulk(backing)

    layers = []
    for entry in entries:
        if "@" in entry:
            model_id, _, thick = entry.rpartition("@")
            layers.append(
                (resolve_model(model_id.strip(), extra_models), parse_length(thick))
            )
        else:
            if len(entries) == 1 and backing is None:
                return Mirror.bulk(resolve_model(entry, extra_models))
            raise ValueError(
                f"layer {entry!r} needs a thickness (model@thickness) when stacked"
            )
    return Mirror(layers=tuple(layers), backing=backing)


def _frequency(value, unit: str) -> float:
    if unit == "eV":
        return ev_to_rad_s(float(value))
    if unit == "rad_s":
        return float(value)
    raise ValueError(f"unit must be 'eV' or 'rad_s', got {unit!r}")


def _term_from_config(entry: dict):
    kind = entry.get("kind")
    unit = entry.get("unit", "rad_s")
    if kind == "constant":
        return ConstantOffset(float(entry["value"]))
    if kind == "drude":
        return Drude(_frequency(entry["omega_p"], unit), _frequency(entry["gamma"], unit))
    if kind == "plasma":
        return Plasma(_frequency(entry["omega_p"], unit))
    if kind == "lorentz":
        return Lorentz(
            float(entry["strength"]),
            _frequency(entry["resonance"], unit),
            float(entry.get("damping", 0.0)),
        )
    if kind == "pole":
        return HighFreqPole(float(entry["amplitude"]), _frequency(entry["omega_inf"], unit))
    raise ValueError(
        f"unknown term kind {kind!r}; expected constant, drude, plasma, lorentz or pole"
    )


def _grid_from_config(section: dict, unit_default: str = "rad_s") -> np.ndarray:
    """A frequency/wavevector grid: explicit values or a log/linear range."""
    if "values" in section:
        values = [float(v) for v in section["values"]]
        if not values or any(v <= 0 for v in values):
            raise ValueError("grid values must be positive and non-empty")
        unit = section.get("unit", unit_default)
        if unit == "eV":
            values = [ev_to_rad_s(v) for v in values]
        elif unit != unit_default:
            raise ValueError(f"unsupported grid unit {unit!r}")
        return np.asarray(values)
    start, stop = float(section["start"]), float(section["stop"])
    points = int(section.get("points", 50))
    if start <= 0 or stop <= start or points < 2:
        raise ValueError("grid needs 0 < start < stop and points >= 2")
    unit = section.get("unit", unit_default)
    if unit == "eV":
        start, stop = ev_to_rad_s(start), ev_to_rad_s(stop)
    elif unit != unit_default:
        raise ValueError(f"unsupported grid unit {unit!r}")
    if section.get("spacing", "log") == "log":
        return np.logspace(np.log10(start), np.log10(stop), points)
    return np.linspace(start, stop, points)


def _length_grid(section: dict) -> tuple[float, ...]:
    """Separation values: an explicit list or a log/linear range, meters."""
    if "values_m" in section:
        values = tuple(float(v) for v in section["values_m"])
    elif section:
        start, stop = float(section["start_m"]), float(section["stop_m"])
        points = int(section.get("points", 50))
        if start <= 0 or stop <= start or points < 2:
            raise ValueError("range needs 0 < start_m < stop_m and points >= 2")
        if section.get("spacing", "log") == "log":
            values = tuple(np.logspace(np.log10(start), np.log10(stop), points))
        else:
            values = tuple(np.linspace(start, stop, points))
    else:
        values = ()
    if not values or any(v <= 0 for v in values):
        raise ValueError("needs positive separation values")
    return values


@dataclass
class RunConfig:
    """Validated description of one CLI run."""

    command: str
    quadrature: QuadratureSpec = QuadratureSpec()
    out_path: str | None = None
    out_format: str = "csv"
    threads: int = 1
    mirror_a: Mirror | None = None
    mirror_b: Mirror | None = None
    mirror: Mirror | None = None
    separations: tuple[float, ...] = ()
    area: float | None = None
    model: DielectricModel | None = None
    model_id: str = ""
    omega_grid: np.ndarray | None = None
    k_grid: np.ndarray | None = None
    thickness: float | None = None
    figure: str | None = None
    points_per_decade: int = 50


_KNOWN_TOP_KEYS = {
    "command", "quadrature", "output", "models", "mirrors", "separation",
    "epsilon", "reflect", "asym", "figure", "threads",
}


def parse_config(text: str) -> RunConfig:
    """Parse and validate a TOML run config; raises ConfigError with every
    problem found."""
    errors: list[str] = []
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError([f"TOML syntax: {exc}"]) from None

    for key in data:
        if key not in _KNOWN_TOP_KEYS:
            errors.append(f"{key}: unknown section or key")

    command = data.get("command")
    if command not in COMMANDS:
        errors.append(f"command: must be one of {', '.join(COMMANDS)}, got {command!r}")
        raise ConfigError(errors)

    # custom models
    custom: dict[str, DielectricModel] = {}
    for name, body in data.get("models", {}).items():
        try:
            if "table" in body:
                with open(body["table"], "r", encoding="utf-8") as fh:
                    table = read_table(fh.read(), label=name)
                custom[name] = DielectricModel(terms=(), label=name, table=table)
            else:
                terms = tuple(_term_from_config(t) for t in body.get("terms", ()))
                if not terms:
                    raise ValueError("needs 'terms' or 'table'")
                custom[name] = DielectricModel(terms=terms, label=name)
        except (ValueError, KeyError, OSError) as exc:
            errors.append(f"models.{name}: {exc}")

    quad = QuadratureSpec()
    if "quadrature" in data:
        q = data["quadrature"]
        try:
            quad = QuadratureSpec(
                rel_tol=float(q.get("rel_tol", 1e-6)),
                max_evals=int(q.get("max_evals", QuadratureSpec().max_evals)),
                cutoff_mult=float(q.get("cutoff_mult", 40.0)),
            )
        except ValueError as exc:
            errors.append(f"quadrature: {exc}")

    out = data.get("output", {})
    out_format = out.get("format", "csv")
    if out_format not in ("csv", "json"):
        errors.append(f"output.format: must be csv or json, got {out_format!r}")

    cfg = RunConfig(
        command=command,
        quadrature=quad,
        out_path=out.get("path"),
        out_format=out_format,
        threads=int(data.get("threads", 1)),
    )

    def get_mirror(key: str) -> Mirror | None:
        spec = data.get("mirrors", {}).get(key)
        if spec is None:
            errors.append(f"mirrors.{key}: required for command {command!r}")
            return None
        try:
            return parse_mirror_spec(spec, custom)
        except ValueError as exc:
            errors.append(f"mirrors.{key}: {exc}")
            return None

    if command in ("eta", "sweep"):
        cfg.mirror_a = get_mirror("a")
        cfg.mirror_b = get_mirror("b")
        try:
            cfg.separations = _length_grid(data.get("separation", {}))
        except (ValueError, KeyError) as exc:
            errors.append(f"separation: {exc}")
        if "area_m2" in data.get("mirrors", {}):
            try:
                cfg.area = float(data["mirrors"]["area_m2"])
                if cfg.area <= 0:
                    raise ValueError("must be positive")
            except ValueError as exc:
                errors.append(f"mirrors.area_m2: {exc}")

    elif command == "epsilon":
        section = data.get("epsilon", {})
        model_id = section.get("model")
        if model_id is None:
            errors.append("epsilon.model: required")
        else:
            try:
                cfg.model = resolve_model(model_id, custom)
                cfg.model_id = model_id
            except ValueError as exc:
                errors.append(f"epsilon.model: {exc}")
        try:
            cfg.omega_grid = _grid_from_config(section.get("omega", {}))
        except (ValueError, KeyError) as exc:
            errors.append(f"epsilon.omega: {exc}")

    elif command == "reflect":
        section = data.get("reflect", {})
        spec = section.get("mirror")
        if spec is None:
            errors.append("reflect.mirror: required")
        else:
            try:
                cfg.mirror = parse_mirror_spec(spec, custom)
            except ValueError as exc:
                errors.append(f"reflect.mirror: {exc}")
        for key, attr in (("omega", "omega_grid"), ("k", "k_grid")):
            try:
                setattr(cfg, attr, _grid_from_config(section.get(key, {})))
            except (ValueError, KeyError) as exc:
                errors.append(f"reflect.{key}: {exc}")

    elif command == "asym":
        section = data.get("asym", {})
        model_id = section.get("model")
        if model_id is None:
            errors.append("asym.model: required")
        else:
            try:
                cfg.model = resolve_model(model_id, custom)
                cfg.model_id = model_id
            except ValueError as exc:
                errors.append(f"asym.model: {exc}")
        if "thickness" in section:
            try:
                cfg.thickness = parse_length(section["thickness"])
            except ValueError as exc:
                errors.append(f"asym.thickness: {exc}")

    elif command == "figure":
        section = data.get("figure", {})
        cfg.figure = section.get("name")
        if not cfg.figure:
            errors.append("figure.name: required")
        ppd = section.get("points_per_decade", 50)
        try:
            cfg.points_per_decade = int(ppd)
            if cfg.points_per_decade < 1:
                raise ValueError
        except (TypeError, ValueError):
            errors.append(f"figure.points_per_decade: bad value {ppd!r}")

    if errors:
        raise ConfigError(errors)
    return cfg
