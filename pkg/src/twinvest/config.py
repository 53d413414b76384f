"""Model definition files: JSON with exact field-path error reporting.

A file describes a discrete model (top-level ``pi0``/``pi1``/``cost``
families plus bounds and stakes), and may additionally carry a
``continuous`` section and a two-axis ``sweep`` template.  Unknown keys
are rejected, and every parse error names the offending field path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .continuous import ContinuousEffortModel
from .families import FAMILY_KINDS, ParametricFamily
from .model import PRIMITIVE_NAMES, ModelPrimitives
from .sweep import SweepAxis


class ConfigError(ValueError):
    """Malformed model file; ``path`` points at the offending field."""

    def __init__(self, path: str, message: str):
        self.path = path or "<root>"
        super().__init__(f"{self.path}: {message}")


_MODEL_KEYS = {"pi0", "pi1", "cost", "v_max", "s_high", "s_low"}
_TOP_KEYS = _MODEL_KEYS | {"continuous", "sweep"}
_FAMILY_KEYS = {"kind", "coefficients"}
_CONTINUOUS_KEYS = {"p", "c0", "e_min", "e_max", "s_high", "s_low"}
_AXIS_KEYS = {"target", "coefficient", "start", "stop", "count"}


@dataclass(frozen=True)
class ModelFile:
    model: ModelPrimitives | None
    continuous: ContinuousEffortModel | None
    sweep: tuple[SweepAxis, SweepAxis] | None


def _require_mapping(obj, path: str) -> dict:
    if not isinstance(obj, dict):
        raise ConfigError(path, f"expected an object, got {type(obj).__name__}")
    return obj


def _reject_unknown(obj: dict, allowed: set[str], path: str):
    unknown = set(obj) - allowed
    if unknown:
        key = sorted(unknown)[0]
        raise ConfigError(f"{path}.{key}" if path else key, "unknown key")


def _number(obj: dict, key: str, path: str) -> float:
    if key not in obj:
        raise ConfigError(f"{path}.{key}" if path else key, "missing required field")
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(
            f"{path}.{key}" if path else key,
            f"expected a number, got {type(value).__name__}",
        )
    return float(value)


def parse_family(obj, path: str) -> ParametricFamily:
    obj = _require_mapping(obj, path)
    _reject_unknown(obj, _FAMILY_KEYS, path)
    if "kind" not in obj:
        raise ConfigError(f"{path}.kind", "missing required field")
    kind = obj["kind"]
    if kind not in FAMILY_KINDS:
        raise ConfigError(f"{path}.kind", f"expected one of {FAMILY_KINDS}, got {kind!r}")
    coeffs = obj.get("coefficients")
    if not isinstance(coeffs, list) or not coeffs:
        raise ConfigError(f"{path}.coefficients", "expected a non-empty array of numbers")
    for i, c in enumerate(coeffs):
        if isinstance(c, bool) or not isinstance(c, (int, float)):
            raise ConfigError(
                f"{path}.coefficients[{i}]", f"expected a number, got {type(c).__name__}"
            )
    try:
        return ParametricFamily(kind, tuple(float(c) for c in coeffs))
    except ValueError as exc:
        raise ConfigError(path, str(exc)) from exc


def parse_model(obj: dict, path: str = "") -> ModelPrimitives:
    try:
        return ModelPrimitives(
            pi0=parse_family(obj.get("pi0"), f"{path}pi0"),
            pi1=parse_family(obj.get("pi1"), f"{path}pi1"),
            cost=parse_family(obj.get("cost"), f"{path}cost"),
            v_max=_number(obj, "v_max", path.rstrip(".")),
            s_high=_number(obj, "s_high", path.rstrip(".")),
            s_low=_number(obj, "s_low", path.rstrip(".")),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(path.rstrip("."), str(exc)) from exc


def parse_continuous(obj, path: str = "continuous") -> ContinuousEffortModel:
    obj = _require_mapping(obj, path)
    _reject_unknown(obj, _CONTINUOUS_KEYS, path)
    try:
        return ContinuousEffortModel(
            p=parse_family(obj.get("p"), f"{path}.p"),
            c0=_number(obj, "c0", path),
            e_min=_number(obj, "e_min", path),
            e_max=_number(obj, "e_max", path),
            s_high=_number(obj, "s_high", path),
            s_low=_number(obj, "s_low", path),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(path, str(exc)) from exc


def parse_sweep(obj, path: str = "sweep") -> tuple[SweepAxis, SweepAxis]:
    obj = _require_mapping(obj, path)
    _reject_unknown(obj, {"axes"}, path)
    axes = obj.get("axes")
    if not isinstance(axes, list):
        raise ConfigError(f"{path}.axes", "expected an array of axis objects")
    if len(axes) != 2:
        raise ConfigError(
            f"{path}.axes", f"exactly 2 varying coefficients required, got {len(axes)}"
        )
    parsed = []
    for i, axis in enumerate(axes):
        apath = f"{path}.axes[{i}]"
        axis = _require_mapping(axis, apath)
        _reject_unknown(axis, _AXIS_KEYS, apath)
        target = axis.get("target")
        if target not in PRIMITIVE_NAMES:
            raise ConfigError(
                f"{apath}.target", f"expected one of {PRIMITIVE_NAMES}, got {target!r}"
            )
        coefficient = axis.get("coefficient")
        if isinstance(coefficient, bool) or not isinstance(coefficient, int):
            raise ConfigError(f"{apath}.coefficient", "expected an integer index")
        count = axis.get("count")
        if isinstance(count, bool) or not isinstance(count, int) or count < 1:
            raise ConfigError(f"{apath}.count", "expected a positive integer")
        parsed.append(
            SweepAxis.linspace(
                target,
                coefficient,
                _number(axis, "start", apath),
                _number(axis, "stop", apath),
                count,
            )
        )
    return parsed[0], parsed[1]


def parse_model_file(obj, path: str = "") -> ModelFile:
    obj = _require_mapping(obj, path)
    _reject_unknown(obj, _TOP_KEYS, path)
    has_discrete = bool(_MODEL_KEYS & set(obj))
    model = parse_model(obj) if has_discrete else None
    continuous = parse_continuous(obj["continuous"]) if "continuous" in obj else None
    sweep = parse_sweep(obj["sweep"]) if "sweep" in obj else None
    if model is None and continuous is None:
        raise ConfigError("", "file defines neither a discrete model nor a continuous section")
    return ModelFile(model, continuous, sweep)


def load_model_file(path: str | Path) -> ModelFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(str(path), f"cannot read file: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(str(path), f"invalid JSON: {exc}") from exc
    return parse_model_file(obj)


# ---------------------------------------------------------------------------
# Serialization (round-trips the fixtures into example files)
# ---------------------------------------------------------------------------


def family_to_dict(family: ParametricFamily) -> dict:
    return {"kind": family.kind, "coefficients": list(family.coefficients)}


def model_to_dict(model: ModelPrimitives) -> dict:
    return {
        "pi0": family_to_dict(model.pi0),
        "pi1": family_to_dict(model.pi1),
        "cost": family_to_dict(model.cost),
        "v_max": model.v_max,
        "s_high": model.s_high,
        "s_low": model.s_low,
    }


def continuous_to_dict(cmodel: ContinuousEffortModel) -> dict:
    return {
        "p": family_to_dict(cmodel.p),
        "c0": cmodel.c0,
        "e_min": cmodel.e_min,
        "e_max": cmodel.e_max,
        "s_high": cmodel.s_high,
        "s_low": cmodel.s_low,
    }
