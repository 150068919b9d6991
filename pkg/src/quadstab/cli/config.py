"""Job configuration: JSON in, validated dataclass out, and back."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from ..algebra.rational import Q, fmt
from ..polytope import canonicalize, check_pqk

COMMANDS = ("classify", "interval", "scan", "formal", "split", "verify")
_KNOWN = {"command", "pqk", "vertices", "weights", "edges", "resolution", "segment", "ambitoric", "trapezium",
          "family", "out", "svg", "seed", "samples"}
FAMILIES = ("opposite-1", "opposite-2", "adjacent-1", "adjacent-2", "adjacent-3", "adjacent-4")


class ConfigError(ValueError):
    """Invalid configuration; ``pointer`` is the JSON pointer of the offending value."""

    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer
        self.message = message


@dataclass(frozen=True)
class JobConfig:
    command: str
    pqk: tuple[Fraction, Fraction, Fraction] | None = None
    vertices: tuple[tuple[Fraction, Fraction], ...] | None = None
    weights: tuple[Fraction, ...] | None = None
    edges: tuple[int, int] | None = None
    resolution: int | None = None
    segment: dict | None = None
    ambitoric: dict | None = None
    trapezium: dict | None = None
    family: str | None = None
    out: str | None = None
    svg: str | None = None
    seed: int = 0
    samples: int = 10_000


def _rational(v, ptr: str) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise ConfigError(ptr, f"malformed rational {json.dumps(v)}: use an integer or a \"num/den\" string")
    try:
        return Q(v)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(ptr, f"malformed rational {json.dumps(v)}") from None


def _rationals(v, ptr: str, n: int | None = None) -> tuple[Fraction, ...]:
    if not isinstance(v, list):
        raise ConfigError(ptr, "expected a list")
    if n is not None and len(v) != n:
        raise ConfigError(ptr, f"expected {n} entries, got {len(v)}")
    return tuple(_rational(x, f"{ptr}/{i}") for i, x in enumerate(v))


def _weights(v, ptr: str, n: int = 4) -> tuple[Fraction, ...]:
    w = _rationals(v, ptr, n)
    for i, x in enumerate(w):
        if x < 0:
            raise ConfigError(f"{ptr}/{i}", "weights must be nonnegative")
    if all(x == 0 for x in w):
        raise ConfigError(ptr, "weights must not all vanish")
    return w


def _int(v, ptr: str, lo: int, hi: int | None = None) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(ptr, "expected an integer")
    if v < lo or (hi is not None and v > hi):
        raise ConfigError(ptr, f"expected an integer in [{lo}, {hi if hi is not None else '∞'}]")
    return v


def _ambitoric(v, ptr: str) -> dict:
    if not isinstance(v, dict):
        raise ConfigError(ptr, "expected an object")
    for key in ("alpha", "beta", "q", "weights"):
        if key not in v:
            raise ConfigError(f"{ptr}/{key}", "missing field")
    kind = v.get("type", "positive")
    if kind not in ("positive", "negative"):
        raise ConfigError(f"{ptr}/type", "type must be 'positive' or 'negative'")
    out = {"type": kind, "alpha": _rationals(v["alpha"], f"{ptr}/alpha", 2),
           "beta": _rationals(v["beta"], f"{ptr}/beta", 2), "q": _rationals(v["q"], f"{ptr}/q", 3),
           "weights": _weights(v["weights"], f"{ptr}/weights")}
    from ..ambitoric import AmbitoricData

    try:
        AmbitoricData.make(out["alpha"], out["beta"], out["q"], out["weights"], kind)
    except ValueError as exc:
        raise ConfigError(ptr, str(exc)) from None
    return out


def _trapezium(v, ptr: str) -> dict:
    if not isinstance(v, dict):
        raise ConfigError(ptr, "expected an object")
    for key in ("alpha", "beta", "weights"):
        if key not in v:
            raise ConfigError(f"{ptr}/{key}", "missing field")
    out = {"alpha": _rationals(v["alpha"], f"{ptr}/alpha", 2), "beta": _rationals(v["beta"], f"{ptr}/beta", 2),
           "weights": _weights(v["weights"], f"{ptr}/weights")}
    from ..ambitoric import TrapeziumData

    try:
        TrapeziumData(*out["alpha"], *out["beta"], out["weights"])
    except ValueError as exc:
        raise ConfigError(ptr, str(exc)) from None
    return out


def _segment(v, ptr: str) -> dict:
    if not isinstance(v, dict) or "stable" not in v or "unstable" not in v:
        raise ConfigError(ptr, "expected an object with 'stable' and 'unstable' weight lists")
    return {"stable": _weights(v["stable"], f"{ptr}/stable"), "unstable": _weights(v["unstable"], f"{ptr}/unstable")}


def from_dict(data, command: str | None = None) -> JobConfig:
    if not isinstance(data, dict):
        raise ConfigError("", "configuration must be a JSON object")
    unknown = sorted(set(data) - _KNOWN)
    if unknown:
        raise ConfigError(f"/{unknown[0]}", "unknown field")
    cmd = data.get("command", command)
    if cmd is None:
        raise ConfigError("/command", "missing field")
    if command is not None and cmd != command:
        raise ConfigError("/command", f"config says {cmd!r} but the command line asks for {command!r}")
    if cmd not in COMMANDS:
        raise ConfigError("/command", f"unknown command {cmd!r}; expected one of {', '.join(COMMANDS)}")
    kw: dict = {"command": cmd}
    if "pqk" in data and "vertices" in data:
        raise ConfigError("/vertices", "give either pqk or vertices, not both")
    if "pqk" in data:
        pqk = _rationals(data["pqk"], "/pqk", 3)
        try:
            check_pqk(*pqk)
        except ValueError as exc:
            raise ConfigError("/pqk", f"not a convex quadrilateral: {exc}") from None
        kw["pqk"] = pqk
    if "vertices" in data:
        vs = data["vertices"]
        if not isinstance(vs, list) or len(vs) != 4:
            raise ConfigError("/vertices", "expected four vertices")
        kw["vertices"] = tuple(_rationals(p, f"/vertices/{i}", 2) for i, p in enumerate(vs))
        try:
            canonicalize(kw["vertices"])
        except ValueError as exc:
            raise ConfigError("/vertices", str(exc)) from None
    if "weights" in data:
        kw["weights"] = _weights(data["weights"], "/weights")
    if "edges" in data:
        e = data["edges"]
        if not isinstance(e, list) or len(e) != 2:
            raise ConfigError("/edges", "expected two edge indices")
        kw["edges"] = (_int(e[0], "/edges/0", 1, 4), _int(e[1], "/edges/1", 1, 4))
        if kw["edges"][0] == kw["edges"][1]:
            raise ConfigError("/edges", "edge indices must differ")
    if "resolution" in data:
        kw["resolution"] = _int(data["resolution"], "/resolution", 4)
    if "segment" in data:
        kw["segment"] = _segment(data["segment"], "/segment")
    if "ambitoric" in data:
        kw["ambitoric"] = _ambitoric(data["ambitoric"], "/ambitoric")
    if "trapezium" in data:
        kw["trapezium"] = _trapezium(data["trapezium"], "/trapezium")
    if "family" in data:
        if data["family"] not in FAMILIES:
            raise ConfigError("/family", f"expected one of {', '.join(FAMILIES)}")
        kw["family"] = data["family"]
    for key in ("out", "svg"):
        if key in data:
            if not isinstance(data[key], str):
                raise ConfigError(f"/{key}", "expected a path string")
            kw[key] = data[key]
    if "seed" in data:
        kw["seed"] = _int(data["seed"], "/seed", 0)
    if "samples" in data:
        kw["samples"] = _int(data["samples"], "/samples", 1)
    cfg = JobConfig(**kw)
    _require(cfg)
    return cfg


def _require(cfg: JobConfig) -> None:
    has_quad = cfg.pqk is not None or cfg.vertices is not None
    if cfg.command in ("classify", "split") and not (has_quad and cfg.weights is not None):
        if not (cfg.command == "split" and has_quad and cfg.segment is not None):
            raise ConfigError("/weights" if has_quad else "/pqk", "missing field")
    if cfg.command in ("interval", "scan") and not has_quad:
        raise ConfigError("/pqk", "missing field")
    if cfg.command == "interval" and cfg.edges is None:
        raise ConfigError("/edges", "missing field (or pass --edges i j)")
    if cfg.command == "formal" and cfg.ambitoric is None and cfg.trapezium is None:
        raise ConfigError("/ambitoric", "missing field")
    if cfg.command == "verify" and not ((has_quad and cfg.weights is not None) or cfg.ambitoric is not None):
        raise ConfigError("/weights", "verify needs a weighted quadrilateral or ambitoric data")


def parse_config(text: str | bytes, command: str | None = None) -> JobConfig:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ConfigError("", f"configuration is not UTF-8: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("", f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return from_dict(data, command)


def serialize(cfg: JobConfig) -> dict:
    """Inverse of :func:`from_dict`; rationals become strings."""
    out: dict = {"command": cfg.command}
    if cfg.pqk is not None:
        out["pqk"] = [fmt(x) for x in cfg.pqk]
    if cfg.vertices is not None:
        out["vertices"] = [[fmt(x) for x in p] for p in cfg.vertices]
    if cfg.weights is not None:
        out["weights"] = [fmt(x) for x in cfg.weights]
    if cfg.edges is not None:
        out["edges"] = list(cfg.edges)
    if cfg.resolution is not None:
        out["resolution"] = cfg.resolution
    if cfg.segment is not None:
        out["segment"] = {k: [fmt(x) for x in v] for k, v in cfg.segment.items()}
    for key in ("ambitoric", "trapezium"):
        block = getattr(cfg, key)
        if block is not None:
            out[key] = {k: (v if isinstance(v, str) else [fmt(x) for x in v]) for k, v in block.items()}
    for key in ("family", "out", "svg"):
        if getattr(cfg, key) is not None:
            out[key] = getattr(cfg, key)
    if cfg.seed != 0:
        out["seed"] = cfg.seed
    if cfg.samples != 10_000:
        out["samples"] = cfg.samples
    return out
