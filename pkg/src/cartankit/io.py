"""JSON matrix files and odd-even configuration files.

Matrix file::

    {"schema": 1, "n": 2, "data": [[[re, im], [re, im]], [[re, im], [re, im]]]}

Config file::

    {"subsystems": [{"dim": 2, "type": "AII"}, {"dim": 3, "type": "AI", "T": "t.json"}],
     "tolerances": {"closure_tol": 1e-9}, "seed": 7}

``T`` paths are resolved relative to the config file.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .oddeven import SubsystemChoice

SCHEMA = 1


class InputError(ValueError):
    """A file or argument failed to parse or validate; the message names the field."""


def matrix_to_json(m) -> dict:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    data = [[[float(z.real), float(z.imag)] for z in row] for row in m]
    return {"schema": SCHEMA, "n": int(m.shape[0]), "data": data}


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise InputError("matrix file: top level must be an object")
    n = obj.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError(f"matrix file: field 'n' must be a positive integer, got {n!r}")
    data = obj.get("data")
    if not isinstance(data, list) or len(data) != n:
        raise InputError(f"matrix file: field 'data' must be a list of {n} rows")
    out = np.empty((n, n), dtype=complex)
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != n:
            raise InputError(f"matrix file: field 'data[{i}]' must have {n} entries")
        for j, z in enumerate(row):
            if (
                not isinstance(z, list)
                or len(z) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in z)
                or not all(math.isfinite(x) for x in z)
            ):
                raise InputError(f"matrix file: field 'data[{i}][{j}]' must be a finite [re, im] pair")
            out[i, j] = complex(z[0], z[1])
    return out


def write_matrix(path, m) -> None:
    Path(path).write_text(json.dumps(matrix_to_json(m)) + "\n", encoding="utf-8")


def read_matrix(path) -> np.ndarray:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"matrix file {path}: {exc}") from exc
    return matrix_from_json(obj)


@dataclass
class DecompositionConfig:
    subsystems: list[SubsystemChoice]
    tolerances: dict = field(default_factory=dict)
    seed: int | None = None


def load_config(path) -> DecompositionConfig:
    path = Path(path)
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"config file {path}: {exc}") from exc
    if not isinstance(obj, dict):
        raise InputError("config: top level must be an object")
    subs = obj.get("subsystems")
    if not isinstance(subs, list) or not subs:
        raise InputError("config: field 'subsystems' must be a non-empty list")
    choices = []
    for i, s in enumerate(subs):
        if not isinstance(s, dict):
            raise InputError(f"config: field 'subsystems[{i}]' must be an object")
        dim, kind = s.get("dim"), s.get("type")
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            raise InputError(f"config: field 'subsystems[{i}].dim' must be a positive integer")
        if kind not in ("AI", "AII"):
            raise InputError(f"config: field 'subsystems[{i}].type' must be \"AI\" or \"AII\"")
        if kind == "AII" and dim % 2:
            raise InputError(f"config: field 'subsystems[{i}]': AII requires even dimension, got {dim}")
        t = None
        if s.get("T") is not None:
            t = read_matrix(path.parent / s["T"])
        try:
            choices.append(SubsystemChoice(dim, kind, t))
        except ValueError as exc:
            raise InputError(f"config: field 'subsystems[{i}]': {exc}") from exc
    tols = obj.get("tolerances") or {}
    if not isinstance(tols, dict) or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) and v > 0 for v in tols.values()
    ):
        raise InputError("config: field 'tolerances' must map names to positive numbers")
    seed = obj.get("seed")
    if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool) or seed < 0):
        raise InputError("config: field 'seed' must be a nonnegative integer")
    return DecompositionConfig(choices, dict(tols), seed)
