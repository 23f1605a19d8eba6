"""JSON file schemas and deterministic report serialisation.

All files carry ``"layout": "xpxp"``. Matrices are row-major arrays of arrays.

    state:       {"layout", "n", "m", "V", "entropy"}
    hamiltonian: {"layout", "n", "h", "r"}
    channel:     {"layout", "n", "X", "Y", "x"}
    matrix:      {"layout", "n", "matrix"}
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .channels import GaussianChannel, validate_channel
from .errors import InvalidArgumentError
from .states import QuadraticHamiltonian, State, StateMoments

LAYOUT = "xpxp"


def load_json(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidArgumentError(f"cannot read {path}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidArgumentError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise InvalidArgumentError(f"{path} must hold a JSON object")
    return obj


def _field(obj: dict, key: str, kind: str):
    if key not in obj:
        raise InvalidArgumentError(f"{kind} JSON is missing the field {key!r}")
    return obj[key]


def _check_layout(obj: dict, kind: str) -> None:
    layout = obj.get("layout")
    if layout != LAYOUT:
        raise InvalidArgumentError(f"{kind} JSON must declare \"layout\": \"xpxp\", got {layout!r}")


def _array(value, ndim: int, name: str) -> np.ndarray:
    try:
        a = np.array(value, dtype=float)
    except (TypeError, ValueError):
        raise InvalidArgumentError(f"{name} must be numeric") from None
    if a.ndim != ndim:
        raise InvalidArgumentError(f"{name} must be {ndim}-dimensional, got shape {a.shape}")
    return a


def _check_n(obj: dict, dim: int, kind: str) -> None:
    n = obj.get("n")
    if n is not None and (not isinstance(n, int) or 2 * n != dim):
        raise InvalidArgumentError(f"{kind} declares n={n!r} but its matrices are {dim}×{dim}")


def parse_state(obj: dict) -> StateMoments:
    _check_layout(obj, "state")
    V = _array(_field(obj, "V", "state"), 2, "V")
    m = _array(_field(obj, "m", "state"), 1, "m")
    _check_n(obj, V.shape[0], "state")
    entropy = obj.get("entropy")
    if entropy is not None and not isinstance(entropy, (int, float)):
        raise InvalidArgumentError("entropy must be a number or null")
    return StateMoments(m, V, entropy)


def state_to_json(state: State) -> dict:
    return {
        "layout": LAYOUT,
        "n": state.n,
        "m": state.m.tolist(),
        "V": state.V.tolist(),
        "entropy": state.entropy,
    }


def parse_hamiltonian(obj: dict) -> QuadraticHamiltonian:
    _check_layout(obj, "hamiltonian")
    h = _array(_field(obj, "h", "hamiltonian"), 2, "h")
    _check_n(obj, h.shape[0], "hamiltonian")
    r = obj.get("r")
    return QuadraticHamiltonian(h, None if r is None else _array(r, 1, "r"))


def hamiltonian_to_json(H: QuadraticHamiltonian) -> dict:
    return {"layout": LAYOUT, "n": H.n, "h": H.h.tolist(), "r": H.r.tolist()}


def parse_channel(obj: dict, tol: float | None = None) -> GaussianChannel:
    _check_layout(obj, "channel")
    X = _array(_field(obj, "X", "channel"), 2, "X")
    Y = _array(_field(obj, "Y", "channel"), 2, "Y")
    _check_n(obj, X.shape[0], "channel")
    x = obj.get("x")
    return validate_channel(X, Y, None if x is None else _array(x, 1, "x"), tol)


def channel_to_json(ch: GaussianChannel) -> dict:
    return {"layout": LAYOUT, "n": ch.n, "X": ch.X.tolist(), "Y": ch.Y.tolist(), "x": ch.x.tolist()}


def parse_matrix(obj: dict) -> np.ndarray:
    """Read a bare matrix file; state and Hamiltonian files are accepted too (V or h)."""
    _check_layout(obj, "matrix")
    for key in ("matrix", "V", "h"):
        if key in obj:
            M = _array(obj[key], 2, key)
            _check_n(obj, M.shape[0], "matrix")
            return M
    raise InvalidArgumentError("matrix JSON needs a 'matrix' (or 'V' / 'h') field")


def _encode(value) -> str:
    if isinstance(value, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in value.items()) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in value) + "]"
    if isinstance(value, np.ndarray):
        return _encode(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        x = float(value)
        if not math.isfinite(x):
            return "null"
        return format(x + 0.0, ".17g")
    if isinstance(value, str):
        return json.dumps(value)
    raise TypeError(f"cannot serialise {type(value).__name__}")


def dumps_report(report: dict) -> str:
    """JSON with a fixed key order and floats at 17 significant digits (non-finite -> null)."""
    return _encode(report)


def _flatten(prefix: str, value, out: list) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
        return
    if isinstance(value, np.ndarray):
        value = value.tolist()
    if isinstance(value, (list, tuple)) and value and isinstance(value[0], (list, tuple)):
        rows, cols = len(value), len(value[0])
        for j in range(cols):
            for i in range(rows):
                out.append((f"{prefix}[{i}][{j}]", value[i][j]))
        return
    if isinstance(value, (list, tuple)):
        for i, v in enumerate(value):
            out.append((f"{prefix}[{i}]", v))
        return
    out.append((prefix, value))


def report_to_csv(report: dict) -> str:
    """One header row and one data row; matrices are flattened column by column."""
    pairs: list = []
    _flatten("", report, pairs)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([k for k, _ in pairs])
    writer.writerow([_encode(v) if not isinstance(v, str) else v for _, v in pairs])
    return buf.getvalue()
