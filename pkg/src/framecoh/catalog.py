"""Named states and frames, and the string grammar the CLI accepts.

Frame specs::

    canonical:D  fourier:D  polygon:N  rotated:LAMBDA  coherent:D
    triangle  tetra  ico  split3
    union:A+B[+C...]      equal-weight union, each part scaled by 1/sqrt(k)
    tensor:A*B            product frame
    PATH                  JSON frame file

State specs::

    rho0 rho1 rho2 rho3 qutrit136 bell1 bell2 bell3 bell4
    qubit:A,B,THETA       [[a, b e^{i theta}], [b e^{-i theta}, 1 - a]]
    diag:P1,P2,...        diagonal state
    mixed:D               maximally mixed state I/D
    PATH                  JSON state file
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Callable

import numpy as np

from . import frames as fr
from .coherent_states import coherent_frame
from .errors import BadParameter, InvalidParameters, ParseError, UnknownName
from .frames import Frame
from .linalg import DensityOperator, make_density, pure_state, state_from_json

SQRT1_2 = 1 / math.sqrt(2)

BELL_VECTORS = {
    "bell1": np.array([1, 0, 0, 1]) * SQRT1_2,
    "bell2": np.array([1, 0, 0, -1]) * SQRT1_2,
    "bell3": np.array([0, 1, 1, 0]) * SQRT1_2,
    "bell4": np.array([0, 1j, -1j, 0]) * SQRT1_2,
}

_FIXED_STATES: dict[str, Callable[[], np.ndarray]] = {
    "rho0": lambda: np.diag([1.0, 0.0]),
    "rho1": lambda: np.diag([0.5, 0.5]),
    "rho2": lambda: np.diag([0.25, 0.75]),
    "rho3": lambda: np.array([[0.5, -0.25], [-0.25, 0.5]]),
    "qutrit136": lambda: np.diag([1.0, 2.0, 3.0]) / 6,
}

_FIXED_FRAMES: dict[str, Callable[[], Frame]] = {
    "triangle": fr.triangular_frame,
    "tetra": fr.tetrahedral_frame,
    "ico": fr.icosahedral_frame,
    "split3": fr.split3_frame,
}

_PARAM_FRAMES: dict[str, Callable[[int], Frame]] = {
    "canonical": fr.canonical_basis,
    "fourier": fr.fourier_basis,
    "polygon": fr.polygonal_frame,
    "coherent": coherent_frame,
}


def _looks_like_path(spec: str) -> bool:
    return spec.endswith(".json") or "/" in spec or Path(spec).is_file()


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from exc


def _int_param(name: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise BadParameter(f"{name}: expected an integer parameter, got {raw!r}") from None


def _float_params(name: str, raw: str) -> list[float]:
    try:
        return [float(x) for x in raw.split(",")]
    except ValueError:
        raise BadParameter(f"{name}: expected comma-separated numbers, got {raw!r}") from None


def qubit_state(a: float, b: float, theta: float) -> DensityOperator:
    """General qubit ``[[a, b e^{i theta}], [b e^{-i theta}, 1 - a]]``."""
    bound = math.sqrt(max(a * (1 - a), 0.0))
    if not (0.0 <= a <= 1.0) or abs(b) > bound + 1e-12:
        raise InvalidParameters(
            f"qubit state needs 0 <= a <= 1 and |b| <= sqrt(a(1-a)) = {bound:.6g}; got a={a}, b={b}"
        )
    off = b * np.exp(1j * theta)
    return make_density([[a, off], [np.conj(off), 1 - a]])


def builtin_state(spec: str) -> DensityOperator:
    spec = spec.strip()
    if spec in _FIXED_STATES:
        return make_density(_FIXED_STATES[spec]())
    if spec in BELL_VECTORS:
        return pure_state(BELL_VECTORS[spec])
    name, sep, rest = spec.partition(":")
    if sep:
        if name == "qubit":
            vals = _float_params(name, rest)
            if len(vals) != 3:
                raise InvalidParameters(f"qubit state needs a,b,theta; got {rest!r}")
            return qubit_state(*vals)
        if name == "diag":
            return make_density(np.diag(_float_params(name, rest)))
        if name == "mixed":
            d = _int_param(name, rest)
            if d < 1:
                raise BadParameter(f"mixed: dimension must be >= 1, got {d}")
            return make_density(np.eye(d) / d)
    if _looks_like_path(spec):
        return state_from_json(_read_json(spec))
    raise UnknownName(f"unknown state {spec!r}")


def builtin_frame(spec: str) -> Frame:
    spec = spec.strip()
    if spec in _FIXED_FRAMES:
        return _FIXED_FRAMES[spec]()
    name, sep, rest = spec.partition(":")
    if sep:
        if name in _PARAM_FRAMES:
            return _PARAM_FRAMES[name](_int_param(name, rest))
        if name == "rotated":
            vals = _float_params(name, rest)
            if len(vals) != 1:
                raise BadParameter(f"rotated needs one angle, got {rest!r}")
            return fr.rotated_qubit_basis(vals[0])
        if name == "union":
            return fr.union(*(builtin_frame(part) for part in rest.split("+")))
        if name == "tensor":
            parts = rest.split("*")
            if len(parts) != 2:
                raise BadParameter(f"tensor needs exactly two factors, got {rest!r}")
            return fr.tensor_frame(builtin_frame(parts[0]), builtin_frame(parts[1]))
    if _looks_like_path(spec):
        return fr.frame_from_json(_read_json(spec))
    raise UnknownName(f"unknown frame {spec!r}")


def frame_pair(spec: str) -> tuple[Frame, Frame]:
    """Parse ``A+B`` into two frames (used for basis interpolation)."""
    parts = spec.split("+")
    if len(parts) != 2:
        raise BadParameter(f"expected two frames joined by '+', got {spec!r}")
    return builtin_frame(parts[0]), builtin_frame(parts[1])
