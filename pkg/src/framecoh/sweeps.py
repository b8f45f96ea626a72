"""Parameter sweeps that produce the CSV data behind the coherence figures.

Four families are supported:

``polygon``
    ``C_{F_n}(rho)`` over regular polygonal qubit frames, ``n = n_min..n_max``.
``composite``
    Two-qubit states against ``F_n (x) F_n``.
``interpolate``
    ``C_{F(t)}(rho)`` along the frame path joining two orthonormal bases.
``surface``
    ``C_F(rho(a, b, theta))`` over the valid ``(a, b)`` region of the
    general qubit state at fixed ``theta``.

Points may be evaluated concurrently (``jobs > 1``); rows are always
emitted in sweep order.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .catalog import builtin_frame, builtin_state, frame_pair, qubit_state
from .coherence import composite_coherence, frame_coherence
from .errors import BadParameter
from .frames import interpolate, polygonal_frame

FAMILIES = ("polygon", "composite", "interpolate", "surface")


def format_number(x: float | int) -> str:
    """Shortest round-trip repr of ``x`` rounded to 12 significant digits; integers verbatim."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(f"{x:.12g}"))


@dataclass(frozen=True)
class SweepSpec:
    family: str
    states: tuple[str, ...] = ("rho1",)
    n_min: int = 3
    n_max: int | None = None
    steps: int = 101
    grid: int = 51
    theta: float = 0.0
    frame: str | None = None
    jobs: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise BadParameter(f"unknown sweep family {self.family!r}; expected one of {FAMILIES}")
        if self.family in ("polygon", "composite"):
            if self.n_min < 3:
                raise BadParameter(f"polygon sweeps need n_min >= 3, got {self.n_min}")
            if self.n_upper < self.n_min:
                raise BadParameter(f"empty range n = {self.n_min}..{self.n_upper}")
        if self.family == "interpolate" and self.steps < 2:
            raise BadParameter(f"interpolation needs at least 2 steps, got {self.steps}")
        if self.family == "surface" and self.grid < 2:
            raise BadParameter(f"surface grid needs at least 2 points per axis, got {self.grid}")
        if not self.states and self.family != "surface":
            raise BadParameter("at least one state is required")
        if self.jobs < 1:
            raise BadParameter(f"jobs must be >= 1, got {self.jobs}")

    @property
    def n_upper(self) -> int:
        if self.n_max is not None:
            return self.n_max
        # figure ranges: 3..50 for single qubits, 3..30 for qubit pairs
        return 30 if self.family == "composite" else 50


@dataclass
class SweepResult:
    header: list[str]
    rows: list[list[float]] = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header)
        for row in self.rows:
            writer.writerow([format_number(v) for v in row])
        return buf.getvalue()

    def column(self, name: str) -> np.ndarray:
        return np.array([r[self.header.index(name)] for r in self.rows], dtype=float)


def _evaluate(fn: Callable, points: Sequence, jobs: int) -> list:
    if jobs == 1:
        return [fn(p) for p in points]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, points))


def _value_columns(states: Sequence[str]) -> list[str]:
    return ["coherence"] if len(states) == 1 else list(states)


def run_sweep(spec: SweepSpec) -> SweepResult:
    if spec.family == "surface":
        return _surface(spec)

    rhos = [builtin_state(s) for s in spec.states]
    if spec.family in ("polygon", "composite"):
        key = "n"
        points: Iterable = range(spec.n_min, spec.n_upper + 1)

        if spec.family == "polygon":
            def row(n):
                f = polygonal_frame(n)
                return [n] + [frame_coherence(f, r).value for r in rhos]
        else:
            def row(n):
                f = polygonal_frame(n)
                return [n] + [composite_coherence(f, f, r).value for r in rhos]
    else:
        key = "t"
        a, b = frame_pair(spec.frame or "canonical:3+fourier:3")
        points = [i / (spec.steps - 1) for i in range(spec.steps)]

        def row(t):
            f = interpolate(a, b, t)
            return [t] + [frame_coherence(f, r).value for r in rhos]

    return SweepResult([key] + _value_columns(spec.states), _evaluate(row, list(points), spec.jobs))


def _surface(spec: SweepSpec) -> SweepResult:
    frame = builtin_frame(spec.frame or "triangle")
    a_vals = np.linspace(0.0, 1.0, spec.grid)
    u_vals = np.linspace(-1.0, 1.0, spec.grid)
    points = []
    for a in a_vals:
        half_width = math.sqrt(max(a * (1 - a), 0.0))
        points.extend((float(a), float(u * half_width)) for u in u_vals)

    def row(ab):
        a, b = ab
        return [a, b, frame_coherence(frame, qubit_state(a, b, spec.theta)).value]

    return SweepResult(["a", "b", "coherence"], _evaluate(row, points, spec.jobs))
