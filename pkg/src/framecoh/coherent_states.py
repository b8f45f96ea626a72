"""Discrete coherent states on an odd-dimensional space.

States are functions on the symmetric index range ``{-s, ..., s}``
(``d = 2s + 1``), extended periodically with period ``d``. Storage offset
``i`` corresponds to index ``i - s``; :class:`SymmetricIndexSpace` is the
only place that conversion happens.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from .errors import BadDimension, BadKappa, IndexOutOfRange, NoConvergence
from .coherence import frame_coherence
from .frames import Frame
from .linalg import ComplexArray, DensityOperator, make_density

THETA_REL_TOL = 1e-17
THETA_MAX_TERMS = 10_000


@dataclass(frozen=True)
class SymmetricIndexSpace:
    s: int

    def __post_init__(self):
        if self.s < 0:
            raise BadDimension(f"s must be non-negative, got {self.s}")

    @classmethod
    def of_dim(cls, d: int) -> "SymmetricIndexSpace":
        if d < 1 or d % 2 == 0:
            raise BadDimension(f"dimension must be odd and positive, got {d}")
        return cls((d - 1) // 2)

    @property
    def d(self) -> int:
        return 2 * self.s + 1

    @property
    def indices(self) -> npt.NDArray[np.int64]:
        return np.arange(-self.s, self.s + 1)

    def wrap(self, n: int | npt.NDArray[np.int64]):
        """Reduce any integer modulo ``d`` onto ``{-s, ..., s}``."""
        return (np.asarray(n) + self.s) % self.d - self.s

    def offset(self, n: int | npt.NDArray[np.int64]):
        """Storage position of (the periodic image of) index ``n``."""
        return (np.asarray(n) + self.s) % self.d

    def contains(self, n: int) -> bool:
        return -self.s <= n <= self.s


@dataclass(frozen=True, eq=False)
class DiscreteGaussian:
    kappa: float
    values: npt.NDArray[np.float64] = field(repr=False)
    terms: int = 0  # largest |m| used in the periodising sum

    @property
    def d(self) -> int:
        return len(self.values)


def discrete_gaussian(d: int, kappa: float) -> DiscreteGaussian:
    """Periodised Gaussian ``g(n) = sum_m exp(-kappa pi (n + m d)^2 / d)``.

    The sum over ``m`` runs outward from 0 and stops once the next pair of
    terms falls below ``1e-17`` of the running sum at every ``n``.
    """
    space = SymmetricIndexSpace.of_dim(d)
    if not (kappa > 0 and math.isfinite(kappa)):
        raise BadKappa(f"kappa must be positive and finite, got {kappa}")
    n = space.indices.astype(float)
    scale = kappa * math.pi / d
    total = np.exp(-scale * n**2)
    for m in range(1, THETA_MAX_TERMS + 1):
        nxt = np.exp(-scale * (n + m * d) ** 2) + np.exp(-scale * (n - m * d) ** 2)
        total = total + nxt
        if np.all(nxt < THETA_REL_TOL * total):
            return DiscreteGaussian(kappa=kappa, values=total, terms=m)
    raise NoConvergence(
        f"theta sum for d={d}, kappa={kappa} did not converge within {THETA_MAX_TERMS} terms"
    )


def fourier_operator(space: SymmetricIndexSpace) -> ComplexArray:
    """``(F psi)(k) = d^{-1/2} sum_j exp(-2 pi i k j / d) psi(j)`` over ``-s..s``."""
    idx = space.indices
    return np.exp(-2j * np.pi * np.outer(idx, idx) / space.d) / math.sqrt(space.d)


def vacuum_state(d: int) -> npt.NDArray[np.float64]:
    """Normalised ``g_1``; a fixed point of :func:`fourier_operator`."""
    g = discrete_gaussian(d, 1.0).values
    return g / np.linalg.norm(g)


def displacement(space: SymmetricIndexSpace, j: int, k: int) -> ComplexArray:
    """``(D(j,k) psi)(n) = exp(-pi i k j / d) exp(2 pi i k n / d) psi(n - j)``.

    ``n - j`` is taken modulo ``d``.
    """
    if not (space.contains(j) and space.contains(k)):
        raise IndexOutOfRange(f"(j, k) = ({j}, {k}) outside -{space.s}..{space.s}")
    d = space.d
    n = space.indices
    out = np.zeros((d, d), dtype=np.complex128)
    rows = np.arange(d)
    out[rows, space.offset(n - j)] = np.exp(-1j * np.pi * k * j / d) * np.exp(2j * np.pi * k * n / d)
    return out


def coherent_state(space: SymmetricIndexSpace, j: int, k: int, vacuum: npt.ArrayLike | None = None):
    """``|j,k> = d^{-1/2} D(j,k) |g>``."""
    g = vacuum_state(space.d) if vacuum is None else np.asarray(vacuum)
    return displacement(space, j, k) @ g / math.sqrt(space.d)


def coherent_frame(d: int) -> Frame:
    """All ``d^2`` states ``|j,k>``, ``j`` outer and ``k`` inner, both ascending from ``-s``."""
    space = SymmetricIndexSpace.of_dim(d)
    g = vacuum_state(d)
    cols = [coherent_state(space, j, k, g) for j in space.indices for k in space.indices]
    return Frame(np.column_stack(cols)).require_tight()


def frame_position(space: SymmetricIndexSpace, j: int, k: int) -> int:
    """Column of ``|j,k>`` inside :func:`coherent_frame`."""
    return int(space.offset(j)) * space.d + int(space.offset(k))


def fourier_permutation(space: SymmetricIndexSpace) -> npt.NDArray[np.int64]:
    """Column permutation ``p`` with ``F^dagger |j,k> = |-k, j>`` at ``p[pos(j,k)]``.

    Equivalently ``F |j,k> = |k, -j>``.
    """
    perm = np.empty(space.d**2, dtype=np.int64)
    for j in space.indices:
        for k in space.indices:
            perm[frame_position(space, j, k)] = frame_position(space, space.wrap(-k), j)
    return perm


@dataclass(frozen=True)
class FourierInvarianceReport:
    direct: float
    transformed: float
    reindexed: float
    reindex_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return (
            abs(self.direct - self.transformed) < self.tolerance
            and abs(self.transformed - self.reindexed) < self.tolerance
            and self.reindex_error < self.tolerance
        )


def fourier_invariance_check(d: int, rho: DensityOperator, tol: float = 1e-11) -> FourierInvarianceReport:
    """Compare the coherence of ``rho`` and ``F^dagger rho F`` over the coherent frame.

    The transformed value is obtained twice: by evaluating the frame
    coherence of ``F^dagger rho F`` directly, and by permuting the frame
    matrix of ``rho`` according to the action of ``F`` on the labels.
    """
    space = SymmetricIndexSpace.of_dim(d)
    frame = coherent_frame(d)
    f_op = fourier_operator(space)
    transformed_state = make_density(f_op.conj().T @ rho.matrix @ f_op)

    direct = frame_coherence(frame, rho).value
    transformed = frame_coherence(frame, transformed_state).value

    # <j,k|F^dag rho F|n,m> = <F j,k| rho |F n,m> = <k,-j| rho |m,-n>
    inv = np.argsort(fourier_permutation(space))  # label of F|j,k> among the columns
    t = frame.vectors
    m = (t.conj().T @ rho.matrix @ t)[np.ix_(inv, inv)]
    mags = np.abs(m)
    np.fill_diagonal(mags, 0.0)
    reindexed = frame.dim / frame.n * float(mags.sum())

    perm = fourier_permutation(space)
    reindex_error = float(np.max(np.abs(f_op.conj().T @ t - t[:, perm])))
    return FourierInvarianceReport(direct, transformed, reindexed, reindex_error, tol)
