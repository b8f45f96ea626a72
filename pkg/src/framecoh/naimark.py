"""Rank-one POVMs, their tight frames, and Naimark extension by direct sum.

A tight frame ``{psi_j}`` of ``C^d`` with ``n`` vectors gives the POVM
``E_j = |psi_j><psi_j|``. Its synthesis matrix ``T`` (``d x n``) has
orthonormal rows, so completing those rows to an ``n x n`` unitary yields an
orthonormal basis ``Psi_j = psi_j (+) phi_j`` of ``C^n`` whose top ``d``
components are the frame vectors. Embedding states as ``rho (+) 0`` then
reproduces every frame matrix element, every outcome probability and the
frame coherence (up to the factor ``d/n``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import numpy.typing as npt

from .coherence import frame_coherence
from .errors import DimMismatch, NotHermitian, NotPositive, NotRankOne, NotTight, ZeroProbability
from .frames import Frame
from .linalg import (
    PSD_FLOOR,
    ComplexArray,
    DensityOperator,
    as_complex,
    direct_sum_zero,
    hermiticity_error,
    make_density,
)

COMPLETENESS_TOL = 1e-10
RANK_ONE_TOL = 1e-10
PIVOT_TOL = 1e-8
PROBABILITY_FLOOR = -1e-12


@dataclass(frozen=True, eq=False)
class Povm:
    """Positive effects summing to the identity; ``effects`` has shape ``(n, d, d)``."""

    effects: ComplexArray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.effects.shape[1]

    @property
    def n(self) -> int:
        return self.effects.shape[0]

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, j: int) -> ComplexArray:
        return self.effects[j]


def make_povm(effects: Sequence[npt.ArrayLike] | npt.ArrayLike) -> Povm:
    e = as_complex(effects)
    if e.ndim != 3 or e.shape[1] != e.shape[2] or e.shape[0] < 1:
        raise DimMismatch(f"effects must have shape (n, d, d), got {e.shape}")
    for j, ej in enumerate(e):
        herr = hermiticity_error(ej)
        if herr > 1e-12:
            raise NotHermitian(f"effect {j}: max |E_ab - conj(E_ba)|", herr, 1e-12)
        lowest = float(np.linalg.eigvalsh(ej)[0])
        if lowest < PSD_FLOOR:
            raise NotPositive(f"effect {j}: smallest eigenvalue", lowest, PSD_FLOOR)
    resid = float(np.linalg.norm(e.sum(axis=0) - np.eye(e.shape[1]), "fro"))
    if resid > COMPLETENESS_TOL:
        raise NotTight("||sum E_j - I||_F", resid, COMPLETENESS_TOL)
    e = e.copy()
    e.setflags(write=False)
    return Povm(e)


def frame_to_povm(f: Frame) -> Povm:
    f.require_tight()
    t = f.vectors
    return make_povm(np.einsum("aj,bj->jab", t, t.conj()))


def povm_to_frame(p: Povm) -> Frame:
    """Recover ``psi_j`` with ``E_j = |psi_j><psi_j|``.

    Each vector is ``sqrt(lambda) v`` for the top eigenpair of ``E_j``, with
    the phase chosen so that its largest-magnitude component is real and
    positive (ties go to the lowest index).
    """
    cols = []
    for j, ej in enumerate(p.effects):
        w, v = np.linalg.eigh(ej)
        if p.dim > 1 and w[-2] >= RANK_ONE_TOL:
            raise NotRankOne(j, w[-2])
        vec = np.sqrt(max(w[-1], 0.0)) * v[:, -1]
        mags = np.abs(vec)
        if mags.max() > 0:
            pivot = int(np.argmax(mags >= mags.max() * (1 - 1e-12)))
            vec = vec * (np.conj(vec[pivot]) / mags[pivot])
        cols.append(vec)
    return Frame(np.column_stack(cols))


@dataclass(frozen=True, eq=False)
class NaimarkExtension:
    """Orthonormal basis of ``C^n`` whose top ``d`` rows are the frame."""

    original: Frame
    basis: Frame

    @property
    def tail_vectors(self) -> ComplexArray:
        """The ``(n - d)``-dimensional lower parts ``phi_j``, one per column."""
        return self.basis.vectors[self.original.dim :, :]

    @property
    def unitary(self) -> ComplexArray:
        return self.basis.vectors

    def projectors(self) -> ComplexArray:
        u = self.basis.vectors
        return np.einsum("aj,bj->jab", u, u.conj())


def _complete_rows(rows: ComplexArray) -> ComplexArray:
    """Extend orthonormal rows to a unitary by Gram-Schmidt over canonical seed rows.

    Seeds ``e_0, e_1, ...`` are tried in order; a seed whose residual norm
    after projection falls below the pivot threshold is skipped.
    """
    d, n = rows.shape
    basis = [r for r in rows]
    for i in range(n):
        if len(basis) == n:
            break
        v = np.zeros(n, dtype=np.complex128)
        v[i] = 1.0
        for _ in range(2):  # re-orthogonalise once for stability
            for b in basis:
                v = v - np.vdot(b, v) * b
        norm = np.linalg.norm(v)
        if norm < PIVOT_TOL:
            continue
        basis.append(v / norm)
    if len(basis) != n:
        raise NotTight("row completion rank deficit", n - len(basis), 0)
    return np.array(basis)


def naimark_extend(f: Frame) -> NaimarkExtension:
    """Deterministic Naimark extension of a tight frame to ``C^n``.

    The first ``d`` rows of the resulting unitary are the frame's synthesis
    matrix itself (not a recomputed copy), so ``Psi_j[:d] == psi_j`` exactly.
    """
    f.require_tight()
    u = _complete_rows(f.vectors)
    return NaimarkExtension(original=f, basis=Frame(u))


@dataclass(frozen=True)
class ExtensionReport:
    element_error: float
    probability_error: float
    frame_value: float
    extension_value: float
    unitarity_error: float
    tolerance: float
    unitarity_tolerance: float = COMPLETENESS_TOL

    @property
    def coherence_error(self) -> float:
        return abs(self.frame_value - self.extension_value)

    @property
    def first_violation(self) -> str | None:
        checks = [
            ("unitarity", self.unitarity_error, self.unitarity_tolerance),
            ("element preservation", self.element_error, self.tolerance),
            ("probability preservation", self.probability_error, self.tolerance),
            ("coherence equality", self.coherence_error, self.tolerance),
        ]
        for name, err, tol in checks:
            if not err <= tol:
                return f"{name}: error {err:.3e} exceeds {tol:.1e}"
        return None

    @property
    def passed(self) -> bool:
        return self.first_violation is None


def verify_extension(ext: NaimarkExtension, rho: DensityOperator, tol: float = 1e-12) -> ExtensionReport:
    """Check the direct-sum identities of a Naimark extension on the state ``rho``.

    Unitarity of the completed basis is reported too, against its own
    ``1e-10`` Frobenius tolerance.
    """
    f = ext.original
    if rho.dim != f.dim:
        raise DimMismatch(f"state dimension {rho.dim} does not match frame dimension {f.dim}")
    d, n = f.dim, f.n
    psi = f.vectors
    big = ext.basis.vectors
    embedded = direct_sum_zero(rho, n - d)

    small_elems = psi.conj().T @ rho.matrix @ psi
    big_elems = big.conj().T @ embedded @ big
    element_error = float(np.max(np.abs(small_elems - big_elems)))

    effects = frame_to_povm(f)
    p_small = povm_probabilities(effects, rho)
    proj = ext.projectors()
    p_big = np.real(np.einsum("ab,jba->j", embedded, proj))
    probability_error = float(np.max(np.abs(p_small - p_big)))

    mags = np.abs(big_elems)
    np.fill_diagonal(mags, 0.0)
    extension_value = d / n * float(mags.sum())
    frame_value = frame_coherence(f, rho).value

    unitarity = float(np.linalg.norm(big.conj().T @ big - np.eye(n), "fro"))
    return ExtensionReport(
        element_error=element_error,
        probability_error=probability_error,
        frame_value=frame_value,
        extension_value=extension_value,
        unitarity_error=unitarity,
        tolerance=tol,
    )


def povm_probabilities(p: Povm, rho: DensityOperator) -> npt.NDArray[np.float64]:
    """Outcome probabilities ``tr(rho E_j)``; tiny negative round-off is clamped to 0."""
    if p.dim != rho.dim:
        raise DimMismatch(f"POVM dimension {p.dim} does not match state dimension {rho.dim}")
    probs = np.real(np.einsum("ab,jba->j", rho.matrix, p.effects))
    if np.any(probs < PROBABILITY_FLOOR):
        raise NotPositive("outcome probability", float(probs.min()), PROBABILITY_FLOOR)
    return np.clip(probs, 0.0, None)


def _psd_sqrt(e: ComplexArray) -> ComplexArray:
    w, v = np.linalg.eigh(e)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def post_measurement_state(p: Povm, rho: DensityOperator, j: int) -> DensityOperator:
    """``A_j rho A_j^dagger / p_j`` with ``A_j`` the positive square root of ``E_j``."""
    if p.dim != rho.dim:
        raise DimMismatch(f"POVM dimension {p.dim} does not match state dimension {rho.dim}")
    prob = povm_probabilities(p, rho)[j]
    if prob <= 1e-12:
        raise ZeroProbability(f"outcome {j} has probability {prob:.3e}")
    a = _psd_sqrt(p.effects[j])
    out = a @ rho.matrix @ a.conj().T / prob
    return make_density(0.5 * (out + out.conj().T))
