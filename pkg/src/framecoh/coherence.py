"""Basis- and frame-dependent l1 coherence.

For a tight frame ``{phi_1, ..., phi_n}`` of ``C^d`` and a state ``rho``::

    C(rho) = (d / n) * sum_{j != k} |<phi_j|rho|phi_k>|

When the frame is an orthonormal basis (``n = d``) this is the usual l1
norm of coherence. The off-diagonal matrix elements can also be recovered
from expectation values of the Hermitian observables ``W_jk`` built by
:func:`observables`, which gives an independent measurement-style route to
the same number (:func:`coherence_from_means`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np
import numpy.typing as npt

from .errors import DimMismatch, FrameCoherenceError
from .frames import Frame, apply_unitary, require_basis, tensor_frame
from .linalg import ComplexArray, DensityOperator, as_complex, make_density, mean_value


@dataclass(frozen=True, eq=False)
class CoherenceReport:
    """Coherence value and the off-diagonal magnitudes it was summed from."""

    value: float
    prefactor: float
    offdiag: npt.NDArray[np.float64] = field(repr=False)
    dim: int
    n: int

    def to_dict(self) -> dict[str, Any]:
        return {"value": self.value, "prefactor": self.prefactor, "dim": self.dim, "n": self.n}

    def __float__(self) -> float:
        return self.value


def _check_dims(f: Frame, rho: DensityOperator) -> None:
    if f.dim != rho.dim:
        raise DimMismatch(f"frame dimension {f.dim} does not match state dimension {rho.dim}")


def _report(f: Frame, rho: DensityOperator, prefactor: float) -> CoherenceReport:
    t = f.vectors
    mags = np.abs(t.conj().T @ rho.matrix @ t)
    np.fill_diagonal(mags, 0.0)
    # rho is Hermitian, so the j<k and j>k halves carry the same magnitudes.
    value = 2.0 * prefactor * float(np.triu(mags, 1).sum())
    return CoherenceReport(value=value, prefactor=prefactor, offdiag=mags, dim=f.dim, n=f.n)


def basis_coherence(b: Frame, rho: DensityOperator) -> CoherenceReport:
    """l1 norm of coherence of ``rho`` in the orthonormal basis ``b``."""
    require_basis(b)
    _check_dims(b, rho)
    return _report(b, rho, 1.0)


def frame_coherence(f: Frame, rho: DensityOperator) -> CoherenceReport:
    """Frame-dependent l1 coherence of ``rho`` with respect to the tight frame ``f``.

    Examples
    --------
    >>> from framecoh.frames import tetrahedral_frame
    >>> from framecoh.linalg import make_density
    >>> rho = make_density(np.diag([1, 2, 3]) / 6)
    >>> round(frame_coherence(tetrahedral_frame(), rho).value, 12)
    0.75
    """
    f.require_tight()
    _check_dims(f, rho)
    return _report(f, rho, f.dim / f.n)


def composite_coherence(fa: Frame, fb: Frame, rho: DensityOperator) -> CoherenceReport:
    """Coherence of a bipartite state relative to the product frame ``fa (x) fb``."""
    if rho.dim != fa.dim * fb.dim:
        raise DimMismatch(
            f"state dimension {rho.dim} is not {fa.dim} x {fb.dim} = {fa.dim * fb.dim}"
        )
    return frame_coherence(tensor_frame(fa, fb), rho)


# --- observables ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ObservableSet:
    """The ``n x n`` grid of Hermitian operators ``W_jk``; ``operators[j, k]`` is ``d x d``."""

    dim: int
    operators: ComplexArray = field(repr=False)

    @property
    def n(self) -> int:
        return self.operators.shape[0]

    def __getitem__(self, jk: tuple[int, int]) -> ComplexArray:
        return self.operators[jk]


def observables(f: Frame) -> ObservableSet:
    """Build ``W_jk`` for every index pair.

    * ``W_jj = |phi_j><phi_j|``
    * ``W_jk = (|phi_j><phi_k| + |phi_k><phi_j|) / 2`` for ``j > k``
    * ``W_jk = i (|phi_j><phi_k| - |phi_k><phi_j|) / 2`` for ``j < k``

    For ``j < k``, ``<W_kj>`` and ``<W_jk>`` are the real and imaginary
    parts of ``<phi_j|rho|phi_k>``.
    """
    t = f.vectors
    # outer[j, k] = |phi_j><phi_k|
    outer = np.einsum("aj,bk->jkab", t, t.conj())
    swapped = outer.transpose(1, 0, 2, 3)  # |phi_k><phi_j|
    j, k = np.indices((f.n, f.n))
    lower = (j > k)[..., None, None]
    upper = (j < k)[..., None, None]
    w = np.where(lower, 0.5 * (outer + swapped), 0.5j * (outer - swapped))
    w = np.where(~(lower | upper), outer, w)
    return ObservableSet(dim=f.dim, operators=w)


def matrix_element_from_means(mean_kj: float, mean_jk: float) -> complex:
    """``<phi_j|rho|phi_k> = <W_kj> + i <W_jk>`` for ``j < k``."""
    return complex(mean_kj, mean_jk)


def coherence_from_means(f: Frame, rho: DensityOperator) -> float:
    """Frame coherence assembled from the expectation values of ``W_jk``.

    Every ``<W_jk>_rho`` is evaluated with :func:`framecoh.linalg.mean_value`;
    no frame matrix is formed.
    """
    f.require_tight()
    _check_dims(f, rho)
    obs = observables(f)
    n = f.n
    total = 0.0
    for j in range(n - 1):
        for k in range(j + 1, n):
            z = matrix_element_from_means(mean_value(rho, obs[k, j]), mean_value(rho, obs[j, k]))
            total += abs(z)
    return 2.0 * f.dim / n * total


# --- properties -------------------------------------------------------------

@dataclass(frozen=True)
class PropertyReport:
    """Outcome of checking non-negativity, convexity and unitary invariance."""

    values: tuple[float, ...]
    mixture_value: float
    convex_bound: float
    invariance_error: float
    tolerance: float

    @property
    def nonnegative(self) -> bool:
        return min(self.values) >= 0.0 and self.mixture_value >= 0.0

    @property
    def convex(self) -> bool:
        return self.mixture_value <= self.convex_bound + self.tolerance

    @property
    def invariant(self) -> bool:
        return self.invariance_error <= self.tolerance

    @property
    def passed(self) -> bool:
        return self.nonnegative and self.convex and self.invariant


def coherence_properties_check(
    f: Frame,
    states: Sequence[DensityOperator],
    weights: Sequence[float],
    u: npt.ArrayLike,
    tol: float = 1e-11,
) -> PropertyReport:
    """Evaluate the three structural properties of frame coherence on given inputs.

    Unitary invariance is checked on the mixture: ``C_{UF}(U rho U^dagger)``
    against ``C_F(rho)``.
    """
    w = np.asarray(weights, dtype=float)
    if len(w) != len(states) or not states:
        raise DimMismatch(f"{len(w)} weights for {len(states)} states")
    if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
        raise FrameCoherenceError(f"weights must be a probability vector, got {w.tolist()}")
    values = tuple(frame_coherence(f, r).value for r in states)
    mixed = make_density(sum(p * r.matrix for p, r in zip(w, states)))
    mix_value = frame_coherence(f, mixed).value
    bound = float(np.dot(w, values))
    u = as_complex(u)
    rotated = make_density(u @ mixed.matrix @ u.conj().T)
    moved = frame_coherence(apply_unitary(u, f), rotated).value
    return PropertyReport(
        values=values,
        mixture_value=mix_value,
        convex_bound=bound,
        invariance_error=abs(moved - mix_value),
        tolerance=tol,
    )
