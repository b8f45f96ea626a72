"""Dense complex linear algebra and the validated density-operator type.

Everything downstream works on plain ``numpy`` complex arrays. The only
wrapped type is :class:`DensityOperator`, which is validated once at
construction (Hermitian, unit trace, positive semidefinite) so later code
can rely on those properties without re-checking.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import numpy as np
import numpy.typing as npt
from scipy.stats import unitary_group

from .errors import (
    BadWeights,
    DimMismatch,
    NotHermitian,
    NotOrthonormal,
    NotPositive,
    ParseError,
    TraceNotOne,
)

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_FLOOR = -1e-10
WEIGHT_TOL = 1e-12
ORTHONORMAL_TOL = 1e-10

ComplexArray = npt.NDArray[np.complex128]


def as_complex(a: Any) -> ComplexArray:
    return np.asarray(a, dtype=np.complex128)


def dagger(a: npt.ArrayLike) -> ComplexArray:
    """Conjugate transpose."""
    return np.conjugate(np.asarray(a, dtype=np.complex128)).T


def hermiticity_error(m: npt.ArrayLike) -> float:
    """Largest entrywise deviation ``max |m_jk - conj(m_kj)|``."""
    m = as_complex(m)
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(m - m.conj().T)))


def _frozen(a: ComplexArray) -> ComplexArray:
    a = np.array(a, dtype=np.complex128, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """A validated quantum state.

    Do not construct directly; use :func:`make_density`, which enforces the
    invariants.
    """

    matrix: ComplexArray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DensityOperator):
            return NotImplemented
        return np.array_equal(self.matrix, other.matrix)

    def __hash__(self) -> int:
        return hash(self.matrix.tobytes())

    def eigenvalues(self) -> npt.NDArray[np.float64]:
        return np.linalg.eigvalsh(self.matrix)


def make_density(m: npt.ArrayLike) -> DensityOperator:
    """Validate ``m`` as a density matrix.

    Raises
    ------
    DimMismatch
        If ``m`` is not a square 2-D array.
    NotHermitian, TraceNotOne, NotPositive
        On the first violated invariant, reporting the measured value.
    """
    m = as_complex(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise DimMismatch(f"density matrix must be square and non-empty, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NotHermitian("non-finite entry", float("inf"), HERMITIAN_TOL)
    herr = hermiticity_error(m)
    if herr > HERMITIAN_TOL:
        raise NotHermitian("max |rho_jk - conj(rho_kj)|", herr, HERMITIAN_TOL)
    tr = np.trace(m)
    if abs(tr - 1.0) > TRACE_TOL:
        raise TraceNotOne("|tr(rho) - 1|", abs(tr - 1.0), TRACE_TOL)
    lowest = float(np.linalg.eigvalsh(m)[0])
    if lowest < PSD_FLOOR:
        raise NotPositive("smallest eigenvalue", lowest, PSD_FLOOR)
    return DensityOperator(_frozen(m))


def pure_state(psi: npt.ArrayLike) -> DensityOperator:
    """Projector onto the normalised vector ``psi``."""
    psi = as_complex(psi).ravel()
    psi = psi / np.linalg.norm(psi)
    return make_density(np.outer(psi, psi.conj()))


def spectral_mixture(weights: Sequence[float], vectors: Iterable[npt.ArrayLike]) -> DensityOperator:
    """Build ``sum_k w_k |v_k><v_k|`` from orthonormal ``vectors``.

    >>> spectral_mixture([0.5, 0.5], [[1, 0], [0, 1]]).matrix.real
    array([[0.5, 0. ],
           [0. , 0.5]])
    """
    w = np.asarray(weights, dtype=float)
    vecs = np.array([as_complex(v).ravel() for v in vectors])
    if w.ndim != 1 or len(w) != len(vecs):
        raise BadWeights(f"got {w.size} weights for {len(vecs)} vectors")
    if np.any(w < 0):
        raise BadWeights(f"negative weight {w.min()}")
    if abs(w.sum() - 1.0) > WEIGHT_TOL:
        raise BadWeights(f"weights sum to {w.sum()!r}, not 1")
    gram = vecs.conj() @ vecs.T
    err = float(np.max(np.abs(gram - np.eye(len(vecs))))) if len(vecs) else 0.0
    if err > ORTHONORMAL_TOL:
        raise NotOrthonormal("max |<v_j|v_k> - delta_jk|", err, ORTHONORMAL_TOL)
    rho = (vecs.T * w) @ vecs.conj()
    return make_density(rho)


def tensor(a: npt.ArrayLike, b: npt.ArrayLike) -> ComplexArray:
    """Kronecker product of two matrices (or vectors)."""
    return np.kron(as_complex(a), as_complex(b))


def direct_sum_zero(rho: DensityOperator | npt.ArrayLike, extra: int) -> ComplexArray:
    """Embed ``rho`` in the top-left block of a ``(d + extra)``-square zero matrix."""
    if extra < 0:
        raise DimMismatch(f"extra dimension must be non-negative, got {extra}")
    m = as_complex(rho)
    d = m.shape[0]
    out = np.zeros((d + extra, d + extra), dtype=np.complex128)
    out[:d, :d] = m
    return out


def mean_value(rho: DensityOperator, obs: npt.ArrayLike) -> float:
    """Expectation ``tr(rho obs)`` of a Hermitian observable."""
    obs = as_complex(obs)
    if obs.shape != (rho.dim, rho.dim):
        raise DimMismatch(f"observable shape {obs.shape} does not match state dim {rho.dim}")
    herr = hermiticity_error(obs)
    if herr > HERMITIAN_TOL:
        raise NotHermitian("observable max |W_jk - conj(W_kj)|", herr, HERMITIAN_TOL)
    # tr(A B) = sum_ij A_ij B_ji
    val = np.sum(rho.matrix * obs.T)
    if abs(val.imag) > HERMITIAN_TOL:
        raise NotHermitian("imaginary part of tr(rho W)", abs(val.imag), HERMITIAN_TOL)
    return float(val.real)


# Randomised inputs for property tests and the acceptance suite.

def random_unitary(d: int, rng: np.random.Generator) -> ComplexArray:
    """Haar-random ``d x d`` unitary."""
    if d == 1:
        return np.exp(2j * np.pi * rng.random()) * np.ones((1, 1), dtype=np.complex128)
    return as_complex(unitary_group.rvs(d, random_state=rng))


def random_density(d: int, rng: np.random.Generator, rank: int | None = None) -> DensityOperator:
    """Random mixed state from a Ginibre matrix of the given rank (full by default)."""
    rank = d if rank is None else rank
    g = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    rho = g @ g.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return make_density(rho / np.trace(rho).real)


# JSON wire format: complex numbers are {"re": float, "im": float}.

def encode_complex(z: complex) -> dict[str, float]:
    return {"re": float(np.real(z)), "im": float(np.imag(z))}


def decode_complex(obj: Any) -> complex:
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        return complex(obj)
    if not isinstance(obj, dict) or "re" not in obj or "im" not in obj:
        raise ParseError(f"expected {{'re': ..., 'im': ...}}, got {obj!r}")
    try:
        return complex(float(obj["re"]), float(obj["im"]))
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad complex entry {obj!r}") from exc


def state_to_json(rho: DensityOperator) -> dict[str, Any]:
    return {
        "dim": rho.dim,
        "matrix": [[encode_complex(z) for z in row] for row in rho.matrix],
    }


def state_from_json(doc: dict[str, Any] | str) -> DensityOperator:
    """Parse the ``{"dim": d, "matrix": [[{"re", "im"}, ...], ...]}`` format."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "dim" not in doc or "matrix" not in doc:
        raise ParseError("state document needs 'dim' and 'matrix'")
    d = doc["dim"]
    rows = doc["matrix"]
    if not isinstance(d, int) or d < 1 or not isinstance(rows, list) or len(rows) != d:
        raise ParseError(f"matrix must have dim={d!r} rows")
    if any(not isinstance(r, list) or len(r) != d for r in rows):
        raise ParseError(f"every row must have length {d}")
    m = np.array([[decode_complex(z) for z in r] for r in rows], dtype=np.complex128)
    return make_density(m)
