"""Finite tight frames.

A frame is stored as its synthesis matrix: a ``d x n`` complex array whose
columns are the frame vectors, in order. Vectors are kept exactly as given
(zero vectors, repeats and sub-unit norms are all legitimate), and the order
is part of the frame's identity.

A frame is *tight* (in the Parseval sense used throughout) when the
rank-one projectors of its vectors sum to the identity::

    sum_k |phi_k><phi_k| = T T^dagger = I_d
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Sequence

import numpy as np
import numpy.typing as npt

from .errors import (
    BadCount,
    BadParameter,
    DimMismatch,
    LengthMismatch,
    NotBasis,
    NotTight,
    NotUnitary,
    ParseError,
)
from .linalg import ComplexArray, as_complex, decode_complex, encode_complex, random_unitary

TIGHT_TOL = 1e-10  # scaled by d
BASIS_TOL = 1e-10
UNITARY_TOL = 1e-10


@dataclass(frozen=True)
class TightnessReport:
    residual: float
    tight: bool
    tolerance: float


class Frame:
    """Ordered family of ``n`` vectors in ``C^d``.

    Parameters
    ----------
    vectors : array_like, shape (d, n)
        Synthesis matrix; column ``k`` is the ``k``-th frame vector.
    """

    def __init__(self, vectors: npt.ArrayLike):
        v = np.array(vectors, dtype=np.complex128, copy=True)
        if v.ndim != 2 or v.shape[0] < 1 or v.shape[1] < 1:
            raise DimMismatch(f"frame synthesis matrix must be d x n with d, n >= 1, got {v.shape}")
        v.setflags(write=False)
        self._vectors = v

    @classmethod
    def from_vectors(cls, vectors: Sequence[npt.ArrayLike]) -> "Frame":
        """Build from a list of ``n`` vectors of length ``d``."""
        rows = [as_complex(x).ravel() for x in vectors]
        if not rows:
            raise DimMismatch("a frame needs at least one vector")
        if len({len(r) for r in rows}) != 1:
            raise DimMismatch("frame vectors have differing lengths")
        return cls(np.array(rows).T)

    @property
    def vectors(self) -> ComplexArray:
        return self._vectors

    @property
    def dim(self) -> int:
        return self._vectors.shape[0]

    @property
    def n(self) -> int:
        return self._vectors.shape[1]

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, k: int) -> ComplexArray:
        return self._vectors[:, k]

    def __iter__(self):
        return iter(self._vectors.T)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Frame):
            return NotImplemented
        return self._vectors.shape == other._vectors.shape and np.array_equal(
            self._vectors, other._vectors
        )

    def __hash__(self) -> int:
        return hash((self._vectors.shape, self._vectors.tobytes()))

    def __repr__(self) -> str:
        return f"Frame(dim={self.dim}, n={self.n})"

    def allclose(self, other: "Frame", atol: float = 1e-12) -> bool:
        return self._vectors.shape == other._vectors.shape and np.allclose(
            self._vectors, other._vectors, rtol=0, atol=atol
        )

    @cached_property
    def tightness(self) -> TightnessReport:
        return verify_tight(self)

    @property
    def is_tight(self) -> bool:
        return self.tightness.tight

    def require_tight(self) -> "Frame":
        rep = self.tightness
        if not rep.tight:
            raise NotTight("||sum |phi><phi| - I||_F", rep.residual, rep.tolerance)
        return self


def verify_tight(f: Frame) -> TightnessReport:
    """Frobenius residual of the resolution of identity."""
    t = f.vectors
    residual = float(np.linalg.norm(t @ t.conj().T - np.eye(f.dim), "fro"))
    tol = TIGHT_TOL * f.dim
    return TightnessReport(residual=residual, tight=residual <= tol, tolerance=tol)


def basis_error(f: Frame) -> float:
    """``max |<phi_j|phi_k> - delta_jk|``, or ``inf`` when ``n != d``."""
    if f.n != f.dim:
        return math.inf
    gram = f.vectors.conj().T @ f.vectors
    return float(np.max(np.abs(gram - np.eye(f.n))))


def is_orthonormal_basis(f: Frame) -> bool:
    return basis_error(f) <= BASIS_TOL


def require_basis(f: Frame) -> Frame:
    err = basis_error(f)
    if err > BASIS_TOL:
        raise NotBasis("max |<psi_j|psi_k> - delta_jk| (n must equal d)", err, BASIS_TOL)
    return f


# --- constructors -----------------------------------------------------------

def _tight(vectors: npt.ArrayLike) -> Frame:
    """Build a frame that is promised tight, and check the promise."""
    return Frame(vectors).require_tight()


def canonical_basis(d: int) -> Frame:
    if d < 1:
        raise BadCount(f"dimension must be >= 1, got {d}")
    return _tight(np.eye(d))


def rotated_qubit_basis(lam: float) -> Frame:
    """Real rotation of the qubit computational basis by angle ``lam``."""
    c, s = math.cos(lam), math.sin(lam)
    return _tight([[c, -s], [s, c]])


def polygonal_frame(n: int) -> Frame:
    """Regular ``n``-gon in the real plane, scaled by ``sqrt(2/n)``."""
    if n < 3:
        raise BadCount(f"polygonal frame needs n >= 3, got {n}")
    angles = 2 * np.pi * np.arange(n) / n
    return _tight(math.sqrt(2 / n) * np.vstack([np.cos(angles), np.sin(angles)]))


def triangular_frame() -> Frame:
    """The three-vector qubit frame; identical to ``polygonal_frame(3)``.

    Vectors: ``sqrt(2/3) (1, 0)``, ``(-1/sqrt 6, 1/sqrt 2)``,
    ``(-1/sqrt 6, -1/sqrt 2)``. They sum to zero.
    """
    return polygonal_frame(3)


def tetrahedral_frame() -> Frame:
    """Four vertices of a regular tetrahedron in ``C^3``, each of norm^2 3/4."""
    return _tight(
        0.5 * np.array([[-1, 1, 1], [1, -1, 1], [1, 1, -1], [-1, -1, -1]], dtype=float).T
    )


def icosahedral_frame() -> Frame:
    """One vertex from each antipodal pair of a regular icosahedron.

    With ``tau`` the golden ratio and ``eta = sqrt(5 + sqrt 5)``, the six
    vectors are ``(+-1, tau, 0)``, ``(-tau, 0, 1)``, ``(0, -1, tau)``,
    ``(tau, 0, 1)``, ``(0, 1, tau)``, all divided by ``eta``.
    """
    tau = (1 + math.sqrt(5)) / 2
    eta = math.sqrt(5 + math.sqrt(5))
    verts = np.array(
        [[1, tau, 0], [-1, tau, 0], [-tau, 0, 1], [0, -1, tau], [tau, 0, 1], [0, 1, tau]]
    )
    return _tight(verts.T / eta)


def fourier_matrix(d: int) -> ComplexArray:
    """``F_jk = exp(-2 pi i j k / d) / sqrt(d)`` with indices ``0..d-1``.

    This is the 0-based convention. The symmetric ``-s..s`` Fourier operator
    used with coherent states lives in :mod:`framecoh.coherent_states` and
    is a different matrix.
    """
    if d < 1:
        raise BadCount(f"dimension must be >= 1, got {d}")
    j = np.arange(d)
    return np.exp(-2j * np.pi * np.outer(j, j) / d) / math.sqrt(d)


def fourier_basis(d: int) -> Frame:
    """Complementary basis: the columns of ``F^dagger``."""
    return _tight(fourier_matrix(d).conj().T)


def scaled_union(a: Frame, b: Frame, wa: float, wb: float) -> Frame:
    """Concatenate ``wa * a`` and ``wb * b``, preserving order.

    The result is not required to be tight; check ``.is_tight`` when that
    matters. When both inputs are tight it is tight iff ``wa^2 + wb^2 = 1``.
    """
    if a.dim != b.dim:
        raise DimMismatch(f"cannot join frames of dimension {a.dim} and {b.dim}")
    return Frame(np.hstack([wa * a.vectors, wb * b.vectors]))


def union(*frames: Frame) -> Frame:
    """Equal-weight union of ``k`` tight frames, each scaled by ``1/sqrt(k)``."""
    if not frames:
        raise LengthMismatch("union of zero frames")
    dims = {f.dim for f in frames}
    if len(dims) != 1:
        raise DimMismatch(f"cannot join frames of dimensions {sorted(dims)}")
    w = 1 / math.sqrt(len(frames))
    return Frame(np.hstack([w * f.vectors for f in frames]))


def interpolate(a: Frame, b: Frame, t: float) -> Frame:
    """Tight frame ``{sqrt(1-t) a_k} + {sqrt(t) b_k}`` joining two bases."""
    require_basis(a)
    require_basis(b)
    if a.dim != b.dim:
        raise DimMismatch(f"bases have dimensions {a.dim} and {b.dim}")
    if not (0.0 <= t <= 1.0):
        raise BadParameter(f"interpolation parameter t must lie in [0, 1], got {t}")
    return scaled_union(a, b, math.sqrt(1 - t), math.sqrt(t)).require_tight()


def split_frame(basis_part: Frame, frame_part: Frame | None = None) -> Frame:
    """Orthonormal vectors spanning one subspace followed by a tight frame of its complement.

    Both arguments are given in the full ambient space. Raises
    :class:`NotTight` if the parts are not mutually orthogonal or together
    fail to resolve the identity.
    """
    v = basis_part.vectors
    gram = v.conj().T @ v
    err = float(np.max(np.abs(gram - np.eye(basis_part.n))))
    if err > BASIS_TOL:
        raise NotBasis("basis part: max |<psi_j|psi_k> - delta_jk|", err, BASIS_TOL)
    if frame_part is None:
        return basis_part.require_tight()
    if frame_part.dim != basis_part.dim:
        raise DimMismatch(f"parts have dimensions {basis_part.dim} and {frame_part.dim}")
    cross = float(np.max(np.abs(v.conj().T @ frame_part.vectors)))
    if cross > BASIS_TOL:
        raise NotTight("parts not orthogonal: max |<psi_j|phi_k>|", cross, BASIS_TOL)
    return Frame(np.hstack([v, frame_part.vectors])).require_tight()


def split3_frame() -> Frame:
    """``{e0, e1, e2/2, (sqrt 3/2) e2}`` in ``C^3``."""
    e = np.eye(3)
    return split_frame(Frame(e[:, :2]), Frame(np.column_stack([0.5 * e[:, 2], math.sqrt(3) / 2 * e[:, 2]])))


def tensor_frame(a: Frame, b: Frame) -> Frame:
    """Product frame ``{a_j (x) b_k}`` with ``j`` outer, ``k`` inner."""
    a.require_tight()
    b.require_tight()
    return _tight(np.kron(a.vectors, b.vectors))


def apply_unitary(u: npt.ArrayLike, f: Frame) -> Frame:
    u = as_complex(u)
    if u.shape != (f.dim, f.dim):
        raise DimMismatch(f"unitary shape {u.shape} does not match frame dim {f.dim}")
    err = float(np.linalg.norm(u.conj().T @ u - np.eye(f.dim), "fro"))
    if err > UNITARY_TOL:
        raise NotUnitary("||U^dagger U - I||_F", err, UNITARY_TOL)
    return Frame(u @ f.vectors)


def random_tight_frame(d: int, n: int, rng: np.random.Generator) -> Frame:
    """First ``d`` rows of a Haar-random ``n x n`` unitary."""
    if n < d:
        raise BadCount(f"a tight frame in C^{d} needs n >= d, got n={n}")
    return _tight(random_unitary(n, rng)[:d, :])


def random_basis(d: int, rng: np.random.Generator) -> Frame:
    return _tight(random_unitary(d, rng))


# --- analysis / synthesis ---------------------------------------------------

def analysis_coefficients(f: Frame, psi: npt.ArrayLike) -> ComplexArray:
    """``c_k = <phi_k|psi>``."""
    psi = as_complex(psi).ravel()
    if psi.shape[0] != f.dim:
        raise DimMismatch(f"vector length {psi.shape[0]} does not match frame dim {f.dim}")
    return f.vectors.conj().T @ psi


def synthesize(f: Frame, coeffs: npt.ArrayLike) -> ComplexArray:
    """``sum_k c_k |phi_k>``."""
    c = as_complex(coeffs).ravel()
    if c.shape[0] != f.n:
        raise LengthMismatch(f"{c.shape[0]} coefficients for a frame of {f.n} vectors")
    return f.vectors @ c


def coefficient_kernel_projector(f: Frame) -> ComplexArray:
    """Orthogonal projector onto the kernel of the synthesis map.

    Adding ``P @ alpha`` to the analysis coefficients never changes the
    synthesised vector, and (for tight ``f``) only increases the
    coefficient norm.
    """
    f.require_tight()
    t = f.vectors
    return np.eye(f.n) - t.conj().T @ t


def frame_matrix(f: Frame, a: npt.ArrayLike) -> ComplexArray:
    """``M_jk = <phi_j|A|phi_k>``."""
    a = as_complex(a)
    if a.shape != (f.dim, f.dim):
        raise DimMismatch(f"operator shape {a.shape} does not match frame dim {f.dim}")
    t = f.vectors
    return t.conj().T @ a @ t


def frame_trace(f: Frame, a: npt.ArrayLike) -> complex:
    """``sum_k <phi_k|A|phi_k>``; equals ``tr A`` for tight frames."""
    a = as_complex(a)
    if a.shape != (f.dim, f.dim):
        raise DimMismatch(f"operator shape {a.shape} does not match frame dim {f.dim}")
    t = f.vectors
    return complex(np.einsum("ik,ij,jk->", t.conj(), a, t))


# --- JSON -------------------------------------------------------------------

def frame_to_json(f: Frame) -> dict[str, Any]:
    return {"dim": f.dim, "vectors": [[encode_complex(z) for z in v] for v in f]}


def frame_from_json(doc: dict[str, Any] | str) -> Frame:
    """Parse ``{"dim": d, "vectors": [[{"re", "im"} x d] x n]}``. Tightness is not required."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "dim" not in doc or "vectors" not in doc:
        raise ParseError("frame document needs 'dim' and 'vectors'")
    d, vecs = doc["dim"], doc["vectors"]
    if not isinstance(d, int) or d < 1 or not isinstance(vecs, list) or not vecs:
        raise ParseError("frame needs integer dim >= 1 and a non-empty vector list")
    if any(not isinstance(v, list) or len(v) != d for v in vecs):
        raise ParseError(f"every vector must have length {d}")
    return Frame.from_vectors([[decode_complex(z) for z in v] for v in vecs])
