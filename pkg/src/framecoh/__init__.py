"""Finite tight frames and frame-dependent l1 coherence of quantum states."""

from .coherence import (
    CoherenceReport,
    basis_coherence,
    coherence_from_means,
    composite_coherence,
    frame_coherence,
    observables,
)
from .coherent_states import coherent_frame, discrete_gaussian, displacement, vacuum_state
from .errors import FrameCoherenceError
from .frames import (
    Frame,
    canonical_basis,
    fourier_basis,
    icosahedral_frame,
    interpolate,
    polygonal_frame,
    tetrahedral_frame,
    triangular_frame,
    verify_tight,
)
from .linalg import DensityOperator, make_density, spectral_mixture
from .naimark import naimark_extend, verify_extension

__version__ = "0.1.0"
