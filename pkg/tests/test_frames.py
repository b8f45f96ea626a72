import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framecoh import errors
from framecoh import frames as fr
from framecoh.coherent_states import coherent_frame
from framecoh.linalg import random_density, random_unitary

S23 = math.sqrt(2 / 3)
S6 = 1 / math.sqrt(6)
S2 = 1 / math.sqrt(2)


def builtin_frames():
    rng = np.random.default_rng(5)
    a, b = fr.random_basis(3, rng), fr.random_basis(3, rng)
    return {
        "canonical:4": fr.canonical_basis(4),
        "fourier:5": fr.fourier_basis(5),
        "rotated": fr.rotated_qubit_basis(0.7),
        "polygon:3": fr.polygonal_frame(3),
        "polygon:11": fr.polygonal_frame(11),
        "tetra": fr.tetrahedral_frame(),
        "ico": fr.icosahedral_frame(),
        "split3": fr.split3_frame(),
        "tensor": fr.tensor_frame(fr.polygonal_frame(3), fr.polygonal_frame(4)),
        "interpolate": fr.interpolate(a, b, 0.3),
        "coherent:5": coherent_frame(5),
    }


BUILTINS = builtin_frames()


class TestVerifyTight:
    def test_triangular(self):
        rep = fr.verify_tight(fr.triangular_frame())
        assert rep.tight and rep.residual < 1e-14

    def test_with_zero_vector(self):
        f = fr.Frame.from_vectors([[1, 0], [0, 1], [0, 0]])
        assert fr.verify_tight(f).tight

    @pytest.mark.parametrize(
        "vectors",
        [
            [[1, 0], [0, 1], [0, 0], [0, 0]],
            [[S2, 0], [S2, 0], [0, S2], [0, S2]],
        ],
    )
    def test_degenerate_tight_frames(self, vectors):
        assert fr.verify_tight(fr.Frame.from_vectors(vectors)).tight

    def test_doubled_vector_not_tight(self):
        # sum |phi><phi| = diag(2, 0); distance to I is sqrt(1 + 1)
        rep = fr.verify_tight(fr.Frame.from_vectors([[1, 0], [1, 0]]))
        assert not rep.tight
        assert rep.residual == pytest.approx(math.sqrt(2), abs=1e-15)

    def test_tolerance_scales_with_dim(self):
        assert fr.verify_tight(fr.canonical_basis(7)).tolerance == pytest.approx(7e-10)


class TestConstructors:
    def test_canonical(self):
        np.testing.assert_array_equal(fr.canonical_basis(3).vectors, np.eye(3))
        np.testing.assert_array_equal(fr.canonical_basis(1).vectors, [[1]])
        with pytest.raises(errors.BadCount):
            fr.canonical_basis(0)

    def test_rotated(self):
        assert fr.rotated_qubit_basis(0.0) == fr.canonical_basis(2)
        np.testing.assert_allclose(fr.rotated_qubit_basis(math.pi / 2).vectors, [[0, -1], [1, 0]], atol=1e-16)
        np.testing.assert_allclose(
            fr.rotated_qubit_basis(math.pi / 4).vectors, np.array([[1, -1], [1, 1]]) * S2, atol=1e-16
        )

    def test_polygon_three_is_triangle(self):
        expected = np.array([[S23, -S6, -S6], [0, S2, -S2]])
        np.testing.assert_allclose(fr.polygonal_frame(3).vectors, expected, atol=1e-15)
        np.testing.assert_allclose(fr.triangular_frame().vectors.sum(axis=1), 0, atol=1e-15)

    def test_polygon_four(self):
        expected = S2 * np.array([[1, 0, -1, 0], [0, 1, 0, -1]])
        np.testing.assert_allclose(fr.polygonal_frame(4).vectors, expected, atol=1e-15)

    @pytest.mark.parametrize("n", [3, 4, 5, 17, 50, 200])
    def test_polygon_tight(self, n):
        assert fr.verify_tight(fr.polygonal_frame(n)).residual < 1e-12

    @pytest.mark.parametrize("n", [-1, 0, 1, 2])
    def test_polygon_bad_count(self, n):
        with pytest.raises(errors.BadCount):
            fr.polygonal_frame(n)

    def test_tetrahedral(self):
        f = fr.tetrahedral_frame()
        assert fr.verify_tight(f).residual < 1e-14
        np.testing.assert_allclose(np.sum(np.abs(f.vectors) ** 2, axis=0), 0.75)

    def test_icosahedral(self):
        f = fr.icosahedral_frame()
        assert fr.verify_tight(f).residual < 1e-12
        np.testing.assert_allclose(np.sum(np.abs(f.vectors) ** 2, axis=0), 0.5, atol=1e-15)

    def test_fourier(self):
        f3 = fr.fourier_basis(3)
        np.testing.assert_allclose(f3[0], np.ones(3) / math.sqrt(3), atol=1e-15)
        w = np.exp(2j * np.pi / 3)
        np.testing.assert_allclose(f3[1], np.array([1, w, w.conjugate()]) / math.sqrt(3), atol=1e-15)
        np.testing.assert_allclose(fr.fourier_basis(2).vectors, np.array([[1, 1], [1, -1]]) * S2, atol=1e-15)
        np.testing.assert_array_equal(fr.fourier_basis(1).vectors, [[1]])
        assert fr.is_orthonormal_basis(fr.fourier_basis(8))

    def test_union_of_qutrit_bases(self):
        f = fr.scaled_union(fr.canonical_basis(3), fr.fourier_basis(3), S2, S2)
        assert f.n == 6 and f.is_tight
        np.testing.assert_allclose(f[0], [S2, 0, 0])
        np.testing.assert_allclose(f[3], np.ones(3) / math.sqrt(6), atol=1e-15)
        assert f.allclose(fr.union(fr.canonical_basis(3), fr.fourier_basis(3)))

    def test_union_of_two_canonical(self):
        f = fr.scaled_union(fr.canonical_basis(2), fr.canonical_basis(2), S2, S2)
        assert fr.verify_tight(f).residual < 1e-14

    def test_union_non_tight_constructible(self):
        f = fr.scaled_union(fr.canonical_basis(2), fr.canonical_basis(2), 1.0, 1.0)
        assert not f.is_tight
        with pytest.raises(errors.NotTight):
            f.require_tight()

    def test_union_dim_mismatch(self):
        with pytest.raises(errors.DimMismatch):
            fr.scaled_union(fr.canonical_basis(2), fr.canonical_basis(3), S2, S2)


class TestInterpolate:
    def test_endpoints(self):
        a, b = fr.canonical_basis(3), fr.fourier_basis(3)
        f0 = fr.interpolate(a, b, 0.0)
        np.testing.assert_array_equal(f0.vectors[:, 3:], 0)
        np.testing.assert_array_equal(f0.vectors[:, :3], a.vectors)
        f1 = fr.interpolate(a, b, 1.0)
        np.testing.assert_array_equal(f1.vectors[:, :3], 0)

    def test_half_is_union(self):
        a, b = fr.canonical_basis(3), fr.fourier_basis(3)
        assert fr.interpolate(a, b, 0.5).allclose(fr.scaled_union(a, b, S2, S2), atol=1e-15)

    @pytest.mark.parametrize("t", [0.0, 0.1, 0.5, 0.9, 1.0])
    def test_always_tight(self, t, rng):
        f = fr.interpolate(fr.random_basis(4, rng), fr.random_basis(4, rng), t)
        assert f.tightness.residual < 1e-12

    def test_errors(self):
        a = fr.canonical_basis(2)
        with pytest.raises(errors.BadParameter):
            fr.interpolate(a, a, 1.5)
        with pytest.raises(errors.NotBasis):
            fr.interpolate(fr.polygonal_frame(3), a, 0.5)
        with pytest.raises(errors.DimMismatch):
            fr.interpolate(a, fr.canonical_basis(3), 0.5)


class TestSplitFrame:
    def test_split3(self):
        f = fr.split3_frame()
        np.testing.assert_allclose(
            f.vectors,
            [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0.5, math.sqrt(3) / 2]],
        )
        assert f.is_tight

    def test_basis_only(self):
        assert fr.split_frame(fr.canonical_basis(3)) == fr.canonical_basis(3)

    def test_not_tight(self):
        e = np.eye(3)
        with pytest.raises(errors.NotTight):
            fr.split_frame(fr.Frame(e[:, :2]), fr.Frame(e[:, 2:] * 0.5))

    def test_overlapping_parts(self):
        e = np.eye(2)
        with pytest.raises(errors.NotTight):
            fr.split_frame(fr.Frame(e[:, :1]), fr.Frame(np.array([[S2], [S2]])))


class TestTensorFrame:
    def test_canonical(self):
        assert fr.tensor_frame(fr.canonical_basis(2), fr.canonical_basis(2)) == fr.canonical_basis(4)

    def test_polygons(self):
        f = fr.tensor_frame(fr.polygonal_frame(3), fr.polygonal_frame(3))
        assert (f.dim, f.n) == (4, 9)
        assert f.tightness.residual < 1e-12

    def test_ordering(self):
        a, b = fr.polygonal_frame(3), fr.polygonal_frame(5)
        f = fr.tensor_frame(a, b)
        np.testing.assert_allclose(f[2 * 5 + 4], np.kron(a[2], b[4]))

    def test_requires_tight(self):
        with pytest.raises(errors.NotTight):
            fr.tensor_frame(fr.Frame.from_vectors([[1, 0], [1, 0]]), fr.canonical_basis(2))


class TestApplyUnitary:
    def test_identity(self):
        f = fr.polygonal_frame(5)
        assert fr.apply_unitary(np.eye(2), f) == f

    def test_fourier_on_canonical(self):
        f = fr.apply_unitary(fr.fourier_matrix(3).conj().T, fr.canonical_basis(3))
        assert f.allclose(fr.fourier_basis(3), atol=1e-15)

    def test_residual_unchanged(self, rng):
        f = fr.polygonal_frame(5)
        g = fr.apply_unitary(random_unitary(2, rng), f)
        assert abs(g.tightness.residual - f.tightness.residual) < 1e-12

    def test_errors(self):
        with pytest.raises(errors.NotUnitary):
            fr.apply_unitary(2 * np.eye(2), fr.canonical_basis(2))
        with pytest.raises(errors.DimMismatch):
            fr.apply_unitary(np.eye(3), fr.canonical_basis(2))


class TestAnalysisSynthesis:
    def test_canonical(self):
        np.testing.assert_allclose(fr.analysis_coefficients(fr.canonical_basis(2), [2 + 1j, -3]), [2 + 1j, -3])

    def test_triangle(self):
        c = fr.analysis_coefficients(fr.triangular_frame(), [1, 0])
        np.testing.assert_allclose(c, [S23, -S6, -S6], atol=1e-15)

    def test_zero_coeffs(self):
        np.testing.assert_array_equal(fr.synthesize(fr.polygonal_frame(4), np.zeros(4)), [0, 0])

    def test_constant_shift_in_kernel(self):
        f = fr.triangular_frame()
        psi = np.array([0.3 - 0.2j, 0.9])
        c = fr.analysis_coefficients(f, psi)
        np.testing.assert_allclose(fr.synthesize(f, c + (0.7 - 1.1j)), psi, atol=1e-15)

    def test_length_mismatch(self):
        with pytest.raises(errors.LengthMismatch):
            fr.synthesize(fr.polygonal_frame(4), [1, 2, 3])
        with pytest.raises(errors.DimMismatch):
            fr.analysis_coefficients(fr.polygonal_frame(4), [1, 2, 3])

    @pytest.mark.parametrize("name", sorted(BUILTINS))
    def test_reconstruction_and_parseval(self, name, rng):
        f = BUILTINS[name]
        psi = rng.normal(size=f.dim) + 1j * rng.normal(size=f.dim)
        c = fr.analysis_coefficients(f, psi)
        np.testing.assert_allclose(fr.synthesize(f, c), psi, atol=1e-12)
        assert np.sum(np.abs(c) ** 2) == pytest.approx(np.vdot(psi, psi).real, abs=1e-12 * max(1, np.vdot(psi, psi).real))


class TestKernelProjector:
    def test_basis_gives_zero(self):
        np.testing.assert_allclose(fr.coefficient_kernel_projector(fr.fourier_basis(4)), 0, atol=1e-15)

    def test_triangle(self):
        p = fr.coefficient_kernel_projector(fr.triangular_frame())
        np.testing.assert_allclose(p, np.ones((3, 3)) / 3, atol=1e-15)

    @pytest.mark.parametrize("n", [3, 4, 7, 12])
    def test_polygon_rank(self, n):
        p = fr.coefficient_kernel_projector(fr.polygonal_frame(n))
        np.testing.assert_allclose(p @ p, p, atol=1e-14)
        assert np.linalg.matrix_rank(p, tol=1e-10) == n - 2

    def test_requires_tight(self):
        with pytest.raises(errors.NotTight):
            fr.coefficient_kernel_projector(fr.Frame.from_vectors([[1, 0], [1, 0]]))


class TestFrameMatrix:
    def test_basis_diagonal(self):
        m = fr.frame_matrix(fr.canonical_basis(3), np.diag([1, 2, 3]))
        np.testing.assert_array_equal(m, np.diag([1, 2, 3]))

    def test_hermitian_symmetry(self, rng):
        a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        a = a + a.conj().T
        m = fr.frame_matrix(fr.icosahedral_frame(), a)
        np.testing.assert_allclose(m, m.conj().T, atol=1e-14)

    @pytest.mark.parametrize("name", sorted(BUILTINS))
    def test_trace_identity(self, name, rng):
        f = BUILTINS[name]
        a = rng.normal(size=(f.dim, f.dim)) + 1j * rng.normal(size=(f.dim, f.dim))
        assert abs(fr.frame_trace(f, a) - np.trace(a)) < 1e-12
        assert abs(np.trace(fr.frame_matrix(f, a)) - np.trace(a)) < 1e-12

    def test_dim_mismatch(self):
        with pytest.raises(errors.DimMismatch):
            fr.frame_matrix(fr.canonical_basis(2), np.eye(3))


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_builtins_tight(name):
    f = BUILTINS[name]
    assert f.tightness.residual < 1e-10 * f.dim


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_minimal_norm_property(name, rng):
    f = BUILTINS[name]
    p = fr.coefficient_kernel_projector(f)
    for _ in range(5):
        psi = rng.normal(size=f.dim) + 1j * rng.normal(size=f.dim)
        c = fr.analysis_coefficients(f, psi)
        u = p @ (rng.normal(size=f.n) + 1j * rng.normal(size=f.n))
        np.testing.assert_allclose(fr.synthesize(f, c + u), psi, atol=1e-11)
        base = np.sum(np.abs(c) ** 2)
        assert np.sum(np.abs(c + u) ** 2) >= base - 1e-12
        assert np.sum(np.abs(c + 0 * u) ** 2) == pytest.approx(base)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d=st.integers(1, 4), extra=st.integers(0, 6))
def test_unitary_stability(seed, d, extra):
    rng = np.random.default_rng(seed)
    f = fr.random_tight_frame(d, d + extra, rng)
    g = fr.apply_unitary(random_unitary(d, rng), f)
    assert abs(g.tightness.residual - f.tightness.residual) < 1e-11
    assert g.is_tight


class TestFrameType:
    def test_order_sensitive_equality(self):
        f = fr.polygonal_frame(4)
        g = fr.Frame(f.vectors[:, ::-1])
        assert f != g
        assert f == fr.Frame(f.vectors.copy())

    def test_read_only(self):
        with pytest.raises(ValueError):
            fr.canonical_basis(2).vectors[0, 0] = 3

    def test_empty_rejected(self):
        with pytest.raises(errors.DimMismatch):
            fr.Frame(np.zeros((2, 0)))
        with pytest.raises(errors.DimMismatch):
            fr.Frame.from_vectors([])

    def test_json_roundtrip(self):
        f = fr.fourier_basis(3)
        assert fr.frame_from_json(json.dumps(fr.frame_to_json(f))) == f

    def test_json_non_tight_allowed(self):
        doc = {"dim": 2, "vectors": [[{"re": 1, "im": 0}, {"re": 0, "im": 0}]] * 2}
        f = fr.frame_from_json(doc)
        assert not f.is_tight

    @pytest.mark.parametrize(
        "doc", ["[", {"dim": 2, "vectors": []}, {"dim": 2, "vectors": [[{"re": 1, "im": 0}]]}, {"vectors": []}]
    )
    def test_json_malformed(self, doc):
        with pytest.raises(errors.ParseError):
            fr.frame_from_json(doc if isinstance(doc, str) else json.dumps(doc))


def test_random_tight_frame_rejects_undercomplete(rng):
    with pytest.raises(errors.BadCount):
        fr.random_tight_frame(3, 2, rng)


def test_random_density_in_frame_dims(rng):
    # sanity: random inputs used throughout the suite are valid states
    assert random_density(4, rng).dim == 4
