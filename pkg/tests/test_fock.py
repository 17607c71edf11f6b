import math

import numpy as np
import pytest

from gaussbargmann import fock
from gaussbargmann import statespec as ss
from gaussbargmann.gaussian import DomainError, ShapeError


def test_coherent_vector_small():
    v = fock.coherent_vector(0.5, 3).data
    np.testing.assert_allclose(v, math.exp(-0.125) * np.array([1, 0.5, 0.25 / math.sqrt(2)]), rtol=1e-15)
    assert fock.coherent_vector(0, 5).tail_mass == 0.0


def test_coherent_tail_is_poisson():
    st = fock.coherent_vector(2.0, 20)
    assert st.trace() + st.tail_mass == pytest.approx(1.0, abs=1e-15)


def test_squeezed_vector_small():
    r = 0.4
    v = fock.squeezed_vector(r, 5).data
    c, t = math.cosh(r), math.tanh(r)
    expected = np.array([1, 0, -t / math.sqrt(2), 0, t * t * math.sqrt(24) / 8]) / math.sqrt(c)
    np.testing.assert_allclose(v, expected, atol=1e-16)


def test_squeezed_vector_is_expm_of_generator():
    # independent route: exponentiate S(zeta) = exp[(zeta* a^2 - zeta a^dag^2)/2] at a large cut
    zeta = 0.5 * np.exp(1.1j)
    K = 200
    a = np.diag(np.sqrt(np.arange(1, K)), 1)
    S = __import__("scipy.linalg", fromlist=["expm"]).expm(0.5 * (np.conj(zeta) * a @ a - zeta * a.T @ a.T))
    np.testing.assert_allclose(fock.squeezed_vector(zeta, 40).data, S[:40, 0], atol=1e-12)


def test_displacement_matrix_acts_on_vacuum():
    alpha = 0.7 - 0.4j
    np.testing.assert_allclose(fock.displacement_matrix(alpha, 40)[:, 0], fock.coherent_vector(alpha, 40).data, atol=1e-13)
    np.testing.assert_array_equal(fock.displacement_matrix(0, 4), np.eye(4))


def test_squeezed_coherent_vector_norm():
    st = fock.squeezed_coherent_vector(0.8j, 1.0 + 0.5j, 80)
    assert st.trace() == pytest.approx(1.0, abs=1e-10)
    assert st.tail_mass < 1e-10


def test_thermal_density():
    st = fock.thermal_density(1.0, 4)
    np.testing.assert_allclose(np.diag(st.data).real, [0.5, 0.25, 0.125, 0.0625])
    assert st.tail_mass == pytest.approx(0.0625)
    with pytest.raises(DomainError):
        fock.thermal_density(-1.0)


def test_tensor_density_and_cap():
    rho = fock.tensor_density(fock.coherent_vector(0.2, 4), fock.thermal_density(0.3, 5))
    assert rho.dim == 20
    assert rho.trace() + rho.tail_mass == pytest.approx(1.0, abs=1e-3)
    with pytest.raises(ShapeError):
        fock.tensor_density(fock.coherent_vector(0, 70), fock.coherent_vector(0, 70))


def test_multivariate_trace_small():
    a = np.diag([0.5, 0.5])
    assert fock.multivariate_trace_fock([a, a, a]) == pytest.approx(0.25)
    assert fock.multivariate_trace_fock([np.eye(3)]) == 3
    with pytest.raises(ShapeError):
        fock.multivariate_trace_fock([np.eye(2), np.eye(3)])
    with pytest.raises(DomainError):
        fock.multivariate_trace_fock([])


def test_multivariate_trace_cyclic(rng):
    mats = [rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6)) for _ in range(4)]
    v = fock.multivariate_trace_fock(mats)
    assert fock.multivariate_trace_fock(mats[1:] + mats[:1]) == pytest.approx(v, rel=1e-13)
    assert v == pytest.approx(np.trace(mats[0] @ mats[1] @ mats[2] @ mats[3]), rel=1e-13)


def test_coherent_overlap_against_vectors():
    a1, a2 = 0.3 + 0.2j, -0.5 + 0.1j
    ip = np.vdot(fock.coherent_vector(a1, 60).data, fock.coherent_vector(a2, 60).data)
    assert fock.coherent_overlap(a1, a2) == pytest.approx(ip, abs=1e-14)


@pytest.mark.parametrize("z1,z2", [(0.3, -0.3), (0.5j, 0.2), (0.9 * np.exp(2j), 0.7 * np.exp(-2.5j))])
def test_squeezed_overlap_against_vectors(z1, z2):
    ip = np.vdot(fock.squeezed_vector(z1, 200).data, fock.squeezed_vector(z2, 200).data)
    assert fock.squeezed_overlap(z1, z2) == pytest.approx(ip, abs=1e-12)


def test_pure_states_have_unit_purity():
    v = fock.squeezed_coherent_vector(0.3, 0.4j, 60)
    assert fock.multivariate_trace_fock([v, v, v]) == pytest.approx(1.0, abs=1e-12)


def test_fock_state_for_spec_types():
    assert fock.fock_state_for_spec(ss.Vacuum(), 3).data[0] == 1
    assert fock.fock_state_for_spec(ss.Thermal(0.5), 3).data.ndim == 2
    assert fock.fock_state_for_spec(ss.Tensor((ss.Vacuum(), ss.Coherent(0.1))), 4).dim == 16
    with pytest.raises(TypeError):
        fock.fock_state_for_spec(ss.Explicit(np.zeros(2), np.eye(2)), 4)
    assert not fock.oracle_supported(ss.Explicit(np.zeros(2), np.eye(2)))
    assert fock.oracle_supported(ss.Tensor((ss.Vacuum(), ss.Thermal(1.0))))


def test_oracle_converges_in_truncation():
    specs = [ss.SqueezedCoherent(0.9, 0.9j), ss.Coherent(-0.8), ss.Squeezed(0.7j)]
    v, N, tail = fock.oracle_invariant(specs, 20)
    assert N > 20 and tail < 1e-10
    v2 = fock.multivariate_trace_fock([fock.fock_state_for_spec(s, 2 * N) for s in specs])
    assert v == pytest.approx(v2, abs=1e-10)


def test_oracle_caps_multimode_truncation():
    specs = [ss.Tensor((ss.Thermal(3.0), ss.Thermal(3.0)))] * 2
    _, N, _ = fock.oracle_invariant(specs, 60)
    assert N == 64
