import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cartankit.factorize import kak_decompose_ai, kp_decompose, split_hamiltonian, split_propagator
from cartankit.linalg import (
    BranchCutError,
    exp_skew,
    principal_log_unitary,
    random_hermitian,
    random_unitary,
)
from cartankit.oddeven import build_odd_even, total_involution
from cartankit.subspaces import canonical_basis, contains, project
from cartankit.symmetries import (
    CartanInvolution,
    NotCartanError,
    Symmetry,
    eigenspace_split,
    induced_observable_map,
    symmetry_from_involution,
    time_reversal_symmetry,
)

from conftest import PAULI_X, PAULI_Y


def _random_real_orthogonal(n, rng, norm=1.0):
    g = rng.normal(size=(n, n))
    a = g - g.T
    return exp_skew(a * norm / np.linalg.norm(a)).real.astype(complex)


class TestKP:
    def test_real_orthogonal_ai(self, rng):
        u = _random_real_orthogonal(4, rng)
        r = kp_decompose(u, CartanInvolution("AI", 4))
        np.testing.assert_allclose(r.K, u, atol=1e-12)
        np.testing.assert_allclose(r.P, np.eye(4), atol=1e-12)

    def test_scalar_ai(self):
        phi = 0.9
        u = np.exp(1j * phi) * np.eye(3)
        r = kp_decompose(u, CartanInvolution("AI", 3))
        np.testing.assert_allclose(r.K, np.eye(3), atol=1e-12)
        np.testing.assert_allclose(r.P, u, atol=1e-12)

    @pytest.mark.parametrize(
        "inv",
        [
            CartanInvolution("AI", 4),
            CartanInvolution("AII", 4),
            CartanInvolution.aiii(2, 2),
            CartanInvolution("AII", 6, T=random_unitary(6, np.random.default_rng(1))),
        ],
    )
    def test_construct_then_recover(self, rng, inv):
        k_space, p_space = eigenspace_split(inv)
        for _ in range(5):
            k = np.tensordot(rng.normal(size=len(k_space)), k_space.basis, axes=1)
            p = np.tensordot(rng.normal(size=len(p_space)), p_space.basis, axes=1)
            k *= 0.5 / np.linalg.norm(k)
            p *= 0.5 / np.linalg.norm(p)
            kk, pp = exp_skew(k), exp_skew(p)
            r = kp_decompose(kk @ pp, inv)
            assert np.linalg.norm(r.K - kk) <= 1e-8
            assert np.linalg.norm(r.P - pp) <= 1e-8
            assert r.residual <= 1e-10

    def test_memberships(self, rng):
        inv = CartanInvolution.aiii(2, 1, random_unitary(3, rng))
        r = kp_decompose(random_unitary(3, rng, log_norm=1.0), inv)
        assert np.linalg.norm(inv(r.logK) - r.logK) <= 1e-9
        assert np.linalg.norm(inv(r.logP) + r.logP) <= 1e-9

    def test_branch_cut(self):
        # U^T U = diag(-1, 1) sits on the cut
        with pytest.raises(BranchCutError):
            kp_decompose(np.diag([1j, 1]), CartanInvolution("AI", 2))

    def test_accepts_symmetry(self, rng):
        s = time_reversal_symmetry([0.5, 1])
        u = random_unitary(6, rng, log_norm=1.0)
        r = kp_decompose(u, s)
        assert r.residual <= 1e-10

    def test_rejects_non_unitary(self):
        with pytest.raises(ValueError):
            kp_decompose(2 * np.eye(2), CartanInvolution("AI", 2))


class TestKAK:
    def test_real_orthogonal(self, rng):
        u = _random_real_orthogonal(5, rng)
        r = kak_decompose_ai(u)
        np.testing.assert_allclose(r.A, np.eye(5), atol=1e-12)
        np.testing.assert_allclose(r.K1 @ r.K2, u, atol=1e-12)

    def test_diagonal(self):
        u = np.diag(np.exp(1j * np.array([0.3, -1.1])))
        r = kak_decompose_ai(u)
        assert sorted(np.angle(np.diag(r.A))) == pytest.approx(sorted([0.3, -1.1]))
        for k in (r.K1, r.K2):
            assert np.allclose(np.sort(np.abs(k.real).ravel()), [0, 0, 1, 1])
        assert r.residual <= 1e-12

    @pytest.mark.parametrize("n", range(2, 9))
    def test_random(self, rng, n):
        u = random_unitary(n, rng, log_norm=1.0)
        r = kak_decompose_ai(u)
        assert r.residual <= 1e-8
        assert np.max(np.abs(r.K1.imag)) <= 1e-8 and np.max(np.abs(r.K2.imag)) <= 1e-8
        np.testing.assert_allclose(np.abs(np.diag(r.A)), 1, atol=1e-12)
        assert np.count_nonzero(r.A - np.diag(np.diag(r.A))) == 0

    def test_factors_in_subgroups(self, rng):
        so = canonical_basis("so", 6)
        so_perp = canonical_basis("so_perp", 6)
        for _ in range(5):
            r = kak_decompose_ai(random_unitary(6, rng, log_norm=1.0))
            assert contains(so, principal_log_unitary(r.K1), 1e-9)
            assert contains(so, principal_log_unitary(r.K2), 1e-9)
            log_a = principal_log_unitary(r.A)
            assert np.max(np.abs(log_a.real)) <= 1e-12
            assert contains(so_perp, log_a, 1e-9)

    def test_degenerate_spectrum(self, rng):
        # U U^T = Q diag(d) Q^T with a repeated eigenvalue
        q = _random_real_orthogonal(4, rng)
        u = q @ np.diag(np.exp(1j * np.array([0.4, 0.4, 0.4, -0.2]))) @ _random_real_orthogonal(4, rng)
        r = kak_decompose_ai(u)
        assert r.residual <= 1e-8
        assert np.max(np.abs(r.K2.imag)) <= 1e-8

    def test_branch_cut(self):
        with pytest.raises(BranchCutError):
            kak_decompose_ai(np.diag([1j, 1]))


class TestSplitHamiltonian:
    def test_sigma_x_time_reversal(self):
        s = time_reversal_symmetry([0.5])
        h_a, h_s = split_hamiltonian(PAULI_X, s)
        np.testing.assert_allclose(h_a, PAULI_X, atol=1e-15)
        np.testing.assert_allclose(h_s, 0, atol=1e-15)

    def test_sigma_y_time_reversal(self):
        h_a, h_s = split_hamiltonian(PAULI_Y, time_reversal_symmetry([0.5]))
        np.testing.assert_allclose(h_a, PAULI_Y, atol=1e-15)
        np.testing.assert_allclose(h_s, 0, atol=1e-15)

    def test_identity_symmetric(self, rng):
        s = symmetry_from_involution(CartanInvolution.aiii(2, 2, random_unitary(4, rng)))
        h_a, h_s = split_hamiltonian(np.eye(4), s)
        np.testing.assert_allclose(h_s, np.eye(4), atol=1e-12)
        np.testing.assert_allclose(h_a, 0, atol=1e-12)

    def test_not_cartan(self):
        with pytest.raises(NotCartanError):
            split_hamiltonian(PAULI_X, Symmetry("unitary", np.diag([1, np.exp(1j * np.pi / 3)])))


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), kind=st.sampled_from(["AI", "AII", "AIII"]))
def test_split_hamiltonian_projection_pair(seed, kind):
    rng = np.random.default_rng(seed)
    n = 4
    t = random_unitary(n, rng)
    inv = CartanInvolution.aiii(3, 1, t) if kind == "AIII" else CartanInvolution(kind, n, T=t)
    s = symmetry_from_involution(inv)
    h = random_hermitian(n, rng)
    h_a, h_s = split_hamiltonian(h, s)
    assert np.max(np.abs(h_a + h_s - h)) <= 1e-14
    assert np.max(np.abs(induced_observable_map(s, h_s) - h_s)) <= 1e-10
    assert np.max(np.abs(induced_observable_map(s, h_a) + h_a)) <= 1e-10
    a2, s2 = split_hamiltonian(h_s, s)
    assert np.max(np.abs(a2)) <= 1e-10 and np.max(np.abs(s2 - h_s)) <= 1e-10
    a3, s3 = split_hamiltonian(h_a, s)
    assert np.max(np.abs(s3)) <= 1e-10 and np.max(np.abs(a3 - h_a)) <= 1e-10


class TestSplitPropagator:
    def test_real_orthogonal_ai(self):
        u = exp_skew(1j * PAULI_Y * 0.3)
        u_a, u_s, h_a, h_s = split_propagator(u, CartanInvolution("AI", 2))
        np.testing.assert_allclose(u_a, u, atol=1e-12)
        np.testing.assert_allclose(u_s, np.eye(2), atol=1e-12)
        np.testing.assert_allclose(h_a, 0.3 * PAULI_Y, atol=1e-12)
        # X = I: obs map is conjugation and conj(sigma_y) = -sigma_y
        np.testing.assert_allclose(h_a.conj(), -h_a, atol=1e-12)

    def test_phase_aii(self):
        u = np.exp(0.7j) * np.eye(2)
        u_a, u_s, _, _ = split_propagator(u, CartanInvolution("AII", 2))
        np.testing.assert_allclose(u_a, np.eye(2), atol=1e-12)
        np.testing.assert_allclose(u_s, u, atol=1e-12)

    @pytest.mark.parametrize(
        "inv", [CartanInvolution("AI", 3), CartanInvolution("AII", 4), CartanInvolution.aiii(2, 1), CartanInvolution.aiii(2, 2)]
    )
    def test_postconditions(self, rng, inv):
        s = symmetry_from_involution(inv)
        u = exp_skew(1j * random_hermitian(inv.n, rng, norm=1.0))
        u_a, u_s, h_a, h_s = split_propagator(u, inv)
        assert np.linalg.norm(u_a @ u_s - u) <= 1e-9
        assert np.linalg.norm(induced_observable_map(s, h_a) + h_a) <= 1e-9
        assert np.linalg.norm(induced_observable_map(s, h_s) - h_s) <= 1e-9
        np.testing.assert_allclose(exp_skew(1j * h_a), u_a, atol=1e-10)
        np.testing.assert_allclose(exp_skew(1j * h_s), u_s, atol=1e-10)

    def test_aiii_roles(self, rng):
        inv = CartanInvolution.aiii(2, 2)
        k, p = eigenspace_split(inv)
        u = exp_skew(1j * random_hermitian(4, rng, norm=1.0))
        _, _, h_a, h_s = split_propagator(u, inv)
        assert project(k, 1j * h_s)[1] <= 1e-9
        assert project(p, 1j * h_a)[1] <= 1e-9

    def test_idempotent(self, rng):
        inv = CartanInvolution("AII", 4)
        u = exp_skew(1j * random_hermitian(4, rng, norm=1.0))
        u_a, u_s, _, _ = split_propagator(u, inv)
        a2, s2, _, _ = split_propagator(u_a @ u_s, inv)
        assert np.linalg.norm(a2 - u_a) <= 1e-8 and np.linalg.norm(s2 - u_s) <= 1e-8

    def test_total_involution_pipeline(self, rng):
        d = build_odd_even([(2, "AII"), (3, "AI")])
        _, s = total_involution(d)
        u = exp_skew(1j * random_hermitian(6, rng, norm=1.0))
        u_a, u_s, h_a, h_s = split_propagator(u, s)
        assert np.linalg.norm(u_a @ u_s - u) <= 1e-8
        assert contains(d.I_o, h_a, 1e-8)
        assert contains(d.I_e, h_s, 1e-8)
