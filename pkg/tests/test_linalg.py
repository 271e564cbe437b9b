import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from cartankit.linalg import (
    BranchCutError,
    Tolerance,
    exp_skew,
    get_tolerance,
    gram_schmidt,
    hs_inner,
    is_symplectic,
    principal_log_unitary,
    random_hermitian,
    random_skew_hermitian,
    random_unitary,
    spectral_normal,
    sqrt_unitary,
    symplectic_form,
)

from conftest import I2, PAULI_X, PAULI_Y, PAULI_Z


class TestHSInner:
    def test_identity(self):
        assert hs_inner(I2, I2) == 2

    def test_pauli_orthogonal(self):
        assert hs_inner(PAULI_X, PAULI_Y) == 0

    def test_self_inner_matches_entrywise_sum(self, rng):
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        oracle = sum(abs(a[i, j]) ** 2 for i in range(4) for j in range(4))
        val = hs_inner(a, a)
        assert val.imag == 0
        assert val.real == pytest.approx(oracle, rel=1e-14)

    def test_conjugate_symmetric(self, rng):
        a, b = (rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)) for _ in range(2))
        assert hs_inner(a, b) == pytest.approx(np.conj(hs_inner(b, a)))
        assert hs_inner(a, b) == pytest.approx(np.trace(a @ b.conj().T))

    def test_mismatch(self):
        with pytest.raises(ValueError, match="mismatch"):
            hs_inner(I2, np.eye(3))


class TestSpectralNormal:
    def test_identity(self):
        lam, v = spectral_normal(np.eye(3))
        np.testing.assert_allclose(lam, 1)

    def test_diag_order(self):
        lam, _ = spectral_normal(np.diag([1, 1j]))
        np.testing.assert_allclose(lam, [1j, 1], atol=1e-15)

    def test_sorted_descending_phase(self, rng):
        lam, _ = spectral_normal(random_unitary(6, rng))
        assert np.all(np.diff(np.angle(lam)) <= 0)

    @pytest.mark.parametrize("kind", ["unitary", "hermitian", "skew"])
    def test_reconstruction(self, rng, kind):
        m = {
            "unitary": lambda: random_unitary(8, rng),
            "hermitian": lambda: random_hermitian(8, rng),
            "skew": lambda: random_skew_hermitian(8, rng),
        }[kind]()
        lam, v = spectral_normal(m)
        np.testing.assert_allclose(v @ v.conj().T, np.eye(8), atol=1e-12)
        assert np.linalg.norm(v @ np.diag(lam) @ v.conj().T - m) <= 1e-10 * max(1, np.linalg.norm(m))

    def test_degenerate_unitary(self, rng):
        q = random_unitary(5, rng)
        m = q @ np.diag([1j, 1j, 1j, -1j, 1]) @ q.conj().T
        lam, v = spectral_normal(m)
        assert np.linalg.norm(v @ np.diag(lam) @ v.conj().T - m) <= 1e-10

    def test_non_normal(self):
        with pytest.raises(ValueError, match="not normal"):
            spectral_normal(np.array([[1, 1], [0, 1]]))


class TestLogSqrtExp:
    def test_log_identity(self):
        np.testing.assert_allclose(principal_log_unitary(np.eye(3)), 0, atol=1e-15)

    def test_log_diagonal(self):
        u = np.diag([np.exp(1j * np.pi / 3), np.exp(-1j * np.pi / 4)])
        np.testing.assert_allclose(principal_log_unitary(u), np.diag([1j * np.pi / 3, -1j * np.pi / 4]), atol=1e-14)

    def test_log_round_trip(self, rng):
        for n in (2, 3, 5, 8):
            s = random_skew_hermitian(n, rng)
            s *= 3.0 / np.max(np.abs(np.linalg.eigvals(s)))  # spectral radius 3 < pi
            u = scipy.linalg.expm(s)
            log = principal_log_unitary(u)
            np.testing.assert_allclose(log + log.conj().T, 0, atol=1e-10)
            assert np.linalg.norm(scipy.linalg.expm(log) - u) <= 1e-9
            # spectral radius below pi makes the principal log unique
            np.testing.assert_allclose(log, s, atol=1e-9)

    def test_branch_cut(self):
        with pytest.raises(BranchCutError) as exc:
            principal_log_unitary(np.diag([1, -1]))
        assert exc.value.phase == pytest.approx(np.pi)
        assert "eigenphase" in str(exc.value)

    def test_branch_edge_allowed(self):
        log = principal_log_unitary(np.diag([1, -1]), allow_branch_edge=True)
        np.testing.assert_allclose(log, np.diag([0, 1j * np.pi]), atol=1e-15)

    def test_sqrt_examples(self):
        np.testing.assert_allclose(sqrt_unitary(np.eye(2)), np.eye(2), atol=1e-15)
        np.testing.assert_allclose(sqrt_unitary(np.array([[1j]])), [[np.exp(1j * np.pi / 4)]], atol=1e-15)

    def test_sqrt_squares_back(self, rng):
        for n in (2, 4, 7):
            u = random_unitary(n, rng, log_norm=2.0)
            r = sqrt_unitary(u)
            assert np.linalg.norm(r @ r - u) <= 1e-9

    def test_exp_examples(self):
        np.testing.assert_allclose(exp_skew(np.zeros((3, 3))), np.eye(3), atol=1e-15)
        np.testing.assert_allclose(
            exp_skew(1j * np.pi * PAULI_Z / 2), np.diag([np.exp(1j * np.pi / 2), np.exp(-1j * np.pi / 2)]), atol=1e-15
        )

    def test_exp_inverse(self, rng):
        l = random_skew_hermitian(6, rng)
        np.testing.assert_allclose(exp_skew(l) @ exp_skew(-l), np.eye(6), atol=1e-10)
        np.testing.assert_allclose(exp_skew(l), scipy.linalg.expm(l), atol=1e-12)

    def test_exp_rejects_non_skew(self):
        with pytest.raises(ValueError, match="skew"):
            exp_skew(PAULI_X)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 7))
def test_log_invariants(seed, n):
    rng = np.random.default_rng(seed)
    u = random_unitary(n, rng)
    try:
        log = principal_log_unitary(u)
    except BranchCutError:
        return
    atol = get_tolerance().atol
    assert np.max(np.abs(log + log.conj().T)) <= atol
    assert np.max(np.abs(scipy.linalg.expm(log) - u)) <= 10 * atol
    assert np.all(np.abs(np.linalg.eigvalsh(-1j * log)) <= np.pi + 1e-12)


class TestGramSchmidt:
    def test_dependent_pair(self):
        out = gram_schmidt([I2, 2 * I2])
        assert len(out) == 1
        np.testing.assert_allclose(out[0], I2 / np.sqrt(2), atol=1e-15)

    def test_orthogonal_pair(self):
        out = gram_schmidt([PAULI_X, PAULI_Y])
        np.testing.assert_allclose(out[0], PAULI_X / np.sqrt(2), atol=1e-15)
        np.testing.assert_allclose(out[1], PAULI_Y / np.sqrt(2), atol=1e-15)

    def test_random_hermitian_rank(self, rng):
        out = gram_schmidt([random_hermitian(3, rng) for _ in range(10)])
        assert len(out) == 9  # real dimension of 3x3 Hermitian matrices
        flat = np.array(out).reshape(len(out), -1)
        gram = flat.conj() @ flat.T
        assert np.max(np.abs(gram - np.eye(len(out)))) <= 1e-10

    def test_real_span_keeps_i_multiple(self):
        # over the reals, I and iI are independent
        assert len(gram_schmidt([I2, 1j * I2])) == 2

    def test_empty(self):
        assert gram_schmidt([]) == []


def test_symplectic_predicate(rng):
    j = symplectic_form(4)
    b = random_skew_hermitian(4, rng)
    a = (b + j @ b.conj() @ np.linalg.inv(j)) / 2
    assert is_symplectic(a)
    assert not is_symplectic(b)


def test_tolerance_validation(monkeypatch):
    with pytest.raises(ValueError):
        Tolerance(atol=0)
    with pytest.raises(ValueError):
        Tolerance(atol=1e-6, rank_tol=1e-8)
    monkeypatch.setenv("CARTANKIT_TOL", "1e-9")
    assert get_tolerance().atol == 1e-9
