"""Group-level factorizations U = K P and U = K1 A K2.

For the AI involution (complex conjugation) K is real orthogonal and P is symmetric unitary.
"""
import numpy as np

from cartankit import CartanInvolution, kak_decompose_ai, kp_decompose
from cartankit.linalg import random_unitary

rng = np.random.default_rng(0)
u = random_unitary(4, rng, log_norm=1.0)

r = kp_decompose(u, CartanInvolution("AI", 4))
print("K real:", np.allclose(r.K.imag, 0), "| P symmetric:", np.allclose(r.P, r.P.T))
print("||U - K P|| =", r.residual)

k = kak_decompose_ai(u)
print("K1, K2 in SO(4):", np.isclose(np.linalg.det(k.K1).real, 1), np.isclose(np.linalg.det(k.K2).real, 1))
print("A phases:", np.round(np.angle(np.diag(k.A)), 4))
print("||U - K1 A K2|| =", k.residual)

# The symplectic version: K lies in Sp(2), so K^T J K = J.
r2 = kp_decompose(u, CartanInvolution("AII", 4))
j = np.block([[np.zeros((2, 2)), np.eye(2)], [-np.eye(2), np.zeros((2, 2))]])
print("K^T J K = J:", np.allclose(r2.K.T @ j @ r2.K, j))
