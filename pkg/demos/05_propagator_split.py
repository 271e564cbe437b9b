"""Split a two-qubit evolution into antisymmetric and symmetric parts under the total involution."""
import numpy as np

from cartankit import build_odd_even, split_propagator, total_involution
from cartankit.linalg import exp_skew, random_hermitian
from cartankit.subspaces import project

rng = np.random.default_rng(1)
d = build_odd_even([(2, "AII"), (2, "AII")])
_, s = total_involution(d)

h = random_hermitian(4, rng, norm=1.0)
u = exp_skew(1j * h)
u_a, u_s, h_a, h_s = split_propagator(u, s)

print("||U_a U_s - U|| =", np.linalg.norm(u_a @ u_s - u))
print("H_a in span I_o, residual", project(d.I_o, h_a)[1])
print("H_s in span I_e, residual", project(d.I_e, h_s)[1])
# Nothing forces H_a + H_s = H once the generators fail to commute.
print("||H_a + H_s - H|| =", np.linalg.norm(h_a + h_s - h))
