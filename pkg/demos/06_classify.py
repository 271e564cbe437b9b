"""Reading off the Cartan type from an arbitrary symmetry matrix."""
import numpy as np

from cartankit import Symmetry, classify_involution, involution_from_symmetry
from cartankit.linalg import ipq, random_unitary, symplectic_form

rng = np.random.default_rng(2)
t = random_unitary(4, rng)
cases = {
    "T T^T, antiunitary": Symmetry("antiunitary", t @ t.T),
    "T J T^T, antiunitary": Symmetry("antiunitary", t @ symplectic_form(4) @ t.T),
    "T I_31 T^dag, unitary": Symmetry("unitary", t @ ipq(3, 1) @ t.conj().T),
}
for label, s in cases.items():
    split = involution_from_symmetry(s)
    print(f"{label:24s} dim K = {len(split.k):2d}, dim P = {len(split.p):2d}, type {classify_involution(split.involution)}")
