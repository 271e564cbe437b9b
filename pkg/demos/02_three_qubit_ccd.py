"""Three qubits flip the parity: the odd words now span a symplectic algebra.

Pauli strings with an odd number of nontrivial letters give the compact part.
"""
from itertools import product

import numpy as np

from cartankit import ccd, classify_odd_even

d = ccd(3)
print("type:", d.predicted_type, "| dim I_o =", len(d.I_o), "| dim I_e =", len(d.I_e))

# Pauli strings: 3 nontrivial letters per site, identity is the single S letter.
odd = sum(1 for w in product(range(4), repeat=3) if sum(k > 0 for k in w) % 2 == 1)
print("direct word count:", odd, "(n(n+1)/2 for n=8 is", 8 * 9 // 2, ")")

for N in range(1, 6):
    n = 2**N
    kind = classify_odd_even([(2, "AII")] * N)
    print(f"N={N}: {kind:3s}  dim K = {n * (n + 1) // 2 if kind == 'AII' else n * (n - 1) // 2}")

print("I_o basis element norms:", np.unique(np.round(np.linalg.norm(d.I_o.basis, axis=(1, 2)), 12)))
