"""Time reversal on a chain of spins and the Cartan type it induces.

Theta = exp(-i pi S_y) K on every site. It squares to (-1)^(2J) with 2J the total number
of half-integer spins (mod 2), which decides between the AI and AII classes.
"""
from fractions import Fraction

import numpy as np

from cartankit import classify_involution, involution_from_symmetry, is_cartan_symmetry, time_reversal_symmetry
from cartankit.symmetries import embed, spin_operators

for spins in ([Fraction(1, 2)], [Fraction(1, 2)] * 2, [Fraction(1, 2), Fraction(1)], [Fraction(3, 2)]):
    s = time_reversal_symmetry(spins)
    check = is_cartan_symmetry(s)
    kind = classify_involution(involution_from_symmetry(s).involution)
    print(f"spins {[str(j) for j in spins]}: n={s.n}, X conj(X) = {np.exp(1j * check.phi).real:+.0f} I, type {kind}")

# Every spin component changes sign.
spins = [Fraction(1, 2), Fraction(1)]
s = time_reversal_symmetry(spins)
dims = [2, 3]
sx, sy, sz = spin_operators(Fraction(1))
big = embed(sz, 1, dims)
x = s.X
print("max |Theta Sz Theta^-1 + Sz| =", np.max(np.abs(x @ big.conj() @ x.conj().T + big)))
