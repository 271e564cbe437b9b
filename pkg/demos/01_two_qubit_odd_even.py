"""Two qubits, each with the sp(1) decomposition of u(2), combined into an odd-even split of u(4).

With two AII factors the number of AII factors is even, so the total split is of type AI:
dim I_o = 4*3/2 = 6 and dim I_e = 10. The total involution comes from (-i sigma_y)^{(x)2} K,
the magic-basis conjugation behind the concurrence.
"""
import numpy as np

from cartankit import build_odd_even, total_involution, verify_odd_even

d = build_odd_even([(2, "AII"), (2, "AII")])
print("predicted type:", d.predicted_type)
print("dim I_o, dim I_e:", len(d.I_o), len(d.I_e))

theta, s = total_involution(d)
print("X of the total symmetry:\n", np.round(s.X.real, 3))

report = verify_odd_even(d)
for name, rel in report.relations.items():
    print(f"{name:22s} worst residual {rel.max_residual:.1e}")
print("all relations hold:", report.passed)

# A Bell state is invariant (up to phase) under the total antiunitary map.
bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
print("|<bell|Theta bell>| =", abs(np.vdot(bell, s.act(bell))))
