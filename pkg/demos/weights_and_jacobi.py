"""
Weights, the Jacobi matrix and the extremal ratio
=================================================

sup |<f, zf>| / ||zf||^2 over f equals half the norm of the Jacobi matrix
with off-diagonal entries sqrt(w_j / w_{j+1}).  For non-decreasing weights
that norm is 2; fast enough decay (w_{k+n+1} < w_{k+1}/4) pushes it above 2,
which is what makes a degree-1 zero inside the disk possible.
"""

from fractions import Fraction

from shanksopa import WeightSequence, coeffs_extremal, extremal_ratio, jacobi_truncated_norm
from shanksopa.univar import decay_witness
from shanksopa.weights import stirling_envelope_check

families = [
    WeightSequence.constant(),
    WeightSequence.dirichlet(1),
    WeightSequence.diag(),
    WeightSequence.bergman(0),
    WeightSequence.bergman(Fraction(1, 2)),
]
for w in families:
    b = jacobi_truncated_norm(w, 400)
    print(f"{w.label:<12} lower {b.lower:.6f}  upper {b.upper:.6f}  witness {decay_witness(w, 100)}")

F = coeffs_extremal(Fraction(-1, 2), 200)
print("2 * extremal ratio of F:", 2 * extremal_ratio(F, WeightSequence.diag()))

# The diagonal weights sit between (7/8)/sqrt(pi k) and 1/sqrt(pi k).
for k in (1, 10, 100, 10_000):
    chk = stirling_envelope_check(k)
    print(k, chk.verdict, float(chk.enclosure.lo))
