"""
A zero-free function whose degree-1 approximant vanishes in the bidisk
======================================================================

f(z1, z2) = (1 - (z1 + z2)/sqrt 6)^(-5/2) has no zeros on the closed
bidisk, yet its degree-1 approximant a + b (z1 + z2) vanishes at a diagonal
point (z, z) with |z| < 1.  Because f depends on (z1 + z2)/2 only, the same
zero can be read off a one-variable problem with diagonal weights.
"""

from fractions import Fraction

from shanksopa import (
    HARDY,
    WeightSequence,
    builtin_shanks_f,
    coeffs_extremal,
    embed_diagonal,
    extremal_ratio,
    opa1_zero,
    shanks_witness,
)

# Bidisk route: Taylor coefficients to total degree 60.
w = shanks_witness(builtin_shanks_f(60), HARDY)
print(f"a = {w.a:.12f}, b = {w.b:.12f}")
print(f"margin 2|b| - |a| = {w.margin:.6g}  (positive means a zero inside)")
print(f"diagonal zero z = {w.diagonal_zero:.12f}")
print("nearest zero to the origin (sup norm, euclidean):", w.distances)

# One-variable route: F(z) = (1 - z/sqrt(3/2))^(-5/2) with w_k = C(2k,k)/4^k.
F = coeffs_extremal(Fraction(-1, 2), 200)
diag = WeightSequence.diag()
zeta = opa1_zero(F, diag)
print(f"one-variable zero = {zeta:.12f}, difference {abs(zeta - w.diagonal_zero):.2e}")
print(f"extremal ratio |<F,zF>| / ||zF||^2 = {extremal_ratio(F, diag):.10f} (> 1)")

# The embedding F -> F((z1+z2)/2) reproduces the builtin coefficients.
E = embed_diagonal(coeffs_extremal(Fraction(-1, 2), 60))
print("max |embed - builtin| =", abs(E.floats() - builtin_shanks_f(60).floats()).max())

# Truncation convergence of the witness.
for N in (41, 50, 60, 80, 120):
    print(N, f"{shanks_witness(builtin_shanks_f(N)).margin:.12f}")
