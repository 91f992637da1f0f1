"""
Polynomial counterexamples from Taylor truncations
==================================================

Truncating f at total degree N gives a polynomial f_N(z1, z2) = P((z1+z2)/2).
Once P has no zeros in the closed unit disk, f_N is zero-free on the closed
bidisk; if its degree-1 approximant still has a positive margin it is a
polynomial counterexample.
"""

from fractions import Fraction

import numpy as np

from shanksopa.bidisk import first_positive_margin, taylor_counterexample, taylor_polynomial
from shanksopa.univar import coeffs_extremal
from shanksopa import HARDY, shanks_witness

print("first degree with a positive margin:", first_positive_margin())

for N in (12, 20, 26, 27, 28, 30, 40):
    profile = coeffs_extremal(Fraction(-1, 2), N).floats()
    rmin = min(abs(np.roots(profile[::-1])))
    margin = shanks_witness(taylor_polynomial(N)[0], HARDY).margin
    print(f"N={N:3d}  smallest root of P: {rmin:.6f}  margin: {margin:+.6f}")

# Degrees below 27 have a root of P inside the disk; 30 is certified quickly.
res = taylor_counterexample(30, 70)
print(res.zero_free)
