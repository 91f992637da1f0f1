"""
Optimal polynomial approximants in one variable
===============================================

The approximant p_n minimizes ||1 - p f|| over polynomials of degree <= n.
For f = 1 - z in the unweighted Hardy space everything is rational, so the
solve runs over Fractions and prints exact answers.
"""

from shanksopa import Series1D, WeightSequence, opa1_zero, opa_1d

f = Series1D.polynomial([1, -1])
h2 = WeightSequence.constant()

# degree 1: p_1 = (2 + z)/3 with residual^2 = 1/3 and a zero at -2
sol = opa_1d(f, h2, 1)
print("p_1 coefficients:", [str(c) for c in sol.coefficients])
print("residual^2:", sol.residual_sq)
print("zero of p_1:", opa1_zero(f, h2))

# The residual shrinks like 1/(n+2): 1 - z is cyclic but only slowly approximated.
for n in range(6):
    print(n, opa_1d(f, h2, n).residual_sq)

# Same function, diagonal-bidisk weights w_k = C(2k, k)/4^k.
diag = WeightSequence.diag()
for n in range(4):
    s = opa_1d(f, diag, n)
    assert s.projection_defect() == 0
    print("diag", n, s.residual_sq, float(s.residual_sq))

# A float input takes the floating-point path and reports the Gram condition number.
g = Series1D.polynomial([1.0, -0.5, 0.25])
s = opa_1d(g, diag, 5)
print("float solve, cond(G) =", f"{s.gram_condition_estimate:.3g}", "residual =", s.residual_norm)
