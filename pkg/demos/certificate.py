"""
Certifying |<F, zF>| > ||zF||^2 without floating point
=====================================================

Writing H_j = a_j^2 w_{j+1}, every H_j is rational and the inequality splits
into 25 exact partial sums plus two geometric tails anchored at H_25.  The
only irrational numbers are sqrt(2/3), sqrt(3/2) and sqrt 6, which are
carried symbolically and enclosed by integer square roots at the very end.
"""

from fractions import Fraction

from shanksopa import certify

rows = certify.emit_table()
print(certify.table_csv(rows[:6]), "...")

sv = certify.s_values()
print("S2 =", float(sv.S2), " S4 =", float(sv.S4))
print("S1 enclosure:", sv.s1_enclosure())
print("S3 enclosure width:", float(sv.S3.width))

report = certify.certificate(direct_J=certify.minimal_direct_truncation())
for e in report.entries:
    print(f"{e.name:<24} {e.verdict}")
print("overall:", report.overall)

main = report.entry("s1-exceeds-s2-plus-s3")
print("certified lower bound for S1 - S2 - S3:", float(main.margin.lo))

# Breaking any input breaks the certificate.
bad = certify.certificate(strict=True, h0=certify.H0 + Fraction(1, 10**9))
print("with H_0 perturbed by 1e-9:", bad.overall)
