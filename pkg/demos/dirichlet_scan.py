"""
Dirichlet-type spaces on the bidisk
===================================

Weights (i+1)^alpha (j+1)^alpha.  At alpha = 0 this is the Hardy space;
the degree-1 zero of the same function persists for small alpha > 0 and
leaves the bidisk near alpha = 0.215.
"""

from shanksopa.bidisk import scan_dirichlet_alpha

scan = scan_dirichlet_alpha(-0.5, 0.5, 21)
for row in scan.rows:
    print(f"alpha={row.alpha:+.2f}  a={row.a:.6f}  b={row.b:.6f}  margin={row.margin:+.6f}")
print("margin changes sign near alpha =", scan.threshold)
