"""Square-root-free LDL^T solves for small symmetric positive-definite systems.

The same code runs over floats and over Fractions; on Fractions it is exact
Gaussian elimination and the pivots are ratios of leading principal minors.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np


class GramError(ArithmeticError):
    """The Gram matrix is singular or not positive definite."""


def ldl_decompose(G: Sequence[Sequence]) -> tuple[list[list], list]:
    n = len(G)
    L = [[0] * n for _ in range(n)]
    d = [0] * n
    for i in range(n):
        for j in range(i):
            s = G[i][j] - sum(L[i][k] * L[j][k] * d[k] for k in range(j))
            L[i][j] = s / d[j]
        d[i] = G[i][i] - sum(L[i][k] ** 2 * d[k] for k in range(i))
        if not d[i] > 0:
            raise GramError(f"pivot {i} is {d[i]!r}; Gram matrix is not positive definite")
        L[i][i] = 1
    return L, d


def ldl_solve(G: Sequence[Sequence], r: Sequence) -> tuple[list, list]:
    """Solve ``G c = r``; returns ``(c, pivots)``."""
    L, d = ldl_decompose(G)
    n = len(r)
    y = list(r)
    for i in range(n):
        y[i] = r[i] - sum(L[i][k] * y[k] for k in range(i))
    z = [y[i] / d[i] for i in range(n)]
    c = [0] * n
    for i in reversed(range(n)):
        c[i] = z[i] - sum(L[k][i] * c[k] for k in range(i + 1, n))
    return c, d


def leading_minors(G: Sequence[Sequence]) -> list:
    """Leading principal minors, as running products of the LDL^T pivots."""
    _, d = ldl_decompose(G)
    out, acc = [], 1
    for p in d:
        acc = acc * p
        out.append(acc)
    return out


def condition_estimate(G) -> float:
    A = np.array([[float(x) for x in row] for row in G], dtype=float)
    return float(np.linalg.cond(A))
