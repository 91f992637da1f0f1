"""Optimal polynomial approximants in one-variable weighted Hardy spaces.

Given ``f`` with Taylor coefficients ``a_k`` and weights ``w_k``, the OPA of
degree ``n`` is the polynomial ``p`` minimizing ``||1 - p f||_w``.  It
solves the normal equations ``G c = r`` with
``G[j][k] = <z^k f, z^j f>`` and ``r[j] = <1, z^j f>``.

A truncated series is always treated as the polynomial it stores; series
built by the generators here also carry a geometric decay bound so that
inner products can report a rigorous tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .linalg import GramError, condition_estimate, ldl_solve
from .weights import WeightSequence

GUARD_BAND = 40


def _exact_value(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


@dataclass(frozen=True)
class Decay:
    """``|a_{j+1}|**2 <= ratio * |a_j|**2`` for every ``j >= start``."""

    ratio: float
    start: int

    def __post_init__(self):
        if not 0 <= self.ratio < 1:
            raise ValueError(f"decay ratio must lie in [0, 1), got {self.ratio}")


@dataclass(frozen=True)
class Series1D:
    coeffs: tuple
    decay: Optional[Decay] = None

    def __post_init__(self):
        coeffs = tuple(Fraction(c) if _exact_value(c) else float(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("a series needs at least one coefficient")
        if any(isinstance(c, float) and not math.isfinite(c) for c in coeffs):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "coeffs", coeffs)
        if self.decay is not None:
            if self.decay.start > self.degree:
                raise ValueError("decay must be valid from the truncation degree on")
            for j in range(self.decay.start, self.degree):
                lhs = float(coeffs[j + 1]) ** 2
                if lhs > self.decay.ratio * float(coeffs[j]) ** 2 * (1 + 1e-12):
                    raise ValueError(f"decay bound violated at index {j}")

    @classmethod
    def polynomial(cls, coeffs: Sequence) -> Series1D:
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        """Truncation degree ``N`` (``len(coeffs) == N + 1``)."""
        return len(self.coeffs) - 1

    @property
    def exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coeffs)

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def floats(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs], dtype=float)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def shift(self) -> Series1D:
        """The series of ``z f``."""
        zero = Fraction(0) if self.exact else 0.0
        decay = None if self.decay is None else Decay(self.decay.ratio, self.decay.start + 1)
        return Series1D((zero,) + self.coeffs, decay)

    def truncate(self, n: int) -> Series1D:
        """Drop coefficients above degree ``n``; the result is a polynomial."""
        return Series1D(self.coeffs[: n + 1])


def coeffs_extremal(beta, N: int) -> Series1D:
    """Maclaurin coefficients of ``(1 - z / sqrt(beta + 2)) ** -(beta + 3)``.

    Each coefficient is ``prod_{t<=j} (beta + 2 + t) / (t sqrt(beta + 2))``;
    all are positive.  The returned series carries a decay bound valid
    from ``N`` on.
    """
    if beta <= -1:
        raise ValueError(f"beta must exceed -1, got {beta}")
    if N < 0:
        raise ValueError("N must be non-negative")
    b = float(beta)
    inv_c = 1.0 / math.sqrt(b + 2)
    d = b + 3
    out = [1.0]
    for t in range(1, N + 1):
        out.append(out[-1] * (d - 1 + t) / t * inv_c)
    ratio = ((d + N) / (N + 1)) ** 2 / (b + 2)
    decay = Decay(ratio * (1 + 1e-12), N) if ratio < 1 else None
    return Series1D(tuple(out), decay)


def extremal_coeffs_squared(beta, N: int) -> list[Fraction]:
    """Exact ``a_j**2`` for rational ``beta`` (they are rational even when ``a_j`` is not)."""
    beta = Fraction(beta)
    if beta <= -1:
        raise ValueError("beta must exceed -1")
    c2 = beta + 2
    out = [Fraction(1)]
    for t in range(1, N + 1):
        out.append(out[-1] * ((beta + 2 + t) / t) ** 2 / c2)
    return out


class TailedValue(NamedTuple):
    value: float | Fraction
    tail: Optional[float]  # None: no decay information, value is uncertified


def _use_exact(w: WeightSequence, *series: Series1D) -> bool:
    return w.exact and all(s.exact for s in series)


def _envelope(s: Series1D, k: int) -> float:
    if k <= s.degree:
        return abs(float(s.coeffs[k]))
    return abs(float(s.coeffs[-1])) * s.decay.ratio ** ((k - s.degree) / 2)


def inner_product_1d(f: Series1D, g: Series1D, w: WeightSequence, with_tail: bool = False):
    """``sum_k f_k g_k w_k`` over the common truncation.

    With ``with_tail=True`` returns a :class:`TailedValue` whose ``tail``
    bounds ``|<f, g> - value|`` for the untruncated series, or is ``None``
    when either side lacks decay metadata.
    """
    T = min(f.degree, g.degree)
    if _use_exact(w, f, g):
        ws = w.values(T + 1)
        value = sum((f.coeffs[k] * g.coeffs[k] * ws[k] for k in range(T + 1)), Fraction(0))
    else:
        ws = w.floats(T + 1)
        value = float(np.dot(f.floats()[: T + 1] * g.floats()[: T + 1], ws))
    if not with_tail:
        return value
    return TailedValue(value, _tail_bound(f, g, w, T))


def _tail_bound(f: Series1D, g: Series1D, w: WeightSequence, T: int) -> Optional[float]:
    if f.decay is None or g.decay is None:
        return None
    # indices in (T, K) have one known factor; beyond K both use their envelopes
    K = max(f.degree, g.degree) + 1
    ws = w.floats(K + 1)
    finite = sum(_envelope(f, k) * _envelope(g, k) * ws[k] for k in range(T + 1, K))
    q = math.sqrt(f.decay.ratio * g.decay.ratio) * w.ratio_sup(K)
    if q >= 1:
        return math.inf
    head = _envelope(f, K) * _envelope(g, K) * ws[K]
    return float(finite + head / (1 - q))


@dataclass(frozen=True)
class OpaSolution1D:
    degree: int
    coefficients: tuple
    residual_norm: float
    gram_condition_estimate: float
    residual_sq: float | Fraction
    rhs: tuple
    exact: bool = False
    pivots: tuple = field(default=(), repr=False)

    def __call__(self, z):
        return sum(c * z**k for k, c in enumerate(self.coefficients))

    def projection_defect(self):
        """``residual**2 - (1 - sum r_k c_k)``; zero up to rounding."""
        return self.residual_sq - (1 - sum(r * c for r, c in zip(self.rhs, self.coefficients)))


def gram_1d(f: Series1D, w: WeightSequence, n: int, exact: bool):
    """Gram matrix ``<z^k f, z^j f>`` and right-hand side ``<1, z^j f>``."""
    N = f.degree
    if exact:
        a = f.coeffs
        ws = w.values(N + n + 1)
        G = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
        for j in range(n + 1):
            for k in range(j, n + 1):
                # <z^k f, z^j f> = sum_m a_{m-k} a_{m-j} w_m
                s = sum((a[i] * a[i + k - j] * ws[i + k] for i in range(N + 1 - (k - j))), Fraction(0))
                G[j][k] = G[k][j] = s
        r = [a[0] * ws[0]] + [Fraction(0)] * n
        return G, r
    a = f.floats()
    M = N + n + 1
    S = np.zeros((n + 1, M))
    for k in range(n + 1):
        S[k, k : k + N + 1] = a
    ws = w.floats(M)
    G = (S * ws) @ S.T
    r = np.zeros(n + 1)
    r[0] = a[0] * ws[0]
    return G.tolist(), r.tolist()


def _residual_sq_1d(f: Series1D, w: WeightSequence, c: Sequence, exact: bool):
    if exact:
        a = f.coeffs
        prod = [Fraction(0)] * (f.degree + len(c))
        for i, ai in enumerate(a):
            for k, ck in enumerate(c):
                prod[i + k] += ai * ck
        ws = w.values(len(prod))
        resid = [-x for x in prod]
        resid[0] += 1
        return sum((x * x * wk for x, wk in zip(resid, ws)), Fraction(0))
    prod = np.convolve(f.floats(), np.asarray(c, dtype=float))
    resid = -prod
    resid[0] += 1.0
    return float(np.dot(resid * resid, w.floats(len(prod))))


def opa_1d(f: Series1D, w: WeightSequence, n: int, exact: Optional[bool] = None) -> OpaSolution1D:
    """Degree-``n`` optimal polynomial approximant to ``1/f`` in ``H^2_w``.

    ``exact=None`` picks the rational path whenever ``f`` and ``w`` allow it.
    A series carrying decay metadata (a truncated infinite series) must be
    stored to degree ``n + GUARD_BAND`` at least.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    if f.is_zero():
        raise ValueError("f must be non-zero")
    if f.decay is not None and f.degree < n + GUARD_BAND:
        raise ValueError(
            f"series truncated at {f.degree}; degree {n} needs at least {n + GUARD_BAND}"
        )
    can_exact = _use_exact(w, f)
    if exact is None:
        exact = can_exact
    elif exact and not can_exact:
        raise ValueError("exact solve needs rational coefficients and rational weights")
    G, r = gram_1d(f, w, n, exact)
    c, pivots = ldl_solve(G, r)
    if not exact:
        c = [float(x) for x in c]
    res_sq = _residual_sq_1d(f, w, c, exact)
    return OpaSolution1D(
        degree=n,
        coefficients=tuple(c),
        residual_norm=math.sqrt(max(float(res_sq), 0.0)),
        gram_condition_estimate=condition_estimate(G),
        residual_sq=res_sq,
        rhs=tuple(r),
        exact=exact,
        pivots=tuple(pivots),
    )


def opa1_zero(f: Series1D, w: WeightSequence):
    """Zero ``||z f||**2 / <f, z f>`` of the degree-1 OPA, or ``None`` if it is constant."""
    if f.is_zero():
        raise ValueError("f must be non-zero")
    zf = f.shift()
    num = inner_product_1d(zf, zf, w)
    den = inner_product_1d(f, zf, w)
    if den == 0:
        return None
    return num / den


def extremal_ratio(f: Series1D, w: WeightSequence):
    """``|<f, z f>| / ||z f||**2``; the reciprocal of the degree-1 zero's modulus."""
    if f.is_zero():
        raise ValueError("z f must be non-zero")
    zf = f.shift()
    return abs(inner_product_1d(f, zf, w)) / inner_product_1d(zf, zf, w)


class JacobiBounds(NamedTuple):
    lower: float
    upper: float


def jacobi_offdiagonal(w: WeightSequence, m: int) -> np.ndarray:
    """Entries ``sqrt(w_j / w_{j+1})`` for ``j < m - 1``."""
    if m <= 1:
        return np.zeros(0)
    return np.array([1.0 / math.sqrt(float(w.ratio(j))) for j in range(m - 1)])


def _count_below(e2: np.ndarray, x: float) -> int:
    """Eigenvalues below ``x`` of the zero-diagonal tridiagonal matrix (Sturm count)."""
    count = 0
    q = -x
    if q < 0:
        count += 1
    for b2 in e2:
        if q == 0.0:
            q = -1e-300
        q = -x - b2 / q
        if q < 0:
            count += 1
    return count


def largest_eigenvalue(e: np.ndarray, tol: float = 1e-12) -> tuple[float, float]:
    """Bracket ``[lo, hi]`` of the top eigenvalue by Sturm bisection."""
    m = len(e) + 1
    if m == 1:
        return 0.0, 0.0
    e2 = e * e
    rows = np.zeros(m)
    rows[:-1] += np.abs(e)
    rows[1:] += np.abs(e)
    lo, hi = 0.0, float(rows.max())
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _count_below(e2, mid) < m:
            lo = mid
        else:
            hi = mid
    return lo, hi


def jacobi_truncated_norm(w: WeightSequence, m: int) -> JacobiBounds:
    """Lower bound from the ``m x m`` truncation, upper bound from row sums of the full matrix.

    The upper bound takes the largest row sum over the first rows together with
    the limit value 2, which is the supremum for weight ratios that are
    monotone and tend to 1 (every builtin family).
    """
    if m < 1:
        raise ValueError("size must be >= 1")
    lower, _ = largest_eigenvalue(jacobi_offdiagonal(w, m))
    probe = jacobi_offdiagonal(w, max(m, 64) + 2)
    rows = probe[:-1] + np.concatenate(([0.0], probe[:-2]))
    upper = max(2.0, float(rows.max()))
    if not math.isfinite(upper):
        upper = math.inf
    return JacobiBounds(lower, upper)


def decay_witness(w: WeightSequence, search_bound: int) -> Optional[tuple[int, int]]:
    """First ``(n, k)``, lexicographically, with ``w_{k+n+1} < w_{k+1} / 4``.

    Such a pair forces the Jacobi norm above 2.
    """
    ws = w.values(2 * search_bound + 2)
    for n in range(search_bound + 1):
        for k in range(search_bound + 1):
            if 4 * ws[k + n + 1] < ws[k + 1]:
                return n, k
    return None


__all__ = [
    "GUARD_BAND",
    "Decay",
    "GramError",
    "JacobiBounds",
    "OpaSolution1D",
    "Series1D",
    "TailedValue",
    "coeffs_extremal",
    "decay_witness",
    "extremal_coeffs_squared",
    "extremal_ratio",
    "gram_1d",
    "inner_product_1d",
    "jacobi_offdiagonal",
    "jacobi_truncated_norm",
    "largest_eigenvalue",
    "opa1_zero",
    "opa_1d",
]
