"""Two-variable series, OPAs in H^2 and D_alpha of the bidisk, and the
degree-1 witness of an approximant vanishing inside the bidisk.

Monomials ``z1**i z2**j`` are orthogonal in both spaces; the squared norm is
1 in H^2 and ``(i+1)**alpha (j+1)**alpha`` in D_alpha.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .linalg import condition_estimate, ldl_solve
from .univar import GUARD_BAND, Series1D, coeffs_extremal
from .weights import dirichlet_weight_2d

ASYMMETRY_TOL = 1e-6
MAX_GRID_POINTS = 1 << 24


def _exact_value(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


class AsymmetryError(ValueError):
    """The degree-1 OPA of a symmetric function came out asymmetric."""


@dataclass(frozen=True, eq=False)
class Series2D:
    """Coefficients ``b[i, j]`` for ``i + j <= N``, stored in an ``(N+1, N+1)`` array.

    ``tail=True`` marks a truncation of an infinite series (as opposed to a
    genuine polynomial) and switches on the guard-band check in :func:`opa_2d`.
    """

    coeffs: np.ndarray
    symmetric: bool = False
    tail: bool = False

    def __post_init__(self):
        c = np.asarray(self.coeffs)
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise ValueError("coefficients must be a square (N+1, N+1) array")
        N = c.shape[0] - 1
        exact = c.dtype == object
        if exact:
            c = np.array([[Fraction(x) if _exact_value(x) else float(x) for x in row] for row in c], dtype=object)
            if any(isinstance(x, float) for x in c.flat):
                c = c.astype(float)
                exact = False
        else:
            c = c.astype(float)
            if not np.all(np.isfinite(c)):
                raise ValueError("coefficients must be finite")
        i, j = np.indices(c.shape)
        if any(x != 0 for x in c[i + j > N].flat):
            raise ValueError(f"coefficients outside the triangle i + j <= {N}")
        if self.symmetric and any(x != y for x, y in zip(c.flat, c.T.flat)):
            raise ValueError("symmetric flag set on a non-symmetric array")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_dict(cls, N: int, entries: dict, exact: bool = True, **kw) -> Series2D:
        c = np.empty((N + 1, N + 1), dtype=object) if exact else np.zeros((N + 1, N + 1))
        if exact:
            c.fill(Fraction(0))
        for (i, j), v in entries.items():
            if i < 0 or j < 0 or i + j > N:
                raise ValueError(f"index ({i}, {j}) outside the triangle of degree {N}")
            c[i, j] = v
        return cls(c, **kw)

    @property
    def degree(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def exact(self) -> bool:
        return self.coeffs.dtype == object

    def __getitem__(self, ij):
        i, j = ij
        N = self.degree
        if 0 <= i and 0 <= j and i + j <= N:
            return self.coeffs[i, j]
        return 0

    def floats(self) -> np.ndarray:
        return self.coeffs.astype(float)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coeffs.flat)

    def truncate(self, N: int) -> Series2D:
        """Keep total degree ``<= N``; the result is a polynomial."""
        if N >= self.degree:
            return Series2D(self.coeffs, self.symmetric, tail=False)
        return Series2D(self.coeffs[: N + 1, : N + 1].copy() * _triangle(N, self.exact), self.symmetric)

    def __call__(self, z1, z2):
        c = self.floats()
        N = self.degree
        return sum(c[i, j] * z1**i * z2**j for i in range(N + 1) for j in range(N + 1 - i))


def _triangle(N: int, exact: bool) -> np.ndarray:
    i, j = np.indices((N + 1, N + 1))
    mask = (i + j <= N).astype(int)
    return mask.astype(object) if exact else mask


@dataclass(frozen=True)
class Space2D:
    """``h2d2`` (Hardy space of the bidisk) or ``dirichlet2`` with exponent ``alpha``."""

    kind: str = "h2d2"
    alpha: Fraction | float = Fraction(0)

    def __post_init__(self):
        if self.kind not in ("h2d2", "dirichlet2"):
            raise ValueError(f"unknown bidisk space {self.kind!r}")
        if self.kind == "h2d2":
            object.__setattr__(self, "alpha", Fraction(0))
        elif _exact_value(self.alpha):
            object.__setattr__(self, "alpha", Fraction(self.alpha))

    @classmethod
    def hardy(cls) -> Space2D:
        return cls("h2d2")

    @classmethod
    def dirichlet(cls, alpha) -> Space2D:
        return cls("dirichlet2", alpha)

    @property
    def exact(self) -> bool:
        return _exact_value(self.alpha) and Fraction(self.alpha).denominator == 1

    @property
    def label(self) -> str:
        return "h2d2" if self.kind == "h2d2" else f"dirichlet2:{self.alpha}"

    def weight(self, i: int, j: int):
        return dirichlet_weight_2d(self.alpha, i, j)

    def weights(self, M: int, exact: bool) -> np.ndarray:
        """``(M, M)`` array of monomial weights."""
        if exact:
            if not self.exact:
                raise ValueError(f"weights of {self.label} are not rational")
            e = int(self.alpha)
            row = [Fraction(k + 1) ** e for k in range(M)]
            return np.array([[x * y for y in row] for x in row], dtype=object)
        row = np.arange(1, M + 1, dtype=float) ** float(self.alpha)
        return np.outer(row, row)


HARDY = Space2D.hardy()


@dataclass(frozen=True)
class MonomialOrdering:
    """Enumeration of ``z1**i z2**j``; ``graded`` is total degree, then ``i`` descending."""

    kind: str = "graded"

    def __post_init__(self):
        if self.kind not in ("graded", "lex"):
            raise ValueError(f"unknown ordering {self.kind!r}")

    def basis(self, n: int) -> list[tuple[int, int]]:
        if self.kind == "graded":
            return [(i, d - i) for d in range(n + 1) for i in range(d, -1, -1)]
        return [(i, j) for i in range(n + 1) for j in range(n + 1 - i)]


GRADED = MonomialOrdering("graded")


def embed_diagonal(F: Series1D) -> Series2D:
    """Coefficients of ``F((z1 + z2) / 2)``: ``b[i, j] = a_{i+j} C(i+j, i) / 2**(i+j)``."""
    N = F.degree
    exact = F.exact
    c = np.empty((N + 1, N + 1), dtype=object) if exact else np.zeros((N + 1, N + 1))
    if exact:
        c.fill(Fraction(0))
    for i in range(N + 1):
        for j in range(N + 1 - i):
            k = i + j
            if exact:
                c[i, j] = F.coeffs[k] * Fraction(math.comb(k, i), 2**k)
            else:
                c[i, j] = F.coeffs[k] * math.comb(k, i) / 2.0**k
    return Series2D(c, symmetric=True, tail=F.decay is not None)


def _binom_neg_five_halves_abs(n: int) -> float:
    """``|C(-5/2, n)|``."""
    out = 1.0
    for t in range(n):
        out *= (2.5 + t) / (t + 1)
    return out


def builtin_shanks_f(N: int, tail: bool = True) -> Series2D:
    """Taylor coefficients of ``(1 - (z1 + z2)/sqrt(6)) ** (-5/2)`` up to total degree ``N``.

    Built straight from the binomial series, independently of
    :func:`embed_diagonal`.
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    c = np.zeros((N + 1, N + 1))
    s6 = 1.0 / math.sqrt(6.0)
    for n in range(N + 1):
        base = s6**n * _binom_neg_five_halves_abs(n)
        for i in range(n + 1):
            c[i, n - i] = math.comb(n, i) * base
    return Series2D(c, symmetric=True, tail=tail)


def inner_product_2d(f: Series2D, g: Series2D, space: Space2D = HARDY):
    """``sum f_ij g_ij w(i, j)`` over the common truncation."""
    T = min(f.degree, g.degree)
    exact = f.exact and g.exact and space.exact
    a = f.coeffs[: T + 1, : T + 1]
    b = g.coeffs[: T + 1, : T + 1]
    if exact:
        W = space.weights(T + 1, True)
        i, j = np.indices((T + 1, T + 1))
        mask = i + j <= T
        return sum((x * y * w for x, y, w in zip(a[mask], b[mask], W[mask])), Fraction(0))
    W = space.weights(T + 1, False)
    i, j = np.indices((T + 1, T + 1))
    mask = i + j <= T
    return float(np.sum(a.astype(float)[mask] * b.astype(float)[mask] * W[mask]))


@dataclass(frozen=True)
class OpaSolution2D:
    degree: int
    basis: tuple
    coefficients: tuple
    residual_norm: float
    residual_sq: float | Fraction
    rhs: tuple
    gram_condition_estimate: float
    exact: bool = False

    def coefficient(self, i: int, j: int):
        return self.coefficients[self.basis.index((i, j))]

    def __call__(self, z1, z2):
        return sum(c * z1**i * z2**j for (i, j), c in zip(self.basis, self.coefficients))

    def projection_defect(self):
        return self.residual_sq - (1 - sum(r * c for r, c in zip(self.rhs, self.coefficients)))


def _shifted_stack(f: Series2D, basis: Sequence, M: int, exact: bool) -> np.ndarray:
    N = f.degree
    src = f.coeffs if exact else f.floats()
    S = np.empty((len(basis), M, M), dtype=object) if exact else np.zeros((len(basis), M, M))
    if exact:
        S.fill(Fraction(0))
    for row, (p, q) in enumerate(basis):
        S[row, p : p + N + 1, q : q + N + 1] = src
    return S.reshape(len(basis), M * M)


def opa_2d(
    f: Series2D,
    space: Space2D = HARDY,
    n: int = 1,
    ordering: MonomialOrdering = GRADED,
    exact: Optional[bool] = None,
) -> OpaSolution2D:
    """OPA of total degree ``n`` to ``1/f``, coefficients listed in ``ordering``."""
    if ordering.kind != "graded":
        raise ValueError(f"only the graded ordering is supported, got {ordering.kind!r}")
    if n < 0:
        raise ValueError("degree must be non-negative")
    if f.is_zero():
        raise ValueError("f must be non-zero")
    if f.tail and f.degree < n + GUARD_BAND:
        raise ValueError(f"series truncated at {f.degree}; degree {n} needs at least {n + GUARD_BAND}")
    can_exact = f.exact and space.exact
    if exact is None:
        exact = can_exact
    elif exact and not can_exact:
        raise ValueError("exact solve needs rational coefficients and integer alpha")
    basis = ordering.basis(n)
    M = f.degree + n + 1
    S = _shifted_stack(f, basis, M, exact)
    W = space.weights(M, exact).reshape(M * M)
    G = np.dot(S * W, S.T)
    zero = Fraction(0) if exact else 0.0
    r = [f.coeffs[0, 0] * W[0]] + [zero] * (len(basis) - 1)
    c, _ = ldl_solve(G.tolist(), r)
    if not exact:
        c = [float(x) for x in c]
    resid = -np.dot(np.array(c, dtype=object if exact else float), S)
    resid[0] += 1
    res_sq = np.dot(resid * resid, W)
    res_sq = Fraction(res_sq) if exact else float(res_sq)
    return OpaSolution2D(
        degree=n,
        basis=tuple(basis),
        coefficients=tuple(c),
        residual_norm=math.sqrt(max(float(res_sq), 0.0)),
        residual_sq=res_sq,
        rhs=tuple(r),
        gram_condition_estimate=condition_estimate(G.tolist()),
        exact=exact,
    )


@dataclass(frozen=True)
class ShanksWitness:
    """Symmetric degree-1 OPA ``a + b (z1 + z2)`` and where it vanishes.

    ``diagonal_zero`` is ``-a / (2b)``; the zero set is the line
    ``z1 + z2 = -a/b``, whose nearest point to the origin in both the sup
    and the Euclidean norm is ``(z, z)`` with ``z = diagonal_zero``.
    With ``b == 0`` there is no zero and the zero/distance fields are ``None``.
    """

    a: float
    b: float
    diagonal_zero: Optional[float]
    margin: float
    distances: Optional[tuple[float, float]]
    asymmetry: float = 0.0
    residual_norm: float = float("nan")

    @property
    def has_zero(self) -> bool:
        return self.diagonal_zero is not None

    @property
    def zero_in_bidisk(self) -> bool:
        return self.margin > 0

    def nearest_points(self) -> dict[str, tuple]:
        if not self.has_zero:
            return {}
        z = self.diagonal_zero
        return {"linf": (z, z), "l2": (z, z)}

    def p1(self, z1, z2):
        return self.a + self.b * (z1 + z2)


def witness_from_solution(sol: OpaSolution2D) -> ShanksWitness:
    alpha = float(sol.coefficient(0, 0))
    beta = float(sol.coefficient(1, 0))
    gamma = float(sol.coefficient(0, 1))
    asym = abs(beta - gamma)
    if asym > ASYMMETRY_TOL:
        raise AsymmetryError(
            f"|beta - gamma| = {asym:.3e} exceeds {ASYMMETRY_TOL:g}; raise the truncation degree"
        )
    a = alpha
    b = 0.5 * (beta + gamma)
    margin = 2 * abs(b) - abs(a)
    if b == 0:
        return ShanksWitness(a, b, None, margin, None, asym, sol.residual_norm)
    zero = -a / (2 * b)
    dist = (abs(a) / (2 * abs(b)), abs(a) / (math.sqrt(2) * abs(b)))
    return ShanksWitness(a, b, zero, margin, dist, asym, sol.residual_norm)


def shanks_witness(f: Series2D, space: Space2D = HARDY, N: Optional[int] = None) -> ShanksWitness:
    """Degree-1 OPA of a symmetric ``f`` reduced to ``a + b(z1 + z2)``.

    ``margin = 2|b| - |a|`` is positive exactly when the OPA vanishes at a
    diagonal point of the open bidisk.
    """
    if N is not None:
        if N > f.degree:
            raise ValueError(f"truncation {N} exceeds the stored degree {f.degree}")
        if f.tail and N < 1 + GUARD_BAND:
            raise ValueError(f"truncation {N} is below the guard band {1 + GUARD_BAND}")
        f = f.truncate(N) if N < f.degree else Series2D(f.coeffs, f.symmetric)
    return witness_from_solution(opa_2d(f, space, 1))


class ZeroFreeCheck(NamedTuple):
    verdict: str  # "certified-zero-free" or "undecided"
    min_modulus_lower: float  # certified lower bound on |f_N| over the closed bidisk (0 if undecided)
    grid: int  # points per torus direction at the deciding level


def zero_free_diagonal_polynomial(profile: Sequence[float], max_points: int = MAX_GRID_POINTS) -> ZeroFreeCheck:
    """Certify that ``P((z1 + z2)/2)`` has no zero on the closed bidisk.

    ``profile`` holds the coefficients of ``P``.  The map
    ``(z1, z2) -> (z1 + z2)/2`` sends the torus onto the whole closed unit
    disk, so a lower bound for ``|P|`` on a torus grid, widened by a Taylor
    slack per cell, bounds the modulus on the closed bidisk.  The grid is
    doubled until the bound is positive or ``max_points`` is exceeded.
    """
    a = np.asarray(profile, dtype=float)
    N = len(a) - 1
    k = np.arange(N + 1)
    abs_sum = float(np.sum(np.abs(a)))
    M2 = float(np.sum(k * (k - 1) * np.abs(a)))
    fp_err = 8 * (N + 2) * np.finfo(float).eps * float(np.sum(k * np.abs(a)) + abs_sum)
    p = np.polynomial.Polynomial(a)
    dp = p.deriv()
    n = 64
    while n * n <= max_points:
        delta = math.pi / n  # max |w' - w| within a cell
        unit = np.exp(2j * np.pi * np.arange(n) / n)
        worst = math.inf
        for start in range(0, n, 256):
            w = 0.5 * (unit[start : start + 256, None] + unit[None, :])
            val = np.abs(p(w))
            slack = np.abs(dp(w)) * delta + 0.5 * M2 * delta**2 + fp_err
            worst = min(worst, float(np.min(val - slack)))
        if worst > 0:
            return ZeroFreeCheck("certified-zero-free", worst, n)
        n *= 2
    return ZeroFreeCheck("undecided", 0.0, n // 2)


class TaylorCounterexample(NamedTuple):
    witness: ShanksWitness
    zero_free: ZeroFreeCheck


def taylor_polynomial(N_taylor: int) -> tuple[Series2D, Series1D]:
    """Taylor polynomial of the builtin function and its one-variable profile."""
    profile = coeffs_extremal(Fraction(-1, 2), N_taylor).truncate(N_taylor)
    return builtin_shanks_f(N_taylor, tail=False), profile


def taylor_counterexample(N_taylor: int, N_trunc: int) -> TaylorCounterexample:
    """Witness plus zero-freeness certificate for the degree-``N_taylor`` Taylor polynomial."""
    if N_taylor < 0:
        raise ValueError("N_taylor must be non-negative")
    if N_trunc < N_taylor + GUARD_BAND:
        raise ValueError(f"N_trunc must be at least N_taylor + {GUARD_BAND}")
    fN, profile = taylor_polynomial(N_taylor)
    # a polynomial has no tail, so its Gram matrix is exact at any N_trunc >= N_taylor
    witness = shanks_witness(fN, HARDY)
    return TaylorCounterexample(witness, zero_free_diagonal_polynomial(profile.floats()))


def first_positive_margin(max_degree: int = 80) -> Optional[int]:
    """Smallest Taylor degree whose degree-1 OPA already vanishes in the bidisk."""
    for N in range(max_degree + 1):
        fN, _ = taylor_polynomial(N)
        if shanks_witness(fN, HARDY).margin > 0:
            return N
    return None


class ScanRow(NamedTuple):
    alpha: float
    a: float
    b: float
    margin: float


class AlphaScan(NamedTuple):
    rows: list
    threshold: Optional[float]  # interpolated alpha at the first sign change of the margin


def scan_dirichlet_alpha(alpha_from: float, alpha_to: float, steps: int, N: int = 60) -> AlphaScan:
    """Margin of the builtin function's degree-1 OPA in ``D_alpha`` along an alpha grid."""
    if steps < 1 or (steps == 1 and alpha_from != alpha_to):
        raise ValueError("need steps >= 2, or steps == 1 with alpha_from == alpha_to")
    if steps > 1 and not alpha_from < alpha_to:
        raise ValueError("alpha_from must be below alpha_to")
    f = builtin_shanks_f(N)
    rows = []
    for alpha in np.linspace(alpha_from, alpha_to, steps):
        alpha = float(alpha)
        space = HARDY if alpha == 0 else Space2D.dirichlet(alpha)
        w = shanks_witness(f, space)
        rows.append(ScanRow(alpha, w.a, w.b, w.margin))
    threshold = None
    for r0, r1 in zip(rows, rows[1:]):
        if (r0.margin > 0) != (r1.margin > 0):
            t = r0.margin / (r0.margin - r1.margin)
            threshold = r0.alpha + t * (r1.alpha - r0.alpha)
            break
    return AlphaScan(rows, threshold)
