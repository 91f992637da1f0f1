"""Weight sequences for one-variable weighted Hardy spaces, plus the bidisk
Dirichlet-type monomial weights.

A weighted Hardy space has squared norm ``sum |a_k|**2 * w_k`` with
``w_0 = 1``.  Four families are provided:

``diag``       ``C(2k, k) / 4**k``; makes ``F -> F((z1 + z2)/2)`` an isometry
               into the Hardy space of the bidisk.
``bergman``    ``1 / C(k + 1 + beta, k)`` for ``beta > -1``.
``dirichlet``  ``(k + 1)**alpha``.
``constant``   ``1`` (the classical Hardy space).

Rational parameters give exact :class:`~fractions.Fraction` weights; other
parameters fall back to double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

import numpy as np

from .exact import PI, Interval, UndecidedError

Real = Union[Fraction, float]

KINDS = ("diag", "bergman", "dirichlet", "constant")


def diag_weight(k: int) -> Fraction:
    if k < 0:
        raise ValueError("k must be non-negative")
    return Fraction(math.comb(2 * k, k), 4**k)


def weight_ratio(j: int) -> Fraction:
    """``diag_weight(j + 1) / diag_weight(j) = (2j + 1) / (2j + 2)``."""
    if j < 0:
        raise ValueError("j must be non-negative")
    return Fraction(2 * j + 1, 2 * j + 2)


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def bergman_weight(beta, k: int) -> Real:
    """``1 / C(k + 1 + beta, k)`` as the product of ``t / (t + 1 + beta)``."""
    if beta <= -1:
        raise ValueError(f"Bergman parameter must exceed -1, got {beta}")
    if k < 0:
        raise ValueError("k must be non-negative")
    if _is_exact(beta):
        beta = Fraction(beta)
        out = Fraction(1)
        for t in range(1, k + 1):
            out *= Fraction(t) / (t + 1 + beta)
        return out
    beta = float(beta)
    out = 1.0
    for t in range(1, k + 1):
        out *= t / (t + 1 + beta)
    return out


def dirichlet_weight_2d(alpha, j: int, k: int) -> Real:
    """Squared norm ``(j+1)**alpha * (k+1)**alpha`` of ``z1**j z2**k`` in D_alpha."""
    if _is_exact(alpha) and Fraction(alpha).denominator == 1:
        e = int(alpha)
        return Fraction(j + 1) ** e * Fraction(k + 1) ** e
    alpha = float(alpha)
    return float((j + 1) ** alpha * (k + 1) ** alpha)


@dataclass(frozen=True)
class WeightSequence:
    kind: str
    param: Real | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown weight kind {self.kind!r}")
        if self.kind == "bergman":
            if self.param is None or self.param <= -1:
                raise ValueError(f"Bergman parameter must exceed -1, got {self.param}")
        if self.kind == "dirichlet" and self.param is None:
            raise ValueError("Dirichlet weights need alpha")
        if self.param is not None and _is_exact(self.param):
            object.__setattr__(self, "param", Fraction(self.param))

    @classmethod
    def diag(cls) -> WeightSequence:
        return cls("diag")

    @classmethod
    def constant(cls) -> WeightSequence:
        return cls("constant")

    @classmethod
    def bergman(cls, beta) -> WeightSequence:
        return cls("bergman", beta)

    @classmethod
    def dirichlet(cls, alpha) -> WeightSequence:
        return cls("dirichlet", alpha)

    @property
    def exact(self) -> bool:
        if self.kind in ("diag", "constant"):
            return True
        if self.kind == "bergman":
            return _is_exact(self.param)
        return _is_exact(self.param) and self.param.denominator == 1

    @property
    def label(self) -> str:
        if self.param is None:
            return self.kind
        p = self.param
        if isinstance(p, Fraction):
            p = str(p)
        return f"{self.kind}:{p}"

    def __call__(self, k: int) -> Real:
        if k < 0:
            raise ValueError("k must be non-negative")
        if self.kind == "diag":
            return diag_weight(k)
        if self.kind == "constant":
            return Fraction(1)
        if self.kind == "bergman":
            return bergman_weight(self.param, k)
        if self.exact:
            return Fraction(k + 1) ** int(self.param)
        return float((k + 1) ** float(self.param))

    def ratio(self, k: int) -> Real:
        """``w_{k+1} / w_k``."""
        if self.kind == "diag":
            return weight_ratio(k)
        if self.kind == "constant":
            return Fraction(1)
        if self.kind == "bergman":
            if self.exact:
                return Fraction(k + 1) / (k + 2 + self.param)
            return (k + 1) / (k + 2 + float(self.param))
        if self.exact:
            return Fraction(k + 2, k + 1) ** int(self.param)
        return ((k + 2) / (k + 1)) ** float(self.param)

    def ratio_sup(self, k: int) -> float:
        """Upper bound for ``w_{j+1}/w_j`` over all ``j >= k``.

        Every builtin family has a monotone ratio sequence tending to 1, so the
        supremum is the larger of the value at ``k`` and the limit.
        """
        return max(1.0, float(self.ratio(k)))

    def values(self, n: int) -> list:
        """First ``n`` weights, built by the ratio recurrence."""
        if n <= 0:
            return []
        out = [Fraction(1) if self.exact else 1.0]
        if self.kind == "dirichlet":
            return [self(k) for k in range(n)]
        for k in range(n - 1):
            out.append(out[-1] * self.ratio(k))
        return out

    def floats(self, n: int) -> np.ndarray:
        if self.kind == "dirichlet" and not self.exact:
            return np.arange(1, n + 1, dtype=float) ** float(self.param)
        if self.exact:
            # float division of the exact running product keeps full accuracy
            return np.array([float(v) for v in self.values(n)], dtype=float)
        return np.array(self.values(n), dtype=float)


class StirlingCheck(NamedTuple):
    verdict: str
    enclosure: Interval


_SEVEN_EIGHTHS_SQ = Fraction(49, 64)


def _envelope_verdict(sq: Interval) -> str:
    """Classify an enclosure of ``(w_k sqrt(pi k))**2`` against ``(7/8, 1)``."""
    if sq.lo > _SEVEN_EIGHTHS_SQ and sq.hi < 1:
        return "inside"
    if sq.hi <= _SEVEN_EIGHTHS_SQ or sq.lo >= 1:
        return "outside"
    raise UndecidedError(f"enclosure {sq} straddles an endpoint of (49/64, 1)")


def stirling_envelope_check(k: int) -> StirlingCheck:
    """Certify whether ``diag_weight(k) * sqrt(pi k)`` lies in ``(7/8, 1)``.

    The weight is exact; only pi is enclosed.  The comparison is made on the
    square, so no square root enters the verdict.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    w = diag_weight(k)
    sq = PI * (w * w * k)
    verdict = _envelope_verdict(sq)
    return StirlingCheck(verdict, sq.sqrt(Fraction(1, 10**40)))


def stirling_sweep(k_max: int, bits: int = 256) -> int | None:
    """Check the envelope for every ``1 <= k <= k_max``.

    Returns the first ``k`` that is not certified inside, or ``None``.  The
    squared weight is carried as an outward-rounded dyadic enclosure, which
    keeps each step at a fixed integer size.
    """
    scale = 1 << bits
    lo = hi = scale  # w_0**2 == 1
    pi_lo_n, pi_lo_d = PI.lo.numerator, PI.lo.denominator
    pi_hi_n, pi_hi_d = PI.hi.numerator, PI.hi.denominator
    for k in range(1, k_max + 1):
        num = (2 * k - 1) ** 2
        den = (2 * k) ** 2
        lo = (lo * num) // den
        hi = -((-hi * num) // den)
        # (lo / scale) * k * pi > 49/64  and  (hi / scale) * k * pi < 1
        if not (64 * lo * k * pi_lo_n > 49 * scale * pi_lo_d and hi * k * pi_hi_n < scale * pi_hi_d):
            return k
    return None
