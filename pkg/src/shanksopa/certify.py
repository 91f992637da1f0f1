"""Exact and interval certificate that ``|<F, zF>| > ||zF||**2`` in the
diagonal-weighted space, for ``F(z) = (1 - z/sqrt(3/2)) ** (-5/2)``.

Notation used throughout:

* ``H_j = a_j**2 * w_{j+1}`` with ``a_j`` the coefficients of ``F`` and ``w``
  the diagonal weights.  Every ``H_j`` is rational, ``H_0 = 1/2`` and
  ``H_j = q_j H_{j-1}`` with ``q_j = (2j+1)(2j+3)**2 / (12 j**2 (j+1))``.
* ``S2 = sum_{j<=24} H_j``, ``S4 = sum_{j<=24} H_j / (j+1)``,
  ``S1 = sqrt(2/3) (S2 + 3/2 S4)``, ``S3 = (5 - sqrt 6) H_25``.

Since ``<F, zF> = sqrt(2/3) sum (1 + 3/(2(j+1))) H_j`` and
``||zF||**2 = sum H_j``, the inequality follows from ``S1 > S2 + S3`` once the
tails beyond ``j = 24`` are bounded.  Comparisons are only ever decided by
strictly separated enclosures.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional

from .exact import Interval, decimal_str, format_fraction, radical_enclosure, truncate_decimal
from .univar import extremal_coeffs_squared
from .weights import diag_weight, weight_ratio

H0 = Fraction(1, 2)
LAST = 25  # H_25 anchors both tail bounds
DEFAULT_WIDTH = Fraction(1, 10**40)

# q_j as reduced fractions and 3-digit enclosures of H_j and H_j/(j+1), j = 0..25
REFERENCE_TABLE = [
    (0, None, None, "0.500", "0.500", "0.500", "0.500"),
    (1, 25, 8, "1.562", "1.563", "0.781", "0.782"),
    (2, 245, 144, "2.656", "2.661", "0.885", "0.887"),
    (3, 21, 16, "3.484", "3.494", "0.871", "0.874"),
    (4, 363, 320, "3.950", "3.966", "0.790", "0.794"),
    (5, 1859, 1800, "4.076", "4.097", "0.679", "0.683"),
    (6, 325, 336, "3.941", "3.966", "0.563", "0.567"),
    (7, 1445, 1568, "3.629", "3.657", "0.453", "0.458"),
    (8, 6137, 6912, "3.218", "3.248", "0.357", "0.361"),
    (9, 931, 1080, "2.773", "2.804", "0.277", "0.281"),
    (10, 3703, 4400, "2.332", "2.361", "0.212", "0.215"),
    (11, 14375, 17424, "1.923", "1.951", "0.160", "0.163"),
    (12, 675, 832, "1.559", "1.585", "0.119", "0.122"),
    (13, 7569, 9464, "1.245", "1.268", "0.088", "0.091"),
    (14, 27869, 35280, "0.982", "1.002", "0.065", "0.067"),
    (15, 3751, 4800, "0.766", "0.784", "0.047", "0.049"),
    (16, 13475, 17408, "0.592", "0.608", "0.034", "0.036"),
    (17, 47915, 62424, "0.454", "0.467", "0.025", "0.026"),
    (18, 6253, 8208, "0.345", "0.356", "0.018", "0.019"),
    (19, 21853, 28880, "0.260", "0.270", "0.013", "0.014"),
    (20, 75809, 100800, "0.195", "0.204", "0.009", "0.010"),
    (21, 3225, 4312, "0.145", "0.153", "0.006", "0.007"),
    (22, 33135, 44528, "0.107", "0.114", "0.004", "0.005"),
    (23, 112847, 152352, "0.079", "0.085", "0.003", "0.004"),
    (24, 14161, 19200, "0.058", "0.063", "0.002", "0.003"),
    (25, 47753, 65000, "0.042", "0.047", "0.001", "0.002"),
]

REFERENCE_S2 = (Fraction("40.831"), Fraction("41.227"))
REFERENCE_S3 = (Fraction("0.107"), Fraction("0.120"))
REFERENCE_S4 = (Fraction("6.961"), Fraction("7.018"))
REFERENCE_MARGIN = Fraction("0.819")


# -- sequences --------------------------------------------------------------

def q_seq(j: int) -> Fraction:
    """``H_j / H_{j-1} = (2j+1)(2j+3)**2 / (12 j**2 (j+1))``."""
    if j < 1:
        raise ValueError("q_j is defined for j >= 1")
    return Fraction((2 * j + 1) * (2 * j + 3) ** 2, 12 * j * j * (j + 1))


def q_seq_transposed(j: int) -> Fraction:
    """The variant with ``12 j (j+1)**2`` in the denominator; does not match the table."""
    return Fraction((2 * j + 1) * (2 * j + 3) ** 2, 12 * j * (j + 1) ** 2)


@lru_cache(maxsize=None)
def _h_list(n: int, h0: Fraction) -> tuple:
    out = [h0]
    for j in range(1, n + 1):
        out.append(out[-1] * q_seq(j))
    return tuple(out)


def h_seq(j: int, h0: Fraction = H0) -> Fraction:
    """``H_j`` by the recurrence from ``H_0``."""
    if j < 0:
        raise ValueError("j must be non-negative")
    return _h_list(j, Fraction(h0))[j]


def h_direct(j: int) -> Fraction:
    """``a_j**2 * w_{j+1}`` from the coefficient product and the diagonal weight."""
    return extremal_coeffs_squared(Fraction(-1, 2), j)[j] * diag_weight(j + 1)


# -- exact radicals -----------------------------------------------------------

RADICANDS = (Fraction(1), Fraction(2, 3), Fraction(3, 2), Fraction(6))


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    from math import isqrt

    n, d = x.numerator, x.denominator
    if n < 0:
        return None
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class RadicalScaled:
    """``rational * sqrt(radicand)`` with ``radicand`` in {1, 2/3, 3/2, 6}."""

    rational: Fraction
    radicand: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "rational", Fraction(self.rational))
        object.__setattr__(self, "radicand", Fraction(self.radicand))
        if self.radicand not in RADICANDS:
            raise ValueError(f"radicand {self.radicand} outside the supported set")

    @staticmethod
    def _normalize(rational: Fraction, radicand: Fraction) -> RadicalScaled:
        for r in RADICANDS:
            s = _rational_sqrt(radicand / r)
            if s is not None:
                return RadicalScaled(rational * s, r)
        raise ValueError(f"sqrt({radicand}) is not a rational multiple of a supported radical")

    def __mul__(self, other) -> RadicalScaled:
        if not isinstance(other, RadicalScaled):
            return RadicalScaled(self.rational * Fraction(other), self.radicand)
        return self._normalize(self.rational * other.rational, self.radicand * other.radicand)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RadicalScaled:
        if not isinstance(other, RadicalScaled):
            return RadicalScaled(self.rational / Fraction(other), self.radicand)
        return self._normalize(self.rational / other.rational / other.radicand, self.radicand * other.radicand)

    def __add__(self, other) -> RadicalScaled:
        if not isinstance(other, RadicalScaled):
            other = RadicalScaled(Fraction(other))
        if self.rational == 0:
            return other
        if other.rational == 0:
            return self
        if other.radicand != self.radicand:
            raise ValueError("sum of unlike radicals has no single-radical form")
        return RadicalScaled(self.rational + other.rational, self.radicand)

    def __sub__(self, other) -> RadicalScaled:
        return self + (-1) * (other if isinstance(other, RadicalScaled) else RadicalScaled(Fraction(other)))

    def as_rational(self) -> Optional[Fraction]:
        return self.rational if self.radicand == 1 or self.rational == 0 else None

    def enclosure(self, width=DEFAULT_WIDTH) -> Interval:
        if self.radicand == 1:
            return Interval.point(self.rational)
        # scale the radical's width so the product stays within ``width``
        scale = max(abs(self.rational), Fraction(1))
        return radical_enclosure(self.radicand, Fraction(width) / scale) * self.rational


SQRT_2_3 = RadicalScaled(1, Fraction(2, 3))
SQRT_3_2 = RadicalScaled(1, Fraction(3, 2))
SQRT_6 = RadicalScaled(1, Fraction(6))


# -- S values ---------------------------------------------------------------

class SValues(NamedTuple):
    S1: RadicalScaled
    S2: Fraction
    S3: Interval
    S4: Fraction

    def s1_enclosure(self, width=DEFAULT_WIDTH) -> Interval:
        return self.S1.enclosure(width)


def _s1_first_principles() -> RadicalScaled:
    total = sum(
        (Fraction(2 * j + 5, 2 * j + 2) * h_direct(j) for j in range(LAST)),
        Fraction(0),
    )
    return SQRT_2_3 * total


def s3_enclosure(width=DEFAULT_WIDTH, h0: Fraction = H0) -> Interval:
    h25 = h_seq(LAST, h0)
    return (5 - SQRT_6.enclosure(Fraction(width) / 4)) * h25


def s_values(width=DEFAULT_WIDTH, h0: Fraction = H0) -> SValues:
    """``S2``, ``S4`` exactly from the recurrence; ``S1`` exactly from first
    principles as a multiple of ``sqrt(2/3)``; ``S3`` as a tight interval."""
    hs = _h_list(LAST, Fraction(h0))
    S2 = sum(hs[:LAST], Fraction(0))
    S4 = sum((h / (j + 1) for j, h in enumerate(hs[:LAST])), Fraction(0))
    return SValues(_s1_first_principles(), S2, s3_enclosure(width, h0), S4)


def s4_direct() -> Fraction:
    return sum((h_direct(j) / (j + 1) for j in range(LAST)), Fraction(0))


# -- certificate entries ------------------------------------------------------

@dataclass(frozen=True)
class CertEntry:
    """One certified comparison.

    ``kind="inequality"``: holds iff ``lhs.lo > rhs.hi``; fails iff
    ``lhs.hi <= rhs.lo``; otherwise undecided.  ``kind="one-sided"``: ``lhs``
    only bounds the left side from below and ``rhs`` the right side from
    above, so the entry either holds or is undecided.  ``kind="identity"``: both
    sides must be exact points; holds iff they are equal.  ``rhs=None`` means
    the right side is not bounded above, which is always undecided.
    """

    name: str
    lhs: Interval
    rhs: Optional[Interval]
    kind: str = "inequality"
    note: str = ""

    @property
    def verdict(self) -> str:
        if self.rhs is None:
            return "undecided"
        if self.kind == "identity":
            if self.lhs.is_point() and self.rhs.is_point():
                return "holds" if self.lhs.lo == self.rhs.lo else "fails"
            if self.lhs.hi < self.rhs.lo or self.rhs.hi < self.lhs.lo:
                return "fails"
            return "undecided"
        if self.lhs.lo > self.rhs.hi:
            return "holds"
        if self.kind == "one-sided":
            return "undecided"
        if self.lhs.hi <= self.rhs.lo:
            return "fails"
        return "undecided"

    @property
    def margin(self) -> Optional[Interval]:
        return None if self.rhs is None else self.lhs - self.rhs

    def to_json(self) -> dict:
        margin = self.margin
        return {
            "name": self.name,
            "lhs": self.lhs.to_json(),
            "rhs": None if self.rhs is None else self.rhs.to_json(),
            "verdict": self.verdict,
            "margin": None if margin is None else margin.to_json(),
        }


@dataclass
class CertReport:
    entries: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    advisory: frozenset = frozenset()  # entry names reported but left out of ``overall``

    @property
    def overall(self) -> str:
        verdicts = [e.verdict for e in self.entries if e.name not in self.advisory]
        if "fails" in verdicts:
            return "fails"
        if "undecided" in verdicts:
            return "undecided"
        return "holds"

    def entry(self, name: str) -> CertEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "entries": [e.to_json() for e in self.entries],
            "overall": self.overall,
            "notes": list(self.notes),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


def _point(x) -> Interval:
    return Interval.point(x)


def verify_s1_identity(h0: Fraction = H0) -> CertEntry:
    """``sqrt(3/2) S1 == S2 + 3/2 S4``, with S1 and (S2, S4) built on separate paths."""
    sv = s_values(h0=h0)
    lhs = (SQRT_3_2 * sv.S1).as_rational()
    if lhs is None:
        raise AssertionError("radicals failed to cancel")
    return CertEntry("s1-identity", _point(lhs), _point(sv.S2 + Fraction(3, 2) * sv.S4), kind="identity")


def verify_s4_two_paths(h0: Fraction = H0) -> CertEntry:
    return CertEntry("s4-two-paths", _point(s_values(h0=h0).S4), _point(s4_direct()), kind="identity")


def _partial_sum_entries(width, h0, s3_override) -> tuple[CertEntry, CertEntry]:
    sv = s_values(width, h0)
    S3 = sv.S3 if s3_override is None else Interval.coerce(s3_override)
    main = CertEntry("s1-exceeds-s2-plus-s3", sv.s1_enclosure(width), S3 + sv.S2)
    lhs = (SQRT_3_2 * sv.S4).enclosure(width)
    rhs = (1 - SQRT_2_3.enclosure(width)) * sv.S2 + S3
    return main, CertEntry("equivalent-form", lhs, rhs)


def verify_partial_sum_inequality(
    width=DEFAULT_WIDTH, h0: Fraction = H0, s3_override=None
) -> tuple[CertEntry, CertEntry]:
    """Certify ``S1 > S2 + S3`` directly and through the form
    ``sqrt(3/2) S4 > (1 - sqrt(2/3)) S2 + S3``.

    Refines the radical enclosures once if either route is undecided; the
    two routes must then reach the same verdict.
    """
    main, alt = _partial_sum_entries(width, h0, s3_override)
    if "undecided" in (main.verdict, alt.verdict):
        width = Fraction(width) ** 2
        main, alt = _partial_sum_entries(width, h0, s3_override)
    if main.verdict != alt.verdict and "undecided" not in (main.verdict, alt.verdict):
        raise AssertionError(f"routes disagree: {main.verdict} vs {alt.verdict}")
    return main, alt


class TailConstants(NamedTuple):
    C: Fraction
    ratio_bound_ok: bool
    lower_tail_ok: bool
    upper_tail_ok: bool


def _q_minus_two_thirds_identity() -> bool:
    """``(2j+1)(2j+3)**2 - 8 j**2 (j+1) == 20 j**2 + 30 j + 9`` as cubics.

    Agreement at four points proves the identity; all coefficients on the
    right are positive, so ``q_j > 2/3`` for every ``j >= 1``.
    """
    return all(
        (2 * j + 1) * (2 * j + 3) ** 2 - 8 * j * j * (j + 1) == 20 * j * j + 30 * j + 9
        for j in range(4)
    )


def tail_constants() -> TailConstants:
    """Exact checks behind the tail bounds beyond ``j = 24``.

    ``ratio_bound_ok``: ``a_{j+1}**2 / a_j**2 = (2/3)(1 + 3/(2(j+1)))**2`` is
    decreasing and equals ``(2/3)(53/50)**2 = 2809/3750 < 3/4`` at ``j = 24``.

    ``lower_tail_ok``: every ``q_j`` exceeds ``2/3``, so
    ``sum_{j>=25} H_j >= 3 H_25`` and the tail of ``<F, zF>`` is at least
    ``sqrt(2/3) * 3 H_25 = sqrt(6) H_25``; the arithmetic
    ``(53/50)(1/(1 - C)) = 689/225 > 3`` is checked as well.

    ``upper_tail_ok``: with weights decreasing, ``sum_{j>=26} H_j <=
    H_25 * sum_{t>=1} (3/4)**t = 3 H_25 < 4 H_25``.
    """
    two_thirds = Fraction(2, 3)
    C = two_thirds * weight_ratio(LAST)
    step = two_thirds * (1 + Fraction(3, 2 * (24 + 1))) ** 2
    ratio_ok = (
        step == two_thirds * Fraction(53, 50) ** 2 == Fraction(2809, 3750)
        and step < Fraction(3, 4)
        and two_thirds * (1 + Fraction(3, 2 * 26)) ** 2 < step
    )
    lower_ok = (
        _q_minus_two_thirds_identity()
        and 1 / (1 - two_thirds) == 3
        and Fraction(53, 50) / (1 - C) == Fraction(689, 225) > 3
    )
    three_quarters = Fraction(3, 4)
    geometric = three_quarters / (1 - three_quarters)
    upper_ok = weight_ratio(LAST + 1) < 1 and geometric == 3 and geometric < 4
    return TailConstants(C, ratio_ok, lower_ok, upper_ok)


def direct_bounds(J: int, width=DEFAULT_WIDTH) -> tuple[Interval, Optional[Interval]]:
    """Enclosures for a lower bound of ``<F, zF>`` and an upper bound of ``||zF||**2``.

    Uses ``H_0 .. H_{J-1}``: exact partial sums over ``j <= J - 2`` plus tails
    anchored at ``H_{J-1}``.  Lower tail: ``>= sqrt(2/3) * 3 H_{J-1}``
    (ratios above 2/3).  Upper tail: ``<= H_{J-1} / (1 - rho)`` with
    ``rho = (2/3)(1 + 3/(2J))**2``; ``None`` when ``rho >= 1``.
    """
    if J < 2:
        raise ValueError("J must be at least 2")
    hs = _h_list(J - 1, H0)
    anchor = hs[J - 1]
    lower_sum = sum((Fraction(2 * j + 5, 2 * j + 2) * hs[j] for j in range(J - 1)), Fraction(0))
    lower = (SQRT_2_3 * (lower_sum + 3 * anchor)).enclosure(width)
    rho = Fraction(2, 3) * (1 + Fraction(3, 2 * J)) ** 2
    if rho >= 1:
        return lower, None
    upper = sum(hs[: J - 1], Fraction(0)) + anchor / (1 - rho)
    return lower, _point(upper)


def verify_inequality_direct(J: int, width=DEFAULT_WIDTH) -> CertEntry:
    """Certify ``<F, zF> > ||zF||**2`` from ``J`` coefficients and geometric tails."""
    lower, upper = direct_bounds(J, width)
    entry = CertEntry("inequality-direct", lower, upper, kind="one-sided", note=f"J={J}")
    if entry.verdict == "undecided":
        m = minimal_direct_truncation()
        entry = CertEntry("inequality-direct", lower, upper, kind="one-sided", note=f"J={J}; smallest working J is {m}")
    return entry


def minimal_direct_truncation(max_J: int = 200) -> Optional[int]:
    for J in range(2, max_J + 1):
        lower, upper = direct_bounds(J)
        if upper is not None and lower.lo > upper.hi:
            return J
    return None


# -- table --------------------------------------------------------------------

class TableRow(NamedTuple):
    j: int
    q: Optional[Fraction]
    H: Fraction
    H_lo: Fraction
    H_hi: Fraction
    Hn_lo: Fraction
    Hn_hi: Fraction


def emit_table(h0: Fraction = H0) -> list[TableRow]:
    """Rows ``j = 0..25`` with exact ``q_j``, ``H_j`` and 3-digit truncated enclosures."""
    rows = []
    for j, H in enumerate(_h_list(LAST, Fraction(h0))):
        lo, hi = truncate_decimal(H)
        nlo, nhi = truncate_decimal(H / (j + 1))
        rows.append(TableRow(j, None if j == 0 else q_seq(j), H, lo, hi, nlo, nhi))
    return rows


TABLE_HEADER = "j,q_num,q_den,H_lo,H_hi,Hn_lo,Hn_hi"


def table_csv(rows: list[TableRow]) -> str:
    lines = [TABLE_HEADER]
    for r in rows:
        qn = "" if r.q is None else str(r.q.numerator)
        qd = "" if r.q is None else str(r.q.denominator)
        lines.append(
            ",".join([str(r.j), qn, qd] + [decimal_str(x) for x in (r.H_lo, r.H_hi, r.Hn_lo, r.Hn_hi)])
        )
    return "\n".join(lines) + "\n"


class TableCheck(NamedTuple):
    q_matches: int
    h_inside: int
    hn_inside: int
    mismatches: list

    @property
    def total(self) -> int:
        return self.q_matches + self.h_inside + self.hn_inside


TABLE_CHECKS = 25 + 26 + 26


def check_table(rows: list[TableRow]) -> TableCheck:
    """Compare exact rows with the reference fractions and enclosures."""
    q_ok = h_ok = hn_ok = 0
    bad = []
    for row, ref in zip(rows, REFERENCE_TABLE):
        j, qn, qd, hlo, hhi, nlo, nhi = ref
        if qn is not None:
            if row.q == Fraction(qn, qd) and row.q.numerator == qn:
                q_ok += 1
            else:
                bad.append(f"q_{j}")
        if Fraction(hlo) <= row.H <= Fraction(hhi):
            h_ok += 1
        else:
            bad.append(f"H_{j}")
        if Fraction(nlo) <= row.H / (j + 1) <= Fraction(nhi):
            hn_ok += 1
        else:
            bad.append(f"H_{j}/{j + 1}")
    return TableCheck(q_ok, h_ok, hn_ok, bad)


# -- full pipeline --------------------------------------------------------------

def _tail_entries(tc: TailConstants) -> list[CertEntry]:
    return [
        CertEntry("tail-constant-C", _point(tc.C), _point(Fraction(17, 26)), kind="identity"),
        CertEntry("ratio-bound", _point(Fraction(3, 4)), _point(Fraction(2, 3) * Fraction(53, 50) ** 2)),
        CertEntry("lower-tail-constant", _point(Fraction(689, 225)), _point(3)),
        CertEntry(
            "tail-checks",
            _point(sum((tc.ratio_bound_ok, tc.lower_tail_ok, tc.upper_tail_ok))),
            _point(3),
            kind="identity",
        ),
    ]


def certificate(direct_J: Optional[int] = None, strict: bool = False, h0: Fraction = H0) -> CertReport:
    """Run the whole certificate.

    Outside strict mode the table comparison is reported but does not
    affect ``overall``.
    """
    rows = emit_table(h0)
    tc_check = check_table(rows)
    report = CertReport(advisory=frozenset() if strict else frozenset({"table-consistency"}))
    report.entries.append(
        CertEntry(
            "table-consistency",
            _point(tc_check.total),
            _point(TABLE_CHECKS),
            kind="identity",
            note=", ".join(tc_check.mismatches),
        )
    )
    report.entries.append(verify_s1_identity(h0))
    report.entries.append(verify_s4_two_paths(h0))
    report.entries.extend(_tail_entries(tail_constants()))
    report.entries.extend(verify_partial_sum_inequality(h0=h0))
    if direct_J is not None:
        report.entries.append(verify_inequality_direct(direct_J))
    report.notes.extend(
        [
            "q_j uses 12*j**2*(j+1) in the denominator; the transposed form 12*j*(j+1)**2 "
            f"gives q_1 = {format_fraction(q_seq_transposed(1))} and matches none of the 25 reference rows",
            "lower tail of <F, zF> beyond j = 24 is bounded via q_j > 2/3, giving 3*H_25 and hence sqrt(6)*H_25",
        ]
    )
    return report
