import json
from fractions import Fraction

import mpmath
import pytest

from shanksopa import certify
from shanksopa.certify import (
    H0,
    LAST,
    REFERENCE_TABLE,
    SQRT_2_3,
    SQRT_3_2,
    SQRT_6,
    CertEntry,
    RadicalScaled,
    certificate,
    check_table,
    direct_bounds,
    emit_table,
    h_direct,
    h_seq,
    minimal_direct_truncation,
    q_seq,
    q_seq_transposed,
    s_values,
    table_csv,
    tail_constants,
    verify_inequality_direct,
    verify_partial_sum_inequality,
    verify_s1_identity,
)
from shanksopa.exact import Interval



def mpf(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def mp_H(j):
    """H_j = a_j^2 w_{j+1} straight from the binomial series and the Gamma form of w."""
    a = mpmath.binomial(j + mpmath.mpf(3) / 2, j) * (mpmath.mpf(2) / 3) ** (mpmath.mpf(j) / 2)
    w = mpmath.gamma(j + 1 + mpmath.mpf(1) / 2) / (mpmath.sqrt(mpmath.pi) * mpmath.gamma(j + 2))
    return a * a * w


def test_q_matches_ratio_of_direct_terms():
    for j in range(1, 60):
        assert q_seq(j) == h_direct(j) / h_direct(j - 1)


def test_q_reduced_fractions_match_reference():
    for j, qn, qd, *_ in REFERENCE_TABLE[1:]:
        q = q_seq(j)
        assert (q.numerator, q.denominator) == (qn, qd)
    assert q_seq_transposed(1) != q_seq(1)


def test_recurrence_agrees_with_direct():
    assert h_seq(0) == H0 == h_direct(0)
    for j in range(0, 61):
        assert h_seq(j) == h_direct(j)
        assert abs(mpf(h_seq(j)) - mp_H(j)) < mpmath.mpf(10) ** -40


def test_q_rejects_zero():
    with pytest.raises(ValueError):
        q_seq(0)


def test_radical_algebra():
    assert (SQRT_2_3 * SQRT_3_2).as_rational() == 1
    assert (SQRT_6 / SQRT_3_2).radicand == 1 or (SQRT_6 / SQRT_3_2).as_rational() == 2
    assert (SQRT_2_3 * 3).rational == 3
    assert (SQRT_2_3 + SQRT_2_3 * 2).rational == 3
    with pytest.raises(ValueError):
        SQRT_2_3 + SQRT_6
    with pytest.raises(ValueError):
        RadicalScaled(1, Fraction(5))
    e = (SQRT_6 * Fraction(7, 3)).enclosure(Fraction(1, 10**30))
    ref = mpmath.sqrt(6) * 7 / 3
    assert mpf(e.lo) <= ref <= mpf(e.hi) and e.width <= Fraction(1, 10**30)


def test_s_values_against_mpmath():
    sv = s_values()
    S2 = sum(mp_H(j) for j in range(LAST))
    S4 = sum(mp_H(j) / (j + 1) for j in range(LAST))
    S1 = mpmath.sqrt(mpmath.mpf(2) / 3) * (S2 + mpmath.mpf(3) / 2 * S4)
    S3 = (5 - mpmath.sqrt(6)) * mp_H(LAST)
    tol = mpmath.mpf(10) ** -40
    assert abs(mpf(sv.S2) - S2) < tol and abs(mpf(sv.S4) - S4) < tol
    enc = sv.s1_enclosure()
    assert mpf(enc.lo) - tol <= S1 <= mpf(enc.hi) + tol
    assert enc.width < Fraction(1, 10**30)
    assert mpf(sv.S3.lo) <= S3 <= mpf(sv.S3.hi)


def test_s1_identity_and_perturbation():
    assert verify_s1_identity().verdict == "holds"
    assert verify_s1_identity(H0 + Fraction(1, 10**9)).verdict == "fails"


def test_partial_sum_inequality():
    main, alt = verify_partial_sum_inequality()
    assert main.verdict == alt.verdict == "holds"
    assert main.margin.lo > Fraction("0.819")
    broken, _ = verify_partial_sum_inequality(s3_override=Fraction(6, 5))
    assert broken.verdict == "fails"


def test_partial_sum_refines_coarse_width():
    main, _ = verify_partial_sum_inequality(width=Fraction(1, 2))
    assert main.verdict == "holds"


def test_tail_constants():
    tc = tail_constants()
    assert tc.C == Fraction(17, 26)
    assert tc.ratio_bound_ok and tc.lower_tail_ok and tc.upper_tail_ok


def test_tail_bounds_hold_numerically():
    tail = mpmath.nsum(mp_H, [LAST, mpmath.inf])
    h25 = mp_H(LAST)
    assert tail >= 3 * h25
    assert tail - h25 <= 3 * h25
    # lower tail of <F, zF> beyond j = 24 dominates sqrt(6) H_25
    inner_tail = mpmath.nsum(lambda j: mpmath.sqrt(mpmath.mpf(2) / 3) * (1 + mpmath.mpf(3) / (2 * (j + 1))) * mp_H(j), [LAST, mpmath.inf])
    assert inner_tail >= mpmath.sqrt(6) * h25


def test_direct_bounds_bracket_true_values():
    c = mpmath.sqrt(mpmath.mpf(2) / 3)
    inner = mpmath.nsum(lambda j: c * (1 + mpmath.mpf(3) / (2 * (j + 1))) * mp_H(j), [0, mpmath.inf])
    norm = mpmath.nsum(mp_H, [0, mpmath.inf])
    assert inner > norm
    for J in (5, 26, 60, 100):
        lower, upper = direct_bounds(J)
        assert mpf(lower.lo) <= inner
        if upper is not None:
            assert norm <= mpf(upper.hi)


def test_direct_inequality_verdicts():
    assert verify_inequality_direct(2).verdict == "undecided"
    assert verify_inequality_direct(100).verdict == "holds"
    J = minimal_direct_truncation()
    assert verify_inequality_direct(J).verdict == "holds"
    assert verify_inequality_direct(J - 1).verdict == "undecided"
    with pytest.raises(ValueError):
        direct_bounds(1)


def test_direct_verdict_monotone_in_J():
    verdicts = [verify_inequality_direct(J).verdict for J in range(2, 80)]
    first = verdicts.index("holds")
    assert all(v == "holds" for v in verdicts[first:])
    assert all(v == "undecided" for v in verdicts[:first])


def test_entry_verdicts():
    one = Interval.point(1)
    assert CertEntry("x", Interval.point(2), one).verdict == "holds"
    assert CertEntry("x", one, Interval.point(2)).verdict == "fails"
    assert CertEntry("x", Interval(Fraction(0), Fraction(2)), one).verdict == "undecided"
    assert CertEntry("x", one, None).verdict == "undecided"
    assert CertEntry("x", one, Interval.point(2), kind="one-sided").verdict == "undecided"
    assert CertEntry("x", Interval.point(2), one, kind="one-sided").verdict == "holds"
    assert CertEntry("x", one, one, kind="identity").verdict == "holds"
    assert CertEntry("x", one, Interval.point(2), kind="identity").verdict == "fails"


def test_table():
    rows = emit_table()
    assert len(rows) == 26
    chk = check_table(rows)
    assert chk.total == certify.TABLE_CHECKS and not chk.mismatches
    csv = table_csv(rows).splitlines()
    assert csv[0] == certify.TABLE_HEADER
    assert csv[1] == "0,,,0.500,0.500,0.500,0.500"
    assert csv[2] == "1,25,8,1.562,1.563,0.781,0.782"


def test_certificate_report():
    rep = certificate(direct_J=100)
    assert rep.overall == "holds"
    data = json.loads(rep.dumps())
    assert set(data) == {"entries", "overall", "notes"}
    names = [e["name"] for e in data["entries"]]
    assert "s1-exceeds-s2-plus-s3" in names and "inequality-direct" in names
    for e in data["entries"]:
        assert "/" in e["lhs"]["lo"]
    assert rep.dumps() == certificate(direct_J=100).dumps()


def test_strict_mode_counts_table():
    perturbed = H0 + Fraction(1, 10**9)
    assert certificate(strict=True, h0=perturbed).overall == "fails"
    lenient = certificate(h0=perturbed)
    assert lenient.entry("table-consistency").verdict == "fails"
