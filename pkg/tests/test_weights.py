import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from shanksopa.exact import UndecidedError
from shanksopa.weights import (
    WeightSequence,
    bergman_weight,
    diag_weight,
    dirichlet_weight_2d,
    stirling_envelope_check,
    stirling_sweep,
    weight_ratio,
)



@pytest.mark.parametrize("k", [0, 1, 2, 7, 30, 120])
def test_diag_weight_central_binomial(k):
    assert diag_weight(k) == Fraction(math.comb(2 * k, k), 4**k)
    # independent closed form: Gamma(k + 1/2) / (sqrt(pi) Gamma(k + 1))
    ref = mpmath.gamma(k + mpmath.mpf(1) / 2) / (mpmath.sqrt(mpmath.pi) * mpmath.gamma(k + 1))
    assert abs(mpmath.mpf(diag_weight(k).numerator) / diag_weight(k).denominator - ref) < mpmath.mpf(10) ** -50


@given(st.integers(0, 300))
def test_weight_ratio(j):
    assert diag_weight(j + 1) / diag_weight(j) == weight_ratio(j) == Fraction(2 * j + 1, 2 * j + 2)


@given(st.integers(0, 40))
def test_bergman_closed_forms(k):
    assert bergman_weight(0, k) == Fraction(1, k + 1)
    assert bergman_weight(1, k) == Fraction(2, (k + 1) * (k + 2))


@given(st.fractions(min_value=Fraction(-9, 10), max_value=5, max_denominator=20), st.integers(0, 30))
def test_bergman_matches_gamma(beta, k):
    ref = mpmath.gamma(k + 1) * mpmath.gamma(2 + mpmath.mpf(beta.numerator) / beta.denominator) / mpmath.gamma(
        k + 2 + mpmath.mpf(beta.numerator) / beta.denominator
    )
    got = bergman_weight(beta, k)
    assert isinstance(got, Fraction)
    assert abs(mpmath.mpf(got.numerator) / got.denominator - ref) < mpmath.mpf(10) ** -40
    assert math.isclose(bergman_weight(float(beta), k), float(ref), rel_tol=1e-12)


def test_bergman_rejects_small_beta():
    with pytest.raises(ValueError):
        bergman_weight(-1, 3)
    with pytest.raises(ValueError):
        WeightSequence.bergman(Fraction(-3, 2))


def test_dirichlet_weights():
    assert dirichlet_weight_2d(2, 1, 2) == 4 * 9
    assert math.isclose(dirichlet_weight_2d(0.5, 3, 0), 2.0)
    w = WeightSequence.dirichlet(Fraction(1, 2))
    assert not w.exact
    assert math.isclose(w(3), 2.0)
    assert WeightSequence.dirichlet(1).exact and WeightSequence.dirichlet(1)(4) == 5


@pytest.mark.parametrize(
    "w",
    [
        WeightSequence.diag(),
        WeightSequence.constant(),
        WeightSequence.bergman(0),
        WeightSequence.bergman(Fraction(1, 3)),
        WeightSequence.bergman(0.25),
        WeightSequence.dirichlet(1),
        WeightSequence.dirichlet(-0.5),
    ],
    ids=lambda w: w.label,
)
def test_values_agree_with_direct_evaluation(w):
    vals = w.values(40)
    for k in range(40):
        assert math.isclose(float(vals[k]), float(w(k)), rel_tol=1e-12)
        assert math.isclose(float(w.ratio(k)), float(w(k + 1)) / float(w(k)), rel_tol=1e-12)
        assert w.ratio_sup(k) >= float(w.ratio(k))
    assert np.allclose(w.floats(40), [float(v) for v in vals], rtol=1e-13)


def test_labels():
    assert WeightSequence.bergman(Fraction(1, 2)).label == "bergman:1/2"
    assert WeightSequence.diag().label == "diag"


def _mp_envelope(k):
    w = diag_weight(k)
    return mpmath.mpf(w.numerator) / w.denominator * mpmath.sqrt(mpmath.pi * k)


@pytest.mark.parametrize("k", [1, 2, 3, 10, 97, 1000, 10**4])
def test_stirling_envelope_matches_mpmath(k):
    check = stirling_envelope_check(k)
    assert check.verdict == "inside"
    ref = _mp_envelope(k)
    lo = mpmath.mpf(check.enclosure.lo.numerator) / check.enclosure.lo.denominator
    hi = mpmath.mpf(check.enclosure.hi.numerator) / check.enclosure.hi.denominator
    assert lo <= ref <= hi
    assert mpmath.mpf(7) / 8 < ref < 1


def test_stirling_enclosure_near_one_for_large_k():
    enc = stirling_envelope_check(10**4).enclosure
    assert 1 - enc.lo < Fraction(1, 10**4)


def test_stirling_sweep_agrees_with_single_checks():
    assert stirling_sweep(3000) is None


def test_stirling_sweep_coarse_fixed_point_fails():
    # With too few bits of fixed point the enclosure loses its upper margin.
    assert stirling_sweep(10**4, bits=8) is not None


def test_stirling_rejects_k0():
    with pytest.raises(ValueError):
        stirling_envelope_check(0)


def test_undecided_error_is_arithmetic():
    assert issubclass(UndecidedError, ArithmeticError)
