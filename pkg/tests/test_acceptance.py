"""Acceptance gate: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are printed even
when output capture is on).
"""

import math
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from shanksopa import certify
from shanksopa.bidisk import (
    HARDY,
    Series2D,
    Space2D,
    builtin_shanks_f,
    embed_diagonal,
    inner_product_2d,
    opa_2d,
    taylor_counterexample,
)
from shanksopa.cli import main
from shanksopa.exact import chu_vandermonde
from shanksopa.univar import (
    Series1D,
    coeffs_extremal,
    decay_witness,
    extremal_ratio,
    inner_product_1d,
    jacobi_truncated_norm,
    opa1_zero,
    opa_1d,
)
from shanksopa.weights import WeightSequence, stirling_envelope_check, stirling_sweep

DIAG = WeightSequence.diag()
H2 = WeightSequence.constant()
SEED = 20240601


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
        assert ok, detail

    return emit


def _rand_fraction(rng, num=20, den=12):
    return Fraction(int(rng.integers(-num, num + 1)), int(rng.integers(1, den + 1)))


def test_criterion_01_table(report):
    rows = certify.emit_table()
    chk = certify.check_table(rows)
    q_ok = chk.q_matches == 25
    h_ok = chk.h_inside == 26
    report(1, q_ok and h_ok and chk.total == certify.TABLE_CHECKS,
           f"q_j exact for {chk.q_matches}/25 rows, H_j inside enclosure for {chk.h_inside}/26, "
           f"H_j/(j+1) for {chk.hn_inside}/26")


def test_criterion_02_s_values(report):
    sv = certify.s_values()
    s1 = sv.s1_enclosure()
    ok = (
        Fraction("40.831") <= sv.S2 <= Fraction("41.227")
        and Fraction("6.961") <= sv.S4 <= Fraction("7.018")
        and s1.width < Fraction(1, 10**30)
        and abs(float(s1.mid) - 42.07) < 0.01
        and sv.S3.within(Fraction("0.107"), Fraction("0.120"))
    )
    report(2, ok, f"S2={float(sv.S2):.5f} S4={float(sv.S4):.5f} S1={float(s1.mid):.5f} "
           f"(width {float(s1.width):.1e}) S3=[{float(sv.S3.lo):.5f}, {float(sv.S3.hi):.5f}]")


def test_criterion_03_master_certificate(report):
    main_entry, alt = certify.verify_partial_sum_inequality()
    ident = certify.verify_s1_identity()
    tc = certify.tail_constants()
    ok = (
        main_entry.verdict == "holds"
        and main_entry.margin.lo > certify.REFERENCE_MARGIN
        and alt.verdict == "holds"
        and ident.verdict == "holds"
        and ident.lhs.is_point()
        and tc.C == Fraction(17, 26)
        and tc.ratio_bound_ok and tc.lower_tail_ok and tc.upper_tail_ok
    )
    report(3, ok, f"S1-S2-S3 > {float(main_entry.margin.lo):.6f} (> 0.819), identity exact, C = {tc.C}")


def test_criterion_04_witness(report, capsys):
    code = main(["witness", "--trunc", "60"])
    out = capsys.readouterr().out
    vals = dict(line.split(" = ", 1) for line in out.splitlines() if " = " in line)
    margin = float(vals["margin 2|b| - |a|"])
    zero = float(vals["diagonal zero"])
    zeta = opa1_zero(coeffs_extremal(Fraction(-1, 2), 200), DIAG)
    ok = code == 0 and margin > 0 and 0.97 < zero < 0.99 and abs(zero - zeta) < 1e-6
    report(4, ok, f"margin={margin:.6g}, diagonal zero={zero:.10f}, univariate zero={zeta:.10f}, "
           f"|diff|={abs(zero - zeta):.1e}")


def test_criterion_05_polynomial_counterexample(report):
    found = None
    for N in (30, 40, 60, 80):
        res = taylor_counterexample(N, N + 40)
        if res.witness.margin > 0 and res.zero_free.verdict == "certified-zero-free":
            found = (N, res)
            break
    ok = found is not None
    detail = "no certified Taylor degree <= 80"
    if ok:
        N, res = found
        detail = (f"Taylor degree {N}: margin={res.witness.margin:.6g}, zero-free with "
                  f"min|f_N| >= {res.zero_free.min_modulus_lower:.4f} (grid {res.zero_free.grid})")
    report(5, ok, detail)


def test_criterion_06_embedding(report):
    rng = np.random.default_rng(SEED)
    good = 0
    for _ in range(100):
        deg = int(rng.integers(0, 21))
        F = Series1D.polynomial([_rand_fraction(rng) for _ in range(deg + 1)])
        E = embed_diagonal(F)
        if E.exact and inner_product_2d(E, E, HARDY) == inner_product_1d(F, F, DIAG):
            good += 1
    cv = sum(1 for k in range(65) if chu_vandermonde(k)[0] == chu_vandermonde(k)[1])
    report(6, good == 100 and cv == 65, f"exact norm equality {good}/100, Chu-Vandermonde {cv}/65 (k <= 64)")


def test_criterion_07_opa_oracles(report):
    one1 = Series1D.polynomial([1])
    one2 = Series2D.from_dict(0, {(0, 0): 1})
    spaces1 = [H2, DIAG, WeightSequence.bergman(0), WeightSequence.bergman(Fraction(1, 2)),
               WeightSequence.dirichlet(1), WeightSequence.dirichlet(0.5)]
    spaces2 = [HARDY, Space2D.dirichlet(1), Space2D.dirichlet(0.5)]
    unit_ok = all(
        sol.coefficients[0] == 1 and not any(sol.coefficients[1:]) and sol.residual_sq == 0
        for n in range(6)
        for sol in [opa_1d(one1, w, n) for w in spaces1] + [opa_2d(one2, s, n) for s in spaces2]
    )
    rng = np.random.default_rng(SEED + 7)
    proj_ok = mono_ok = 0
    for _ in range(50):
        deg = int(rng.integers(0, 4))
        c = [_rand_fraction(rng) for _ in range(deg + 1)]
        if c[0] == 0:
            c[0] = Fraction(1)
        f1 = Series1D.polynomial(c)
        f2 = Series2D.from_dict(1, {(0, 0): c[0], (1, 0): _rand_fraction(rng), (0, 1): _rand_fraction(rng)})
        sols = [[opa_1d(f1, w, n) for n in range(4)] for w in (H2, DIAG)]
        sols.append([opa_2d(f2, HARDY, n) for n in range(3)])
        if all(s.exact and s.projection_defect() == 0 for chain in sols for s in chain):
            proj_ok += 1
        if all(b.residual_sq <= a.residual_sq for chain in sols for a, b in zip(chain, chain[1:])):
            mono_ok += 1
    sol = opa_2d(builtin_shanks_f(60), HARDY, 1)
    asym = abs(sol.coefficient(1, 0) - sol.coefficient(0, 1))
    ok = unit_ok and proj_ok == 50 and mono_ok == 50 and asym < 1e-8
    report(7, ok, f"f=1 -> p=1 in all spaces/degrees: {unit_ok}; projection identity {proj_ok}/50; "
           f"monotone residuals {mono_ok}/50; |beta-gamma|={asym:.1e}")


def test_criterion_08_jacobi(report):
    const = jacobi_truncated_norm(H2, 100)
    cheb = 2 * math.cos(math.pi / 101)
    diag = jacobi_truncated_norm(DIAG, 500)
    ratio = extremal_ratio(coeffs_extremal(Fraction(-1, 2), 200), DIAG)
    wit_diag = decay_witness(DIAG, 100)
    wit_berg = decay_witness(WeightSequence.bergman(0), 100)
    wit_const = decay_witness(H2, 100)
    ok = (
        abs(const.lower - cheb) < 1e-8
        and const.upper == 2
        and diag.lower > 2.04
        and 2 * ratio <= diag.lower + 1e-8
        and wit_diag is not None and wit_berg is not None and wit_const is None
    )
    report(8, ok, f"constant-weight Jacobi norm at m=100: {const.lower:.12f} vs 2cos(pi/101)={cheb:.12f}, upper={const.upper}; "
           f"diag m=500 lower={diag.lower:.6f}, 2*ratio={2 * ratio:.6f}; witnesses diag={wit_diag}, "
           f"bergman:0={wit_berg}, constant={wit_const}")


def test_criterion_09_stirling(report):
    first_bad = stirling_sweep(10**5)
    spot = all(stirling_envelope_check(k).verdict == "inside" for k in (1, 2, 3, 10, 1000, 99_999, 10**5))
    enc = stirling_envelope_check(10**4).enclosure
    dist = max(abs(1 - enc.lo), abs(1 - enc.hi))
    ok = first_bad is None and spot and dist < Fraction(1, 10**4)
    report(9, ok, f"inside for every k <= 1e5: {first_bad is None}; exact spot checks: {spot}; "
           f"|enclosure(1e4) - 1| <= {float(dist):.2e}")


def test_criterion_10_determinism(report, tmp_path):
    commands = {
        "certify.json": ["certify", "--direct", "100", "--json", "{out}"],
        "table.csv": ["certify", "--table", "{out}"],
        "opa.csv": ["opa", "--space", "diag", "--fn", "shanks", "--degree", "3", "--csv", "{out}"],
        "opa2.csv": ["opa", "--space", "h2d2", "--fn", "shanks", "--degree", "2", "--csv", "{out}"],
        "scan.csv": ["scan-alpha", "--from", "-0.5", "--to", "1", "--steps", "16", "--csv", "{out}"],
    }
    outputs = {name: [] for name in commands}
    for run in range(3):
        for name, argv in commands.items():
            path = tmp_path / f"{run}-{name}"
            args = [a.replace("{out}", str(path)) for a in argv]
            subprocess.run([sys.executable, "-m", "shanksopa", *args], check=False, capture_output=True)
            outputs[name].append(path.read_bytes() if path.exists() else None)
    same = {name: o[0] is not None and o.count(o[0]) == 3 for name, o in outputs.items()}
    report(10, all(same.values()), "byte-identical over 3 runs: " + ", ".join(f"{k}={v}" for k, v in same.items()))
