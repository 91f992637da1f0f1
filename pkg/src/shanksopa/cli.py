"""Command-line interface: ``shanksopa {certify,witness,opa,scan-alpha,jacobi}``.

Exit codes: 0 verified/holds, 1 fails, 2 undecided or insufficient
truncation, 64 usage error.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import bidisk, certify, coeffio, univar
from .exact import format_fraction
from .weights import WeightSequence

EXIT_OK, EXIT_FAILS, EXIT_UNDECIDED, EXIT_USAGE = 0, 1, 2, 64
DEFAULT_TRUNC_1D = 200
DEFAULT_TRUNC_2D = 60

SPACES_1D = ("h2", "diag", "bergman", "dirichlet")
SPACES_2D = ("h2d2", "dirichlet2")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_space(text: str):
    """``h2 | diag | bergman:<beta> | dirichlet:<alpha> | h2d2 | dirichlet2:<alpha>``."""
    tag, _, arg = text.partition(":")
    if tag not in SPACES_1D + SPACES_2D:
        raise UsageError(f"unknown space {text!r}; expected one of h2, diag, bergman:<beta>, "
                         "dirichlet:<alpha>, h2d2, dirichlet2:<alpha>")
    needs_arg = tag in ("bergman", "dirichlet", "dirichlet2")
    if needs_arg != bool(arg):
        raise UsageError(f"space {tag!r} {'needs' if needs_arg else 'takes no'} parameter")
    param = None
    if arg:
        try:
            param = Fraction(arg)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"cannot parse parameter {arg!r}") from None
    if tag == "h2":
        return WeightSequence.constant()
    if tag == "diag":
        return WeightSequence.diag()
    if tag == "bergman":
        if param <= -1:
            raise UsageError("bergman parameter must exceed -1")
        return WeightSequence.bergman(param)
    if tag == "dirichlet":
        return WeightSequence.dirichlet(param)
    if tag == "h2d2":
        return bidisk.HARDY
    return bidisk.Space2D.dirichlet(param)


def _is_2d(space) -> bool:
    return isinstance(space, bidisk.Space2D)


def load_function(text: str, space, trunc: int | None, embed: bool):
    """Build the series named by ``shanks | fbeta:<beta> | file:<path>`` for ``space``."""
    tag, _, arg = text.partition(":")
    two = _is_2d(space)
    if tag == "shanks":
        if two:
            return bidisk.builtin_shanks_f(trunc or DEFAULT_TRUNC_2D)
        return univar.coeffs_extremal(Fraction(-1, 2), trunc or DEFAULT_TRUNC_1D)
    if tag == "fbeta":
        try:
            beta = Fraction(arg)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"cannot parse beta {arg!r}") from None
        if beta <= -1:
            raise UsageError("fbeta parameter must exceed -1")
        F = univar.coeffs_extremal(beta, trunc or (DEFAULT_TRUNC_2D if two else DEFAULT_TRUNC_1D))
        return _lift(F, two, embed, text)
    if tag == "file":
        try:
            series = coeffio.read_series(arg)
        except (OSError, coeffio.CoefficientFileError) as exc:
            raise UsageError(str(exc)) from None
        if isinstance(series, bidisk.Series2D):
            if not two:
                raise UsageError("two-variable coefficients need a bidisk space (h2d2, dirichlet2:<alpha>)")
            return series
        return _lift(series, two, embed, text)
    raise UsageError(f"unknown function {text!r}; expected shanks, fbeta:<beta> or file:<path>")


def _lift(F, two: bool, embed: bool, text: str):
    if not two:
        return F
    if not embed:
        raise UsageError(f"{text} is a one-variable function; pass --embed to use F((z1+z2)/2)")
    return bidisk.embed_diagonal(F)


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return format_fraction(x)
    return repr(float(x))


# -- commands -------------------------------------------------------------------

def cmd_certify(args) -> int:
    h0 = certify.H0 + (Fraction(args.perturb_h0) if args.perturb_h0 else 0)
    report = certify.certificate(direct_J=args.direct, strict=args.strict, h0=h0)
    for e in report.entries:
        tail = f"  ({e.note})" if e.note else ""
        print(f"{e.name:<24} {e.verdict}{tail}")
    main = report.entry("s1-exceeds-s2-plus-s3")
    print(f"certified lower bound for S1 - S2 - S3: {float(main.margin.lo):.12f}")
    print(f"overall: {report.overall}")
    if args.json:
        Path(args.json).write_text(report.dumps())
    if args.table:
        Path(args.table).write_text(certify.table_csv(certify.emit_table(h0)))
    return {"holds": EXIT_OK, "fails": EXIT_FAILS}.get(report.overall, EXIT_UNDECIDED)


def _print_witness(w: bidisk.ShanksWitness) -> None:
    print(f"a = {_fmt(w.a)}")
    print(f"b = {_fmt(w.b)}")
    if w.has_zero:
        print(f"diagonal zero = {_fmt(w.diagonal_zero)}")
        print(f"distance to zero set (sup norm) = {_fmt(w.distances[0])}")
        print(f"distance to zero set (euclidean) = {_fmt(w.distances[1])}")
    else:
        print("diagonal zero = none (b = 0)")
    print(f"margin 2|b| - |a| = {_fmt(w.margin)}")
    print(f"zero inside bidisk: {'yes' if w.margin > 0 else 'no'}")


def cmd_witness(args) -> int:
    space = parse_space(args.space)
    if not _is_2d(space):
        raise UsageError("witness needs a bidisk space (h2d2 or dirichlet2:<alpha>)")
    try:
        if args.taylor is not None:
            if space != bidisk.HARDY and not (space.kind == "dirichlet2" and space.alpha == 0):
                raise UsageError("--taylor runs in h2d2 only")
            result = bidisk.taylor_counterexample(args.taylor, args.trunc)
            print(f"Taylor polynomial degree = {args.taylor}")
            _print_witness(result.witness)
            zf = result.zero_free
            print(f"zero-free on closed bidisk: {zf.verdict}")
            print(f"min |f_N| lower bound = {_fmt(zf.min_modulus_lower)} (torus grid {zf.grid}x{zf.grid})")
            if result.witness.margin <= 0:
                return EXIT_FAILS
            return EXIT_OK if zf.verdict == "certified-zero-free" else EXIT_UNDECIDED
        f = bidisk.builtin_shanks_f(args.trunc)
        w = bidisk.shanks_witness(f, space)
    except bidisk.AsymmetryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except ValueError as exc:
        if isinstance(exc, UsageError):
            raise
        print(f"error: {exc}; raise --trunc", file=sys.stderr)
        return EXIT_UNDECIDED
    _print_witness(w)
    return EXIT_OK if w.margin > 0 else EXIT_FAILS


def cmd_opa(args) -> int:
    space = parse_space(args.space)
    f = load_function(args.fn, space, args.trunc, args.embed)
    exact = True if args.exact else None
    try:
        if _is_2d(space):
            sol = bidisk.opa_2d(f, space, args.degree, exact=exact)
            labels = [f"c[{i},{j}]" for i, j in sol.basis]
        else:
            sol = univar.opa_1d(f, space, args.degree, exact=exact)
            labels = [f"c[{k}]" for k in range(sol.degree + 1)]
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    print(f"space: {space.label}")
    print(f"degree: {args.degree}")
    for label, c in zip(labels, sol.coefficients):
        print(f"{label} = {_fmt(c)}")
    print(f"residual^2 = {_fmt(sol.residual_sq)}")
    print(f"residual = {_fmt(sol.residual_norm)}")
    print(f"gram condition estimate = {_fmt(sol.gram_condition_estimate)}")
    if not _is_2d(space) and args.degree == 1 and sol.coefficients[1] != 0:
        root = -sol.coefficients[0] / sol.coefficients[1]
        print(f"root = {_fmt(root)}")
        print(f"root modulus = {_fmt(abs(root))}")
    if args.csv:
        if _is_2d(space):
            lines = ["i,j,value"] + [f"{i},{j},{_fmt(c)}" for (i, j), c in zip(sol.basis, sol.coefficients)]
        else:
            lines = ["index,value"] + [f"{k},{_fmt(c)}" for k, c in enumerate(sol.coefficients)]
        Path(args.csv).write_text("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_scan_alpha(args) -> int:
    try:
        scan = bidisk.scan_dirichlet_alpha(args.alpha_from, args.alpha_to, args.steps, args.trunc)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lines = ["alpha,a,b,margin"] + [f"{_fmt(r.alpha)},{_fmt(r.a)},{_fmt(r.b)},{_fmt(r.margin)}" for r in scan.rows]
    text = "\n".join(lines) + "\n"
    if args.csv:
        Path(args.csv).write_text(text)
    else:
        sys.stdout.write(text)
    out = sys.stdout if args.csv else sys.stderr
    if scan.threshold is not None:
        print(f"margin changes sign near alpha = {_fmt(scan.threshold)}", file=out)
    else:
        print("no sign change on this grid", file=out)
    return EXIT_OK


def cmd_jacobi(args) -> int:
    w = parse_space(args.weights)
    if _is_2d(w):
        raise UsageError("jacobi needs one-variable weights (h2, diag, bergman:<beta>, dirichlet:<alpha>)")
    if args.size < 1:
        raise UsageError("--size must be >= 1")
    bounds = univar.jacobi_truncated_norm(w, args.size)
    print(f"weights: {w.label}")
    print(f"lower (top eigenvalue of {args.size}x{args.size} truncation) = {_fmt(bounds.lower)}")
    print(f"upper (row-sum bound) = {'inf' if math.isinf(bounds.upper) else _fmt(bounds.upper)}")
    wit = univar.decay_witness(w, 100)
    print(f"decay witness (n, k) with w[k+n+1] < w[k+1]/4: {wit if wit else 'none within 100'}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="shanksopa", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser(
        "certify",
        help="exact/interval certificate of S1 > S2 + S3",
        description="Reproduces: the 26-row q_j / H_j table, sqrt(3/2) S1 = S2 + 3/2 S4 exactly, "
        "the tail constants (C = 17/26), and S1 - S2 - S3 > 0.819, hence |<F,zF>| > ||zF||^2 "
        "and |a| < 2|b| for the degree-1 OPA of (1 - (z1+z2)/sqrt 6)^(-5/2).",
    )
    c.add_argument("--json", metavar="PATH", help="write the JSON certificate")
    c.add_argument("--table", metavar="PATH", help="write the q_j / H_j table as CSV")
    c.add_argument("--direct", metavar="J", type=int, help="also certify the inequality from J coefficients")
    c.add_argument("--strict", action="store_true", help="table mismatches count towards the overall verdict")
    c.add_argument("--perturb-h0", default=None, help=argparse.SUPPRESS)
    c.set_defaults(func=cmd_certify)

    w = sub.add_parser(
        "witness",
        help="degree-1 bidisk OPA and its zero",
        description="Reproduces: the degree-1 H^2(D^2) OPA a + b(z1+z2) of (1 - (z1+z2)/sqrt 6)^(-5/2) "
        "satisfies |a| < 2|b|, so it vanishes inside the bidisk; with --taylor, the same holds for a "
        "Taylor polynomial certified zero-free on the closed bidisk.",
    )
    w.add_argument("--trunc", type=int, default=DEFAULT_TRUNC_2D, help="total-degree truncation (default 60)")
    w.add_argument("--taylor", type=int, metavar="M", help="use the degree-M Taylor polynomial")
    w.add_argument("--space", default="h2d2", help="h2d2 or dirichlet2:<alpha>")
    w.set_defaults(func=cmd_witness)

    o = sub.add_parser(
        "opa",
        help="optimal polynomial approximant to 1/f",
        description="Reproduces: p_n f is the orthogonal projection of 1 onto f * P_n; prints p_n, "
        "the residual ||1 - p_n f|| and a condition estimate of the Gram matrix.",
    )
    o.add_argument("--space", required=True, help="h2 | diag | bergman:<beta> | dirichlet:<alpha> | h2d2 | dirichlet2:<alpha>")
    o.add_argument("--fn", required=True, help="shanks | fbeta:<beta> | file:<path>")
    o.add_argument("--degree", type=int, required=True)
    o.add_argument("--trunc", type=int, help="truncation degree for builtin functions (default 200 / 60)")
    o.add_argument("--csv", metavar="PATH")
    o.add_argument("--embed", action="store_true", help="use F((z1+z2)/2) for a one-variable F in a bidisk space")
    o.add_argument("--exact", action="store_true", help="solve over the rationals (rational inputs only)")
    o.set_defaults(func=cmd_opa)

    s = sub.add_parser(
        "scan-alpha",
        help="margin 2|b| - |a| across Dirichlet-type spaces D_alpha(D^2)",
        description="Reproduces: for alpha > 0 small enough the degree-1 OPA in D_alpha(D^2) still "
        "vanishes inside the bidisk; reports where the margin changes sign on the grid.",
    )
    s.add_argument("--from", dest="alpha_from", type=float, required=True)
    s.add_argument("--to", dest="alpha_to", type=float, required=True)
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--trunc", type=int, default=DEFAULT_TRUNC_2D)
    s.add_argument("--csv", metavar="PATH")
    s.set_defaults(func=cmd_scan_alpha)

    j = sub.add_parser(
        "jacobi",
        help="bounds on the norm of the weighted Jacobi matrix",
        description="Reproduces: sup |<f,zf>|/||zf||^2 = ||J_w||/2; ||J_w|| = 2 for non-decreasing "
        "weights, and ||J_w|| > 2 when w[k+n+1] < w[k+1]/4 for some n, k.",
    )
    j.add_argument("--weights", required=True, help="h2 | diag | bergman:<beta> | dirichlet:<alpha>")
    j.add_argument("--size", type=int, required=True)
    j.set_defaults(func=cmd_jacobi)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
