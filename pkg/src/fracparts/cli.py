"""Command-line front end: compute, certify, audit, export.

Subcommands: exact, poly, certify, sandwich-audit, analytic, main-term,
hn-poly, closure, verify-cft, verify-hn, envelope-audit.  Output formats:
csv (header row), json-lines (one object per row, numbers as decimal
strings), human (aligned table).  Exit codes: 0 verified/success,
1 usage or input error, 2 counterexample, 3 indeterminate.

Exactness contract: rational inputs are "num/den" strings or integers;
floating-point literals are refused wherever an exact sign matters.
Bare numbers in the output are exact; enclosures always print both a
center and a radius.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

import mpmath

from .analytic import p_alpha_analytic
from .bounds import certify_logconcave, make_schedule, sandwich_audit
from .certificates import CertificateStore, rat_str
from .exact import exact_sequence, hn_critical_polynomial, partition_polynomial
from .polynomials import isolate_largest_real_root
from .verify import closure, envelope_audit, verify_cft, verify_hn_at

FORMAT_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COUNTEREXAMPLE = 2
EXIT_INDETERMINATE = 3

_OUTCOME_EXIT = {"verified": EXIT_OK, "counterexample": EXIT_COUNTEREXAMPLE,
                 "indeterminate": EXIT_INDETERMINATE}


class CliError(ValueError):
    pass


def parse_rational(text: str) -> Fraction:
    """Exact rational "num/den" or integer; floats are refused."""
    text = text.strip()
    if any(c in text for c in ".eE"):
        raise CliError(
            "floating-point literals are not accepted; write an exact "
            "rational as num/den (got %r)" % text)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError("not a rational number: %r (%s)" % (text, exc))


def dec_str(x, digits: int = 25) -> str:
    """Decimal rendering of an exact rational, scientific when large."""
    f = Fraction(x)
    if f.denominator == 1 and abs(f.numerator) < 10 ** digits:
        return str(f.numerator)
    with mpmath.workprec(int(digits * 3.33) + 30):
        v = mpmath.mpf(f.numerator) / f.denominator
        return mpmath.nstr(v, digits)


# ---------------------------------------------------------------------------
# output


class Writer:
    def __init__(self, fmt: str, columns: list[str], meta: dict,
                 out=None):
        self.fmt = fmt
        self.columns = columns
        self.out = out if out is not None else sys.stdout
        self.meta = dict(meta, format_version=FORMAT_VERSION)
        self.rows = []
        if fmt == "csv":
            self.out.write("# fracparts v%d %s\n" % (
                FORMAT_VERSION, json.dumps(self.meta, sort_keys=True)))
            self._csv = csv.writer(self.out)
            self._csv.writerow(columns)
        elif fmt == "json-lines":
            self.out.write(json.dumps({"meta": self.meta}, sort_keys=True)
                           + "\n")
        elif fmt != "human":
            raise CliError("unknown format: %r" % fmt)

    def row(self, values: dict) -> None:
        cells = [values.get(c, "") for c in self.columns]
        if self.fmt == "csv":
            self._csv.writerow([str(c) for c in cells])
        elif self.fmt == "json-lines":
            obj = {c: (v if isinstance(v, (int, bool)) or v is None
                       else str(v))
                   for c, v in zip(self.columns, cells)}
            self.out.write(json.dumps(obj, sort_keys=True) + "\n")
        else:
            self.rows.append([str(c) for c in cells])

    def close(self) -> None:
        if self.fmt != "human":
            return
        widths = [len(c) for c in self.columns]
        for r in self.rows:
            widths = [max(w, len(c)) for w, c in zip(widths, r)]
        line = "  ".join(c.ljust(w) for c, w in zip(self.columns, widths))
        self.out.write("fracparts v%d\n%s\n%s\n" % (
            FORMAT_VERSION, line, "-" * len(line)))
        for r in self.rows:
            self.out.write("  ".join(c.ljust(w)
                                     for c, w in zip(r, widths)) + "\n")


# ---------------------------------------------------------------------------
# subcommands


def _cmd_exact(args, out) -> int:
    alpha = parse_rational(args.alpha)
    if alpha <= 0:
        raise CliError("alpha must be positive")
    seq = exact_sequence(alpha, args.n_max)
    w = Writer(args.format, ["n", "value"],
               {"cmd": "exact", "alpha": rat_str(alpha)}, out)
    for n, v in enumerate(seq.values):
        w.row({"n": n, "value": rat_str(v) if isinstance(v, Fraction)
               and v.denominator != 1 else int(v)})
    w.close()
    return EXIT_OK


def _cmd_poly(args, out) -> int:
    p = partition_polynomial(args.n)
    w = Writer(args.format, ["power", "coefficient"],
               {"cmd": "poly", "n": args.n}, out)
    for i, c in enumerate(p.coefficients):
        w.row({"power": i, "coefficient": rat_str(c)})
    w.close()
    return EXIT_OK


def _cmd_certify(args, out) -> int:
    alpha = parse_rational(args.alpha)
    cert = certify_logconcave(
        alpha, _schedule_arg(args.schedule), args.n_from, args.n_to,
        args.precision, checkpoint_path=args.checkpoint,
        checkpoint_every=args.checkpoint_every)
    if args.cert_dir:
        digest = CertificateStore(args.cert_dir).save(cert)
    else:
        digest = cert.digest()
    w = Writer(args.format,
               ["statement", "alpha", "n_from", "n_to", "outcome",
                "witness", "digest"],
               {"cmd": "certify"}, out)
    w.row({"statement": cert.statement, "alpha": cert.alpha,
           "n_from": cert.n_from, "n_to": cert.n_to,
           "outcome": cert.outcome, "witness": cert.witness,
           "digest": digest})
    w.close()
    return _OUTCOME_EXIT[cert.outcome]


def _cmd_sandwich_audit(args, out) -> int:
    alpha = parse_rational(args.alpha)
    rep = sandwich_audit(alpha, _schedule_arg(args.schedule),
                         args.n_audit, args.precision)
    w = Writer(args.format,
               ["alpha", "n_audit", "violations", "worst_gap",
                "worst_gap_n"],
               {"cmd": "sandwich-audit"}, out)
    w.row({"alpha": rat_str(alpha), "n_audit": rep["n_audit"],
           "violations": rep["violations"],
           "worst_gap": dec_str(rep["worst_gap"]),
           "worst_gap_n": rep["worst_gap_n"]})
    w.close()
    return EXIT_OK


def _cmd_analytic(args, out) -> int:
    alpha = parse_rational(args.alpha)
    res = p_alpha_analytic(alpha, args.n, mode=args.mode,
                           prec=args.precision, k_max=args.k_max)
    w = Writer(args.format,
               ["alpha", "n", "center", "radius", "certified", "k_max"],
               {"cmd": "analytic", "mode": args.mode}, out)
    w.row({"alpha": rat_str(alpha), "n": args.n,
           "center": dec_str(res.ball.center),
           "radius": dec_str(res.ball.radius),
           "certified": res.certified, "k_max": res.k_max})
    w.close()
    return EXIT_OK


def _cmd_main_term(args, out) -> int:
    alpha = parse_rational(args.alpha)
    rows = envelope_audit(alpha, [args.ell], [args.n - args.ell])
    r = rows[0]
    w = Writer(args.format,
               ["n", "ell", "delta", "m_center", "m_radius", "ratio_lo",
                "ratio_hi", "in_envelope", "hypotheses_ok", "failures"],
               {"cmd": "main-term", "alpha": rat_str(alpha)}, out)
    if r["ratio"] is None:
        w.row({"n": r["n"], "ell": r["ell"], "in_envelope": False,
               "hypotheses_ok": False, "failures": "; ".join(r["failures"])})
        w.close()
        return EXIT_USAGE
    m_c = (r["m_lo"] + r["m_hi"]) / 2
    m_r = (r["m_hi"] - r["m_lo"]) / 2
    w.row({"n": r["n"], "ell": r["ell"], "delta": dec_str(r["delta"]),
           "m_center": dec_str(m_c), "m_radius": dec_str(m_r),
           "ratio_lo": dec_str(r["ratio"][0]),
           "ratio_hi": dec_str(r["ratio"][1]),
           "in_envelope": r["in_envelope"],
           "hypotheses_ok": r["hypotheses_ok"],
           "failures": "; ".join(r["failures"])})
    w.close()
    return EXIT_OK if r["in_envelope"] or not r["hypotheses_ok"] \
        else EXIT_COUNTEREXAMPLE


def _cmd_hn_poly(args, out) -> int:
    p = hn_critical_polynomial(args.n, args.ell)
    w = Writer(args.format,
               ["quantity", "value"],
               {"cmd": "hn-poly", "n": args.n, "ell": args.ell}, out)
    w.row({"quantity": "polynomial", "value": str(p)})
    if not p.is_zero():
        prim = p.primitive_part()
        w.row({"quantity": "primitive_part", "value": str(prim)})
        try:
            lo, hi = isolate_largest_real_root(prim, Fraction(1, 10 ** 6))
            w.row({"quantity": "largest_root_lo", "value": rat_str(lo)})
            w.row({"quantity": "largest_root_hi", "value": rat_str(hi)})
            w.row({"quantity": "largest_root_approx",
                   "value": dec_str((lo + hi) / 2, 12)})
        except Exception as exc:
            w.row({"quantity": "largest_root", "value": "none (%s)" % exc})
    w.close()
    return EXIT_OK


def _cmd_closure(args, out) -> int:
    base = [parse_rational(b) for b in args.base.split(",") if b.strip()]
    cs = closure(base, args.horizon)
    w = Writer(args.format, ["value"],
               {"cmd": "closure", "base": [rat_str(b) for b in base],
                "horizon": args.horizon}, out)
    for v in sorted(cs.covered):
        w.row({"value": rat_str(v) if v.denominator != 1 else int(v)})
    w.close()
    return EXIT_OK


def _certificate_report(cert, args, out, digest) -> int:
    w = Writer(args.format,
               ["statement", "alpha", "method", "n_to", "outcome",
                "witness", "exceptions", "digest", "notes"],
               {"cmd": "verify"}, out)
    w.row({"statement": cert.statement, "alpha": cert.alpha,
           "method": cert.method, "n_to": cert.n_to,
           "outcome": cert.outcome, "witness": cert.witness,
           "exceptions": json.dumps([list(e) for e in cert.exceptions]),
           "digest": digest, "notes": cert.notes})
    w.close()
    return _OUTCOME_EXIT[cert.outcome]


def _cmd_verify_cft(args, out) -> int:
    store = CertificateStore(args.cert_dir) if args.cert_dir else None
    cert = verify_cft(args.k, n_cap=args.n_cap, store=store,
                      precision_bits=args.precision,
                      checkpoint_path=args.checkpoint)
    return _certificate_report(cert, args, out, cert.digest())


def _cmd_verify_hn(args, out) -> int:
    alpha = parse_rational(args.alpha)
    store = CertificateStore(args.cert_dir) if args.cert_dir else None
    cert = verify_hn_at(alpha, args.n_cap, store=store)
    return _certificate_report(cert, args, out, cert.digest())


def _cmd_envelope_audit(args, out) -> int:
    alpha = parse_rational(args.alpha)
    ells = [int(x) for x in args.ell_list.split(",") if x.strip()]
    offs = [int(x) for x in args.offsets.split(",") if x.strip()]
    rows = envelope_audit(alpha, ells, offs)
    w = Writer(args.format,
               ["n", "ell", "ratio_lo", "ratio_hi", "in_envelope",
                "hypotheses_ok", "failures"],
               {"cmd": "envelope-audit", "alpha": rat_str(alpha)}, out)
    bad = False
    for r in rows:
        ok_row = {"n": r["n"], "ell": r["ell"],
                  "in_envelope": r["in_envelope"],
                  "hypotheses_ok": r["hypotheses_ok"],
                  "failures": "; ".join(r["failures"])}
        if r["ratio"] is not None:
            ok_row["ratio_lo"] = dec_str(r["ratio"][0])
            ok_row["ratio_hi"] = dec_str(r["ratio"][1])
        w.row(ok_row)
        if r["hypotheses_ok"] and not r["in_envelope"]:
            bad = True
    w.close()
    return EXIT_COUNTEREXAMPLE if bad else EXIT_OK


def _schedule_arg(spec: str):
    if spec in ("full", "d4", "d5") or ";" in spec:
        return make_schedule(spec)
    raise CliError("schedule must be full, d4, d5, or "
                   "'power;c=NUM/DEN;delta=NUM/DEN;breakpoint=N'")


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("error: %s\n" % message)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fracparts",
                description="certified fractional partition numbers")
    p.add_argument("--format", choices=("csv", "json-lines", "human"),
                   default="human")
    p.add_argument("--threads", type=int, default=1,
                   help="worker cap (computations are single-pipeline; "
                        "values > 1 are accepted and recorded)")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("exact", help="exact values p_alpha(0..n_max)")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--n-max", type=int, required=True)
    sp.set_defaults(func=_cmd_exact)

    sp = sub.add_parser("poly", help="p_alpha(n) as a polynomial in alpha")
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=_cmd_poly)

    sp = sub.add_parser("certify", help="certify log-concavity on a range")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--schedule", default="full")
    sp.add_argument("--n-from", type=int, default=1)
    sp.add_argument("--n-to", type=int, required=True)
    sp.add_argument("--precision", type=int, default=256)
    sp.add_argument("--checkpoint")
    sp.add_argument("--checkpoint-every", type=int, default=100_000)
    sp.add_argument("--cert-dir")
    sp.set_defaults(func=_cmd_certify)

    sp = sub.add_parser("sandwich-audit",
                        help="check lower <= exact <= upper on a range")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--schedule", default="full")
    sp.add_argument("--n-audit", type=int, required=True)
    sp.add_argument("--precision", type=int, default=256)
    sp.set_defaults(func=_cmd_sandwich_audit)

    sp = sub.add_parser("analytic", help="enclosure from the exact formula")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--mode", choices=("rigorous", "heuristic"),
                    default="rigorous")
    sp.add_argument("--k-max", type=int, default=1)
    sp.add_argument("--precision", type=int)
    sp.set_defaults(func=_cmd_analytic)

    sp = sub.add_parser("main-term",
                        help="main-term enclosure and envelope check")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--ell", type=int, required=True)
    sp.set_defaults(func=_cmd_main_term)

    sp = sub.add_parser("hn-poly",
                        help="critical defect polynomial and largest root")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--ell", type=int, required=True)
    sp.set_defaults(func=_cmd_hn_poly)

    sp = sub.add_parser("closure", help="semigroup closure of a base set")
    sp.add_argument("--base", required=True)
    sp.add_argument("--horizon", type=int, required=True)
    sp.set_defaults(func=_cmd_closure)

    sp = sub.add_parser("verify-cft",
                        help="verify the integer-parameter inequality")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n-cap", type=int)
    sp.add_argument("--precision", type=int, default=256)
    sp.add_argument("--cert-dir")
    sp.add_argument("--checkpoint")
    sp.set_defaults(func=_cmd_verify_cft)

    sp = sub.add_parser("verify-hn",
                        help="verify the real-parameter inequality")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--n-cap", type=int, required=True)
    sp.add_argument("--cert-dir")
    sp.set_defaults(func=_cmd_verify_hn)

    sp = sub.add_parser("envelope-audit",
                        help="main-term envelope over a grid")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--ell-list", required=True)
    sp.add_argument("--offsets", required=True)
    sp.set_defaults(func=_cmd_envelope_audit)

    return p


def main(argv=None, out=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    if args.threads < 1:
        sys.stderr.write("error: --threads must be >= 1\n")
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except (CliError, ValueError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
