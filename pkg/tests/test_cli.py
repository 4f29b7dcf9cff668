"""Tests for the command-line interface."""

import csv
import io
import json
from fractions import Fraction

import pytest

from fracparts.cli import (EXIT_COUNTEREXAMPLE, EXIT_INDETERMINATE, EXIT_OK,
                           EXIT_USAGE, dec_str, main, parse_rational)


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def csv_rows(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.reader(lines))


def jl_rows(text):
    objs = [json.loads(ln) for ln in text.splitlines()]
    assert "meta" in objs[0]
    assert objs[0]["meta"]["format_version"] == 1
    return objs[1:]


class TestParsing:
    def test_rational_forms(self):
        assert parse_rational("3") == 3
        assert parse_rational("5/2") == Fraction(5, 2)
        assert parse_rational("203/100") == Fraction(203, 100)

    def test_floats_refused(self):
        for bad in ("2.5", "1e3", "2.03E1"):
            with pytest.raises(ValueError):
                parse_rational(bad)

    def test_dec_str_small_integer_is_exact(self):
        assert dec_str(Fraction(65)) == "65"

    def test_bad_threads(self):
        code, _ = run("--threads", "0", "exact", "--alpha", "2",
                      "--n-max", "3")
        assert code == EXIT_USAGE


class TestExact:
    def test_integer_rows_csv(self):
        code, out = run("--format", "csv", "exact", "--alpha", "2",
                        "--n-max", "6")
        assert code == EXIT_OK
        rows = csv_rows(out)
        assert rows[0] == ["n", "value"]
        assert rows[-1] == ["6", "65"]

    def test_rational_value(self):
        code, out = run("--format", "csv", "exact", "--alpha", "5/2",
                        "--n-max", "2")
        assert code == EXIT_OK
        assert csv_rows(out)[-1] == ["2", "55/8"]

    def test_zero_alpha_rejected(self):
        code, _ = run("exact", "--alpha", "0", "--n-max", "3")
        assert code == EXIT_USAGE

    def test_float_alpha_rejected(self):
        code, _ = run("exact", "--alpha", "2.5", "--n-max", "3")
        assert code == EXIT_USAGE

    def test_json_lines_roundtrip(self):
        code, out = run("--format", "json-lines", "exact", "--alpha", "2",
                        "--n-max", "5")
        rows = jl_rows(out)
        assert [int(r["value"]) for r in rows] == [1, 2, 5, 10, 20, 36]


class TestPoly:
    def test_degree_two(self):
        code, out = run("--format", "csv", "poly", "--n", "2")
        assert code == EXIT_OK
        rows = csv_rows(out)[1:]
        assert rows == [["0", "0/1"], ["1", "3/2"], ["2", "1/2"]]


class TestCertify:
    def test_verified_exit_zero(self):
        code, out = run("--format", "json-lines", "certify", "--alpha", "3",
                        "--schedule", "full", "--n-to", "500")
        assert code == EXIT_OK
        assert jl_rows(out)[0]["outcome"] == "verified"

    def test_counterexample_exit_two(self):
        code, out = run("--format", "json-lines", "certify", "--alpha", "2",
                        "--schedule", "full", "--n-to", "100")
        assert code == EXIT_COUNTEREXAMPLE
        row = jl_rows(out)[0]
        assert row["outcome"] == "counterexample"
        # both n=1 and n=5 genuinely violate; the smallest is reported
        assert int(row["witness"]) in (1, 5)

    def test_indeterminate_exit_three(self):
        code, out = run("--format", "json-lines", "certify", "--alpha", "4",
                        "--schedule", "power;c=1/1;delta=0/1;breakpoint=0",
                        "--n-to", "60")
        assert code == EXIT_INDETERMINATE

    def test_cert_dir_written(self, tmp_path):
        code, out = run("--format", "json-lines", "certify", "--alpha", "3",
                        "--schedule", "full", "--n-to", "200",
                        "--cert-dir", str(tmp_path))
        digest = jl_rows(out)[0]["digest"]
        assert (tmp_path / (digest + ".json")).exists()


class TestAnalytic:
    def test_rigorous_row(self):
        code, out = run("--format", "json-lines", "analytic", "--alpha", "2",
                        "--n", "30")
        assert code == EXIT_OK
        row = jl_rows(out)[0]
        assert row["certified"] is True
        assert float(row["radius"]) > 0

    def test_heuristic_row(self):
        code, out = run("--format", "json-lines", "analytic", "--alpha", "2",
                        "--n", "30", "--mode", "heuristic", "--k-max", "3")
        row = jl_rows(out)[0]
        assert row["certified"] is False


class TestMainTerm:
    def test_envelope_true(self):
        code, out = run("--format", "json-lines", "main-term", "--alpha", "2",
                        "--ell", "4200", "--n", "4300")
        assert code == EXIT_OK
        row = jl_rows(out)[0]
        assert row["in_envelope"] is True
        assert 0.9 < float(row["ratio_lo"]) <= float(row["ratio_hi"]) < 1.1

    def test_adjacent_rejected(self):
        code, _ = run("main-term", "--alpha", "2", "--ell", "10", "--n", "11")
        assert code == EXIT_USAGE


class TestHnPoly:
    def test_critical_pair_root_interval(self):
        code, out = run("--format", "json-lines", "hn-poly", "--n", "6",
                        "--ell", "4")
        assert code == EXIT_OK
        rows = {r["quantity"]: r["value"] for r in jl_rows(out)}
        lo = Fraction(rows["largest_root_lo"])
        hi = Fraction(rows["largest_root_hi"])
        assert Fraction(205, 100) < lo <= hi < Fraction(206, 100)

    def test_trivial_pair(self):
        code, out = run("--format", "json-lines", "hn-poly", "--n", "5",
                        "--ell", "4")
        assert code == EXIT_OK
        rows = jl_rows(out)
        assert len(rows) == 1  # zero polynomial, no root rows


class TestClosureCmd:
    def test_range(self):
        code, out = run("--format", "csv", "closure", "--base", "3,4,5",
                        "--horizon", "10")
        assert code == EXIT_OK
        assert [r[0] for r in csv_rows(out)[1:]] == [str(v) for v in
                                                     range(3, 11)]


class TestVerifyCommands:
    def test_verify_cft_k2(self):
        code, out = run("--format", "json-lines", "verify-cft", "--k", "2",
                        "--n-cap", "200")
        assert code == EXIT_OK
        row = jl_rows(out)[0]
        assert row["outcome"] == "verified"
        assert "[6, 4]" in row["exceptions"]

    def test_verify_cft_k1_rejected(self):
        code, _ = run("verify-cft", "--k", "1")
        assert code == EXIT_USAGE

    def test_verify_hn(self):
        code, out = run("--format", "json-lines", "verify-hn", "--alpha",
                        "203/100", "--n-cap", "100")
        assert code == EXIT_OK
        assert "[6, 4]" in jl_rows(out)[0]["exceptions"]

    def test_envelope_audit_cmd(self):
        code, out = run("--format", "csv", "envelope-audit", "--alpha", "2",
                        "--ell-list", "4200", "--offsets", "2,3")
        assert code == EXIT_OK
        rows = csv_rows(out)[1:]
        assert all(r[4] == "True" for r in rows)


class TestFormats:
    def test_human_has_version_banner(self):
        code, out = run("exact", "--alpha", "2", "--n-max", "2")
        assert out.startswith("fracparts v1")

    def test_csv_comment_carries_meta(self):
        _, out = run("--format", "csv", "exact", "--alpha", "2",
                     "--n-max", "2")
        first = out.splitlines()[0]
        meta = json.loads(first.split(" ", 3)[3])
        assert meta["format_version"] == 1 and meta["cmd"] == "exact"

    def test_csv_roundtrip_lossless(self):
        _, out = run("--format", "csv", "exact", "--alpha", "5/2",
                     "--n-max", "4")
        rows = csv_rows(out)
        header, data = rows[0], rows[1:]
        from fracparts.exact import exact_sequence
        seq = exact_sequence(Fraction(5, 2), 4)
        for n_str, val_str in data:
            assert Fraction(val_str) == seq.values[int(n_str)]
