from __future__ import annotations

import io
from contextlib import redirect_stderr, redirect_stdout

import pytest

from halfflat import cli, corpus
from halfflat.errors import ParseError
from halfflat.exterior import form
from halfflat.liealg import catalog, direct_sum


def run_cli(argv, expect=None):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli.main(argv)
    if expect is not None:
        assert code == expect, (code, out.getvalue(), err.getvalue())
    return code, out.getvalue(), err.getvalue()


SU2_TEXT = """# su(2) standard basis
dim 3
basis e1 e2 e3
d e1 = 1 e2^e3
d e2 = -1 e1^e3
d e3 = 1 e1^e2
"""


def test_parse_su2_round_trip():
    L, omega, rho = cli.parse(SU2_TEXT)
    assert omega is None and rho is None
    assert L.diffs == catalog("su2").diffs
    # canonical emit also parses back to the same algebra
    text = cli.emit(L)
    L2, _, _ = cli.parse(text)
    assert L2.diffs == L.diffs
    assert cli.emit(L2) == text


def test_parse_sign_normalization():
    a = cli.parse("dim 3\nbasis e1 e2 e3\nd e2 = 1 e2^e1\n")[0]
    b = cli.parse("dim 3\nbasis e1 e2 e3\nd e2 = -1 e1^e2\n")[0]
    assert a.diffs == b.diffs
    assert a.diffs == catalog("r2R").diffs


def test_parse_errors_carry_position():
    with pytest.raises(ParseError):
        cli.parse("dim 5\n")
    with pytest.raises(ParseError):
        cli.parse("dim 3\nbasis e1 e2\n")
    with pytest.raises(ParseError):
        cli.parse("dim 3\nbasis e1 e2 e3\nd e9 = 1 e1^e2\n")
    with pytest.raises(ParseError):
        cli.parse("dim 3\nbasis e1 e2 e3\nnonsense\n")
    try:
        cli.parse("dim 3\nbasis e1 e2 e3\nd e2 = x e1^e2\n")
    except ParseError as exc:
        assert exc.line == 3


def test_parse_rejects_jacobi_violation(tmp_path):
    bad = "dim 3\nbasis e1 e2 e3\nd e1 = 1 e2^e3\nd e2 = 1 e1^e2\n"
    with pytest.raises(Exception):
        cli.parse(bad)
    p = tmp_path / "bad.alg"
    p.write_text(bad)
    code, _, err = run_cli(["verify", str(p)])
    assert code == cli.EXIT_INPUT_ERROR
    assert "structure constants" in err or "parse error" in err


def test_degree_mismatch_distinct_error(tmp_path):
    text = "dim 6\nbasis e1 e2 e3 f1 f2 f3\nform omega = 1 e1\n"
    p = tmp_path / "deg.alg"
    p.write_text(text)
    code, _, err = run_cli(["verify", str(p)])
    assert code == cli.EXIT_INPUT_ERROR
    assert "degree mismatch" in err


def test_cli_verify_positive(tmp_path):
    inst = corpus.row_t4_e2()
    p = tmp_path / "t4.alg"
    p.write_text(cli.emit(inst.algebra, inst.omega, inst.rho))
    code, out, _ = run_cli(["verify", str(p)], expect=cli.EXIT_POSITIVE)
    assert "half_flat: true" in out
    assert "type: SU(3)" in out


def test_cli_verify_negative(tmp_path):
    L = direct_sum(catalog("su2"), catalog("su2"))
    omega = form(2, [("e1f1", 1), ("e2f2", 1), ("e3f3", 1)])
    rho = form(3, [("e123", 1), ("e1f23", -1)])
    p = tmp_path / "neg.alg"
    p.write_text(cli.emit(L, omega, rho))
    code, out, _ = run_cli(["verify", str(p)], expect=cli.EXIT_NEGATIVE)
    assert "half_flat: false" in out


def test_cli_classify3d(tmp_path):
    p = tmp_path / "e11.alg"
    _, out, _ = run_cli(["catalog", "e11"], expect=0)
    p.write_text(out)
    code, out, _ = run_cli(["classify3d", str(p)], expect=cli.EXIT_POSITIVE)
    assert "class: e(1,1)" in out
    assert "bianchi: VI_0" in out


def test_cli_classify3d_with_mu(tmp_path):
    _, out, _ = run_cli(["catalog", "r3mu", "--mu", "1/2"], expect=0)
    p = tmp_path / "r3mu.alg"
    p.write_text(out)
    code, out, _ = run_cli(["classify3d", str(p)], expect=cli.EXIT_POSITIVE)
    assert "D: 8/9" in out
    assert "mu: 1/2" in out


def test_cli_obstruct_negative_verdict(tmp_path):
    _, out, _ = run_cli(["catalog", "r2R", "--sum", "r3"], expect=0)
    p = tmp_path / "obs.alg"
    p.write_text(out)
    code, out, _ = run_cli(["obstruct", str(p)], expect=cli.EXIT_NEGATIVE)
    assert "verdict: NoHalfFlatSU3" in out


def test_cli_obstruct_refined(tmp_path):
    _, out, _ = run_cli(["catalog", "h3", "--sum", "r2R"], expect=0)
    p = tmp_path / "h3r2R.alg"
    p.write_text(out)
    code, out, _ = run_cli(["obstruct", str(p)], expect=cli.EXIT_NEGATIVE)
    assert "NoHalfFlatSU3" in out
    assert "refined" in out


def test_cli_obstruct_inconclusive(tmp_path):
    _, out, _ = run_cli(["catalog", "e2", "--sum", "r2R"], expect=0)
    p = tmp_path / "adm.alg"
    p.write_text(out)
    code, out, _ = run_cli(["obstruct", str(p)], expect=cli.EXIT_POSITIVE)
    assert "Inconclusive" in out


def test_cli_appendix_table4():
    code, out, _ = run_cli(["appendix", "--table", "4"], expect=cli.EXIT_POSITIVE)
    assert "T4.1[e2+r2R]: ok" in out
    assert "failures: 0" in out


def test_cli_appendix_mu_filter():
    code, out, _ = run_cli(
        ["appendix", "--table", "5", "--mu", "1/2"], expect=cli.EXIT_POSITIVE
    )
    assert "r3mu(1/2)" in out
    assert "failures: 0" in out


def test_cli_search_exit_codes(tmp_path):
    _, out, _ = run_cli(["catalog", "su2", "--sum", "su2"], expect=0)
    p = tmp_path / "s.alg"
    p.write_text(out)
    code, out, _ = run_cli(
        ["search", str(p), "--target", "su3", "--restarts", "100", "--seed", "3"],
        expect=cli.EXIT_POSITIVE,
    )
    assert "found: true" in out
    _, out2, _ = run_cli(["catalog", "r2R", "--sum", "r3"], expect=0)
    p2 = tmp_path / "n.alg"
    p2.write_text(out2)
    code, out2, _ = run_cli(
        ["search", str(p2), "--target", "su3", "--restarts", "5", "--seed", "0"],
        expect=cli.EXIT_NEGATIVE,
    )
    assert "found: false" in out2


def test_cli_missing_file():
    code, _, err = run_cli(["verify", "/nonexistent/file.alg"])
    assert code == cli.EXIT_INPUT_ERROR
