from __future__ import annotations

import io
from contextlib import redirect_stderr, redirect_stdout

from halfflat import cli, corpus
from halfflat.scalars import QuadExt


def _rational(inst) -> bool:
    vals = list(inst.omega.terms.values()) + list(inst.rho.terms.values())
    return not any(isinstance(c, QuadExt) for c in vals)


def test_exit_codes_match_verdicts_on_whole_corpus(tmp_path):
    """Round-trip every rational corpus row through the file format and the
    verify subcommand; exit codes must match the report verdicts."""
    n = 0
    for inst in corpus.iter_instances() + corpus.iter_instances(table=0):
        if not _rational(inst):
            continue  # the exchange format is rationals-only by design
        text = cli.emit(inst.algebra, inst.omega, inst.rho)
        p = tmp_path / f"row{n}.alg"
        p.write_text(text)
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = cli.main(["verify", str(p)])
        assert code == cli.EXIT_POSITIVE, (inst.label, out.getvalue(), err.getvalue())
        assert "half_flat: true" in out.getvalue()
        n += 1
    assert n >= 50
