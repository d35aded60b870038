"""Command-line front end and the text exchange format for algebras and forms.

The file grammar is line oriented; rationals only, `#` starts a comment:

    dim 6
    basis e1 e2 e3 f1 f2 f3
    d e3 = 1 e1^e2
    d f2 = 1 f2^f1
    form omega = 1 e1^f1 + 1 e2^f2 + 1 e3^f3
    form rho = 1 e1^e2^e3 + -1 f1^f2^f3
    param mu = 1/2

Exit codes: 0 positive verdict or success, 1 negative verdict (not
half-flat / obstructed / nothing found), 2 input error.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction

from . import corpus, obstruct, search
from .classify3d import classify
from .errors import HalfFlatError, JacobiError, ParseError
from .exterior import DIM, KForm
from .liealg import CATALOG_INFO, LieAlgebra, catalog, direct_sum
from .verify import verify

EXIT_POSITIVE = 0
EXIT_NEGATIVE = 1
EXIT_INPUT_ERROR = 2


# -- parsing --------------------------------------------------------------------

_TOKEN_RAT = re.compile(r"[+-]?\d+(/\d+)?$")


def parse(text: str) -> tuple[LieAlgebra, KForm | None, KForm | None]:
    """Parse the structure-file format into an algebra and optional forms."""
    dim: int | None = None
    basis: list[str] | None = None
    diffs: dict[int, list[tuple[Fraction, list[int]]]] = {}
    forms: dict[str, list[tuple[Fraction, list[int]]]] = {}
    params: dict[str, Fraction] = {}

    def index_of(name: str, line_no: int, col: int) -> int:
        if basis is None:
            raise ParseError("basis line must precede this line", line_no, col)
        try:
            return basis.index(name) + 1
        except ValueError:
            raise ParseError(f"unknown basis name {name!r}", line_no, col)

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0]
        if head == "dim":
            if len(tokens) != 2 or tokens[1] not in ("3", "6"):
                raise ParseError("expected 'dim 3' or 'dim 6'", line_no, len(head) + 1)
            dim = int(tokens[1])
        elif head == "basis":
            if dim is None:
                raise ParseError("dim line must precede basis", line_no, 0)
            if len(tokens) != dim + 1:
                raise ParseError(f"basis needs exactly {dim} names", line_no, len(head) + 1)
            basis = tokens[1:]
            if len(set(basis)) != dim:
                raise ParseError("duplicate basis name", line_no, len(head) + 1)
        elif head == "d":
            if len(tokens) < 4 or tokens[2] != "=":
                raise ParseError("expected 'd <name> = <terms>'", line_no, 1)
            target = index_of(tokens[1], line_no, 2)
            diffs[target] = _parse_terms(tokens[3:], index_of, line_no, expect_degree=2)
        elif head == "form":
            if len(tokens) < 4 or tokens[1] not in ("omega", "rho") or tokens[2] != "=":
                raise ParseError("expected 'form omega|rho = <terms>'", line_no, 1)
            degree = 2 if tokens[1] == "omega" else 3
            forms[tokens[1]] = _parse_terms(tokens[3:], index_of, line_no, expect_degree=degree)
        elif head == "param":
            if len(tokens) != 4 or tokens[2] != "=":
                raise ParseError("expected 'param <name> = <rational>'", line_no, 1)
            params[tokens[1]] = _parse_rational(tokens[3], line_no)
        else:
            raise ParseError(f"unknown directive {head!r}", line_no, 0)

    if dim is None or basis is None:
        raise ParseError("file must declare dim and basis", 0, 0)
    diff_forms = []
    for k in range(1, dim + 1):
        diff_forms.append(_terms_to_form(diffs.get(k, []), 2))
    L = LieAlgebra(dim, diff_forms, name="file", params=params)
    omega = _terms_to_form(forms["omega"], 2) if "omega" in forms else None
    rho = _terms_to_form(forms["rho"], 3) if "rho" in forms else None
    return L, omega, rho


def _parse_rational(tok: str, line_no: int) -> Fraction:
    if not _TOKEN_RAT.match(tok):
        raise ParseError(f"bad rational {tok!r}", line_no, 0)
    return Fraction(tok)


def _parse_terms(tokens: list[str], index_of, line_no: int, expect_degree: int):
    """Terms are 'coeff name^name^...' joined by '+'/'-' tokens."""
    out: list[tuple[Fraction, list[int]]] = []
    sign = Fraction(1)
    i = 0
    if tokens and tokens[0] == "0" and len(tokens) == 1:
        return out
    while i < len(tokens):
        tok = tokens[i]
        if tok == "+":
            sign = Fraction(1)
            i += 1
            continue
        if tok == "-":
            sign = Fraction(-1)
            i += 1
            continue
        if not _TOKEN_RAT.match(tok):
            raise ParseError(f"expected a coefficient, got {tok!r}", line_no, i)
        coeff = sign * Fraction(tok)
        i += 1
        if i >= len(tokens):
            raise ParseError("coefficient without a monomial", line_no, i)
        names = tokens[i].split("^")
        idx = [index_of(n, line_no, i) for n in names]
        if len(idx) != expect_degree:
            raise HalfFlatError(
                f"degree mismatch at line {line_no}: monomial of degree "
                f"{len(idx)}, expected {expect_degree}"
            )
        out.append((coeff, idx))
        i += 1
        sign = Fraction(1)
    return out


def _terms_to_form(terms, degree: int) -> KForm:
    acc: dict[int, Fraction] = {}
    for coeff, idx in terms:
        if len(set(idx)) != len(idx):
            continue  # repeated factor wedges to zero
        sign = 1
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                if idx[a] > idx[b]:
                    sign = -sign
        mask = 0
        for k in idx:
            mask |= 1 << (k - 1)
        acc[mask] = acc.get(mask, Fraction(0)) + sign * coeff
    return KForm(degree, acc)


def emit(L: LieAlgebra, omega: KForm | None = None, rho: KForm | None = None) -> str:
    """Canonical serialization; parse(emit(...)) is the identity."""
    names = ["e1", "e2", "e3", "f1", "f2", "f3"][: L.dim]
    lines = [f"dim {L.dim}", "basis " + " ".join(names)]
    for k in range(1, L.dim + 1):
        dk = L.diffs[k - 1]
        if dk.is_zero():
            continue
        lines.append(f"d {names[k - 1]} = " + _emit_terms(dk, names))
    if omega is not None:
        lines.append("form omega = " + _emit_terms(omega, names))
    if rho is not None:
        lines.append("form rho = " + _emit_terms(rho, names))
    for key in sorted(L.params):
        lines.append(f"param {key} = {L.params[key]}")
    return "\n".join(lines) + "\n"


def _emit_terms(form: KForm, names: list[str]) -> str:
    bits = []
    for mask in sorted(form.terms):
        coeff = form.terms[mask]
        mono = "^".join(names[i] for i in range(DIM) if mask >> i & 1)
        if not bits:
            bits.append(f"{coeff} {mono}")
        elif coeff < 0:
            bits.append(f"- {-coeff} {mono}")
        else:
            bits.append(f"+ {coeff} {mono}")
    return " ".join(bits) if bits else "0"


# -- subcommands -----------------------------------------------------------------


def _cmd_verify(args) -> int:
    L, omega, rho = _load(args.file)
    if L.dim != 6:
        raise ParseError("verify needs a six-dimensional algebra", 0, 0)
    if omega is None or rho is None:
        raise ParseError("verify needs both omega and rho forms", 0, 0)
    report = verify(L, omega, rho)
    print(report.to_text())
    return EXIT_POSITIVE if report.half_flat else EXIT_NEGATIVE


def _cmd_classify3d(args) -> int:
    L, _, _ = _load(args.file)
    if L.dim != 3:
        raise ParseError("classify3d needs a three-dimensional algebra", 0, 0)
    c = classify(L)
    print(f"class: {c.display}")
    print(f"bianchi: {c.bianchi}")
    if c.eigen_signs is not None:
        print("eigen_signs: " + "".join("+0-"[1 - s] for s in c.eigen_signs))
    if c.det_d is not None:
        print(f"D: {c.det_d}")
    if c.mu is not None:
        print(f"mu: {c.mu}")
    return EXIT_POSITIVE


def _cmd_obstruct(args) -> int:
    L, _, _ = _load(args.file)
    if L.dim != 6:
        raise ParseError("obstruct needs a six-dimensional algebra", 0, 0)
    if L.summands is None:
        L = _resplit(L)
    splittings = obstruct.coherent_splittings(L)
    for v_pair in splittings:
        rep = obstruct.check_obstruction(L, v_pair)
        if rep.verdict == obstruct.VERDICT_OBSTRUCTED:
            print(rep.to_text())
            return EXIT_NEGATIVE
    # refined arguments for the two resistant algebras
    try:
        if obstruct.refined_h3_r2R(L):
            print("verdict: NoHalfFlatSU3")
            print("detail: refined isotropy argument for h3 (+) r2R")
            return EXIT_NEGATIVE
    except HalfFlatError:
        pass
    try:
        if obstruct.refined_r2R_R3(L):
            print("verdict: NoHalfFlatSU3")
            print("detail: K_rho(e_2) proportional to e_2, lambda >= 0")
            return EXIT_NEGATIVE
    except HalfFlatError:
        pass
    print("verdict: Inconclusive")
    print(f"coherent_splittings: {len(splittings)}")
    return EXIT_POSITIVE


def _resplit(L: LieAlgebra) -> LieAlgebra:
    """Rebuild the direct-sum structure of a file algebra split over e/f blocks."""
    lo = [KForm(2, {m: c for m, c in dk.terms.items()}) for dk in L.diffs[:3]]
    hi = [KForm(2, {m >> 3: c for m, c in dk.terms.items()}) for dk in L.diffs[3:]]
    for dk in L.diffs[:3]:
        if any(m >> 3 for m in dk.terms):
            raise HalfFlatError("algebra is not split over the declared blocks")
    for dk in L.diffs[3:]:
        if any(m & 0b111 for m in dk.terms):
            raise HalfFlatError("algebra is not split over the declared blocks")
    L1 = LieAlgebra(3, lo, name="file-g1")
    L2 = LieAlgebra(3, hi, name="file-g2")
    return direct_sum(L1, L2)


def _cmd_search(args) -> int:
    L, _, _ = _load(args.file)
    if L.dim != 6:
        raise ParseError("search needs a six-dimensional algebra", 0, 0)
    result = search.find_halfflat(
        L,
        target=args.target,
        restarts=args.restarts,
        seed=args.seed,
        tol=args.tol,
    )
    if result.found and args.max_den > 0:
        search.rationalize(L, result, max_den=args.max_den)
    print(result.to_text())
    return EXIT_POSITIVE if result.found else EXIT_NEGATIVE


def _cmd_catalog(args) -> int:
    if args.name is None:
        for tag, (display, bianchi, unimod) in CATALOG_INFO.items():
            print(f"{tag}: {display} (Bianchi {bianchi}, {'unimodular' if unimod else 'non-unimodular'})")
        return EXIT_POSITIVE
    mu = Fraction(args.mu) if args.mu is not None else None
    L1 = catalog(args.name, mu)
    if args.sum is None:
        print(emit(L1), end="")
        return EXIT_POSITIVE
    mu2 = Fraction(args.mu2) if args.mu2 is not None else None
    L2 = catalog(args.sum, mu2)
    print(emit(direct_sum(L1, L2)), end="")
    return EXIT_POSITIVE


def _cmd_appendix(args) -> int:
    mu = Fraction(args.mu) if args.mu is not None else None
    instances = corpus.iter_instances(table=args.table, mu=mu)
    if not instances:
        print("no instances selected")
        return EXIT_NEGATIVE
    failures = 0
    for inst in instances:
        rep = corpus.verify_instance(inst)
        status = "ok" if rep.ok else f"FAIL ({rep.residual})"
        print(f"{inst.label}: {status}")
        if inst.note:
            print(f"  note: {inst.note}")
        if not rep.ok:
            failures += 1
    print(f"instances: {len(instances)}  failures: {failures}")
    return EXIT_POSITIVE if failures == 0 else EXIT_NEGATIVE


def _load(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}", 0, 0)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="halfflat",
        description="Exact verification, classification, obstruction and search "
        "of half-flat structures on six-dimensional Lie algebras.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="verify a (omega, rho) pair from a file")
    v.add_argument("file")
    v.set_defaults(func=_cmd_verify)

    c = sub.add_parser("classify3d", help="Bianchi classification of a 3D algebra")
    c.add_argument("file")
    c.set_defaults(func=_cmd_classify3d)

    o = sub.add_parser("obstruct", help="run the non-existence obstructions")
    o.add_argument("file")
    o.set_defaults(func=_cmd_obstruct)

    s = sub.add_parser("search", help="float search for a half-flat structure")
    s.add_argument("file")
    s.add_argument("--target", choices=("su3", "su12", "sl3r"), default="su3")
    s.add_argument("--restarts", type=int, default=10_000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--tol", type=float, default=1e-8)
    s.add_argument("--max-den", type=int, default=64)
    s.set_defaults(func=_cmd_search)

    k = sub.add_parser("catalog", help="list catalog classes or emit a standard basis")
    k.add_argument("name", nargs="?", default=None)
    k.add_argument("--mu", default=None)
    k.add_argument("--sum", default=None, help="second summand for a direct sum")
    k.add_argument("--mu2", default=None)
    k.set_defaults(func=_cmd_catalog)

    a = sub.add_parser("appendix", help="run the built-in corpus of structures")
    a.add_argument("--table", type=int, choices=(0, 3, 4, 5), default=None)
    a.add_argument("--mu", default=None)
    a.set_defaults(func=_cmd_appendix)

    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except JacobiError as exc:
        print(f"invalid structure constants: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except HalfFlatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
