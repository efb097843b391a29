"""Command-line front end.

Exit status: 0 when the question was decided (or the check passed), 1 on
input errors and failed checks, 2 when a search ran out of budget.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .additive import AdditiveCode, additive_standard_form, extract_additive, is_additive_mds
from .codes import LinearCode, is_mds, minimum_distance, standard_form
from .demo import paper_demo
from .equivalence.extract import extract_semilinear
from .equivalence.search import DEFAULT_BUDGET, search_block_monomial, search_general, search_semilinear
from .equivalence.witnesses import is_equivalence
from .errors import BudgetExceeded, ExtractionError, ParseError
from .field import count_additive, field_make
from .io import format_code, format_witness, read_code, read_witness

EXIT_OK, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _pair(args):
    a, b = read_code(args.code_a), read_code(args.code_b)
    if a.field != b.field:
        raise ValueError(f"codes are over different fields: GF({a.field.q}) and GF({b.field.q})")
    if a.n != b.n:
        raise ValueError(f"codes have different lengths: {a.n} and {b.n}")
    return a, b


def _as_additive(code):
    return AdditiveCode.from_linear(code) if isinstance(code, LinearCode) else code


def cmd_mindist(args) -> int:
    code = read_code(args.code)
    print(f"d={minimum_distance(code)}")
    return EXIT_OK


def cmd_mds(args) -> int:
    code = read_code(args.code)
    d = minimum_distance(code)
    flag = is_mds(code.size, code.n, d, code.field.q)
    print(f"mds={'true' if flag else 'false'} d={d} size={code.size}")
    return EXIT_OK


def cmd_standard_form(args) -> int:
    code = read_code(args.code)
    if isinstance(code, LinearCode):
        form, columns = standard_form(code)
        text = format_code(form)
    else:
        form, columns, _ = additive_standard_form(code, certify=is_additive_mds(code))
        text = format_code(form.code())
        if form.invertible_blocks is not None:
            text += f"# invertible_blocks={'true' if form.invertible_blocks else 'false'}\n"
    print("columns=" + ",".join(str(c + 1) for c in columns))
    _emit(text, args.out)
    return EXIT_OK


def cmd_equiv(args) -> int:
    a, b = _pair(args)
    mode = args.mode
    if mode in ("linear", "semilinear") and not (isinstance(a, LinearCode) and isinstance(b, LinearCode)):
        raise ValueError(f"--mode {mode} needs two linear codes")
    try:
        if mode == "general":
            w = search_general(a, b, args.budget)
        elif mode == "linear":
            w = search_semilinear(a, b, args.budget, exponents=[0])
        elif mode == "semilinear":
            w = search_semilinear(a, b, args.budget)
        else:
            w = search_block_monomial(_as_additive(a), _as_additive(b), args.budget)
    except BudgetExceeded as exc:
        print(f"equivalent=undecided budget={exc.budget}")
        return EXIT_BUDGET
    if w is None:
        print("equivalent=false")
        return EXIT_OK
    line = "equivalent=true"
    if hasattr(w, "t"):
        line += f" t={w.t}"
    print(line)
    _emit(format_witness(w), args.out)
    return EXIT_OK


def cmd_extract(args) -> int:
    a, b = _pair(args)
    w = read_witness(args.witness, a.field)
    if isinstance(a, LinearCode) and isinstance(b, LinearCode) and not args.additive:
        out = extract_semilinear(w, a, b)
        print(f"kind=semilinear t={out.t}")
    else:
        out = extract_additive(w, _as_additive(a), _as_additive(b))
        print("kind=additive")
    _emit(format_witness(out), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    a, b = _pair(args)
    w = read_witness(args.witness, a.field)
    if w.n != a.n:
        raise ValueError(f"witness has length {w.n}, codes have length {a.n}")
    ok = is_equivalence(w, a, b)
    print(f"valid={'true' if ok else 'false'}")
    return EXIT_OK if ok else EXIT_INPUT


def cmd_count(args) -> int:
    f = field_make(args.p, args.h)
    maps, perms = count_additive(f)
    print(f"additive_maps={maps} additive_permutations={perms}")
    return EXIT_OK


def cmd_demo(args) -> int:
    items = paper_demo(skip_search=args.skip_search, data_dir=args.data_dir)
    for it in items:
        status = "pass" if it.passed else "fail"
        if args.machine:
            print(f"item{it.number}={status}")
        else:
            print(f"[{status}] {it.number}. {it.title}: {it.detail}")
    passed = sum(it.passed for it in items)
    print(f"passed={passed}/{len(items)}")
    failed = [str(it.number) for it in items if not it.passed]
    if failed:
        print("failed_items=" + ",".join(failed))
        return EXIT_INPUT
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="codequiv", description="Equivalence of codes over small finite fields.")
    parser.add_argument("--machine", action="store_true", help="key=value output only")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mindist", help="minimum distance of a code")
    p.add_argument("code")
    p.set_defaults(func=cmd_mindist)

    p = sub.add_parser("mds", help="Singleton-bound test")
    p.add_argument("code")
    p.set_defaults(func=cmd_mds)

    p = sub.add_parser("standard-form", help="systematic generator and column order")
    p.add_argument("code")
    p.add_argument("--out")
    p.set_defaults(func=cmd_standard_form)

    p = sub.add_parser("equiv", help="search for an equivalence between two codes")
    p.add_argument("code_a")
    p.add_argument("code_b")
    p.add_argument("--mode", choices=["general", "linear", "semilinear", "additive"], default="semilinear")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--out", help="write the witness here instead of stdout")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("extract", help="reduce a general witness to a semi-linear or additive one")
    p.add_argument("witness")
    p.add_argument("code_a")
    p.add_argument("code_b")
    p.add_argument("--additive", action="store_true", help="stop at an additive witness for linear codes too")
    p.add_argument("--out")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("verify-witness", help="check a witness by full enumeration")
    p.add_argument("witness")
    p.add_argument("code_a")
    p.add_argument("code_b")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count-additive-perms", help="count additive maps and permutations of GF(p^h)")
    p.add_argument("p", type=int)
    p.add_argument("h", type=int)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("paper-demo", help="run the GF(9) worked-example checklist")
    p.add_argument("--skip-search", action="store_true")
    p.add_argument("--data-dir", help="directory holding g1.code, g2.code and c3.code")
    p.add_argument("--machine", action="store_true", default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error=budget exceeded ({exc.budget} nodes)", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, ExtractionError, ValueError) as exc:
        print(f"error={exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
