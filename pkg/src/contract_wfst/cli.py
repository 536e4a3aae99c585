"""Command-line interface.

Exit codes: 0 success, 1 validation found problems (including labels
missing from a symbol table), 2 unreadable or malformed input,
3 determinization failed (state budget exceeded or machine not
determinizable), 4 epsilon-input arcs where none are allowed, 5 unknown
symbol.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from . import __version__
from .algorithms import DEFAULT_MAX_STATES, FORWARD, REVERSE, determinize_with_subsets, shortest_distance
from .contract import (
    BUILTIN,
    compile_contract,
    cost_report,
    format_report,
    input_symbols,
    output_symbols,
    parse_contract_spec,
    state_names,
    write_contract_spec,
)
from .errors import (
    DeterminizationError,
    InputEpsilon,
    ParseError,
    UnknownSymbol,
    WfstError,
)
from .fst import EPSILON, is_deterministic, string_weight, validate
from .serialization import (
    export_dot,
    normalize_initial,
    parse_att,
    parse_state_names,
    parse_symbols,
    write_att,
    write_state_names,
    write_symbols,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_EPSILON = 4
EXIT_SYMBOL = 5


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}", EXIT_PARSE) from None


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load_fst(args):
    isyms = parse_symbols(_read(args.isymbols), "input") if args.isymbols else None
    osyms = parse_symbols(_read(args.osymbols), "output") if args.osymbols else None
    return parse_att(_read(args.fst), isyms, osyms)


def _load_contract(args):
    if args.builtin:
        return BUILTIN[args.builtin]()
    if not args.contract:
        raise CliError("give a contract file or --builtin NAME", EXIT_PARSE)
    return parse_contract_spec(_read(args.contract))


def cmd_info(args) -> int:
    m = _load_fst(args)
    det = is_deterministic(m)
    arcs = m.arcs()
    print(f"{m.num_states} states, {m.num_arcs} arcs, deterministic: {'yes' if det else 'no'}")
    print(f"initial: {', '.join(map(str, sorted(m.initial))) or '-'}")
    print(f"finals: {', '.join(map(str, sorted(m.finals))) or '-'}")
    print(f"input epsilons: {'yes' if any(a.ilabel == EPSILON for a in arcs) else 'no'}")
    print(f"output epsilons: {'yes' if any(a.olabel == EPSILON for a in arcs) else 'no'}")
    return EXIT_OK


def cmd_validate(args) -> int:
    try:
        m = _load_fst(args)
    except UnknownSymbol as e:
        print(f"UnknownSymbol: {e}")
        return EXIT_INVALID
    diags = validate(m)
    for d in diags:
        print(d)
    if not diags:
        print("ok")
    return EXIT_INVALID if diags else EXIT_OK


def cmd_determinize(args) -> int:
    m = _load_fst(args)
    det = determinize_with_subsets(m, args.max_states)
    for sid, states in det.merged():
        print(
            f"state {sid} merges original states {{{', '.join(map(str, states))}}}",
            file=sys.stderr,
        )
    _write(args.out, write_att(normalize_initial(det.fst)))
    return EXIT_OK


def cmd_shortestdistance(args) -> int:
    m = _load_fst(args)
    d = shortest_distance(m, REVERSE if args.reverse else FORWARD)
    sys.stdout.write("".join(f"{q}\t{w}\n" for q, w in enumerate(d)))
    return EXIT_OK


def cmd_draw(args) -> int:
    m = _load_fst(args)
    names = parse_state_names(_read(args.state_names)) if args.state_names else None
    _write(args.out, export_dot(m, names, suppress_unit_weights=args.suppress_unit_weights))
    return EXIT_OK


def cmd_evaluate(args) -> int:
    m = _load_fst(args)
    print(string_weight(m, args.input, args.output))
    return EXIT_OK


def cmd_report(args) -> int:
    spec = _load_contract(args)
    sys.stdout.write(format_report(cost_report(spec), pretty=not args.tsv))
    return EXIT_OK


def cmd_compile(args) -> int:
    spec = _load_contract(args)
    m = compile_contract(spec)
    stem = args.stem or (args.builtin or Path(args.contract).name.split(".")[0])
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = {
        f"{stem}.fst.txt": write_att(m),
        f"{stem}.isyms": write_symbols(input_symbols(spec)),
        f"{stem}.osyms": write_symbols(output_symbols(spec)),
        f"{stem}.states.syms": write_state_names(state_names(spec)),
    }
    if args.builtin:
        files[f"{stem}.contract"] = write_contract_spec(spec)
    for name, text in files.items():
        (out / name).write_text(text, encoding="utf-8")
        print(out / name)
    return EXIT_OK


def _fst_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("fst", help="machine in AT&T text format ('-' for stdin)")
    p.add_argument("--isymbols", metavar="PATH", help="input symbol table")
    p.add_argument("--osymbols", metavar="PATH", help="output symbol table")


def _contract_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("contract", nargs="?", help=".contract file")
    p.add_argument("--builtin", choices=sorted(BUILTIN), help="use a built-in contract instead of a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contract-wfst",
        description="Weighted finite-state transducers for contract analysis.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("info", help="summarize a machine")
    _fst_args(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("validate", help="check machine invariants")
    _fst_args(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("determinize", help="weighted determinization")
    _fst_args(p)
    p.add_argument("out", nargs="?", default="-", help="output path (default stdout)")
    p.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    p.set_defaults(func=cmd_determinize)

    p = sub.add_parser("shortestdistance", help="per-state shortest distance")
    _fst_args(p)
    p.add_argument("--reverse", action="store_true", help="distance to a final state instead of from the start")
    p.set_defaults(func=cmd_shortestdistance)

    p = sub.add_parser("draw", help="Graphviz DOT drawing")
    _fst_args(p)
    p.add_argument("--state-names", metavar="PATH", help="state names in symbol-table layout")
    p.add_argument("--suppress-unit-weights", action="store_true")
    p.add_argument("-o", "--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_draw)

    p = sub.add_parser("evaluate", help="weight of an input/output string pair")
    _fst_args(p)
    p.add_argument("--input", required=True, help="space-separated input symbols")
    p.add_argument("--output", help="space-separated output symbols (default: any output)")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("report", help="contract cost report")
    _contract_args(p)
    p.add_argument("--tsv", action="store_true", help="tab-separated raw weights instead of aligned dollar columns")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("compile", help="compile a contract to AT&T text and symbol tables")
    _contract_args(p)
    p.add_argument("--out-dir", default=".", metavar="DIR")
    p.add_argument("--stem", help="base name of the written files")
    p.set_defaults(func=cmd_compile)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except UnknownSymbol as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SYMBOL
    except InputEpsilon as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_EPSILON
    except DeterminizationError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ParseError as e:
        print(f"error: ParseError: {e}", file=sys.stderr)
        return EXIT_PARSE
    except WfstError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
