"""Command-line interface.

Exit codes are part of the contract:

* 0 -- success
* 1 -- usage problem or bad model parameters
* 2 -- the knowledge base directory failed to load or validate
* 3 -- the query could not be answered
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

from . import perf
from .engine import Answer, QueryError, answer_query
from .loader import LoadedKb, LoadError, load_kb

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BAD_KB = 2
EXIT_QUERY = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; this tool reserves 2 for
    # knowledge-base failures, so usage problems exit 1 instead.
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ontosearch",
                     description="Exact-answer search over a small RDF "
                                 "knowledge base.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="load a knowledge base "
                                "directory and report every problem")
    p_validate.add_argument("kb_dir", type=Path)

    p_query = sub.add_parser("query", help="answer one query")
    p_query.add_argument("kb_dir", type=Path)
    p_query.add_argument("text", help="query text, e.g. "
                         "'season required for mango'")
    p_query.add_argument("--json", action="store_true",
                         help="print the answer as JSON")

    p_repl = sub.add_parser("repl", help="answer queries line by line "
                            "from stdin")
    p_repl.add_argument("kb_dir", type=Path)

    p_perf = sub.add_parser("perf", help="print search-cost curves as CSV")
    p_perf.add_argument("-r", "--r", "--branching", dest="branching",
                        type=float, required=True,
                        help="branching factor of the class tree (>= 2)")
    p_perf.add_argument("--n-min", type=float, default=10)
    p_perf.add_argument("--n-max", type=float, default=100000)
    p_perf.add_argument("--steps", type=int, default=5)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("kb_dir", type=Path)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--static-dir", type=Path, default=None,
                         help="directory of web console files to serve at /")

    return parser


def _load(kb_dir: Path, err: TextIO) -> LoadedKb | None:
    try:
        return load_kb(kb_dir)
    except LoadError as exc:
        print(exc, file=err)
        return None


def _print_answer(answer: Answer, out: TextIO) -> None:
    trace = answer.trace
    print(f"mode: {answer.mode}", file=out)
    print(f"matched {trace.matched_domain} -> {trace.matched_range} "
          f"after walking {trace.levels_walked} level(s)", file=out)
    for group in answer.results:
        print(f"{group.property}: {', '.join(group.values)}", file=out)


def _cmd_validate(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    loaded = _load(args.kb_dir, err)
    if loaded is None:
        return EXIT_BAD_KB
    kb = loaded.kb
    instances = sum(len(kb.subtree_instances(root)) for root in kb.roots())
    print(f"ok: {len(kb.classes)} classes, {len(kb.properties())} properties, "
          f"{instances} instances from {kb.doc_count} documents", file=out)
    return EXIT_OK


def _cmd_query(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    loaded = _load(args.kb_dir, err)
    if loaded is None:
        return EXIT_BAD_KB
    try:
        answer = answer_query(loaded.kb, loaded.class_table,
                              loaded.instance_table, args.text)
    except QueryError as exc:
        print(f"error [{exc.code}]: {exc}", file=err)
        return EXIT_QUERY
    if args.json:
        from .engine import answer_to_dict

        json.dump(answer_to_dict(answer), out, indent=2)
        print(file=out)
    else:
        _print_answer(answer, out)
    return EXIT_OK


def _cmd_repl(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    loaded = _load(args.kb_dir, err)
    if loaded is None:
        return EXIT_BAD_KB
    prompt = "query> " if sys.stdin.isatty() else ""
    while True:
        try:
            line = input(prompt)
        except EOFError:
            return EXIT_OK
        if not line.strip():
            continue
        try:
            answer = answer_query(loaded.kb, loaded.class_table,
                                  loaded.instance_table, line)
        except QueryError as exc:
            print(f"error [{exc.code}]: {exc}", file=err)
            continue
        _print_answer(answer, out)


def _cmd_perf(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    try:
        csv_text = perf.curves_csv(args.n_min, args.n_max, args.steps,
                                   args.branching)
    except perf.DomainError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    out.write(csv_text)
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    from .service import ServiceConfig, serve

    try:
        serve(ServiceConfig(kb_dir=args.kb_dir, host=args.host,
                            port=args.port, static_dir=args.static_dir))
    except LoadError as exc:
        print(exc, file=err)
        return EXIT_BAD_KB
    return EXIT_OK


_COMMANDS = {
    "validate": _cmd_validate,
    "query": _cmd_query,
    "repl": _cmd_repl,
    "perf": _cmd_perf,
    "serve": _cmd_serve,
}


def run(argv: Sequence[str] | None = None,
        out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    args = build_parser().parse_args(argv)
    return _COMMANDS[args.command](args, out, err)


def main() -> None:
    sys.exit(run())
