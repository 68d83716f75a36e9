"""Command-line front end.

Exit codes: 0 value, 1 usage/IO/read error, 2 invalid program,
3 run-time fault, 4 bad result.
"""

import argparse
import os
import sys

from ilvm import state as st
from ilvm.errors import BadResult, IlvmError, InvalidProgram, ReadError, RuntimeFault, UnknownLanguage
from ilvm.langs import registry, run_checked, run_unchecked
from ilvm.sexpr import render, read

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_FAULT, EXIT_BAD_RESULT = range(5)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="ilvm", description="Validate and run intermediate-language programs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("list-langs", help="print the registered language names")

    def add_common(p):
        p.add_argument("--lang", default=os.environ.get("ILVM_LANG"),
                       help="language name (default: $ILVM_LANG)")
        p.add_argument("input", help="program file, or - for standard input")

    add_common(sub.add_parser("validate", help="check a program against a language grammar"))

    run = sub.add_parser("run", help="run a program and print its value")
    add_common(run)
    run.add_argument("--trace", action="store_true", help="print each executed instruction to stderr")
    run.add_argument("--dump-state", action="store_true", help="print the machine state to stderr after the run")
    run.add_argument("--checked", action=argparse.BooleanOptionalAction, default=True,
                     help="validate the program and check the result class (default: on)")
    run.add_argument("--output-format", choices=("plain", "records"), default="plain")
    return parser


def _load(path):
    if path == "-":
        return read(sys.stdin.read())
    with open(path, encoding="utf-8") as f:
        return read(f.read())


def _record(tag, payload):
    return f"({tag} {payload})"


def _run(args, program):
    state = st.fresh_state()
    trace = None
    if args.trace:
        def trace(index, instr, rax):
            print(f"{index}\t{instr}\trax={st.format_value(rax)}", file=sys.stderr)

    runner = run_checked if args.checked else run_unchecked
    records = args.output_format == "records"
    try:
        value = runner(args.lang, program, state, trace=trace)
    except InvalidProgram as e:
        print(e, file=sys.stderr)
        if records:
            print(_record("InvalidProgram", render(e.term)))
        return EXIT_INVALID
    except RuntimeFault as e:
        print(e, file=sys.stderr)
        if records:
            print(_record("RuntimeFault", type(e.cause).__name__))
        code = EXIT_FAULT
    except BadResult as e:
        print(e, file=sys.stderr)
        if records:
            print(_record("BadResult", st.format_value(e.value)))
        code = EXIT_BAD_RESULT
    else:
        text = st.format_value(value)
        print(_record("result", text) if records else text)
        code = EXIT_OK
    if args.dump_state:
        print(st.dump(state), file=sys.stderr)
    return code


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "list-langs":
        for name in registry().names():
            print(name)
        return EXIT_OK
    if not args.lang:
        print("ilvm: error: --lang is required (or set ILVM_LANG)", file=sys.stderr)
        return EXIT_USAGE
    try:
        lang = registry()[args.lang]
        program = _load(args.input)
    except (OSError, ReadError, UnknownLanguage) as e:
        print(f"ilvm: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "validate":
        if lang.validate(program):
            print("valid")
            return EXIT_OK
        print(f"invalid: {render(program)} is not a {lang.name} program", file=sys.stderr)
        return EXIT_INVALID
    try:
        return _run(args, program)
    except IlvmError as e:
        print(f"ilvm: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
