"""Command-line front end.

Every subcommand writes JSON lines (or TSV with ``--format tsv``) to stdout
and diagnostics to stderr.  Exit codes: 0 success / verified / found,
1 falsified, 2 nothing found within the search bounds, 64 usage error,
65 computation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Iterable, TextIO

from . import fixtures
from .errors import BinpartError
from .factor2 import factor, is_primitive, period
from .gf2poly import Poly2
from .partitions import DigitSet, ReprCounter, churchhouse_report, stern
from .periodicity import (
    complement,
    period_search,
    verify_main_theorem,
    verify_prime_theorem,
)

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_NOT_FOUND = 2
EXIT_USAGE = 64
EXIT_COMPUTE = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _positive(minimum: int):
    def convert(text: str) -> int:
        value = int(text)
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}")
        return value

    convert.__name__ = f"integer>={minimum}"
    return convert


def _digit_set(text: str) -> DigitSet:
    try:
        return DigitSet.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


_digit_set.__name__ = "digit set"


def _poly(text: str) -> Poly2:
    try:
        return Poly2.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


_poly.__name__ = "polynomial"


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized factor splitting")

    parser = _Parser(prog="binpart", description="Digit-restricted partition counts and their parity.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        return sub.add_parser(name, help=help_, parents=[common])

    p = add("count", "f_{A,b}(n), optionally mod d")
    p.add_argument("--set", type=_digit_set, required=True)
    p.add_argument("--base", type=_positive(2), default=2)
    p.add_argument("--n", type=_positive(0), required=True)
    p.add_argument("--mod", type=_positive(2))

    p = add("seq", "f_{A,b}(n) for n in a range, one line per n")
    p.add_argument("--set", type=_digit_set, required=True)
    p.add_argument("--base", type=_positive(2), default=2)
    p.add_argument("--from", dest="start", type=_positive(0), default=0)
    p.add_argument("--to", dest="stop", type=_positive(0), required=True)
    p.add_argument("--mod", type=_positive(2))

    for name in ("factor", "period"):
        p = add(name, "factorization, period and bound of a GF(2) polynomial")
        p.add_argument("--poly", type=_poly, required=True)

    p = add("complement", "parity period T, complementary set and odd density")
    p.add_argument("--set", type=_digit_set, required=True)

    p = add("verify", "check F * phi = 1 over GF(2) (or GF(p) with --prime)")
    p.add_argument("--set", type=_digit_set, required=True)
    p.add_argument("--truncation", type=_positive(0), default=512)
    p.add_argument("--prime", type=_positive(2))

    p = add("verify-prime", "check F^(p-1) * phi = 1 over GF(p) with base p")
    p.add_argument("--set", type=_digit_set, required=True)
    p.add_argument("--prime", type=_positive(2), required=True)
    p.add_argument("--truncation", type=_positive(0), default=300)

    p = add("search", "bounded search for eventual periodicity of f mod d")
    p.add_argument("--set", type=_digit_set, required=True)
    p.add_argument("--base", type=_positive(2), default=2)
    p.add_argument("--mod", type=_positive(2), required=True)
    p.add_argument("--max-transient", type=_positive(0), default=300)
    p.add_argument("--max-period", type=_positive(1), default=300)

    p = add("stern", "Stern's diatomic sequence")
    p.add_argument("--n", type=_positive(0))
    p.add_argument("--from", dest="start", type=_positive(0))
    p.add_argument("--to", dest="stop", type=_positive(0))

    p = add("churchhouse", "binary partition parity rules and valuation table")
    p.add_argument("--n", type=_positive(16), default=4096)
    p.add_argument("--table-max-m", type=_positive(2))

    p = add("paper-check", "replay the numeric fixtures")
    p.add_argument("--only", choices=sorted(fixtures.FIXTURES))
    return parser


# ---------- output


class _Emitter:
    def __init__(self, fmt: str, out: TextIO):
        self.fmt = fmt
        self.out = out
        self._header: list[str] | None = None

    def emit(self, record: dict) -> None:
        if self.fmt == "json":
            self.out.write(json.dumps(record) + "\n")
            return
        if self._header is None:
            self._header = list(record)
            self.out.write("\t".join(self._header) + "\n")
        cells = []
        for key in self._header:
            v = record.get(key)
            if isinstance(v, str):
                cells.append(v)
            elif v is None:
                cells.append("")
            else:
                cells.append(json.dumps(v, separators=(",", ":")))
        self.out.write("\t".join(cells) + "\n")


def _echo(args, *keys: str) -> dict:
    echo = {"command": args.command}
    for key in keys:
        value = getattr(args, key)
        echo[key] = str(value) if isinstance(value, (DigitSet, Poly2)) else value
    return echo


# ---------- subcommands


def _cmd_count(args, em: _Emitter) -> int:
    value = ReprCounter(args.set, args.base, args.mod).count(args.n)
    em.emit({"input": _echo(args, "set", "base", "n", "mod"), "n": args.n, "value": str(value), "mod": args.mod})
    return EXIT_OK


def _cmd_seq(args, em: _Emitter) -> int:
    if args.stop < args.start:
        raise UsageError("--to must be >= --from")
    values = ReprCounter(args.set, args.base, args.mod).sequence(args.stop)
    echo = _echo(args, "set", "base", "start", "stop", "mod")
    for n in range(args.start, args.stop + 1):
        em.emit({"input": echo, "n": n, "value": str(values[n]), "mod": args.mod})
    return EXIT_OK


def _cmd_factor(args, em: _Emitter) -> int:
    h = args.poly
    if h.degree < 1:
        raise BinpartError(f"{h} has degree < 1; nothing to factor")
    fact = factor(h, seed=args.seed)
    cert = period(h, seed=args.seed)
    em.emit(
        {
            "input": _echo(args, "poly", "seed"),
            "factors": [{"poly": str(f), "exp": e} for f, e in fact],
            "period": cert.period,
            "m_bound": cert.m_bound,
            "primitive": is_primitive(h),
        }
    )
    return EXIT_OK


def _cmd_complement(args, em: _Emitter) -> int:
    prof = complement(args.set, seed=args.seed)
    em.emit({"input": _echo(args, "set", "seed"), **prof.to_dict()})
    return EXIT_OK


def _emit_check(args, em: _Emitter, check, keys) -> int:
    em.emit(
        {
            "input": _echo(args, *keys),
            "verified": check.ok,
            "first_failure": check.first_failure,
            "truncation": check.truncation,
        }
    )
    return EXIT_OK if check.ok else EXIT_FALSIFIED


def _cmd_verify(args, em: _Emitter) -> int:
    if args.prime is not None:
        return _emit_check(args, em, verify_prime_theorem(args.set, args.prime, args.truncation), ("set", "truncation", "prime"))
    return _emit_check(args, em, verify_main_theorem(args.set, args.truncation), ("set", "truncation", "prime"))


def _cmd_verify_prime(args, em: _Emitter) -> int:
    check = verify_prime_theorem(args.set, args.prime, args.truncation)
    return _emit_check(args, em, check, ("set", "prime", "truncation"))


def _cmd_search(args, em: _Emitter) -> int:
    rep = period_search(args.set, args.base, args.mod, args.max_transient, args.max_period)
    em.emit({"input": _echo(args, "set", "base", "mod", "max_transient", "max_period"), **rep.to_dict()})
    return EXIT_OK if rep.found else EXIT_NOT_FOUND


def _cmd_stern(args, em: _Emitter) -> int:
    if args.n is not None:
        if args.start is not None or args.stop is not None:
            raise UsageError("use either --n or --from/--to")
        ns: Iterable[int] = [args.n]
    else:
        if args.stop is None:
            raise UsageError("stern needs --n or --to")
        start = args.start or 0
        if args.stop < start:
            raise UsageError("--to must be >= --from")
        ns = range(start, args.stop + 1)
    echo = _echo(args, "n", "start", "stop")
    for n in ns:
        em.emit({"input": echo, "n": n, "value": str(stern(n))})
    return EXIT_OK


def _cmd_churchhouse(args, em: _Emitter) -> int:
    rep = churchhouse_report(args.n, args.table_max_m)
    em.emit({"input": _echo(args, "n", "table_max_m"), **rep.to_dict()})
    return EXIT_OK if rep.ok else EXIT_FALSIFIED


def _cmd_paper_check(args, em: _Emitter) -> int:
    results = fixtures.run(args.only)
    for name, ok, detail in results:
        em.emit({"input": _echo(args, "only"), "fixture": name, "pass": ok, "detail": detail})
        print(f"{'PASS' if ok else 'FAIL'} {name}", file=sys.stderr)
    failed = sum(not ok for _, ok, _ in results)
    print(f"{len(results) - failed}/{len(results)} fixtures passed", file=sys.stderr)
    return EXIT_OK if not failed else EXIT_FALSIFIED


COMMANDS = {
    "count": _cmd_count,
    "seq": _cmd_seq,
    "factor": _cmd_factor,
    "period": _cmd_factor,
    "complement": _cmd_complement,
    "verify": _cmd_verify,
    "verify-prime": _cmd_verify_prime,
    "search": _cmd_search,
    "stern": _cmd_stern,
    "churchhouse": _cmd_churchhouse,
    "paper-check": _cmd_paper_check,
}


def run(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    """Parse ``argv``, run one subcommand and return its exit code."""
    out = out if out is not None else sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # --help exits 0; argparse errors were mapped to EXIT_USAGE.
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    em = _Emitter(args.format, out)
    try:
        return COMMANDS[args.command](args, em)
    except UsageError as exc:
        print(f"binpart {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BinpartError, ArithmeticError, ValueError) as exc:
        print(f"binpart {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
