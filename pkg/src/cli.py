"""
Command line front end: python -m src.cli <command> ...

Exit codes: 0 ok, 1 parse error, 2 invalid input or failed check,
3 undefined invariant, 4 usage error. '-' reads stdin / writes stdout.
"""

import argparse
import json
import sys
import time
from typing import Dict, List, Optional, Sequence, TextIO

from pydantic import ValidationError

from .config import Settings, load_settings
from .errors import (
    DegenerateMatrix,
    DimensionMismatch,
    InvalidComponent,
    InvalidDiagram,
    InvalidTransverseFront,
    MalformedPair,
    NotACancellingPair,
    ParseError,
    UnresolvableLinking,
    ZeroNotAllowed,
)
from .front import (
    FrontDiagram,
    TransverseFront,
    classical_invariants,
    positive_transverse_pushoff,
    self_linking,
    transverse_writhe,
    validate,
    validate_transverse,
)
from .frontfile import parse as parse_front
from .frontfile import read_file
from .homotopy import chern_class, d3, format_rational
from .lutz import LutzSign, lutz_figure, lutz_on_transverse, lutz_pair, s3_overtwisted, verify_lutz
from .render import render_ascii, render_svg
from .run_logger import RunLogger
from .selftest import run_selftest
from .surgery import (
    ContactCoefficient,
    SurgeryPresentation,
    cancel_meridian_pair,
    explicit_diagram,
    from_json,
    handle_slide,
    to_json,
)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_INVALID = 2
EXIT_UNDEFINED = 3
EXIT_USAGE = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


class Console:
    """stdout for results, stderr for diagnostics with status markers."""

    _STYLE = {"❌": "\033[31m", "⚠️": "\033[33m", "✅": "\033[32m"}

    def __init__(self, out: TextIO, err: TextIO, color: bool):
        self.out = out
        self.err = err
        self.color = color
        self.first_result: Optional[str] = None

    def result(self, text: str) -> None:
        if self.first_result is None and text.strip():
            self.first_result = text.strip().splitlines()[0]
        self.out.write(text if text.endswith("\n") else text + "\n")

    def _diag(self, marker: str, message: str) -> None:
        line = f"{marker} {message}"
        if self.color:
            line = f"{self._STYLE[marker]}{line}\033[0m"
        self.err.write(line + "\n")

    def error(self, message: str) -> None:
        self._diag("❌", message)

    def warn(self, message: str) -> None:
        self._diag("⚠️", message)

    def ok(self, message: str) -> None:
        self._diag("✅", message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def _write(console: Console, text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        console.out.write(text)
        return
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)


def _is_presentation(text: str) -> bool:
    return text.lstrip().startswith("{")


def _load_front(path: str):
    return parse_front(_read(path)) if path == "-" else read_file(path)


def _load_presentation(path: str) -> SurgeryPresentation:
    return from_json(_read(path))


def _load_legendrian(path: str) -> FrontDiagram:
    diagram = _load_front(path)
    if not isinstance(diagram, FrontDiagram):
        raise ParseError(f"{path}: expected a Legendrian front ('front v1')")
    return diagram


# commands -------------------------------------------------------------

def cmd_validate(args, console: Console) -> int:
    diagram = _load_front(args.file)
    report = validate_transverse(diagram) if isinstance(diagram, TransverseFront) else validate(diagram)
    if not report.valid:
        for problem in report.problems:
            console.error(problem)
        return EXIT_INVALID
    kind = "transverse front" if isinstance(diagram, TransverseFront) else "front"
    console.result(f"valid {kind}: {report.component_count} components, {report.crossing_count} crossings")
    return EXIT_OK


def cmd_invariants(args, console: Console) -> int:
    diagram = _load_front(args.file)
    lines: List[str] = []
    if isinstance(diagram, TransverseFront):
        report = validate_transverse(diagram)
        if not report.valid:
            raise InvalidTransverseFront("; ".join(report.problems))
        writhe = transverse_writhe(diagram)
        for k in range(report.component_count):
            lines.append(f"T{k}  sl={self_linking(diagram, k)} writhe={writhe[k]}")
    else:
        inv = classical_invariants(diagram)
        for k, c in enumerate(inv.components):
            sl_pos = self_linking(positive_transverse_pushoff(diagram, k), 0)
            lines.append(
                f"L{k}  tb={c.tb} rot={c.rot} writhe={c.writhe} "
                f"cusps={c.up_cusps}u/{c.down_cusps}d sl+={sl_pos} sl-={c.tb + c.rot}"
            )
        if len(inv.components) > 1:
            lines.append("linking:")
            lines.extend("  " + " ".join(f"{x:>3}" for x in row) for row in inv.linking)
    console.result("\n".join(lines))
    return EXIT_OK


def _host_coefficients(specs: Optional[Sequence[str]]) -> Dict[int, ContactCoefficient]:
    host: Dict[int, ContactCoefficient] = {}
    for spec in specs or []:
        index, _, coefficient = spec.partition(":")
        if not index.isdigit() or coefficient not in ("+1", "-1", "1"):
            raise UsageError(f"--host expects <component>:<+1|-1>, got {spec!r}")
        host[int(index)] = ContactCoefficient(int(coefficient))
    return host


def cmd_lutz(args, console: Console) -> int:
    diagram = _load_front(args.file)
    if isinstance(diagram, TransverseFront):
        if args.host:
            raise UsageError("--host is only supported for Legendrian fronts")
        pres = lutz_on_transverse(diagram, args.component, args.sign)
    else:
        pres = lutz_pair(diagram, args.component, args.sign, _host_coefficients(args.host))
    if args.file != "-":
        pres = pres.model_copy(update={"front": args.file})
    _write(console, to_json(pres), args.out)
    return EXIT_OK


def cmd_d3(args, console: Console) -> int:
    value = d3(_load_presentation(args.file))
    console.result(format_rational(value.value))
    if args.details:
        console.result(
            f"c^2={format_rational(value.c_squared)} sigma={value.signature} "
            f"chi={value.euler} q={value.q}"
        )
    return EXIT_OK


def cmd_c1(args, console: Console) -> int:
    c1 = chern_class(_load_presentation(args.file))
    console.result(json.dumps(c1.to_dict()))
    return EXIT_OK


def cmd_slide(args, console: Console) -> int:
    pres = handle_slide(_load_presentation(args.file), args.from_, args.over, args.sign)
    _write(console, to_json(pres), args.out)
    return EXIT_OK


def cmd_cancel(args, console: Console) -> int:
    pres = cancel_meridian_pair(_load_presentation(args.file), args.knot, args.meridian)
    _write(console, to_json(pres), args.out)
    return EXIT_OK


def _mark(ok: bool) -> str:
    return "✅" if ok else "❌"


def cmd_verify_lutz(args, console: Console) -> int:
    report = verify_lutz(_load_legendrian(args.file), args.component, args.sign)
    disc = report.disc
    law = "r - t" if report.sign == LutzSign.POSITIVE else "-(t + r)"
    console.result("\n".join([
        f"L1: tb={report.tb} rot={report.rot}",
        f"linking matrix: {report.linking}",
        f"{_mark(report.trivial)} topologically trivial: L2 - L1 is a 0-framed meridian of L1",
        f"{_mark(report.overtwisted)} overtwisted disc: lk(K,L1)={disc.lk_k_l1} lk(K,L2)={disc.lk_k_l2} "
        f"disc framing {disc.disc_framing}, contact framing {disc.contact_framing}",
        f"{_mark(report.d3_ok)} d3={format_rational(report.d3.value)} "
        f"change {format_rational(report.d3_change)}, {law} = {format_rational(report.expected_change)}",
    ]))
    return EXIT_OK if report.passed else EXIT_INVALID


def cmd_s3(args, console: Console) -> int:
    _write(console, to_json(s3_overtwisted(args.n)), args.out)
    return EXIT_OK


def cmd_render(args, console: Console) -> int:
    text = _read(args.file)
    if _is_presentation(text):
        diagram = explicit_diagram(from_json(text))
    else:
        diagram = parse_front(text)
    if args.lutz_figure:
        if not isinstance(diagram, FrontDiagram):
            raise UsageError("--lutz-figure needs a Legendrian front")
        diagram = lutz_figure(diagram, args.component, args.sign).diagram
    report = validate_transverse(diagram) if isinstance(diagram, TransverseFront) else validate(diagram)
    if not report.valid:
        raise InvalidDiagram("; ".join(report.problems))
    if args.format == "svg":
        settings: Settings = args.settings
        output = render_svg(diagram, unit=settings.svg_unit, line_width=settings.svg_line_width)
    else:
        output = render_ascii(diagram)
    _write(console, output, args.out)
    return EXIT_OK


def cmd_selftest(args, console: Console) -> int:
    settings: Settings = args.settings
    cases = args.cases or settings.selftest_cases
    seed = settings.selftest_seed if args.seed is None else args.seed
    workers = args.workers or settings.selftest_workers
    results = run_selftest(cases, seed=seed, workers=workers, max_events=settings.corpus_max_events)
    failed = 0
    for res in results:
        bad = [name for name, ok in res.checks if not ok]
        if bad:
            failed += 1
            console.result(f"case {res.case}: FAIL ({', '.join(bad)}) tb={res.tb} rot={res.rot}")
    if failed:
        console.error(f"selftest: {failed}/{len(results)} cases failed (seed {seed})")
        return EXIT_INVALID
    console.ok(f"selftest: {len(results)} cases passed (seed {seed})")
    return EXIT_OK


# parser ---------------------------------------------------------------

def _add_out(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default="-", help="output file ('-' for stdout)")


def _add_lutz_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--component", type=int, default=0)
    p.add_argument("--sign", choices=[s.value for s in LutzSign], default=LutzSign.POSITIVE.value)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="frontsurgery", description="Legendrian fronts, contact surgery and Lutz twists")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check a .front / .tfront file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("invariants", help="tb, rot and linking (sl for transverse fronts)")
    p.add_argument("file")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("lutz", help="presentation of the Lutz pair on one component")
    p.add_argument("file")
    _add_lutz_args(p)
    p.add_argument("--host", action="append", metavar="K:COEFF",
                   help="also do surgery on front component K (repeatable)")
    _add_out(p)
    p.set_defaults(func=cmd_lutz)

    p = sub.add_parser("d3", help="d3 invariant of a presentation")
    p.add_argument("file")
    p.add_argument("--details", action="store_true")
    p.set_defaults(func=cmd_d3)

    p = sub.add_parser("c1", help="first Chern class in Smith coordinates")
    p.add_argument("file")
    p.set_defaults(func=cmd_c1)

    p = sub.add_parser("slide", help="handle slide of --from over --over")
    p.add_argument("file")
    p.add_argument("--from", dest="from_", type=int, required=True)
    p.add_argument("--over", type=int, required=True)
    p.add_argument("--sign", type=int, choices=[1, -1], required=True)
    _add_out(p)
    p.set_defaults(func=cmd_slide)

    p = sub.add_parser("cancel", help="remove a knot with its 0-framed meridian")
    p.add_argument("file")
    p.add_argument("--knot", type=int, required=True)
    p.add_argument("--meridian", type=int, required=True)
    _add_out(p)
    p.set_defaults(func=cmd_cancel)

    p = sub.add_parser("verify-lutz", help="check triviality, overtwisted disc and d3 change")
    p.add_argument("file")
    _add_lutz_args(p)
    p.set_defaults(func=cmd_verify_lutz)

    p = sub.add_parser("s3", help="overtwisted S^3 with d3 = n - 1/2")
    p.add_argument("--n", type=int, required=True)
    _add_out(p)
    p.set_defaults(func=cmd_s3)

    p = sub.add_parser("render", help="ASCII or SVG picture of a front or presentation")
    p.add_argument("file")
    p.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    p.add_argument("--lutz-figure", action="store_true", help="draw L1 with K and L2")
    _add_lutz_args(p)
    _add_out(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("selftest", help="randomized property checks")
    p.add_argument("--cases", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_selftest)
    return parser


_EXIT_FOR: List[tuple] = [
    ((UsageError, ZeroNotAllowed, DimensionMismatch, IndexError), EXIT_USAGE),
    ((ParseError, ValidationError, json.JSONDecodeError), EXIT_PARSE),
    ((InvalidDiagram, InvalidComponent, InvalidTransverseFront, NotACancellingPair,
      MalformedPair, UnresolvableLinking), EXIT_INVALID),
    ((DegenerateMatrix,), EXIT_UNDEFINED),
]


def run(argv: Sequence[str], out: Optional[TextIO] = None, err: Optional[TextIO] = None,
        settings: Optional[Settings] = None) -> int:
    settings = settings or load_settings()
    out = out or sys.stdout
    err = err or sys.stderr
    console = Console(out, err, color=not settings.color_disabled and err.isatty())
    started = time.time()
    command = argv[0] if argv else ""
    input_path = None
    try:
        args = build_parser().parse_args(list(argv))
        args.settings = settings
        input_path = getattr(args, "file", None)
        code = args.func(args, console)
    except Exception as exc:
        code = next((c for kinds, c in _EXIT_FOR if isinstance(exc, kinds)), None)
        if code is None:
            raise
        console.error(str(exc))
    if settings.run_log_enabled:
        try:
            RunLogger(settings.run_log_path, settings.run_log_max_hours, settings.run_log_carry_hours).log_run(
                command, input_path, code, time.time() - started, console.first_result,
            )
        except OSError as exc:
            console.warn(f"run log not written: {exc}")
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
