"""Reading and writing the `.front` / `.tfront` text formats."""

import re
from typing import Dict, List, Tuple, Union

from pydantic import ValidationError

from .errors import ParseError
from .front import EventKind, FrontDiagram, FrontEvent, TransverseEvent, TransverseFront, TransverseKind

FRONT_HEADER = "front v1"
TFRONT_HEADER = "tfront v1"

_TOKEN = re.compile(r"^([A-Z])(\d+)$")
_FRONT_KINDS = {k.value: k for k in EventKind}
_TFRONT_KINDS = {k.value: k for k in TransverseKind}

AnyFront = Union[FrontDiagram, TransverseFront]


def parse(text: str) -> AnyFront:
    lines = text.splitlines()
    body: List[Tuple[int, str]] = []
    for n, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            body.append((n, line))
    if not body:
        raise ParseError("empty file: expected a 'front v1' or 'tfront v1' header")
    n, header = body[0]
    header = " ".join(header.split())
    if header == FRONT_HEADER:
        kinds, event_cls, diagram_cls = _FRONT_KINDS, FrontEvent, FrontDiagram
    elif header == TFRONT_HEADER:
        kinds, event_cls, diagram_cls = _TFRONT_KINDS, TransverseEvent, TransverseFront
    else:
        raise ParseError(f"line {n}: unknown header {header!r}")

    events = []
    orientations: Dict[int, int] = {}
    for n, line in body[1:]:
        words = line.split()
        if words[0] == "orient":
            if len(words) != 3 or not words[1].isdigit() or words[2] not in ("+", "-"):
                raise ParseError(f"line {n}: expected 'orient <component-index> <+|->'")
            orientations[int(words[1])] = 1 if words[2] == "+" else -1
            continue
        for word in words:
            match = _TOKEN.match(word)
            if not match or match.group(1) not in kinds:
                raise ParseError(f"line {n}: unknown token {word!r}")
            try:
                events.append(event_cls(kind=kinds[match.group(1)], position=int(match.group(2))))
            except ValidationError as exc:
                raise ParseError(f"line {n}: invalid token {word!r}") from exc
    return diagram_cls(events=tuple(events), orientations=orientations)


def write(diagram: AnyFront, per_line: int = 16) -> str:
    header = TFRONT_HEADER if isinstance(diagram, TransverseFront) else FRONT_HEADER
    tokens = [str(ev) for ev in diagram.events]
    lines = [header]
    for start in range(0, len(tokens), per_line):
        lines.append(" ".join(tokens[start:start + per_line]))
    for c in sorted(diagram.orientations):
        lines.append(f"orient {c} {'+' if diagram.orientations[c] > 0 else '-'}")
    return "\n".join(lines) + "\n"


def read_file(path: str) -> AnyFront:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return parse(text)
