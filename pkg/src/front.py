"""
Front Projections - Legendrian and transverse links as plat-style event words

Implements:
- Tracing an event word into strands, components and oriented directions
- Classical invariants (writhe, cusps, tb, rot, pairwise linking)
- Stabilization (zigzags), Legendrian push-off (2-copy cable)
- Positive transverse push-off and the transverse -> Legendrian conversion

A front is read left to right. Strands are numbered by depth from the top.
A left cusp at position i inserts two strands at depths i, i+1, a right cusp
at i joins the strands at i, i+1, a crossing at i swaps them. Over/under of
Legendrian crossings is not stored: the strand entering at depth i (running
from upper left to lower right) is always in front.
"""

from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from .errors import InvalidComponent, InvalidDiagram, InvalidTransverseFront


class EventKind(str, Enum):
    LEFT_CUSP = "L"
    RIGHT_CUSP = "R"
    CROSSING = "X"


class TransverseKind(str, Enum):
    CUP = "C"  # left vertical tangency, two strands are born
    CAP = "D"  # right vertical tangency, two strands die
    CROSSING_OVER = "O"  # strand entering at depth i in front
    CROSSING_UNDER = "U"  # strand entering at depth i behind


class Direction(str, Enum):
    UP = "up"
    DOWN = "down"


class FrontEvent(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: EventKind
    position: int = Field(ge=1)

    def __str__(self) -> str:
        return f"{self.kind.value}{self.position}"


class TransverseEvent(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: TransverseKind
    position: int = Field(ge=1)

    def __str__(self) -> str:
        return f"{self.kind.value}{self.position}"


class FrontDiagram(BaseModel):
    """Legendrian link front. orientations maps component index -> +1 / -1 (default +1)."""

    model_config = ConfigDict(frozen=True)

    events: Tuple[FrontEvent, ...] = ()
    orientations: Dict[int, int] = Field(default_factory=dict)

    def orientation(self, component: int) -> int:
        return -1 if self.orientations.get(component, 1) < 0 else 1


class TransverseFront(BaseModel):
    model_config = ConfigDict(frozen=True)

    events: Tuple[TransverseEvent, ...] = ()
    orientations: Dict[int, int] = Field(default_factory=dict)

    def orientation(self, component: int) -> int:
        return -1 if self.orientations.get(component, 1) < 0 else 1


class ValidationReport(BaseModel):
    valid: bool
    problems: List[str] = Field(default_factory=list)
    component_count: int = 0
    crossing_count: int = 0
    # event indices touching each component, in sweep order
    components: List[List[int]] = Field(default_factory=list)


class ComponentInvariants(BaseModel):
    writhe: int
    up_cusps: int
    down_cusps: int
    tb: int
    rot: int


class ClassicalInvariants(BaseModel):
    components: List[ComponentInvariants]
    linking: List[List[int]]

    @property
    def tb(self) -> List[int]:
        return [c.tb for c in self.components]

    @property
    def rot(self) -> List[int]:
        return [c.rot for c in self.components]


class FrontTrace(BaseModel):
    """Strand-level bookkeeping of a closed event word.

    opens/closes map event index -> (upper strand, lower strand);
    crossings map event index -> (strand entering at depth i, strand at i+1).
    directions are +1 for rightward traversal, -1 for leftward.
    """

    strand_components: List[int]
    directions: List[int]
    opens: Dict[int, Tuple[int, int]]
    closes: Dict[int, Tuple[int, int]]
    crossings: Dict[int, Tuple[int, int]]
    columns: List[List[int]]  # strands (top to bottom) before each event
    component_count: int
    first_open: List[int]  # first open event of each component


_OPEN = "open"
_CLOSE = "close"
_CROSS = "cross"

_STEP = {
    EventKind.LEFT_CUSP: _OPEN,
    EventKind.RIGHT_CUSP: _CLOSE,
    EventKind.CROSSING: _CROSS,
    TransverseKind.CUP: _OPEN,
    TransverseKind.CAP: _CLOSE,
    TransverseKind.CROSSING_OVER: _CROSS,
    TransverseKind.CROSSING_UNDER: _CROSS,
}


def _sweep(events: Sequence, orientation) -> Tuple[Optional[FrontTrace], List[str]]:
    """Follow strands through the word; returns (trace, problems)."""
    problems: List[str] = []
    column: List[int] = []
    columns: List[List[int]] = []
    ends: List[List[int]] = []  # per strand: [open event, close event]
    opens: Dict[int, Tuple[int, int]] = {}
    closes: Dict[int, Tuple[int, int]] = {}
    crossings: Dict[int, Tuple[int, int]] = {}

    for e, ev in enumerate(events):
        step = _STEP[ev.kind]
        i, k = ev.position, len(column)
        columns.append(list(column))
        if step == _OPEN:
            if not 1 <= i <= k + 1:
                problems.append(f"event {e} ({ev}): position out of range, {k} strands present")
                return None, problems
            upper, lower = len(ends), len(ends) + 1
            ends.extend([[e, -1], [e, -1]])
            column[i - 1:i - 1] = [upper, lower]
            opens[e] = (upper, lower)
        else:
            if not 1 <= i <= k - 1:
                problems.append(f"event {e} ({ev}): position out of range, {k} strands present")
                return None, problems
            a, b = column[i - 1], column[i]
            if step == _CLOSE:
                del column[i - 1:i + 1]
                ends[a][1] = ends[b][1] = e
                closes[e] = (a, b)
            else:
                column[i - 1], column[i] = b, a
                crossings[e] = (a, b)
    if column:
        problems.append(f"diagram not closed (strand count ends at {len(column)})")
        return None, problems

    # every strand runs open cusp -> close cusp; its partner at either end
    partner_at_open = {}
    partner_at_close = {}
    for u, l in opens.values():
        partner_at_open[u], partner_at_open[l] = l, u
    for u, l in closes.values():
        partner_at_close[u], partner_at_close[l] = l, u

    strand_components = [-1] * len(ends)
    directions = [0] * len(ends)
    first_open: List[int] = []
    for e in sorted(opens):
        upper, _ = opens[e]
        if strand_components[upper] >= 0:
            continue
        c = len(first_open)
        first_open.append(e)
        s, d = upper, orientation(c)
        # walk the cycle: partners across any cusp run the opposite way
        while strand_components[s] < 0:
            strand_components[s] = c
            directions[s] = d
            s = partner_at_close[s] if d > 0 else partner_at_open[s]
            d = -d
            strand_components[s] = c
            directions[s] = d
            s = partner_at_open[s] if d < 0 else partner_at_close[s]
            d = -d

    trace = FrontTrace(
        strand_components=strand_components,
        directions=directions,
        opens=opens,
        closes=closes,
        crossings=crossings,
        columns=columns,
        component_count=len(first_open),
        first_open=first_open,
    )
    return trace, problems


def _report(events: Sequence, trace: Optional[FrontTrace], problems: List[str]) -> ValidationReport:
    if trace is None:
        return ValidationReport(valid=False, problems=problems)
    touched: List[List[int]] = [[] for _ in range(trace.component_count)]
    for e in range(len(events)):
        comps = {trace.strand_components[s] for s in _event_strands(trace, e)}
        for c in sorted(comps):
            touched[c].append(e)
    return ValidationReport(
        valid=not problems,
        problems=problems,
        component_count=trace.component_count,
        crossing_count=len(trace.crossings),
        components=touched,
    )


def _event_strands(trace: FrontTrace, e: int) -> Tuple[int, int]:
    return trace.opens.get(e) or trace.closes.get(e) or trace.crossings[e]


def validate(diagram: FrontDiagram) -> ValidationReport:
    trace, problems = _sweep(diagram.events, diagram.orientation)
    return _report(diagram.events, trace, problems)


def trace(diagram: FrontDiagram) -> FrontTrace:
    result, problems = _sweep(diagram.events, diagram.orientation)
    if result is None:
        raise InvalidDiagram("; ".join(problems))
    return result


def trace_transverse(tfront: TransverseFront) -> FrontTrace:
    result, problems = _sweep(tfront.events, tfront.orientation)
    if result is None:
        raise InvalidTransverseFront("; ".join(problems))
    return result


def _check_component(component: int, count: int) -> None:
    if not 0 <= component < count:
        raise InvalidComponent(f"component {component} does not exist ({count} components)")


def _is_down_open(tr: FrontTrace, e: int) -> bool:
    upper, _ = tr.opens[e]
    return tr.directions[upper] < 0


def _is_down_close(tr: FrontTrace, e: int) -> bool:
    upper, _ = tr.closes[e]
    return tr.directions[upper] > 0


def _legendrian_sign(tr: FrontTrace, e: int) -> int:
    a, b = tr.crossings[e]
    return tr.directions[a] * tr.directions[b]


def classical_invariants(diagram: FrontDiagram) -> ClassicalInvariants:
    tr = trace(diagram)
    n = tr.component_count
    writhe, up, down = [0] * n, [0] * n, [0] * n
    linked = [[0] * n for _ in range(n)]
    for e in tr.opens:
        c = tr.strand_components[tr.opens[e][0]]
        if _is_down_open(tr, e):
            down[c] += 1
        else:
            up[c] += 1
    for e in tr.closes:
        c = tr.strand_components[tr.closes[e][0]]
        if _is_down_close(tr, e):
            down[c] += 1
        else:
            up[c] += 1
    for e, (a, b) in tr.crossings.items():
        ca, cb = tr.strand_components[a], tr.strand_components[b]
        sign = _legendrian_sign(tr, e)
        if ca == cb:
            writhe[ca] += sign
        else:
            linked[ca][cb] += sign
            linked[cb][ca] += sign
    comps = [
        ComponentInvariants(
            writhe=writhe[c],
            up_cusps=up[c],
            down_cusps=down[c],
            tb=writhe[c] - (up[c] + down[c]) // 2,
            rot=(down[c] - up[c]) // 2,
        )
        for c in range(n)
    ]
    # each pair of components crosses an even number of times
    lk = [[linked[i][j] // 2 for j in range(n)] for i in range(n)]
    return ClassicalInvariants(components=comps, linking=lk)


def negative_self_linking(diagram: FrontDiagram, component: int) -> int:
    """Self-linking number of the negative transverse push-off, tb + rot."""
    inv = classical_invariants(diagram)
    _check_component(component, len(inv.components))
    c = inv.components[component]
    return c.tb + c.rot


def _events(spec: Sequence[Tuple[EventKind, int]]) -> Tuple[FrontEvent, ...]:
    return tuple(FrontEvent(kind=k, position=p) for k, p in spec)


L, R, X = EventKind.LEFT_CUSP, EventKind.RIGHT_CUSP, EventKind.CROSSING


def standard_unknot() -> FrontDiagram:
    """Two-cusp unknot, tb = -1, rot = 0."""
    return FrontDiagram(events=_events([(L, 1), (R, 1)]))


def standard_trefoil() -> FrontDiagram:
    """Right-handed trefoil with tb = 1, rot = 0."""
    return FrontDiagram(events=_events([(L, 1), (L, 3), (X, 2), (X, 2), (X, 2), (R, 1), (R, 1)]))


def split_union(a: FrontDiagram, b: FrontDiagram) -> FrontDiagram:
    """Place b to the right of a; b's components are renumbered after a's."""
    offset = trace(a).component_count
    orientations = dict(a.orientations)
    orientations.update({c + offset: o for c, o in b.orientations.items()})
    return FrontDiagram(events=a.events + b.events, orientations=orientations)


def reverse(diagram: FrontDiagram, component: int) -> FrontDiagram:
    tr = trace(diagram)
    _check_component(component, tr.component_count)
    orientations = dict(diagram.orientations)
    orientations[component] = -diagram.orientation(component)
    return FrontDiagram(events=diagram.events, orientations=orientations)


def _restricted_events(tr: FrontTrace, events: Sequence, component: int) -> List[Tuple[object, int]]:
    kept = []
    for e, ev in enumerate(events):
        pair = _event_strands(tr, e)
        if any(tr.strand_components[s] != component for s in pair):
            continue
        above = tr.columns[e][:ev.position - 1]
        depth = sum(1 for s in above if tr.strand_components[s] == component) + 1
        kept.append((ev.kind, depth))
    return kept


def restrict(diagram: FrontDiagram, component: int) -> FrontDiagram:
    """The single-component diagram of one component, crossings with others dropped."""
    tr = trace(diagram)
    _check_component(component, tr.component_count)
    kept = _restricted_events(tr, diagram.events, component)
    return FrontDiagram(
        events=tuple(FrontEvent(kind=k, position=p) for k, p in kept),
        orientations={0: diagram.orientation(component)},
    )


def stabilize(diagram: FrontDiagram, component: int, direction: Direction) -> FrontDiagram:
    """Add one zigzag right after the component's first left cusp.

    On a rightward strand the ascending Z (L(i), R(i+1)) has two up-cusps and
    the descending Z (L(i+1), R(i)) two down-cusps; on a leftward strand it is
    the other way round.
    """
    tr = trace(diagram)
    _check_component(component, tr.component_count)
    e = tr.first_open[component]
    i = diagram.events[e].position
    rightward = tr.directions[tr.opens[e][0]] > 0
    ascending = rightward == (Direction(direction) == Direction.UP)
    zigzag = [(L, i), (R, i + 1)] if ascending else [(L, i + 1), (R, i)]
    events = diagram.events[:e + 1] + _events(zigzag) + diagram.events[e + 1:]
    return FrontDiagram(events=events, orientations=dict(diagram.orientations))


def legendrian_pushoff(diagram: FrontDiagram, component: int) -> FrontDiagram:
    """Replace a component by itself plus its push-off in the z direction.

    The copy sits just above every strand of the original. Each cusp of the
    original produces one negative crossing between copy and original, so
    lk(copy, original) = w - #cusps/2 = tb. The copy takes index `component`,
    the original moves to `component + 1`.
    """
    tr = trace(diagram)
    _check_component(component, tr.component_count)
    doubled = [c == component for c in tr.strand_components]

    out: List[Tuple[EventKind, int]] = []
    for e, ev in enumerate(diagram.events):
        above = tr.columns[e][:ev.position - 1]
        p = sum(2 if doubled[s] else 1 for s in above) + 1
        if ev.kind == L:
            if doubled[tr.opens[e][0]]:
                out += [(L, p), (L, p + 2), (X, p + 1)]
            else:
                out.append((L, p))
        elif ev.kind == R:
            if doubled[tr.closes[e][0]]:
                out += [(X, p + 1), (R, p), (R, p)]
            else:
                out.append((R, p))
        else:
            a, b = tr.crossings[e]
            if doubled[a] and doubled[b]:
                out += [(X, p + 1), (X, p), (X, p + 2), (X, p + 1)]
            elif doubled[a]:
                out += [(X, p + 1), (X, p)]
            elif doubled[b]:
                out += [(X, p), (X, p + 1)]
            else:
                out.append((X, p))

    orientations = {}
    for c in range(tr.component_count):
        target = c if c < component else c + 1
        orientations[target] = diagram.orientation(c)
    orientations[component] = diagram.orientation(component)
    return FrontDiagram(events=_events(out), orientations=orientations)


def positive_transverse_pushoff(diagram: FrontDiagram, component: Optional[int] = None) -> TransverseFront:
    """Smooth up-cusps into upward tangencies, turn down-cusps into kinks.

    A kink at a down left cusp is Cup then crossing; the strand leaving the
    cup on top runs rightwards and the other leftwards, so only the O
    crossing is transverse and its sign is -1. Hence sl = w - D = tb - rot.
    With component=None every component is pushed off.
    """
    if component is not None:
        diagram = restrict(diagram, component)
    tr = trace(diagram)
    cup, cap = TransverseKind.CUP, TransverseKind.CAP
    over = TransverseKind.CROSSING_OVER
    out: List[Tuple[TransverseKind, int]] = []
    for e, ev in enumerate(diagram.events):
        i = ev.position
        if ev.kind == L:
            out += [(cup, i), (over, i)] if _is_down_open(tr, e) else [(cup, i)]
        elif ev.kind == R:
            out += [(over, i), (cap, i)] if _is_down_close(tr, e) else [(cap, i)]
        else:
            out.append((over, i))
    # every cup of the result has its upper strand running rightwards
    return TransverseFront(
        events=tuple(TransverseEvent(kind=k, position=p) for k, p in out),
        orientations={c: 1 for c in range(tr.component_count)},
    )


def _transverse_sign(tr: FrontTrace, e: int, kind: TransverseKind) -> int:
    sign = _legendrian_sign(tr, e)
    return sign if kind == TransverseKind.CROSSING_OVER else -sign


def _is_forbidden(tr: FrontTrace, e: int, kind: TransverseKind) -> bool:
    # ascending strand in front while both strands move downwards
    a, b = tr.crossings[e]
    return kind == TransverseKind.CROSSING_UNDER and tr.directions[a] > 0 and tr.directions[b] < 0


def validate_transverse(tfront: TransverseFront) -> ValidationReport:
    tr, problems = _sweep(tfront.events, tfront.orientation)
    if tr is None:
        return _report(tfront.events, tr, problems)
    problems = list(problems)
    for e, ev in enumerate(tfront.events):
        if ev.kind == TransverseKind.CUP and tr.directions[tr.opens[e][0]] < 0:
            problems.append(f"event {e} ({ev}): downward vertical tangency")
        elif ev.kind == TransverseKind.CAP and tr.directions[tr.closes[e][0]] > 0:
            problems.append(f"event {e} ({ev}): downward vertical tangency")
        elif e in tr.crossings and _is_forbidden(tr, e, ev.kind):
            problems.append(f"event {e} ({ev}): crossing cannot be positively transverse")
    return _report(tfront.events, tr, problems)


def _valid_transverse_trace(tfront: TransverseFront) -> FrontTrace:
    report = validate_transverse(tfront)
    if not report.valid:
        raise InvalidTransverseFront("; ".join(report.problems))
    return trace_transverse(tfront)


def transverse_writhe(tfront: TransverseFront) -> List[int]:
    """Writhe of every component (no validity requirement)."""
    tr = trace_transverse(tfront)
    writhe = [0] * tr.component_count
    for e, (a, b) in tr.crossings.items():
        if tr.strand_components[a] == tr.strand_components[b]:
            writhe[tr.strand_components[a]] += _transverse_sign(tr, e, tfront.events[e].kind)
    return writhe


def self_linking(tfront: TransverseFront, component: int) -> int:
    tr = _valid_transverse_trace(tfront)
    _check_component(component, tr.component_count)
    return transverse_writhe(tfront)[component]


def transverse_to_legendrian(tfront: TransverseFront) -> FrontDiagram:
    """Legendrian link whose positive push-off has the same self-linking numbers.

    Upward tangencies become cusps and O crossings stay. A U crossing gets a
    zigzag on an upward strand (the shallower one when both point up), which
    puts that strand's continuation on the other side through an O crossing
    of the same sign. The new cusps are up-cusps, so sl = w is unchanged.
    """
    tr = _valid_transverse_trace(tfront)
    out: List[Tuple[EventKind, int]] = []
    for e, ev in enumerate(tfront.events):
        i = ev.position
        if ev.kind == TransverseKind.CUP:
            out.append((L, i))
        elif ev.kind == TransverseKind.CAP:
            out.append((R, i))
        elif ev.kind == TransverseKind.CROSSING_OVER:
            out.append((X, i))
        else:
            a, _ = tr.crossings[e]
            if tr.directions[a] < 0:
                out += [(L, i + 2), (X, i + 1), (R, i)]
            else:
                out += [(L, i), (X, i + 1), (R, i + 2)]
    return FrontDiagram(events=_events(out), orientations={c: 1 for c in range(tr.component_count)})
