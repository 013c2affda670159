"""
Front Rendering - ASCII and SVG pictures of Legendrian and transverse fronts

ASCII draws one glyph column per event with '-' rail columns in between:
'(' / ')' for cusps and vertical tangencies, 'X' for crossings and 'x' for
transverse crossings with the ascending strand in front. Strands below a
cusp jump two rows, the picture is schematic.

SVG is drawn with matplotlib (svg backend, fixed hash salt, no date) so the
same front always produces the same bytes.
"""

from io import BytesIO
from typing import List, Optional, Sequence, Tuple, Union

import matplotlib

matplotlib.use("Agg")

from matplotlib.backends.backend_svg import FigureCanvasSVG  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402
from matplotlib.patches import PathPatch  # noqa: E402
from matplotlib.path import Path  # noqa: E402

from .front import (  # noqa: E402
    EventKind,
    FrontDiagram,
    FrontTrace,
    TransverseFront,
    TransverseKind,
    trace,
    trace_transverse,
)

AnyFront = Union[FrontDiagram, TransverseFront]

_OPENS = (EventKind.LEFT_CUSP, TransverseKind.CUP)
_CLOSES = (EventKind.RIGHT_CUSP, TransverseKind.CAP)
_GLYPH = {
    EventKind.LEFT_CUSP: "(",
    EventKind.RIGHT_CUSP: ")",
    EventKind.CROSSING: "X",
    TransverseKind.CUP: "(",
    TransverseKind.CAP: ")",
    TransverseKind.CROSSING_OVER: "X",
    TransverseKind.CROSSING_UNDER: "x",
}


def _trace(diagram: AnyFront) -> FrontTrace:
    return trace_transverse(diagram) if isinstance(diagram, TransverseFront) else trace(diagram)


def _strands_after(tr: FrontTrace, e: int) -> List[int]:
    return tr.columns[e + 1] if e + 1 < len(tr.columns) else []


def render_ascii(diagram: AnyFront) -> str:
    tr = _trace(diagram)
    events = diagram.events
    height = max((len(c) for c in tr.columns), default=0)
    if not events or height == 0:
        return ""
    rows: List[List[str]] = [[] for _ in range(height)]
    for e, ev in enumerate(events):
        before = tr.columns[e]
        after = _strands_after(tr, e)
        marked = {ev.position - 1, ev.position}
        present = len(after) if ev.kind in _OPENS else len(before)
        for r in range(height):
            if r in marked:
                rows[r].append(_GLYPH[ev.kind])
            else:
                rows[r].append("-" if r < present else " ")
        if e + 1 < len(events):
            for r in range(height):
                rows[r].append("-" if r < len(after) else " ")
    return "\n".join("".join(row).rstrip() for row in rows) + "\n"


def _cusp(x_tip: float, x_end: float, depth: int) -> Path:
    """Two quadratic branches from the tip at (x_tip, depth + 1/2), horizontal there."""
    tip = (x_tip, -(depth + 0.5))
    ctrl = (x_tip + 0.6 * (x_end - x_tip), -(depth + 0.5))
    vertices = [(x_end, -depth), ctrl, tip, ctrl, (x_end, -(depth + 1))]
    codes = [Path.MOVETO, Path.CURVE3, Path.CURVE3, Path.CURVE3, Path.CURVE3]
    return Path(vertices, codes)


def _segments(tr: FrontTrace, events: Sequence) -> List[Tuple[int, Path, bool]]:
    """(component, path, dashed) pieces of the picture, event by event."""
    pieces: List[Tuple[int, Path, bool]] = []
    for e, ev in enumerate(events):
        before = tr.columns[e]
        after = _strands_after(tr, e)
        x0, x1 = 2 * e, 2 * e + 2
        i = ev.position
        for s in sorted(set(before) & set(after)):
            if ev.kind in (EventKind.CROSSING, TransverseKind.CROSSING_OVER, TransverseKind.CROSSING_UNDER) \
                    and s in tr.crossings[e]:
                continue
            d0, d1 = before.index(s) + 1, after.index(s) + 1
            pieces.append((tr.strand_components[s], Path([(x0, -d0), (x1, -d1)]), False))
        if ev.kind in _OPENS:
            upper, _ = tr.opens[e]
            pieces.append((tr.strand_components[upper], _cusp(2 * e + 1, x1, i), False))
        elif ev.kind in _CLOSES:
            upper, _ = tr.closes[e]
            pieces.append((tr.strand_components[upper], _cusp(2 * e + 1, x0, i), False))
        else:
            a, b = tr.crossings[e]
            # the strand drawn behind is dashed; Legendrian fronts show no over/under
            behind = {TransverseKind.CROSSING_OVER: b, TransverseKind.CROSSING_UNDER: a}.get(ev.kind)
            pieces.append((tr.strand_components[a], Path([(x0, -i), (x1, -(i + 1))]), behind == a))
            pieces.append((tr.strand_components[b], Path([(x0, -(i + 1)), (x1, -i)]), behind == b))
    return pieces


def render_svg(diagram: AnyFront, unit: float = 24.0, line_width: float = 1.5, title: Optional[str] = None) -> str:
    tr = _trace(diagram)
    events = diagram.events
    width_units = 2 * max(len(events), 1)
    height_units = max((len(c) for c in tr.columns), default=0) + 1
    fig = Figure(figsize=(width_units * unit / 72.0, height_units * unit / 72.0), dpi=72)
    FigureCanvasSVG(fig)
    ax = fig.add_axes((0, 0, 1, 1))
    ax.set_xlim(0, width_units)
    ax.set_ylim(-height_units, 0)
    ax.set_axis_off()
    for component, path, dashed in _segments(tr, events):
        ax.add_patch(PathPatch(
            path,
            fill=False,
            edgecolor=f"C{component % 10}",
            linewidth=line_width,
            linestyle="--" if dashed else "-",
        ))
    if title:
        ax.text(0.2, -0.4, title, fontsize=max(unit / 2, 6), va="center")
    buf = BytesIO()
    with matplotlib.rc_context({"svg.hashsalt": "front", "svg.fonttype": "none"}):
        fig.savefig(buf, format="svg", metadata={"Date": None})
    return buf.getvalue().decode("utf-8")
