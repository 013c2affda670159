"""
Lutz Twists as Contact Surgery - the (+1, +1) pair on a knot and its push-off

Implements:
- lutz_pair: (+1)-surgery on L1 and on its push-off L2 with two zigzags
- The transverse pipeline (transverse front -> Legendrian -> Lutz pair)
- Overtwisted contact structures on S^3 in every d3 class but -1/2
- verify_lutz: triviality, overtwisted disc and d3 change in one report
"""

from fractions import Fraction
from enum import Enum
from typing import Dict, List, Optional, Sequence, Union

from pydantic import BaseModel, ConfigDict

from .errors import DimensionMismatch, InvalidTransverseFront, NotACancellingPair, ZeroNotAllowed
from .front import (
    Direction,
    FrontDiagram,
    TransverseFront,
    classical_invariants,
    positive_transverse_pushoff,
    restrict,
    self_linking,
    standard_trefoil,
    standard_unknot,
    transverse_to_legendrian,
)
from .homotopy import D3Value, d3
from .surgery import (
    AbstractSource,
    ContactCoefficient,
    DerivedSource,
    ExplicitSource,
    IntSymMatrix,
    OvertwistedDisc,
    SurgeryComponent,
    SurgeryPresentation,
    build_presentation,
    cancel_meridian_pair,
    disjoint_union,
    disc_figure,
    handle_slide,
    overtwisted_disc,
)

ST_D3 = Fraction(-1, 2)  # d3 of the standard structure on S^3


class LutzSign(str, Enum):
    POSITIVE = "pos"
    NEGATIVE = "neg"

    @property
    def zigzag(self) -> Direction:
        return Direction.UP if self == LutzSign.POSITIVE else Direction.DOWN


Number = Union[int, Fraction]


def lutz_pair(
    diagram: FrontDiagram,
    component: int,
    sign: LutzSign,
    coefficients: Optional[Dict[int, ContactCoefficient]] = None,
) -> SurgeryPresentation:
    """Surgery presentation of a simple Lutz twist along the transverse push-off of a component.

    coefficients puts surgeries on other components of the same front (a host
    link L1 may be linked with); they come first, followed by L1 and L2.
    Components not listed stay in the diagram without surgery.
    """
    sign = LutzSign(sign)
    host = dict(coefficients or {})
    host.pop(component, None)
    components: List[SurgeryComponent] = [
        SurgeryComponent(name=f"H{k}", source=ExplicitSource(component=k), coefficient=ContactCoefficient(r))
        for k, r in sorted(host.items())
    ]
    # InvalidComponent for a missing component comes from build_presentation
    base = len(components)
    components.append(SurgeryComponent(
        name="L1", source=ExplicitSource(component=component), coefficient=ContactCoefficient.PLUS,
    ))
    components.append(SurgeryComponent(
        name="L2",
        source=DerivedSource(base=base, zigzags=(sign.zigzag, sign.zigzag)),
        coefficient=ContactCoefficient.PLUS,
    ))
    return build_presentation(diagram, components)


def lutz_pair_on_host(
    host: SurgeryPresentation,
    tb: int,
    rot: int,
    linking: Sequence[int],
    sign: LutzSign,
) -> SurgeryPresentation:
    """Append a Lutz pair on a knot given by its invariants and its linking with the host.

    The host may be abstract (slid or random); L2 links every host component
    like L1 does and links L1 tb times.
    """
    sign = LutzSign(sign)
    n = len(host.components)
    v = [int(x) for x in linking]
    if len(v) != n:
        raise DimensionMismatch(f"linking vector of length {len(v)} for {n} host components")
    shift = 2 if sign == LutzSign.NEGATIVE else -2
    rows = [list(r) + [v[i], v[i]] for i, r in enumerate(host.linking.entries)]
    rows.append(v + [tb + 1, tb])
    rows.append(v + [tb, tb - 1])
    pair = (
        SurgeryComponent(name="L1", source=AbstractSource(label="L1"), coefficient=ContactCoefficient.PLUS, tb=tb),
        SurgeryComponent(name="L2", source=AbstractSource(label="L2"), coefficient=ContactCoefficient.PLUS,
                         tb=tb - 2),
    )
    return SurgeryPresentation(
        components=host.components + pair,
        linking=IntSymMatrix(entries=tuple(tuple(r) for r in rows)),
        rotations=host.rotations + (rot, rot + shift),
        front=host.front,
        diagram=host.diagram,
    )


def expected_d3_change(t: Number, r: Number, sign: LutzSign) -> Number:
    """r - t for up-zigzags, -(t + r) for down-zigzags."""
    return r - t if LutzSign(sign) == LutzSign.POSITIVE else -(t + r)


def lutz_on_transverse(tfront: TransverseFront, component: int, sign: LutzSign) -> SurgeryPresentation:
    diagram = transverse_to_legendrian(tfront)
    sl = self_linking(tfront, component)
    pushed = self_linking(positive_transverse_pushoff(diagram, component), 0)
    if pushed != sl:
        raise InvalidTransverseFront(f"Legendrian approximation changed sl from {sl} to {pushed}")
    return lutz_pair(diagram, component, sign)


def s3_overtwisted(n: int) -> SurgeryPresentation:
    """Overtwisted S^3 with d3 = n - 1/2, from |n| split Lutz pairs.

    Unknots (sl = -1) raise d3 by one each, tb = 1 trefoils (sl = +1)
    lower it by one each.
    """
    if n == 0:
        raise ZeroNotAllowed("n = 0 is the standard tight structure, not an overtwisted one")
    block = lutz_pair(standard_unknot() if n > 0 else standard_trefoil(), 0, LutzSign.POSITIVE)
    result = SurgeryPresentation()
    for _ in range(abs(n)):
        result = disjoint_union(result, block)
    return result


class LutzFigure(BaseModel):
    """Explicit front of L1 with K and L2; indices into the figure's components."""

    model_config = ConfigDict(frozen=True)

    diagram: FrontDiagram
    l1: int
    k: int
    l2: int


def lutz_figure(diagram: FrontDiagram, component: int, sign: LutzSign) -> LutzFigure:
    """K = push-off of L1 with one zigzag, L2 = push-off of K with one more."""
    figure = disc_figure(diagram, component, LutzSign(sign).zigzag)
    return LutzFigure(diagram=figure, l1=component + 2, k=component + 1, l2=component)


class LutzReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    sign: LutzSign
    tb: int
    rot: int
    linking: List[List[int]]
    trivial: bool
    disc: OvertwistedDisc
    figure_agrees: bool
    d3: D3Value
    d3_change: Fraction
    expected_change: Fraction

    @property
    def overtwisted(self) -> bool:
        return self.disc.passed and self.figure_agrees

    @property
    def d3_ok(self) -> bool:
        return self.d3_change == self.expected_change

    @property
    def passed(self) -> bool:
        return self.trivial and self.overtwisted and self.d3_ok


def is_topologically_trivial(pres: SurgeryPresentation, l1: int, l2: int) -> bool:
    """Slide L2 over L1 (sign -1) and cancel it as a 0-framed meridian of L1."""
    slid = handle_slide(pres, l2, l1, -1)
    try:
        rest = cancel_meridian_pair(slid, l1, l2)
    except NotACancellingPair:
        return False
    return len(rest.components) == len(pres.components) - 2


def _figure_agrees(pres: SurgeryPresentation, figure: LutzFigure, disc: OvertwistedDisc, l1: int, l2: int) -> bool:
    inv = classical_invariants(figure.diagram)
    lk = inv.linking
    return (
        lk[figure.k][figure.l1] == disc.lk_k_l1
        and lk[figure.k][figure.l2] == disc.lk_k_l2
        and inv.components[figure.k].tb == disc.contact_framing
        and lk[figure.l1][figure.l2] == pres.linking[l1, l2]
        and inv.components[figure.l2].tb == pres.components[l2].tb
        and inv.components[figure.l2].rot == pres.rotations[l2]
    )


def verify_lutz(diagram: FrontDiagram, component: int, sign: LutzSign) -> LutzReport:
    sign = LutzSign(sign)
    pres = lutz_pair(diagram, component, sign)
    l1, l2 = 0, 1
    knot = classical_invariants(restrict(diagram, component)).components[0]
    disc = overtwisted_disc(pres)
    figure = lutz_figure(diagram, component, sign)
    value = d3(pres)
    return LutzReport(
        sign=sign,
        tb=knot.tb,
        rot=knot.rot,
        linking=pres.linking.rows(),
        trivial=is_topologically_trivial(pres, l1, l2),
        disc=disc,
        figure_agrees=_figure_agrees(pres, figure, disc, l1, l2),
        d3=value,
        d3_change=value.value - ST_D3,
        expected_change=Fraction(expected_d3_change(knot.tb, knot.rot, sign)),
    )

