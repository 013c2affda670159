"""
Contact Surgery Presentations - (+1)/(-1) surgery on Legendrian links in S^3

Implements:
- Presentations built from a front (explicit components and derived push-offs)
- Linking matrix with topological framings tb + r on the diagonal
- Handle slides, meridian cancellation, orientation reversal
- First homology of the surgered manifold (Smith invariant factors)
- The framing bookkeeping behind the overtwisted disc of a Lutz pair

A presentation stores its linking matrix and rotation vector as data; slid
components lose their front and become abstract, only the matrix survives.
"""

import json
from enum import IntEnum
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .errors import InvalidComponent, MalformedPair, NotACancellingPair, ParseError, UnresolvableLinking
from .exactlinalg import invariant_factors
from .front import (
    Direction,
    FrontDiagram,
    classical_invariants,
    legendrian_pushoff,
    split_union,
    stabilize,
    trace,
)
from .frontfile import parse as parse_front
from .frontfile import read_file
from .frontfile import write as write_front


class ContactCoefficient(IntEnum):
    PLUS = 1
    MINUS = -1

    def __str__(self) -> str:
        return "+1" if self > 0 else "-1"


class ExplicitSource(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["explicit"] = "explicit"
    component: int = Field(ge=0)  # component index in the presentation's front


class DerivedSource(BaseModel):
    """Legendrian push-off of another presentation component plus zigzags."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["derived"] = "derived"
    base: int = Field(ge=0)  # index in the presentation, must be explicit
    zigzags: Tuple[Direction, ...] = ()


class AbstractSource(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["abstract"] = "abstract"
    label: str


Source = Union[ExplicitSource, DerivedSource, AbstractSource]


class SurgeryComponent(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    source: Source = Field(discriminator="kind")
    coefficient: ContactCoefficient
    tb: Optional[int] = None  # unknown once the component has been slid


class IntSymMatrix(BaseModel):
    model_config = ConfigDict(frozen=True)

    entries: Tuple[Tuple[int, ...], ...] = ()

    @model_validator(mode="after")
    def _symmetric(self) -> "IntSymMatrix":
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise ValueError("linking matrix must be square")
        if any(self.entries[i][j] != self.entries[j][i] for i in range(n) for j in range(i)):
            raise ValueError("linking matrix must be symmetric")
        return self

    @property
    def dimension(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i][j]

    def rows(self) -> List[List[int]]:
        return [list(row) for row in self.entries]


class SurgeryPresentation(BaseModel):
    model_config = ConfigDict(frozen=True)

    components: Tuple[SurgeryComponent, ...] = ()
    linking: IntSymMatrix = IntSymMatrix()
    rotations: Tuple[int, ...] = ()
    front: Optional[str] = None  # file reference of the front, if any
    diagram: Optional[FrontDiagram] = None

    @model_validator(mode="after")
    def _consistent(self) -> "SurgeryPresentation":
        n = len(self.components)
        if self.linking.dimension != n or len(self.rotations) != n:
            raise ValueError(f"{n} components but a {self.linking.dimension}x{self.linking.dimension} "
                             f"linking matrix and {len(self.rotations)} rotation numbers")
        return self

    @property
    def framings(self) -> Tuple[int, ...]:
        return tuple(self.linking[i, i] for i in range(len(self.components)))

    @property
    def coefficients(self) -> Tuple[int, ...]:
        return tuple(int(c.coefficient) for c in self.components)


class OvertwistedDisc(BaseModel):
    """Framing data of the disc bounded by K in the surgered manifold."""

    t: int
    lk_k_l1: int
    lk_k_l2: int
    disc_framing: int
    contact_framing: int
    meridian_route: Tuple[int, int, int]  # (lk with L1, lk with L2, framing) of L1 - K'
    passed: bool


def topological_framing(tb: int, r: ContactCoefficient) -> int:
    return tb + int(r)


def _underlying(components: Sequence[SurgeryComponent], i: int) -> int:
    source = components[i].source
    if isinstance(source, ExplicitSource):
        return source.component
    base = source.base if isinstance(source, DerivedSource) else -1
    if not 0 <= base < len(components) or not isinstance(components[base].source, ExplicitSource):
        raise UnresolvableLinking(f"component {components[i].name}: base {base} is not an explicit component")
    return components[base].source.component


def build_presentation(
    diagram: FrontDiagram,
    components: Sequence[SurgeryComponent],
    front: Optional[str] = None,
) -> SurgeryPresentation:
    """Linking data of explicit components from the front, derived ones from the push-off rules.

    A derived component has tb = tb(base) - #zigzags, rot = rot(base) + #Down - #Up,
    links its base tb(base) times and every other component like its base does.
    """
    inv = classical_invariants(diagram)
    n = len(components)
    count = len(inv.components)
    for c in components:
        if isinstance(c.source, AbstractSource):
            raise UnresolvableLinking(f"component {c.name}: abstract components cannot be built from a front")
    under = [_underlying(components, i) for i in range(n)]
    for i, k in enumerate(under):
        if not 0 <= k < count:
            raise InvalidComponent(f"component {components[i].name}: front has no component {k}")
    explicit = [under[i] for i in range(n) if isinstance(components[i].source, ExplicitSource)]
    if len(set(explicit)) != len(explicit):
        raise InvalidComponent("a front component may carry at most one explicit surgery")

    tbs, rots = [], []
    for i, c in enumerate(components):
        base = inv.components[under[i]]
        zz = c.source.zigzags if isinstance(c.source, DerivedSource) else ()
        tbs.append(base.tb - len(zz))
        rots.append(base.rot + sum(1 for z in zz if z == Direction.DOWN) - sum(1 for z in zz if z == Direction.UP))

    M = [[0] * n for _ in range(n)]
    for i in range(n):
        M[i][i] = topological_framing(tbs[i], components[i].coefficient)
        for j in range(i + 1, n):
            if under[i] != under[j]:
                M[i][j] = M[j][i] = inv.linking[under[i]][under[j]]
            else:
                # two push-offs of one knot link tb(knot) times
                M[i][j] = M[j][i] = inv.components[under[i]].tb
    comps = tuple(c.model_copy(update={"tb": tbs[i]}) for i, c in enumerate(components))
    return SurgeryPresentation(
        components=comps,
        linking=IntSymMatrix(entries=tuple(tuple(r) for r in M)),
        rotations=tuple(rots),
        front=front,
        diagram=diagram,
    )


def linking_matrix(pres: SurgeryPresentation) -> IntSymMatrix:
    return pres.linking


def _check_index(pres: SurgeryPresentation, *indices: int) -> None:
    n = len(pres.components)
    for i in indices:
        if not 0 <= i < n:
            raise IndexError(f"component index {i} out of range ({n} components)")


def _slide_rows(M: List[List[int]], i: int, j: int, sign: int) -> List[List[int]]:
    """P^T M P for the basis change L_i -> L_i + sign·L_j."""
    n = len(M)
    out = [row[:] for row in M]
    for k in range(n):
        out[i][k] = M[i][k] + sign * M[j][k]
    for k in range(n):
        out[k][i] = out[i][k]
    out[i][i] = M[i][i] + M[j][j] + 2 * sign * M[i][j]
    return out


def handle_slide(pres: SurgeryPresentation, i: int, j: int, sign: int) -> SurgeryPresentation:
    """Slide component i over component j: L_i becomes L_i + sign·L_j."""
    _check_index(pres, i, j)
    if i == j:
        raise IndexError("a component cannot slide over itself")
    if sign not in (1, -1):
        raise ValueError("slide sign must be +1 or -1")
    M = _slide_rows(pres.linking.rows(), i, j, sign)
    rotations = list(pres.rotations)
    rotations[i] += sign * rotations[j]
    ci, cj = pres.components[i], pres.components[j]
    label = f"({ci.name}{'+' if sign > 0 else '-'}{cj.name})"
    components = list(pres.components)
    components[i] = SurgeryComponent(name=label, source=AbstractSource(label=label), coefficient=ci.coefficient)
    return pres.model_copy(update={
        "components": tuple(components),
        "linking": IntSymMatrix(entries=tuple(tuple(r) for r in M)),
        "rotations": tuple(rotations),
    })


def reverse_component(pres: SurgeryPresentation, i: int) -> SurgeryPresentation:
    """Reverse the orientation of component i (negates its off-diagonal linking and rot)."""
    _check_index(pres, i)
    M = pres.linking.rows()
    for k in range(len(M)):
        if k != i:
            M[i][k] = -M[i][k]
            M[k][i] = -M[k][i]
    rotations = list(pres.rotations)
    rotations[i] = -rotations[i]
    return pres.model_copy(update={
        "linking": IntSymMatrix(entries=tuple(tuple(r) for r in M)),
        "rotations": tuple(rotations),
    })


def _delete(pres: SurgeryPresentation, drop: Sequence[int]) -> SurgeryPresentation:
    keep = [k for k in range(len(pres.components)) if k not in set(drop)]
    remap = {old: new for new, old in enumerate(keep)}
    components = []
    for k in keep:
        c = pres.components[k]
        if isinstance(c.source, DerivedSource):
            if c.source.base not in remap:
                c = c.model_copy(update={"source": AbstractSource(label=c.name)})
            else:
                c = c.model_copy(update={"source": c.source.model_copy(update={"base": remap[c.source.base]})})
        components.append(c)
    M = pres.linking.rows()
    return pres.model_copy(update={
        "components": tuple(components),
        "linking": IntSymMatrix(entries=tuple(tuple(M[a][b] for b in keep) for a in keep)),
        "rotations": tuple(pres.rotations[k] for k in keep),
    })


def cancel_meridian_pair(pres: SurgeryPresentation, knot: int, meridian: int) -> SurgeryPresentation:
    """Remove a knot together with a 0-framed meridian of it.

    Every other component is first slid over the meridian until it no longer
    links the knot; with a 0-framed meridian that links nothing else these
    slides leave all framings and remaining linking numbers unchanged.
    """
    _check_index(pres, knot, meridian)
    M = pres.linking
    n = len(pres.components)
    if knot == meridian:
        raise NotACancellingPair("knot and meridian must be different components")
    if M[meridian, meridian] != 0:
        raise NotACancellingPair(f"meridian framing is {M[meridian, meridian]}, expected 0")
    eps = M[knot, meridian]
    if abs(eps) != 1:
        raise NotACancellingPair(f"knot and meridian link {eps} times, expected +-1")
    stray = [k for k in range(n) if k not in (knot, meridian) and M[meridian, k] != 0]
    if stray:
        raise NotACancellingPair(f"meridian links other components: {stray}")

    for k in range(n):
        if k in (knot, meridian):
            continue
        a = pres.linking[k, knot]
        sign = -eps if a > 0 else eps
        for _ in range(abs(a)):
            pres = handle_slide(pres, k, meridian, sign)
    return _delete(pres, [knot, meridian])


def first_homology(pres: SurgeryPresentation) -> List[int]:
    """Invariant factors of H_1: [] for a homology sphere, 0 per free summand."""
    return invariant_factors(pres.linking.rows())


def disjoint_union(a: SurgeryPresentation, b: SurgeryPresentation) -> SurgeryPresentation:
    """Split union of two presentations (a connected sum of the surgered manifolds)."""
    if not b.components and b.diagram is None:
        return a
    if not a.components and a.diagram is None:
        return b
    if a.diagram is not None and b.diagram is not None:
        offset = trace(a.diagram).component_count
        diagram = split_union(a.diagram, b.diagram)
    else:
        offset, diagram = 0, None
    shift = len(a.components)
    shifted = []
    for c in b.components:
        if isinstance(c.source, ExplicitSource):
            source = c.source.model_copy(update={"component": c.source.component + offset})
        elif isinstance(c.source, DerivedSource):
            source = c.source.model_copy(update={"base": c.source.base + shift})
        else:
            source = c.source
        shifted.append(c.model_copy(update={"source": source}))
    if diagram is None:
        # front references would dangle
        shifted = [c if isinstance(c.source, AbstractSource) else
                   c.model_copy(update={"source": AbstractSource(label=c.name)}) for c in shifted]
        first = [c if isinstance(c.source, AbstractSource) else
                 c.model_copy(update={"source": AbstractSource(label=c.name)}) for c in a.components]
    else:
        first = list(a.components)
    n, m = len(a.components), len(b.components)
    rows = [list(r) + [0] * m for r in a.linking.entries] + [[0] * n + list(r) for r in b.linking.entries]
    return SurgeryPresentation(
        components=tuple(first + shifted),
        linking=IntSymMatrix(entries=tuple(tuple(r) for r in rows)),
        rotations=a.rotations + b.rotations,
        front=a.front if a.front == b.front else None,
        diagram=diagram,
    )


def inverse_pair(diagram: FrontDiagram, component: int) -> SurgeryPresentation:
    """Contact (+1)-surgery on L and (-1)-surgery on its push-off; they cancel."""
    components = [
        SurgeryComponent(name="L", source=ExplicitSource(component=component),
                         coefficient=ContactCoefficient.PLUS),
        SurgeryComponent(name="L'", source=DerivedSource(base=0), coefficient=ContactCoefficient.MINUS),
    ]
    return build_presentation(diagram, components)


def find_lutz_pair(pres: SurgeryPresentation) -> Tuple[int, int]:
    """Indices (L1, L2) of the last Lutz pair in the presentation."""
    for i in range(len(pres.components) - 1, -1, -1):
        c = pres.components[i]
        if not isinstance(c.source, DerivedSource) or c.coefficient != ContactCoefficient.PLUS:
            continue
        zz = c.source.zigzags
        if len(zz) != 2 or zz[0] != zz[1]:
            continue
        base = c.source.base
        if 0 <= base < len(pres.components):
            b = pres.components[base]
            if isinstance(b.source, ExplicitSource) and b.coefficient == ContactCoefficient.PLUS and b.tb is not None:
                return base, i
    raise MalformedPair("no (+1, +1) pair of a knot and its push-off with two zigzags")


def meridian_disc_framing(pres: SurgeryPresentation, l1: int, l2: int) -> Tuple[int, int, int]:
    """Replay K' -> L1 - K' for a 0-framed meridian K' linking L1 and L2 once.

    Returns (lk(L1 - K', L1), lk(L1 - K', L2), framing of L1 - K').
    """
    M = pres.linking
    meridian = SurgeryComponent(name="K'", source=AbstractSource(label="K'"), coefficient=ContactCoefficient.PLUS)
    local = SurgeryPresentation(
        components=(pres.components[l1], pres.components[l2], meridian),
        linking=IntSymMatrix(entries=((M[l1, l1], M[l1, l2], 1), (M[l2, l1], M[l2, l2], 1), (1, 1, 0))),
        rotations=(0, 0, 0),
    )
    # K' - L1, then turned around
    route = reverse_component(handle_slide(local, 2, 0, -1), 2).linking
    return route[2, 0], route[2, 1], route[2, 2]


def disc_figure(diagram: FrontDiagram, component: int, direction: Direction) -> FrontDiagram:
    """K = push-off of the component with one zigzag, L2 = push-off of K with one more.

    The result holds L2, K and L1 at component, component + 1 and component + 2.
    """
    with_k = stabilize(legendrian_pushoff(diagram, component), component, direction)
    return stabilize(legendrian_pushoff(with_k, component), component, direction)


def _disc_linking(pres: SurgeryPresentation, l1: int, l2: int) -> Tuple[int, int, Optional[int]]:
    """lk(K, L1), lk(K, L2) and, when drawn, lk(L1, L2) of the figure."""
    source, derived = pres.components[l1].source, pres.components[l2].source
    if pres.diagram is None or not isinstance(source, ExplicitSource) or not isinstance(derived, DerivedSource):
        # no front: K links L1 tb(L1) times and L2 once less than L1 does
        return pres.components[l1].tb, pres.linking[l1, l2] - 1, None
    c = source.component
    lk = classical_invariants(disc_figure(pres.diagram, c, derived.zigzags[0])).linking
    return lk[c + 1][c + 2], lk[c + 1][c], lk[c + 2][c]


def overtwisted_disc(pres: SurgeryPresentation) -> OvertwistedDisc:
    l1, l2 = find_lutz_pair(pres)
    t = pres.components[l1].tb
    M = pres.linking
    contact_framing = t - 1
    lk_k_l1, lk_k_l2, drawn_l1_l2 = _disc_linking(pres, l1, l2)
    # the annulus between K and its push-off L2 frames K by lk(K, L2)
    disc_framing = lk_k_l2
    route = meridian_disc_framing(pres, l1, l2)
    passed = (
        M[l1, l2] == t
        and M[l2, l2] == contact_framing
        and drawn_l1_l2 in (None, M[l1, l2])
        and disc_framing == contact_framing
        and route == (lk_k_l1, lk_k_l2, contact_framing)
    )
    return OvertwistedDisc(
        t=t,
        lk_k_l1=lk_k_l1,
        lk_k_l2=lk_k_l2,
        disc_framing=disc_framing,
        contact_framing=contact_framing,
        meridian_route=route,
        passed=passed,
    )


def overtwisted_framing_check(pres: SurgeryPresentation) -> bool:
    return overtwisted_disc(pres).passed


# JSON document ---------------------------------------------------------

_RATIONAL_HINT = (
    "only contact coefficients +1 and -1 are supported; a rational coefficient must first be "
    "turned into a sequence of (+-1)-surgeries, which is outside this tool"
)


def _parse_coefficient(value: Any) -> ContactCoefficient:
    text = str(value).strip()
    if text in ("+1", "1"):
        return ContactCoefficient.PLUS
    if text == "-1":
        return ContactCoefficient.MINUS
    raise ParseError(f"coefficient {value!r}: {_RATIONAL_HINT}")


def _component_to_dict(c: SurgeryComponent, front: Optional[str]) -> Dict[str, Any]:
    entry: Dict[str, Any] = {"name": c.name}
    if isinstance(c.source, ExplicitSource):
        entry["source"] = {"front": front, "component": c.source.component}
    elif isinstance(c.source, DerivedSource):
        entry["derived"] = {"base": c.source.base, "zigzags": [z.value for z in c.source.zigzags]}
    else:
        entry["abstract"] = c.source.label
    entry["coefficient"] = str(c.coefficient)
    entry["tb"] = c.tb
    return entry


def to_dict(pres: SurgeryPresentation) -> Dict[str, Any]:
    return {
        "components": [_component_to_dict(c, pres.front) for c in pres.components],
        "framings": list(pres.framings),
        "linking": pres.linking.rows(),
        "rotations": list(pres.rotations),
        "front": pres.front,
        "diagram": write_front(pres.diagram) if pres.diagram is not None else None,
    }


def to_json(pres: SurgeryPresentation) -> str:
    return json.dumps(to_dict(pres), indent=2) + "\n"


def _component_from_dict(entry: Dict[str, Any], k: int) -> SurgeryComponent:
    name = str(entry.get("name", f"C{k}"))
    if "source" in entry:
        source: Source = ExplicitSource(component=int(entry["source"]["component"]))
    elif "derived" in entry:
        d = entry["derived"]
        source = DerivedSource(base=int(d["base"]), zigzags=tuple(Direction(z) for z in d.get("zigzags", [])))
    elif "abstract" in entry:
        source = AbstractSource(label=str(entry["abstract"]))
    else:
        raise ParseError(f"component {k}: needs one of 'source', 'derived', 'abstract'")
    return SurgeryComponent(
        name=name,
        source=source,
        coefficient=_parse_coefficient(entry.get("coefficient")),
        tb=entry.get("tb"),
    )


def _recomputed_rotations(
    components: Sequence[SurgeryComponent], diagram: Optional[FrontDiagram], front: Optional[str]
) -> Tuple[int, ...]:
    if not components:
        return ()
    if diagram is None and front:
        diagram = read_file(front)
        if not isinstance(diagram, FrontDiagram):
            raise ParseError(f"{front}: expected a Legendrian front")
    if diagram is None:
        raise ParseError("presentation has no rotations and no front to recompute them from")
    if any(isinstance(c.source, AbstractSource) for c in components):
        raise ParseError("rotations of slid components cannot be recomputed; the presentation must list them")
    try:
        return build_presentation(diagram, components).rotations
    except (InvalidComponent, UnresolvableLinking) as exc:
        raise ParseError(f"cannot recompute rotations: {exc}") from exc


def from_dict(data: Dict[str, Any]) -> SurgeryPresentation:
    try:
        components = tuple(_component_from_dict(e, k) for k, e in enumerate(data.get("components", [])))
        linking = IntSymMatrix(entries=tuple(tuple(int(x) for x in row) for row in data.get("linking", [])))
        framings = data.get("framings")
        if framings is not None and list(framings) != [linking[i, i] for i in range(linking.dimension)]:
            raise ParseError("framings disagree with the linking matrix diagonal")
        diagram_text = data.get("diagram")
        diagram = parse_front(diagram_text) if diagram_text else None
        if diagram is not None and not isinstance(diagram, FrontDiagram):
            raise ParseError("embedded diagram must be a Legendrian front")
        rotations = data.get("rotations")
        if rotations is None:
            rotations = _recomputed_rotations(components, diagram, data.get("front"))
        return SurgeryPresentation(
            components=components,
            linking=linking,
            rotations=tuple(int(r) for r in rotations),
            front=data.get("front"),
            diagram=diagram,
        )
    except (ValidationError, KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed presentation: {exc}") from exc


def from_json(text: str) -> SurgeryPresentation:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"presentation is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("presentation JSON must be an object")
    return from_dict(data)


def explicit_diagram(pres: SurgeryPresentation) -> FrontDiagram:
    """A front that draws every explicit and derived component of the presentation."""
    if pres.diagram is None:
        raise UnresolvableLinking("presentation carries no front diagram")
    if any(isinstance(c.source, AbstractSource) for c in pres.components):
        raise UnresolvableLinking("abstract (slid) components have no front")
    diagram = pres.diagram
    # front index of each explicit component, tracked through the push-offs
    where = {i: c.source.component for i, c in enumerate(pres.components) if isinstance(c.source, ExplicitSource)}
    for i, c in enumerate(pres.components):
        if not isinstance(c.source, DerivedSource):
            continue
        base = where[c.source.base]
        diagram = legendrian_pushoff(diagram, base)
        # the copy takes the base index, everything from the base on shifts by one
        where = {k: (v + 1 if v >= base else v) for k, v in where.items()}
        where[i] = base
        for z in c.source.zigzags:
            diagram = stabilize(diagram, base, z)
    return diagram
