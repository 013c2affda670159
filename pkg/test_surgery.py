import json
from fractions import Fraction

import numpy as np
import pytest

from conftest import front
from src.corpus import random_symmetric
from src.errors import InvalidComponent, MalformedPair, NotACancellingPair, ParseError, UnresolvableLinking
from src.exactlinalg import determinant, invariant_factors
from src.front import Direction, classical_invariants, stabilize
from src.homotopy import d3
from src.surgery import (
    AbstractSource,
    ContactCoefficient,
    DerivedSource,
    ExplicitSource,
    IntSymMatrix,
    SurgeryComponent,
    SurgeryPresentation,
    build_presentation,
    cancel_meridian_pair,
    disc_figure,
    disjoint_union,
    explicit_diagram,
    first_homology,
    from_json,
    handle_slide,
    inverse_pair,
    linking_matrix,
    meridian_disc_framing,
    overtwisted_disc,
    overtwisted_framing_check,
    reverse_component,
    to_dict,
    to_json,
    topological_framing,
)

PLUS, MINUS = ContactCoefficient.PLUS, ContactCoefficient.MINUS


def explicit(k, coefficient=PLUS, name=None):
    return SurgeryComponent(name=name or f"L{k}", source=ExplicitSource(component=k), coefficient=coefficient)


def derived(base, zigzags=(), coefficient=PLUS, name="D"):
    return SurgeryComponent(name=name, source=DerivedSource(base=base, zigzags=tuple(zigzags)),
                            coefficient=coefficient)


def abstract(size_rows, rotations=None, coefficients=None):
    n = len(size_rows)
    comps = tuple(
        SurgeryComponent(name=f"A{i}", source=AbstractSource(label=f"A{i}"),
                         coefficient=(coefficients or [PLUS] * n)[i])
        for i in range(n)
    )
    return SurgeryPresentation(
        components=comps,
        linking=IntSymMatrix(entries=tuple(tuple(r) for r in size_rows)),
        rotations=tuple(rotations or [0] * n),
    )


def pair(diagram, zig=Direction.UP):
    return build_presentation(diagram, [explicit(0, name="L1"), derived(0, [zig, zig], name="L2")])


def test_topological_framing():
    assert topological_framing(-1, PLUS) == 0
    assert topological_framing(-3, PLUS) == -2
    assert topological_framing(-1, MINUS) == -2


def test_single_plus_surgery_on_unknot(unknot):
    pres = build_presentation(unknot, [explicit(0)])
    assert linking_matrix(pres).rows() == [[0]]
    assert first_homology(pres) == [0]


def test_empty_presentation():
    pres = SurgeryPresentation()
    assert linking_matrix(pres).dimension == 0
    assert first_homology(pres) == []


def knot_with_tb(t):
    """Legendrian knot with tb = t: a stabilized trefoil, or a (2, m) torus knot for t > 1."""
    if t <= 1:
        diagram, excess = front("L1 L3 X2 X2 X2 R1 R1"), 1 - t
    else:
        m = t + 2 if t % 2 else t + 3
        diagram, excess = front("L1 L3 " + "X2 " * m + "R1 R1"), m - 2 - t
    for _ in range(excess):
        diagram = stabilize(diagram, 0, Direction.UP)
    return diagram


@pytest.mark.parametrize("t", range(-5, 6))
def test_lutz_pair_matrix(t):
    diagram = knot_with_tb(t)
    assert classical_invariants(diagram).tb == [t]
    pres = pair(diagram)
    assert pres.linking.rows() == [[t + 1, t], [t, t - 1]]
    assert determinant(pres.linking.rows()) == -1
    assert first_homology(pres) == []


def test_derived_component_invariants(unknot):
    pres = pair(unknot)
    assert pres.components[1].tb == -3
    assert pres.rotations == (0, -2)
    assert pres.framings == (0, -2)
    down = pair(unknot, Direction.DOWN)
    assert down.rotations == (0, 2)


def test_linking_with_third_component(hopf):
    comps = [explicit(0, name="H"), explicit(1, name="L1"), derived(1, [Direction.UP] * 2, name="L2")]
    pres = build_presentation(hopf, comps)
    assert pres.linking.rows() == [[0, 1, 1], [1, 0, -1], [1, -1, -2]]
    assert pres.rotations == (0, 0, -2)


def test_build_errors(unknot):
    with pytest.raises(InvalidComponent):
        build_presentation(unknot, [explicit(1)])
    with pytest.raises(UnresolvableLinking):
        build_presentation(unknot, [explicit(0), derived(5)])
    with pytest.raises(InvalidComponent):
        build_presentation(unknot, [explicit(0), explicit(0)])


def test_slide_lutz_pair(unknot):
    slid = handle_slide(pair(unknot), 1, 0, -1)
    assert slid.linking.rows() == [[0, -1], [-1, 0]]
    assert isinstance(slid.components[1].source, AbstractSource)
    assert slid.components[1].tb is None
    assert slid.components[1].coefficient == PLUS
    assert slid.rotations == (0, -2)


def test_slide_then_cancel_empties(trefoil):
    pres = pair(trefoil)
    slid = handle_slide(pres, 1, 0, -1)
    assert slid.linking[1, 1] == 0 and slid.linking[0, 1] == -1
    assert cancel_meridian_pair(slid, 0, 1).components == ()


def test_cancel_with_third_component(hopf):
    comps = [explicit(0, name="H"), explicit(1, name="L1"), derived(1, [Direction.UP] * 2, name="L2")]
    pres = build_presentation(hopf, comps)
    slid = handle_slide(pres, 2, 1, -1)
    assert slid.linking.rows()[2] == [0, -1, 0]
    rest = cancel_meridian_pair(slid, 1, 2)
    assert rest.linking.rows() == [[0]]
    assert first_homology(rest) == first_homology(pres) == [0]


def test_cancel_preconditions():
    with pytest.raises(NotACancellingPair):
        cancel_meridian_pair(abstract([[1, 2], [2, 0]]), 0, 1)
    with pytest.raises(NotACancellingPair):
        cancel_meridian_pair(abstract([[1, 1], [1, 3]]), 0, 1)
    with pytest.raises(NotACancellingPair):
        cancel_meridian_pair(abstract([[1, 1, 0], [1, 0, 1], [0, 1, 2]]), 0, 1)


def test_slide_index_errors():
    pres = abstract([[1, 0], [0, 1]])
    with pytest.raises(IndexError):
        handle_slide(pres, 0, 0, 1)
    with pytest.raises(IndexError):
        handle_slide(pres, 0, 2, 1)


def test_slides_preserve_homology_and_invert():
    rng = np.random.default_rng(21)
    for _ in range(60):
        n = int(rng.integers(2, 7))
        pres = abstract(random_symmetric(rng, n))
        i, j = (int(x) for x in rng.choice(n, size=2, replace=False))
        sign = int(rng.choice([1, -1]))
        slid = handle_slide(pres, i, j, sign)
        assert invariant_factors(slid.linking.rows()) == invariant_factors(pres.linking.rows())
        back = handle_slide(slid, i, j, -sign)
        assert back.linking == pres.linking
        assert back.rotations == pres.rotations


def test_reverse_component():
    pres = abstract([[0, 1, 2], [1, 3, 4], [2, 4, 5]], rotations=[1, 2, 3])
    rev = reverse_component(pres, 1)
    assert rev.linking.rows() == [[0, -1, 2], [-1, 3, -4], [2, -4, 5]]
    assert rev.rotations == (1, -2, 3)


def test_disjoint_union(unknot, trefoil):
    a, b = pair(unknot), pair(trefoil)
    assert disjoint_union(a, SurgeryPresentation()) == a
    both = disjoint_union(a, b)
    assert both.linking.rows() == [[0, -1, 0, 0], [-1, -2, 0, 0], [0, 0, 2, 1], [0, 0, 1, 0]]
    assert determinant(both.linking.rows()) == determinant(a.linking.rows()) * determinant(b.linking.rows())
    # the union's front reproduces the same linking data
    assert build_presentation(both.diagram, both.components).linking == both.linking
    assert both.components[3].source == DerivedSource(base=2, zigzags=(Direction.UP, Direction.UP))


def test_inverse_pair(trefoil):
    pres = inverse_pair(trefoil, 0)
    assert pres.linking.rows() == [[2, 1], [1, 0]]
    assert pres.coefficients == (1, -1)
    assert cancel_meridian_pair(handle_slide(pres, 1, 0, -1), 0, 1).components == ()


def test_meridian_disc_framing():
    for t in (-3, -1, 0, 1, 4):
        pres = abstract([[t + 1, t], [t, t - 1]])
        assert meridian_disc_framing(pres, 0, 1) == (t, t - 1, t - 1)


@pytest.mark.parametrize("name, expected", [("unknot", (-1, -2)), ("trefoil", (1, 0))])
def test_overtwisted_framing_check(request, name, expected):
    pres = pair(request.getfixturevalue(name))
    disc = overtwisted_disc(pres)
    assert disc.passed
    assert (disc.lk_k_l1, disc.lk_k_l2) == expected
    assert overtwisted_framing_check(pair(request.getfixturevalue(name), Direction.DOWN))


def test_disc_figure_links_k_with_both_components(unknot):
    inv = classical_invariants(disc_figure(unknot, 0, Direction.UP))
    assert [c.tb for c in inv.components] == [-3, -2, -1]
    assert inv.linking[1][2] == -1 and inv.linking[1][0] == -2 and inv.linking[2][0] == -1


def test_overtwisted_disc_reads_linking_from_the_drawn_figure(trefoil, unknot):
    pres = pair(trefoil)
    assert overtwisted_disc(pres).passed
    # a front that does not carry the knot the surgery data describes
    wrong = pres.model_copy(update={"diagram": unknot})
    disc = overtwisted_disc(wrong)
    assert (disc.lk_k_l1, disc.lk_k_l2) == (-1, -2)
    assert not disc.passed
    assert overtwisted_disc(pres.model_copy(update={"diagram": None})).passed


def test_overtwisted_check_fails_on_wrong_framing(unknot):
    pres = pair(unknot)
    rows = pres.linking.rows()
    rows[1][1] += 1
    broken = pres.model_copy(update={"linking": IntSymMatrix(entries=tuple(tuple(r) for r in rows))})
    assert not overtwisted_framing_check(broken)


def test_overtwisted_check_needs_a_pair(unknot):
    with pytest.raises(MalformedPair):
        overtwisted_disc(build_presentation(unknot, [explicit(0)]))


def test_explicit_diagram_matches_bookkeeping(trefoil, hopf):
    for pres in (pair(trefoil), pair(trefoil, Direction.DOWN)):
        inv = classical_invariants(explicit_diagram(pres))
        assert inv.linking[0][1] == pres.linking[0, 1]
        assert [c.tb for c in inv.components] == [pres.components[1].tb, pres.components[0].tb]
    comps = [explicit(0, name="H"), explicit(1, name="L1"), derived(1, [Direction.UP] * 2, name="L2")]
    pres = build_presentation(hopf, comps)
    inv = classical_invariants(explicit_diagram(pres))
    # derived copy takes index 1, L1 moves to 2
    assert inv.linking[0][1] == inv.linking[0][2] == 1
    assert inv.linking[1][2] == -1
    assert inv.rot == [0, -2, 0]


def test_explicit_diagram_rejects_abstract(unknot):
    with pytest.raises(UnresolvableLinking):
        explicit_diagram(handle_slide(pair(unknot), 1, 0, -1))


def test_json_layout_and_round_trip(unknot):
    pres = pair(unknot).model_copy(update={"front": "unknot.front"})
    data = to_dict(pres)
    assert list(data) == ["components", "framings", "linking", "rotations", "front", "diagram"]
    assert data["components"][0] == {
        "name": "L1", "source": {"front": "unknot.front", "component": 0}, "coefficient": "+1", "tb": -1,
    }
    assert data["components"][1]["derived"] == {"base": 0, "zigzags": ["up", "up"]}
    assert data["framings"] == [0, -2]
    assert data["diagram"] == "front v1\nL1 R1\n"
    assert from_json(to_json(pres)) == pres


def test_json_rejects_rational_coefficient(unknot):
    data = to_dict(pair(unknot))
    data["components"][0]["coefficient"] = "1/2"
    with pytest.raises(ParseError, match="rational"):
        from_json(json.dumps(data))


def test_json_rejects_inconsistent_data(unknot):
    data = to_dict(pair(unknot))
    data["framings"] = [5, 5]
    with pytest.raises(ParseError, match="framings"):
        from_json(json.dumps(data))
    data = to_dict(pair(unknot))
    data["linking"][0][1] = 7
    with pytest.raises(ParseError):
        from_json(json.dumps(data))
    with pytest.raises(ParseError):
        from_json("[1, 2]")
    with pytest.raises(ParseError):
        from_json("{not json")


def test_missing_rotations_are_recomputed_from_the_embedded_front(unknot):
    pres = pair(stabilize(unknot, 0, Direction.DOWN))
    assert pres.rotations == (1, -1)
    data = to_dict(pres)
    del data["rotations"]
    loaded = from_json(json.dumps(data))
    assert loaded.rotations == (1, -1)
    assert d3(loaded).value == Fraction(5, 2)


def test_missing_rotations_are_recomputed_from_the_referenced_front(tmp_path):
    path = tmp_path / "knot.front"
    path.write_text("front v1\nL1 L3 X2 X2 X2 R1 R1\n", encoding="utf-8")
    trefoil = front("L1 L3 X2 X2 X2 R1 R1")
    pres = pair(trefoil).model_copy(update={"front": str(path), "diagram": None})
    data = to_dict(pres)
    del data["rotations"]
    assert from_json(json.dumps(data)).rotations == pair(trefoil).rotations


def test_missing_rotations_without_a_front_is_a_parse_error(unknot):
    data = to_dict(pair(unknot))
    del data["rotations"]
    data["diagram"] = None
    with pytest.raises(ParseError, match="no front"):
        from_json(json.dumps(data))
    slid = to_dict(handle_slide(pair(unknot), 1, 0, -1))
    del slid["rotations"]
    with pytest.raises(ParseError, match="slid"):
        from_json(json.dumps(slid))
