import pytest

from conftest import front, tfront
from src.corpus import random_front, rng_for
from src.errors import InvalidComponent, InvalidDiagram, InvalidTransverseFront
from src.front import (
    Direction,
    classical_invariants,
    legendrian_pushoff,
    negative_self_linking,
    positive_transverse_pushoff,
    restrict,
    reverse,
    self_linking,
    split_union,
    stabilize,
    trace,
    transverse_to_legendrian,
    transverse_writhe,
    validate,
    validate_transverse,
)

LINKED_KINKS = "C1 O1 C3 U2 U2 D1 O1 D1"


def _knot(diagram, k=0):
    return classical_invariants(diagram).components[k]


def test_unknot_invariants(unknot):
    c = _knot(unknot)
    assert (c.tb, c.rot, c.writhe) == (-1, 0, 0)
    assert (c.up_cusps, c.down_cusps) == (1, 1)


def test_trefoil_invariants(trefoil):
    c = _knot(trefoil)
    assert (c.writhe, c.tb, c.rot) == (3, 1, 0)


def test_validate_reports_problems():
    assert validate(front("L1 R1")).valid
    open_word = validate(front("L1"))
    assert not open_word.valid
    assert "not closed" in open_word.problems[0]
    out_of_range = validate(front("L1 X2 R1"))
    assert not out_of_range.valid
    assert "out of range" in out_of_range.problems[0]
    with pytest.raises(InvalidDiagram):
        trace(front("R1"))


def test_validate_counts(hopf):
    report = validate(hopf)
    assert report.valid
    assert report.component_count == 2
    assert report.crossing_count == 2
    assert report.components[0] == [0, 2, 3, 4]


def test_hopf_linking(hopf):
    inv = classical_invariants(hopf)
    assert inv.tb == [-1, -1]
    assert inv.linking == [[0, 1], [1, 0]]


@pytest.mark.parametrize("direction, rot", [(Direction.UP, -1), (Direction.DOWN, 1)])
def test_stabilize(unknot, direction, rot):
    c = _knot(stabilize(unknot, 0, direction))
    assert (c.tb, c.rot) == (-2, rot)


def test_stabilize_twice_on_trefoil(trefoil):
    twice = stabilize(stabilize(trefoil, 0, Direction.UP), 0, Direction.UP)
    c = _knot(twice)
    assert (c.tb, c.rot) == (-1, -2)


def test_stabilize_missing_component(unknot):
    with pytest.raises(InvalidComponent):
        stabilize(unknot, 3, Direction.UP)


def test_reverse_negates_rot(unknot):
    stab = stabilize(unknot, 0, Direction.UP)
    back = reverse(stab, 0)
    a, b = _knot(stab), _knot(back)
    assert (b.tb, b.rot, b.writhe) == (a.tb, -a.rot, a.writhe)


def test_pushoff_links_tb_times(trefoil, unknot):
    for diagram in (trefoil, unknot, stabilize(unknot, 0, Direction.DOWN)):
        base = _knot(diagram)
        inv = classical_invariants(legendrian_pushoff(diagram, 0))
        assert inv.linking[0][1] == base.tb
        for c in inv.components:
            assert (c.tb, c.rot) == (base.tb, base.rot)


def test_pushoff_in_a_link(hopf):
    inv = classical_invariants(legendrian_pushoff(hopf, 1))
    # copy at 1, original moved to 2
    assert inv.linking[1][2] == -1
    assert inv.linking[0][1] == 1
    assert inv.linking[0][2] == 1


def test_restrict_and_split_union(hopf, unknot, trefoil):
    single = restrict(hopf, 1)
    assert [str(e) for e in single.events] == ["L1", "R1"]
    assert single.orientation(0) == -1
    both = classical_invariants(split_union(unknot, trefoil))
    assert both.tb == [-1, 1]
    assert both.linking == [[0, 0], [0, 0]]


@pytest.mark.parametrize("name, sl", [("unknot", -1), ("trefoil", 1)])
def test_positive_pushoff_self_linking(request, name, sl):
    diagram = request.getfixturevalue(name)
    tf = positive_transverse_pushoff(diagram)
    assert validate_transverse(tf).valid
    assert self_linking(tf, 0) == sl


def test_up_stabilization_keeps_self_linking(trefoil):
    stab = stabilize(trefoil, 0, Direction.UP)
    assert self_linking(positive_transverse_pushoff(stab), 0) == 1
    down = stabilize(trefoil, 0, Direction.DOWN)
    assert self_linking(positive_transverse_pushoff(down), 0) == -1


def test_negative_self_linking(unknot, trefoil):
    assert negative_self_linking(trefoil, 0) == 1
    stab = stabilize(unknot, 0, Direction.UP)
    assert negative_self_linking(stab, 0) == -3
    # the positive push-off of the reversed knot is the negative push-off
    assert self_linking(positive_transverse_pushoff(reverse(stab, 0)), 0) == -3


def test_round_circle_rejected_kinked_accepted(kinked_circle):
    round_circle = validate_transverse(tfront("C1 D1"))
    assert not round_circle.valid
    assert "vertical tangency" in round_circle.problems[0]
    assert validate_transverse(kinked_circle).valid
    assert self_linking(kinked_circle, 0) == -1


def test_forbidden_crossing():
    report = validate_transverse(tfront("C1 U1 D1"))
    assert not report.valid
    assert any("positively transverse" in p for p in report.problems)
    with pytest.raises(InvalidTransverseFront):
        self_linking(tfront("C1 U1 D1"), 0)


def test_transverse_writhe_needs_no_validity():
    assert transverse_writhe(tfront("C1 U1 D1")) == [1]


def test_transverse_to_legendrian_kinked_circle(kinked_circle):
    leg = transverse_to_legendrian(kinked_circle)
    assert [str(e) for e in leg.events] == ["L1", "X1", "R1"]
    c = _knot(leg)
    assert (c.tb, c.rot) == (-2, -1)
    assert self_linking(positive_transverse_pushoff(leg), 0) == -1


def test_transverse_to_legendrian_resolves_under_crossings():
    tf = tfront(LINKED_KINKS)
    assert validate_transverse(tf).valid
    leg = transverse_to_legendrian(tf)
    inv = classical_invariants(leg)
    assert len(inv.components) == 2
    assert inv.linking[0][1] == -1
    for k in range(2):
        assert self_linking(positive_transverse_pushoff(leg, k), 0) == self_linking(tf, k) == -1


def test_random_fronts_self_linking_and_pushoff():
    for case in range(100):
        diagram = random_front(rng_for(1, case))
        c = _knot(diagram)
        assert self_linking(positive_transverse_pushoff(diagram), 0) == c.tb - c.rot
        up = stabilize(diagram, 0, Direction.UP)
        assert self_linking(positive_transverse_pushoff(up), 0) == c.tb - c.rot
        assert classical_invariants(legendrian_pushoff(diagram, 0)).linking[0][1] == c.tb
        assert (c.tb + c.rot) % 2 == 1
