import pytest

from src.config import Settings
from src.front import (
    FrontDiagram,
    FrontEvent,
    TransverseEvent,
    TransverseFront,
    TransverseKind,
    EventKind,
    standard_trefoil,
    standard_unknot,
)


def front(spec: str, orientations=None) -> FrontDiagram:
    """'L1 L3 X2 R1' -> FrontDiagram."""
    kinds = {k.value: k for k in EventKind}
    events = tuple(FrontEvent(kind=kinds[t[0]], position=int(t[1:])) for t in spec.split())
    return FrontDiagram(events=events, orientations=orientations or {})


def tfront(spec: str, orientations=None) -> TransverseFront:
    kinds = {k.value: k for k in TransverseKind}
    events = tuple(TransverseEvent(kind=kinds[t[0]], position=int(t[1:])) for t in spec.split())
    return TransverseFront(events=events, orientations=orientations or {})


@pytest.fixture
def unknot() -> FrontDiagram:
    return standard_unknot()


@pytest.fixture
def trefoil() -> FrontDiagram:
    return standard_trefoil()


@pytest.fixture
def hopf() -> FrontDiagram:
    """Two tb = -1 unknots linking +1."""
    return front("L1 L3 X2 X2 R1 R1", {1: -1})


@pytest.fixture
def kinked_circle() -> TransverseFront:
    return tfront("C1 O1 D1")


@pytest.fixture
def settings() -> Settings:
    return Settings()


# L2, K and L1 over the two-cusp unknot, up-zigzags
LUTZ_FIGURE_UNKNOT_WORD = "L1 L1 R2 L3 X2 L1 L3 X2 X4 R3 R3 L5 X4 X3 X3 X4 X2 R1 R1 R1"
LUTZ_FIGURE_UNKNOT_ASCII = "\n".join([
    "(-(-------(-----------------------)-)-)",
    "(-(-)---X-(---X-----------------X-)-)-)",
    "  --) (-X---(-X---)-)-----X-X---X----",
    "  --- (-----(---X-)-)---X-X-X-X------",
    "          ------X---- (-X-----X----",
    "          ----------- (------------",
    "            -------",
    "            -------",
]) + "\n"
