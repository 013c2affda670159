"""Seeded random fronts and surgery hosts for property checks."""

from typing import List, Optional, Tuple

import numpy as np

from .exactlinalg import determinant
from .front import EventKind, FrontDiagram, FrontEvent, restrict
from .surgery import AbstractSource, ContactCoefficient, IntSymMatrix, SurgeryComponent, SurgeryPresentation

MAX_STRANDS = 8


def rng_for(seed: int, case: int) -> np.random.Generator:
    return np.random.default_rng([seed, case])


def random_front(rng: np.random.Generator, max_events: int = 40) -> FrontDiagram:
    """A valid one-component front: a random walk of events, closed, cut down to component 0."""
    events: List[Tuple[EventKind, int]] = [(EventKind.LEFT_CUSP, 1)]
    k = 2
    while len(events) + k // 2 < max_events:
        roll = rng.random()
        if k < MAX_STRANDS and roll < 0.25:
            events.append((EventKind.LEFT_CUSP, int(rng.integers(1, k + 2))))
            k += 2
        elif roll < 0.75:
            events.append((EventKind.CROSSING, int(rng.integers(1, k))))
        elif k > 2:
            events.append((EventKind.RIGHT_CUSP, int(rng.integers(1, k))))
            k -= 2
    while k:
        events.append((EventKind.RIGHT_CUSP, int(rng.integers(1, k))))
        k -= 2
    full = FrontDiagram(events=tuple(FrontEvent(kind=kind, position=p) for kind, p in events))
    single = restrict(full, 0)
    if rng.random() < 0.5:
        single = single.model_copy(update={"orientations": {0: -1}})
    return single


def random_symmetric(rng: np.random.Generator, size: int, bound: int = 9, nonsingular: bool = False) -> List[List[int]]:
    while True:
        A = rng.integers(-bound, bound + 1, size=(size, size))
        M = np.triu(A) + np.triu(A, 1).T
        rows = [[int(x) for x in row] for row in M]
        if not nonsingular or determinant(rows) != 0:
            return rows


def random_host(rng: np.random.Generator, size: Optional[int] = None, bound: int = 4) -> SurgeryPresentation:
    """Abstract (+-1)-surgery presentation with a nonsingular linking matrix.

    Rotation numbers have the parity of the framings, as tb + rot is odd
    for every Legendrian knot.
    """
    size = int(rng.integers(1, 4)) if size is None else size
    rows = random_symmetric(rng, size, bound, nonsingular=True)
    components = tuple(
        SurgeryComponent(
            name=f"H{i}",
            source=AbstractSource(label=f"H{i}"),
            coefficient=ContactCoefficient(int(rng.choice([1, -1]))),
        )
        for i in range(size)
    )
    rotations = tuple(rows[i][i] + 2 * int(rng.integers(-2, 3)) for i in range(size))
    return SurgeryPresentation(
        components=components,
        linking=IntSymMatrix(entries=tuple(tuple(r) for r in rows)),
        rotations=rotations,
    )


def random_linking_vector(rng: np.random.Generator, size: int, bound: int = 3, split: bool = False) -> List[int]:
    if split:
        return [0] * size
    return [int(x) for x in rng.integers(-bound, bound + 1, size=size)]
