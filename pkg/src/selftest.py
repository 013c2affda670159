"""Randomized property checks over the seeded corpus (cli `selftest`)."""

from concurrent.futures import ThreadPoolExecutor
from typing import List, Tuple

from pydantic import BaseModel

from .corpus import random_front, random_host, random_linking_vector, rng_for
from .front import classical_invariants, legendrian_pushoff, positive_transverse_pushoff, self_linking
from .homotopy import d3, rational_invariants
from .lutz import LutzSign, expected_d3_change, lutz_pair_on_host, verify_lutz


class CaseResult(BaseModel):
    case: int
    events: int
    tb: int
    rot: int
    checks: List[Tuple[str, bool]]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)


def run_case(seed: int, case: int, max_events: int = 40) -> CaseResult:
    rng = rng_for(seed, case)
    front = random_front(rng, max_events)
    knot = classical_invariants(front).components[0]
    sign = LutzSign.POSITIVE if rng.random() < 0.5 else LutzSign.NEGATIVE
    checks: List[Tuple[str, bool]] = []

    doubled = classical_invariants(legendrian_pushoff(front, 0))
    checks.append(("pushoff links tb times", doubled.linking[0][1] == knot.tb))

    sl = self_linking(positive_transverse_pushoff(front, 0), 0)
    checks.append(("sl = tb - rot", sl == knot.tb - knot.rot))

    report = verify_lutz(front, 0, sign)
    checks.append(("lutz pair trivial", report.trivial))
    checks.append(("overtwisted disc", report.overtwisted))
    checks.append(("d3 change", report.d3_ok))

    host = random_host(rng)
    linking = random_linking_vector(rng, len(host.components), split=rng.random() < 0.3)
    combined = lutz_pair_on_host(host, knot.tb, knot.rot, linking, sign)
    t_q, r_q = rational_invariants(host, linking, knot.tb, knot.rot)
    change = d3(combined).value - d3(host).value
    checks.append(("d3 change over host", change == expected_d3_change(t_q, r_q, sign)))

    return CaseResult(case=case, events=len(front.events), tb=knot.tb, rot=knot.rot, checks=checks)


def run_selftest(cases: int, seed: int = 0, workers: int = 1, max_events: int = 40) -> List[CaseResult]:
    """Results in case order whatever the worker count."""
    if workers <= 1:
        return [run_case(seed, case, max_events) for case in range(cases)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda case: run_case(seed, case, max_events), range(cases)))
