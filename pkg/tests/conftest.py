"""Shared test helpers: an independent fold-based resolver and random
Laurent polynomial generation."""

from __future__ import annotations

import itertools
import random

import pytest

from skeincalc import (
    Diagram,
    LaurentPoly,
    SkeinVector,
    classify_components,
    normal_form,
    resolve_crossing,
)
from skeincalc.laurent import q_power


def fold_resolve(d: Diagram) -> SkeinVector:
    """Expand by repeated single-crossing resolution, the slow way.

    Independent of the state-sum scanner: recurses through
    resolve_crossing and sums q^{+-1}-weighted normal forms.
    """
    if d.crossing_count == 0:
        return normal_form(d)
    cid = d.crossings[0].id
    pos = fold_resolve(resolve_crossing(d, cid, +1)).scaled(q_power(1))
    neg = fold_resolve(resolve_crossing(d, cid, -1)).scaled(q_power(-1))
    return pos + neg


def enumerate_states(d: Diagram):
    """Yield (signs, crossingless diagram) over all full resolutions."""
    cids = [c.id for c in d.crossings]
    for signs in itertools.product((1, -1), repeat=len(cids)):
        state = d
        for cid, s in zip(cids, signs):
            state = resolve_crossing(state, cid, s)
        yield signs, state


def collect_loop_windings(d: Diagram) -> set[int]:
    """All closed-component windings over every resolution of d."""
    out: set[int] = set()
    for _, state in enumerate_states(d):
        out.update(classify_components(state).loops)
    return out


def random_laurent(rng: random.Random, span: int = 6, size: int = 4) -> LaurentPoly:
    terms = {}
    for _ in range(rng.randint(0, size)):
        terms[rng.randint(-span, span)] = rng.randint(-9, 9)
    return LaurentPoly(terms)


def random_positive(rng: random.Random, span: int = 6, size: int = 4) -> LaurentPoly:
    terms = {}
    for _ in range(rng.randint(0, size)):
        terms[rng.randint(-span, span)] = rng.randint(0, 9)
    return LaurentPoly(terms)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260810)
