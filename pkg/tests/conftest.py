import random

import pytest

from linkrep.diagram import ArcBand, CircleRef, SingularLinkDiagram, validate


def random_diagram(rng: random.Random) -> SingularLinkDiagram:
    """A random well-formed diagram: fresh slots per circle, resolvable refs."""
    n_circles = rng.randint(1, 4)
    n_hopfs = rng.randint(0, 2)
    circles = tuple(f"c{i}" for i in range(n_circles))
    hopfs = tuple(f"h{i}" for i in range(n_hopfs))
    refs = [CircleRef(c) for c in circles] + [
        CircleRef(h, m) for h in hopfs for m in ("a", "b")
    ]
    next_slot = {r.circle_id: 0 for r in refs}

    def take_slot(ref: CircleRef) -> int:
        slot = next_slot[ref.circle_id]
        next_slot[ref.circle_id] = slot + 1
        return slot

    arcs = []
    for i in range(rng.randint(0, 6)):
        start, end = rng.choice(refs), rng.choice(refs)
        word = tuple(
            (rng.choice(refs), rng.choice((1, -1)))
            for _ in range(rng.randint(0, 3))
        )
        arcs.append(
            ArcBand(
                id=f"a{i}",
                start=start,
                start_slot=take_slot(start),
                end=end,
                end_slot=take_slot(end),
                word=word,
                twist=rng.choice((0, 2)),
            )
        )
    d = SingularLinkDiagram(circles=circles, hopfs=hopfs, arcs=tuple(arcs))
    assert not validate(d)
    return d


@pytest.fixture
def rng():
    return random.Random(20240817)
