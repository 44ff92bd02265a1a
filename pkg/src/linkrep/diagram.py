"""Singular link diagrams: circles, Hopf pairs and arc bands.

The diagram is an abstract ribbon graph: every circle (each Hopf pair
contributes two) is a disc vertex, every arc band an untwisted band attached
at slots whose cyclic order per circle is the order of the slot integers.
Arc words record signed passes through the discs bounded by circles and feed
the holonomy calculus in the conditions module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple


class DiagramError(Exception):
    """A structural problem with a diagram."""


@dataclass(frozen=True)
class CircleRef:
    """Reference to one circle: a simple circle id, or a Hopf member id.a / id.b."""

    node: str
    member: Optional[str] = None  # None for simple circles, "a"/"b" for Hopf members

    def __post_init__(self):
        if self.member not in (None, "a", "b"):
            raise ValueError(f"bad Hopf member tag {self.member!r}")

    @property
    def circle_id(self) -> str:
        return self.node if self.member is None else f"{self.node}.{self.member}"

    @staticmethod
    def parse(text: str) -> "CircleRef":
        if "." in text:
            node, member = text.rsplit(".", 1)
            return CircleRef(node, member)
        return CircleRef(text)

    def __str__(self) -> str:
        return self.circle_id


@dataclass(frozen=True)
class ArcBand:
    """A 1-handle core: endpoints at (circle, slot), a signed intersection word,
    and framing twist data (recorded; only its parity is ever consumed)."""

    id: str
    start: CircleRef
    start_slot: int
    end: CircleRef
    end_slot: int
    word: Tuple[Tuple[CircleRef, int], ...] = ()
    twist: int = 0

    def __post_init__(self):
        for _, sign in self.word:
            if sign not in (1, -1):
                raise ValueError(f"arc {self.id}: word signs must be +1 or -1")


@dataclass(frozen=True)
class SingularLinkDiagram:
    circles: Tuple[str, ...] = ()
    hopfs: Tuple[str, ...] = ()
    arcs: Tuple[ArcBand, ...] = ()

    @property
    def n_hopf(self) -> int:
        return len(self.hopfs)

    @property
    def n_simple(self) -> int:
        return len(self.circles)

    def circle_ids(self) -> List[str]:
        """All circle vertices, in declaration order: Hopf members then simple circles."""
        out = []
        for h in self.hopfs:
            out.append(f"{h}.a")
            out.append(f"{h}.b")
        out.extend(self.circles)
        return out

    def resolves(self, ref: CircleRef) -> bool:
        if ref.member is None:
            return ref.node in self.circles
        return ref.node in self.hopfs


def validate(d: SingularLinkDiagram) -> List[str]:
    """All structural invariant violations; empty means well-formed."""
    violations = []
    node_ids = list(d.circles) + list(d.hopfs)
    seen = set()
    for nid in node_ids:
        if nid in seen:
            violations.append(f"duplicate node id {nid!r}")
        seen.add(nid)
    arc_ids = set()
    for a in d.arcs:
        if a.id in arc_ids:
            violations.append(f"duplicate arc id {a.id!r}")
        arc_ids.add(a.id)
    endpoint_slots = set()
    for a in d.arcs:
        for ref, slot, which in ((a.start, a.start_slot, "start"), (a.end, a.end_slot, "end")):
            if not d.resolves(ref):
                violations.append(f"unresolved reference {ref} at {which} of arc {a.id}")
                continue
            key = (ref.circle_id, slot)
            if key in endpoint_slots:
                violations.append(f"slot collision at {ref}:{slot} (arc {a.id})")
            endpoint_slots.add(key)
        for ref, _ in a.word:
            if not d.resolves(ref):
                violations.append(f"unresolved reference {ref} in word of arc {a.id}")
    return violations


def ensure_wellformed(d: SingularLinkDiagram) -> None:
    violations = validate(d)
    if violations:
        raise DiagramError("; ".join(violations))


@dataclass(frozen=True)
class ComponentPartition:
    """Connected components of the circle graph (vertices circles, edges arcs)."""

    blocks: Tuple[Tuple[str, ...], ...]

    def block_of(self, circle_id: str) -> Tuple[str, ...]:
        for block in self.blocks:
            if circle_id in block:
                return block
        raise KeyError(circle_id)


def components(d: SingularLinkDiagram) -> ComponentPartition:
    ensure_wellformed(d)
    ids = d.circle_ids()
    index = {cid: i for i, cid in enumerate(ids)}
    parent = list(range(len(ids)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    for a in d.arcs:
        union(index[a.start.circle_id], index[a.end.circle_id])

    grouped: Dict[int, List[str]] = {}
    for cid in ids:
        grouped.setdefault(find(index[cid]), []).append(cid)
    blocks = tuple(tuple(grouped[root]) for root in sorted(grouped))
    return ComponentPartition(blocks)


def check_selfint_structure(d: SingularLinkDiagram) -> List[str]:
    """Hopf nodes whose two member circles lie in different components."""
    part = components(d)
    bad = []
    for h in d.hopfs:
        if part.block_of(f"{h}.a") is not part.block_of(f"{h}.b"):
            bad.append(h)
    return bad


def betti(d: SingularLinkDiagram) -> Tuple[int, int]:
    """(b1, b2) of the surgered manifold: component count and Hopf-node count."""
    ensure_wellformed(d)
    if check_selfint_structure(d):
        raise DiagramError("component count ill-defined for immersed link")
    return (len(components(d).blocks), d.n_hopf)


# ---------------------------------------------------------------------------
# ribbon genus via boundary tracing
# ---------------------------------------------------------------------------

def _half_edges(d: SingularLinkDiagram):
    """Half-edges (arc id, end tag) attached at (circle, slot); per-circle cyclic order."""
    at_circle: Dict[str, List[Tuple[int, Tuple[str, str]]]] = {}
    for a in d.arcs:
        at_circle.setdefault(a.start.circle_id, []).append((a.start_slot, (a.id, "s")))
        at_circle.setdefault(a.end.circle_id, []).append((a.end_slot, (a.id, "e")))
    cyclic: Dict[str, List[Tuple[str, str]]] = {}
    for cid, items in at_circle.items():
        items.sort()
        cyclic[cid] = [h for _, h in items]
    return cyclic


def _boundary_cycle_count(cyclic: Dict[str, List[Tuple[str, str]]]) -> int:
    """Number of boundary circles of the ribbon surface with untwisted bands.

    Faces of the combinatorial map: orbits of sigma o alpha, where sigma is
    "next half-edge counterclockwise at the vertex" and alpha swaps the two
    half-edges of each band.
    """
    succ = {}
    for half_edges in cyclic.values():
        n = len(half_edges)
        for i, h in enumerate(half_edges):
            succ[h] = half_edges[(i + 1) % n]
    mate = {}
    for h in succ:
        arc_id, tag = h
        mate[h] = (arc_id, "e" if tag == "s" else "s")
    unvisited = set(succ)
    cycles = 0
    while unvisited:
        start = min(unvisited)
        h = start
        cycles += 1
        while True:
            unvisited.discard(h)
            h = succ[mate[h]]
            if h == start:
                break
    return cycles


def ribbon_genus(d: SingularLinkDiagram) -> List[Tuple[Tuple[str, ...], int]]:
    """Genus of the closed surface of each component of the ribbon graph.

    Each circle is a disc, each arc an untwisted band (odd twists are
    rejected), boundary circles are capped off: genus = (2 - (V - E + F)) / 2.
    """
    ensure_wellformed(d)
    for a in d.arcs:
        if a.twist % 2 != 0:
            raise DiagramError(f"non-orientable band {a.id}")
    part = components(d)
    cyclic = _half_edges(d)
    out = []
    for block in part.blocks:
        block_set = set(block)
        v = len(block)
        arcs = [a for a in d.arcs if a.start.circle_id in block_set]
        e = len(arcs)
        local_cyclic = {cid: cyclic[cid] for cid in block if cid in cyclic}
        f = _boundary_cycle_count(local_cyclic)
        f += sum(1 for cid in block if cid not in cyclic)  # bare discs
        chi = v - e + f
        if (2 - chi) % 2 != 0:
            raise RuntimeError(f"odd Euler defect on component {block}")
        genus = (2 - chi) // 2
        if genus < 0:
            raise RuntimeError(f"negative genus on component {block}")
        out.append((block, genus))
    return out


# ---------------------------------------------------------------------------
# informational cross-check: triples of parallel arcs between two circles
# ---------------------------------------------------------------------------

def _cyclic_orientation(slots: Tuple[int, int, int]) -> int:
    """+1 if the three distinct slots appear in even (cyclic) order, -1 otherwise."""
    a, b, c = slots
    inversions = (a > b) + (a > c) + (b > c)
    return 1 if inversions % 2 == 0 else -1


def triple_arc_crosscheck(d: SingularLinkDiagram) -> List[str]:
    """Reversed-cyclic-order reading of the genus-zero condition.

    Restricted to triples of single arcs directly joining the same two
    circles; a triple passes when the cyclic orders at the two circles are
    opposite.  Findings are informational and reported alongside the ribbon
    computation, never merged with it.
    """
    from itertools import combinations

    by_pair: Dict[Tuple[str, str], List[ArcBand]] = {}
    for a in d.arcs:
        c1, c2 = a.start.circle_id, a.end.circle_id
        if c1 == c2:
            continue
        by_pair.setdefault(tuple(sorted((c1, c2))), []).append(a)
    findings = []
    for (c1, c2), arcs in sorted(by_pair.items()):
        if len(arcs) < 3:
            continue
        for triple in combinations(sorted(arcs, key=lambda a: a.id), 3):
            slots1 = tuple(
                a.start_slot if a.start.circle_id == c1 else a.end_slot for a in triple
            )
            slots2 = tuple(
                a.start_slot if a.start.circle_id == c2 else a.end_slot for a in triple
            )
            if _cyclic_orientation(slots1) == _cyclic_orientation(slots2):
                names = ",".join(a.id for a in triple)
                findings.append(
                    f"arcs {names} between {c1} and {c2} have matching cyclic order"
                )
    return findings
