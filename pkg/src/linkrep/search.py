"""Decoration search over a finite rotation group, with conjugacy counting.

Backtracking assigns nodes in an order that maximizes forced conjugation
propagation: an arc whose word mentions only assigned nodes determines one
endpoint from the other.  Solutions are re-verified by the condition checks
after the search, so pruning cannot introduce soundness holes.

Solution tuples of pi-rotations are compared up to simultaneous rotation via
an exact invariant of their axis configuration: the pairwise squared-cosine
matrix plus the sign pattern of the Gram entries and of all axis triple
products, minimized over independent per-axis sign flips.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

from .conditions import (
    Decoration,
    check_genus0,
    check_relators,
    check_selfint,
    check_sw,
    holonomy_word,
)
from .diagram import ArcBand, DiagramError, SingularLinkDiagram, ensure_wellformed
from .field import (
    AxisLine,
    ExactScalar,
    Matrix3,
    is_angle_pi_over_4,
    is_coplanar,
    is_perpendicular,
)
from .rotation import (
    FiniteRotationGroup,
    RotationElement,
    axis_of_involution,
    conjugate,
    is_involution,
    octahedral_group,
    rot,
)


class StructuralConditionError(Exception):
    """A decoration-independent condition fails, so the search is vacuous."""


@dataclass(frozen=True)
class SearchOptions:
    group: FiniteRotationGroup
    involutions_only_on_hopfs: bool = True
    exhaustive_sw_paths: bool = False
    dedup: str = "so3_canonical"  # none | group_conjugacy | so3_canonical

    def __post_init__(self):
        if len(self.group) == 0:
            raise ValueError("search group must be nonempty")
        if self.dedup not in ("none", "group_conjugacy", "so3_canonical"):
            raise ValueError(f"unknown dedup mode {self.dedup!r}")


# ---------------------------------------------------------------------------
# the reference fixture: four decorated Hopf pairs and one simple circle
# ---------------------------------------------------------------------------

def _ref(text: str):
    from .diagram import CircleRef

    return CircleRef.parse(text)


def _arc(aid, start, s_slot, end, e_slot, word):
    return ArcBand(
        id=aid,
        start=_ref(start),
        start_slot=s_slot,
        end=_ref(end),
        end_slot=e_slot,
        word=tuple((_ref(r), s) for r, s in word),
    )


def ref1_diagram() -> SingularLinkDiagram:
    """REF-1: a tree of nine circles realizing the one-point configuration."""
    return SingularLinkDiagram(
        circles=("Y",),
        hopfs=("TL", "TR", "BL", "BR"),
        arcs=(
            _arc("A1", "TL.a", 0, "TL.b", 0, [("BL.a", 1)]),
            _arc("A2", "TR.a", 0, "TR.b", 0, [("BR.a", 1)]),
            _arc("A3", "BL.a", 0, "BL.b", 0, [("TL.a", 1)]),
            _arc("A4", "BR.a", 0, "BR.b", 0, [("TR.a", 1)]),
            _arc("A5", "TL.a", 1, "BL.a", 1, [("TR.a", 1), ("BR.a", 1)]),
            _arc("A6", "TR.a", 1, "BR.a", 1, [("TL.a", 1), ("BL.a", 1)]),
            _arc("A7", "TL.b", 1, "Y", 0, [("TL.a", 1), ("Y", 1)]),
            _arc("A8", "BL.b", 1, "TR.a", 2, [("BL.a", 1), ("TR.a", 1)]),
        ),
    )


REF1_HOPF_ORDER = ("TL", "TR", "BL", "BR")


def ref1_decoration() -> Decoration:
    return Decoration.of(
        {
            "TL": rot("(12)"),
            "TR": rot("(14)"),
            "BL": rot("(34)"),
            "BR": rot("(23)"),
            "Y": rot("(24)"),
        }
    )


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def _word_nodes(a: ArcBand) -> List[str]:
    return [ref.node for ref, _ in a.word]


def _node_order(d: SingularLinkDiagram) -> List[str]:
    """Nodes by descending appearance count in arc words (ties by id):
    assigning word-heavy nodes first unlocks forced conjugations early."""
    counts: Dict[str, int] = {n: 0 for n in list(d.hopfs) + list(d.circles)}
    for a in d.arcs:
        for n in _word_nodes(a):
            counts[n] += 1
    return sorted(counts, key=lambda n: (-counts[n], n))


def enumerate_valid_decorations(
    d: SingularLinkDiagram, opts: SearchOptions
) -> List[Decoration]:
    """All total decorations over opts.group passing the relator and
    Stiefel-Whitney checks; deterministic order.

    A failing genus condition is an error (the search contract presumes it);
    a failing self-intersection condition makes every Stiefel-Whitney path
    product undefined, so the result is simply empty.
    """
    ensure_wellformed(d)
    if not check_genus0(d).passed:
        raise StructuralConditionError("genus0 condition fails on the diagram")
    if not check_selfint(d).passed:
        return []

    nodes = _node_order(d)
    hopf_set = set(d.hopfs)
    elements = list(opts.group.elements)
    n_el = len(elements)
    element_index = {g.sort_key(): i for i, g in enumerate(elements)}

    # index-level group tables: backtracking never touches matrices
    mult = [
        [element_index[(gi * gj).sort_key()] for gj in elements] for gi in elements
    ]
    inv = [element_index[g.inverse().sort_key()] for g in elements]
    involution_idx = [i for i, g in enumerate(elements) if is_involution(g)]

    def domain(node: str) -> List[int]:
        if node in hopf_set and opts.involutions_only_on_hopfs:
            return involution_idx
        return list(range(n_el))

    allowed_sets = {
        node: set(domain(node)) for node in list(d.hopfs) + list(d.circles)
    }
    identity_idx = element_index[RotationElement.identity().sort_key()]

    assignment: Dict[str, int] = {}
    solutions: List[Decoration] = []

    def word_product(a: ArcBand) -> Optional[int]:
        out = identity_idx
        for ref, sign in a.word:
            g = assignment.get(ref.node)
            if g is None:
                return None
            out = mult[out][g if sign == 1 else inv[g]]
        return out

    def conj(c: int, g: int) -> int:
        return mult[mult[c][g]][inv[c]]

    def propagate(trail: List[str]) -> bool:
        """Force endpoints through fully-worded arcs; False on contradiction."""
        changed = True
        while changed:
            changed = False
            for a in d.arcs:
                c = word_product(a)
                if c is None:
                    continue
                g = assignment.get(a.start.node)
                h = assignment.get(a.end.node)
                if g is not None and h is not None:
                    if conj(c, g) != h:
                        return False
                elif g is not None:
                    forced = conj(c, g)
                    if forced not in allowed_sets[a.end.node]:
                        return False
                    assignment[a.end.node] = forced
                    trail.append(a.end.node)
                    changed = True
                elif h is not None:
                    forced = conj(inv[c], h)
                    if forced not in allowed_sets[a.start.node]:
                        return False
                    assignment[a.start.node] = forced
                    trail.append(a.start.node)
                    changed = True
        return True

    def descend():
        unassigned = [n for n in nodes if n not in assignment]
        if not unassigned:
            dec = Decoration.of({n: elements[i] for n, i in assignment.items()})
            # re-verify through the public checks: no pruning soundness holes
            if check_relators(d, dec).passed and check_sw(
                d, dec, exhaustive_paths=opts.exhaustive_sw_paths
            ).passed:
                solutions.append(dec)
            return
        node = unassigned[0]
        for g in domain(node):
            assignment[node] = g
            trail = [node]
            if propagate(trail):
                descend()
            for n in trail:
                del assignment[n]

    descend()
    node_names = sorted(list(d.hopfs) + list(d.circles))
    solutions.sort(
        key=lambda dec: tuple(element_index[dec[n].sort_key()] for n in node_names)
    )
    return solutions


# ---------------------------------------------------------------------------
# conjugacy canonicalization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConjugacyClassKey:
    """Complete exact invariant of an ordered tuple of pi-rotations up to
    simultaneous rotation, computed from the unsigned-axis configuration."""

    size: int
    cos_squared: tuple  # upper-triangular (i<j) normalized squared Gram entries
    gram_signs: tuple  # canonical sign pattern of Gram entries, i<j
    triple_signs: tuple  # canonical signs of det(v_i, v_j, v_k), i<j<k


def canonical_class(elements: Sequence[RotationElement]) -> ConjugacyClassKey:
    for g in elements:
        if not is_involution(g):
            raise ValueError("canonical_class requires pi-rotations")
    axes = [axis_of_involution(g).direction for g in elements]
    n = len(axes)
    pairs = list(combinations(range(n), 2))
    triples = list(combinations(range(n), 3))
    gram = [[axes[i].dot(axes[j]) for j in range(n)] for i in range(n)]
    cos2 = tuple(
        (gram[i][j] * gram[i][j]) / (gram[i][i] * gram[j][j]) for i, j in pairs
    )
    dets = {
        (i, j, k): Matrix3(
            (axes[i].components(), axes[j].components(), axes[k].components())
        ).det()
        for i, j, k in triples
    }
    best = None
    for flips in product((1, -1), repeat=n):
        signs = tuple(flips[i] * flips[j] * gram[i][j].sign() for i, j in pairs)
        tsigns = tuple(
            flips[i] * flips[j] * flips[k] * dets[(i, j, k)].sign()
            for i, j, k in triples
        )
        candidate = (signs, tsigns)
        if best is None or candidate < best:
            best = candidate
    return ConjugacyClassKey(
        size=n, cos_squared=cos2, gram_signs=best[0], triple_signs=best[1]
    )


def count_classes(
    solutions: Sequence[Decoration],
    hopf_order: Sequence[str],
    opts: SearchOptions,
) -> int:
    """Distinct solution classes under the configured dedup mode."""
    if opts.dedup == "none":
        return len(set(tuple(dec.mapping) for dec in solutions))
    if opts.dedup == "so3_canonical":
        keys = {
            canonical_class([dec[h] for h in hopf_order]) for dec in solutions
        }
        return len(keys)
    # group_conjugacy: whole decorations up to simultaneous conjugation in the group
    reps = set()
    for dec in solutions:
        orbit_min = min(
            tuple(v.sort_key() for _, v in dec.conjugated(c).mapping)
            for c in opts.group
        )
        reps.add(orbit_min)
    return len(reps)


def verify_onepoint_geometry(dec: Decoration) -> bool:
    """The axis geometry forced on the reference fixture's Hopf tuple:
    TL perpendicular to BL, TR perpendicular to BR, and each pair's common
    perpendicular coplanar with and at pi/4 to the axes of the other pair."""
    for name in REF1_HOPF_ORDER:
        if not is_involution(dec[name]):
            raise ValueError(f"decoration of {name} is not a pi-rotation")
    tl, tr, bl, br = (axis_of_involution(dec[n]) for n in ("TL", "TR", "BL", "BR"))
    if not (is_perpendicular(tl, bl) and is_perpendicular(tr, br)):
        return False
    perp_right = tr.direction.cross(br.direction)
    perp_left = tl.direction.cross(bl.direction)
    if perp_right.is_zero() or perp_left.is_zero():
        return False
    pr = AxisLine(perp_right)
    pl = AxisLine(perp_left)
    return (
        is_coplanar(pr, tl, bl)
        and is_angle_pi_over_4(pr, tl)
        and is_angle_pi_over_4(pr, bl)
        and is_coplanar(pl, tr, br)
        and is_angle_pi_over_4(pl, tr)
        and is_angle_pi_over_4(pl, br)
    )
