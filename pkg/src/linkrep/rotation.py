"""Finite subgroups of SO(3) as exact matrices.

Provides the rotation element type, composition / inversion / conjugation,
involution and axis extraction, the dictionary between S4 (permuting the four
cube diagonals) and the 24 cube rotations, and closure of generator sets.

Composition convention, used everywhere in the package: (g * h) applies h
first, then g.  Permutation composition follows the same convention.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Optional, Sequence

from .field import AxisLine, ExactScalar, Matrix3, Vector3, outer


@dataclass(frozen=True)
class RotationElement:
    """An exact special-orthogonal 3x3 matrix."""

    m: Matrix3

    def __post_init__(self):
        if self.m.transpose() * self.m != Matrix3.identity():
            raise ValueError("matrix is not orthogonal")
        if self.m.det() != ExactScalar.of(1):
            raise ValueError("matrix has determinant != 1")

    @staticmethod
    def _new(m: Matrix3) -> "RotationElement":
        # internal fast path: m already known special-orthogonal
        g = object.__new__(RotationElement)
        object.__setattr__(g, "m", m)
        return g

    @staticmethod
    def identity() -> "RotationElement":
        return RotationElement._new(Matrix3.identity())

    @staticmethod
    def of(entries) -> "RotationElement":
        return RotationElement(Matrix3.of(entries))

    def __mul__(self, other: "RotationElement") -> "RotationElement":
        # special-orthogonal matrices are closed under product
        return RotationElement._new(self.m * other.m)

    def inverse(self) -> "RotationElement":
        # orthogonal, so the transpose inverts
        return RotationElement._new(self.m.transpose())

    def trace(self) -> ExactScalar:
        return self.m.trace()

    def apply(self, v: Vector3) -> Vector3:
        return self.m.apply(v)

    def sort_key(self) -> tuple:
        """Deterministic total order on elements (row-major entry order)."""
        return tuple((e.a, e.b) for row in self.m.rows for e in row)


def compose(g: RotationElement, h: RotationElement) -> RotationElement:
    return g * h


def invert(g: RotationElement) -> RotationElement:
    return g.inverse()


def conjugate(g: RotationElement, h: RotationElement) -> RotationElement:
    """g * h * g^-1."""
    return g * h * g.inverse()


def is_involution(g: RotationElement) -> bool:
    """True iff g is a rotation by pi (g != I and g*g = I, equivalently trace -1)."""
    identity = Matrix3.identity()
    by_square = g.m != identity and g.m * g.m == identity
    by_trace = g.trace() == ExactScalar.of(-1)
    if by_square != by_trace:
        raise RuntimeError("involution criteria disagree on a rotation matrix")
    return by_square


def axis_of_involution(g: RotationElement) -> AxisLine:
    """The fixed line of a pi-rotation: any nonzero column of g + I."""
    if not is_involution(g):
        raise ValueError("element is not an involution")
    shifted = g.m + Matrix3.identity()
    for j in range(3):
        col = shifted.column(j)
        if not col.is_zero():
            axis = AxisLine(col)
            if g.apply(axis.direction) != axis.direction:
                raise RuntimeError("extracted axis is not fixed by the rotation")
            return axis
    raise RuntimeError("pi-rotation with no fixed direction")


def from_axis_pi(axis: AxisLine) -> RotationElement:
    """The rotation by pi about the given axis: (2/(v.v)) v v^T - I."""
    v = axis.direction
    norm = v.dot(v)
    scale = ExactScalar.of(2) * norm.inverse()
    m = outer(v, v).scale(scale) + Matrix3.identity().scale(ExactScalar.of(-1))
    return RotationElement(m)


# ---------------------------------------------------------------------------
# S4 as the rotation group of the cube
# ---------------------------------------------------------------------------

_CYCLES_RE = re.compile(r"\(([1-4]*)\)")


@dataclass(frozen=True)
class CubePermutation:
    """A permutation of {1,2,3,4}, acting on the four cube diagonals.

    images[i-1] is the image of i.  (p * q) applies q first.
    """

    images: tuple

    def __post_init__(self):
        if sorted(self.images) != [1, 2, 3, 4]:
            raise ValueError(f"not a permutation of 1..4: {self.images}")

    @staticmethod
    def identity() -> "CubePermutation":
        return CubePermutation((1, 2, 3, 4))

    @staticmethod
    def parse(text: str) -> "CubePermutation":
        """Parse cycle notation such as "(12)", "(12)(34)", "(123)"; "()" is the identity."""
        text = text.strip()
        if text in ("()", "e"):
            return CubePermutation.identity()
        if not re.fullmatch(r"(\([1-4]{2,4}\))+", text):
            raise ValueError(f"malformed cycle notation {text!r}")
        images = [1, 2, 3, 4]
        # disjoint cycles commute; apply them all to the identity
        for cycle in _CYCLES_RE.findall(text):
            pts = [int(c) for c in cycle]
            if len(set(pts)) != len(pts):
                raise ValueError(f"repeated point in cycle {cycle!r}")
            for i, p in enumerate(pts):
                if images[p - 1] != p:
                    raise ValueError(f"cycles are not disjoint in {text!r}")
                images[p - 1] = pts[(i + 1) % len(pts)]
        return CubePermutation(tuple(images))

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "CubePermutation") -> "CubePermutation":
        return CubePermutation(tuple(self(other(i)) for i in range(1, 5)))

    def inverse(self) -> "CubePermutation":
        inv = [0] * 4
        for i in range(1, 5):
            inv[self(i) - 1] = i
        return CubePermutation(tuple(inv))

    def is_even(self) -> bool:
        inversions = sum(
            1
            for i in range(4)
            for j in range(i + 1, 4)
            if self.images[i] > self.images[j]
        )
        return inversions % 2 == 0

    def cycle_str(self) -> str:
        """Canonical cycle notation: cycles by least point, fixed points omitted."""
        seen = set()
        cycles = []
        for start in range(1, 5):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self(start)
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self(nxt)
            if len(cycle) > 1:
                cycles.append(cycle)
        if not cycles:
            return "()"
        return "".join("(" + "".join(str(p) for p in c) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"CubePermutation({self.cycle_str()!r})"


#: the four cube diagonals, fixed once for a deterministic embedding
DIAGONALS = (
    Vector3.of(1, 1, 1),
    Vector3.of(1, -1, -1),
    Vector3.of(-1, 1, -1),
    Vector3.of(-1, -1, 1),
)


def _signed_permutation_rotations() -> list:
    """The 24 rotations of the cube: signed permutation matrices of determinant 1."""
    out = []
    for perm in permutations(range(3)):
        for signs in product((1, -1), repeat=3):
            rows = [[0, 0, 0] for _ in range(3)]
            for i in range(3):
                rows[i][perm[i]] = signs[i]
            m = Matrix3.of(rows)
            if m.det() == ExactScalar.of(1):
                out.append(RotationElement(m))
    out.sort(key=lambda g: g.sort_key())
    return out


def _diagonal_action(g: RotationElement) -> Optional[CubePermutation]:
    """The permutation of the four diagonal lines induced by g, if g permutes them."""
    lines = [AxisLine(d) for d in DIAGONALS]
    images = []
    for d in DIAGONALS:
        target = AxisLine(g.apply(d))
        try:
            images.append(lines.index(target) + 1)
        except ValueError:
            return None
    if sorted(images) != [1, 2, 3, 4]:
        return None
    return CubePermutation(tuple(images))


@lru_cache(maxsize=1)
def _cube_dictionary() -> dict:
    table = {}
    for g in _signed_permutation_rotations():
        p = _diagonal_action(g)
        if p is None:
            raise RuntimeError("cube rotation failed to permute the diagonals")
        if p.images in table:
            raise RuntimeError("diagonal action is not injective on cube rotations")
        table[p.images] = g
    if len(table) != 24:
        raise RuntimeError("expected a full S4 of diagonal actions")
    return table


def perm_to_rotation(p: CubePermutation) -> RotationElement:
    """The cube rotation permuting the diagonals d1..d4 (as lines) according to p."""
    return _cube_dictionary()[p.images]


def rotation_to_perm(g: RotationElement) -> Optional[CubePermutation]:
    """Inverse dictionary lookup; None if g is not a cube rotation."""
    for images, rot in _cube_dictionary().items():
        if rot == g:
            return CubePermutation(images)
    return None


def rot(cycles: str) -> RotationElement:
    """Shorthand: the cube rotation for the given cycle notation."""
    return perm_to_rotation(CubePermutation.parse(cycles))


# ---------------------------------------------------------------------------
# finite rotation groups
# ---------------------------------------------------------------------------

GROUP_SIZE_LIMIT = 200


@dataclass(frozen=True)
class FiniteRotationGroup:
    """A finite subgroup of SO(3), closed under product and inverse."""

    elements: tuple
    name: str = "custom"

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g: RotationElement) -> bool:
        return g.sort_key() in self._key_set()

    def _key_set(self):
        return {e.sort_key() for e in self.elements}

    def involutions(self) -> tuple:
        return tuple(g for g in self.elements if is_involution(g))


def generate_group(gens: Sequence[RotationElement]) -> FiniteRotationGroup:
    """Closure of a nonempty generator set; deterministic element ordering."""
    if not gens:
        raise ValueError("generator list must be nonempty")
    seen = {RotationElement.identity().sort_key(): RotationElement.identity()}
    frontier = list(gens)
    for g in gens:
        seen.setdefault(g.sort_key(), g)
    while frontier:
        g = frontier.pop()
        for h in list(seen.values()):
            for prod in (g * h, h * g):
                key = prod.sort_key()
                if key not in seen:
                    if len(seen) >= GROUP_SIZE_LIMIT:
                        raise ValueError("not a finite subgroup preset size")
                    seen[key] = prod
                    frontier.append(prod)
    elements = tuple(sorted(seen.values(), key=lambda e: e.sort_key()))
    return FiniteRotationGroup(elements)


@lru_cache(maxsize=1)
def octahedral_group() -> FiniteRotationGroup:
    """The 24 rotations of the cube, i.e. S4 acting on the diagonals."""
    return FiniteRotationGroup(tuple(_signed_permutation_rotations()), "octahedral")


@lru_cache(maxsize=1)
def tetrahedral_group() -> FiniteRotationGroup:
    """The 12 even permutations under the cube dictionary."""
    elems = [
        perm_to_rotation(CubePermutation(tuple(p)))
        for p in permutations((1, 2, 3, 4))
        if CubePermutation(tuple(p)).is_even()
    ]
    elems.sort(key=lambda g: g.sort_key())
    return FiniteRotationGroup(tuple(elems), "tetrahedral")


@lru_cache(maxsize=1)
def icosahedral_group() -> FiniteRotationGroup:
    """The 60 rotations of the icosahedron, with exact Q(sqrt(5)) entries.

    Generated by the order-3 coordinate cycle, the pi-rotation about the
    z-axis and a pi-rotation about an edge-midpoint axis of the icosahedron
    with vertices (0, +-1, +-phi) and cyclic permutations.
    """
    phi = ExactScalar.golden_ratio()
    one = ExactScalar.of(1)
    cycle = RotationElement.of([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    z_flip = from_axis_pi(AxisLine.of(0, 0, 1))
    edge_axis = AxisLine(Vector3(one, phi + one, phi))
    edge_flip = from_axis_pi(edge_axis)
    group = generate_group([cycle, z_flip, edge_flip])
    if len(group) != 60:
        raise RuntimeError(f"icosahedral closure has {len(group)} elements")
    return FiniteRotationGroup(group.elements, "icosahedral")


def preset_group(name: str) -> FiniteRotationGroup:
    presets = {
        "tetrahedral": tetrahedral_group,
        "octahedral": octahedral_group,
        "icosahedral": icosahedral_group,
    }
    if name not in presets:
        raise ValueError(f"unknown group preset {name!r}")
    return presets[name]()
