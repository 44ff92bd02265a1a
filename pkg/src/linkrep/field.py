"""Exact arithmetic over Q(sqrt(5)): scalars, 3-vectors, 3x3 matrices and unsigned axes.

Every quantity in the package bottoms out here.  Scalars are pairs of reduced
rationals (a, b) standing for a + b*sqrt(5); equality, ordering and all field
operations are decidable and exact.  No floating point anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

RationalLike = Union[int, Fraction]


@dataclass(frozen=True)
class ExactScalar:
    """An element a + b*sqrt(5) of Q(sqrt(5)) with reduced rational parts."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        if not isinstance(self.a, Fraction):
            object.__setattr__(self, "a", Fraction(self.a))
        if not isinstance(self.b, Fraction):
            object.__setattr__(self, "b", Fraction(self.b))

    # --- constructors -------------------------------------------------

    @staticmethod
    def of(a: "RationalLike | ExactScalar", b: RationalLike = 0) -> "ExactScalar":
        if isinstance(a, ExactScalar):
            return a
        return ExactScalar(Fraction(a), Fraction(b))

    @staticmethod
    def sqrt5() -> "ExactScalar":
        return ExactScalar(Fraction(0), Fraction(1))

    @staticmethod
    def golden_ratio() -> "ExactScalar":
        """(1 + sqrt(5)) / 2, the generator used by the icosahedral preset."""
        return ExactScalar(Fraction(1, 2), Fraction(1, 2))

    # --- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def sign(self) -> int:
        """Exact sign: sqrt(5) is irrational, so a + b*sqrt(5) = 0 iff a = b = 0."""
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        if self.a == 0:
            return 1 if self.b > 0 else -1
        if self.a > 0 and self.b > 0:
            return 1
        if self.a < 0 and self.b < 0:
            return -1
        # opposite signs: compare a^2 with 5 b^2
        lhs = self.a * self.a
        rhs = 5 * self.b * self.b
        if self.a > 0:  # b < 0
            return 1 if lhs > rhs else (-1 if lhs < rhs else 0)
        return 1 if rhs > lhs else (-1 if rhs < lhs else 0)

    # --- arithmetic ---------------------------------------------------

    def __add__(self, other: "ExactScalar") -> "ExactScalar":
        return ExactScalar(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "ExactScalar") -> "ExactScalar":
        return ExactScalar(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self.a, -self.b)

    def __mul__(self, other: "ExactScalar") -> "ExactScalar":
        return ExactScalar(
            self.a * other.a + 5 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    def inverse(self) -> "ExactScalar":
        norm = self.a * self.a - 5 * self.b * self.b
        if norm == 0:
            # the field norm vanishes only at zero
            raise ZeroDivisionError("division by zero in Q(sqrt(5))")
        return ExactScalar(self.a / norm, -self.b / norm)

    def __truediv__(self, other: "ExactScalar") -> "ExactScalar":
        return self * other.inverse()

    # --- total order --------------------------------------------------

    def __lt__(self, other: "ExactScalar") -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: "ExactScalar") -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: "ExactScalar") -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: "ExactScalar") -> bool:
        return (self - other).sign() >= 0

    def __repr__(self) -> str:
        return f"ExactScalar({format_scalar(self)!r})"


ZERO = ExactScalar.of(0)
ONE = ExactScalar.of(1)


_SCALAR_RE = re.compile(
    r"^(?P<ra>-?\d+)(?:/(?P<rb>\d+))?"
    r"(?:(?P<sign>[+-])(?P<ia>\d+)(?:/(?P<ib>\d+))?\*r5)?$"
)


def parse_scalar(text: str) -> ExactScalar:
    """Parse the diagram-file scalar syntax: "p", "p/q", "p/q+r/s*r5", "p/q-r/s*r5"."""
    m = _SCALAR_RE.match(text)
    if m is None:
        raise ValueError(f"malformed scalar {text!r}")
    a = Fraction(int(m.group("ra")), int(m.group("rb") or 1))
    b = Fraction(0)
    if m.group("ia") is not None:
        b = Fraction(int(m.group("ia")), int(m.group("ib") or 1))
        if m.group("sign") == "-":
            b = -b
    return ExactScalar(a, b)


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_scalar(x: ExactScalar) -> str:
    """Canonical textual form; parse(format(x)) == x."""
    if x.b == 0:
        return _frac_str(x.a)
    sign = "+" if x.b > 0 else "-"
    return f"{_frac_str(x.a)}{sign}{_frac_str(abs(x.b))}*r5"


@dataclass(frozen=True)
class Vector3:
    x: ExactScalar
    y: ExactScalar
    z: ExactScalar

    @staticmethod
    def of(x: RationalLike, y: RationalLike, z: RationalLike) -> "Vector3":
        return Vector3(ExactScalar.of(x), ExactScalar.of(y), ExactScalar.of(z))

    def components(self) -> tuple:
        return (self.x, self.y, self.z)

    def is_zero(self) -> bool:
        return self.x.is_zero() and self.y.is_zero() and self.z.is_zero()

    def __add__(self, other: "Vector3") -> "Vector3":
        return Vector3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vector3") -> "Vector3":
        return Vector3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Vector3":
        return Vector3(-self.x, -self.y, -self.z)

    def scale(self, k: ExactScalar) -> "Vector3":
        return Vector3(self.x * k, self.y * k, self.z * k)

    def dot(self, other: "Vector3") -> ExactScalar:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: "Vector3") -> "Vector3":
        return Vector3(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )


@dataclass(frozen=True)
class Matrix3:
    """Row-major 3x3 matrix over Q(sqrt(5))."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("Matrix3 requires 3x3 entries")
        object.__setattr__(self, "rows", rows)

    @staticmethod
    def _new(rows: tuple) -> "Matrix3":
        # internal fast path: rows already a well-shaped tuple of tuples
        m = object.__new__(Matrix3)
        object.__setattr__(m, "rows", rows)
        return m

    @staticmethod
    def of(entries: Iterable[Iterable[RationalLike]]) -> "Matrix3":
        return Matrix3(
            tuple(tuple(ExactScalar.of(e) for e in row) for row in entries)
        )

    @staticmethod
    def identity() -> "Matrix3":
        return Matrix3.of([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    def __mul__(self, other: "Matrix3") -> "Matrix3":
        a, b = self.rows, other.rows
        return Matrix3._new(
            tuple(
                tuple(
                    a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j]
                    for j in range(3)
                )
                for i in range(3)
            )
        )

    def __add__(self, other: "Matrix3") -> "Matrix3":
        return Matrix3._new(
            tuple(
                tuple(self.rows[i][j] + other.rows[i][j] for j in range(3))
                for i in range(3)
            )
        )

    def scale(self, k: ExactScalar) -> "Matrix3":
        return Matrix3._new(tuple(tuple(e * k for e in row) for row in self.rows))

    def transpose(self) -> "Matrix3":
        return Matrix3._new(
            tuple(tuple(self.rows[j][i] for j in range(3)) for i in range(3))
        )

    def det(self) -> ExactScalar:
        r = self.rows
        return (
            r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
        )

    def trace(self) -> ExactScalar:
        return self.rows[0][0] + self.rows[1][1] + self.rows[2][2]

    def apply(self, v: Vector3) -> Vector3:
        r = self.rows
        return Vector3(
            r[0][0] * v.x + r[0][1] * v.y + r[0][2] * v.z,
            r[1][0] * v.x + r[1][1] * v.y + r[1][2] * v.z,
            r[2][0] * v.x + r[2][1] * v.y + r[2][2] * v.z,
        )

    def column(self, j: int) -> Vector3:
        return Vector3(self.rows[0][j], self.rows[1][j], self.rows[2][j])


def outer(u: Vector3, v: Vector3) -> Matrix3:
    uu, vv = u.components(), v.components()
    return Matrix3(tuple(tuple(uu[i] * vv[j] for j in range(3)) for i in range(3)))


def _canonicalize_direction(v: Vector3) -> Vector3:
    """Scale a nonzero vector to the canonical representative of its line.

    Divide by the first nonzero coordinate, then, if all coordinates are
    rational, rescale to coprime integers (first nonzero coordinate positive).
    """
    first = next(c for c in v.components() if not c.is_zero())
    w = v.scale(first.inverse())
    if all(c.is_rational() for c in w.components()):
        fracs = [c.a for c in w.components()]
        from math import gcd, lcm

        denom = lcm(*(f.denominator for f in fracs))
        ints = [f * denom for f in fracs]
        g = gcd(*(int(i) for i in ints))
        w = w.scale(ExactScalar.of(Fraction(denom, g)))
    return w


@dataclass(frozen=True)
class AxisLine:
    """An unsigned line through the origin, held by its canonical direction.

    A pi-rotation determines its axis only up to sign, so axes compare as
    lines: v and -v (and any nonzero rescaling) canonicalize identically.
    """

    direction: Vector3

    def __post_init__(self):
        if self.direction.is_zero():
            raise ValueError("zero vector does not span an axis")
        object.__setattr__(self, "direction", _canonicalize_direction(self.direction))

    @staticmethod
    def of(x: RationalLike, y: RationalLike, z: RationalLike) -> "AxisLine":
        return AxisLine(Vector3.of(x, y, z))


def is_perpendicular(u: AxisLine, v: AxisLine) -> bool:
    return u.direction.dot(v.direction).is_zero()


def is_angle_pi_over_4(u: AxisLine, v: AxisLine) -> bool:
    """Unsigned lines meet at pi/4 iff 2 (u.v)^2 = (u.u)(v.v)."""
    d = u.direction.dot(v.direction)
    lhs = ExactScalar.of(2) * d * d
    rhs = u.direction.dot(u.direction) * v.direction.dot(v.direction)
    return lhs == rhs


def is_coplanar(u: AxisLine, v: AxisLine, w: AxisLine) -> bool:
    m = Matrix3(
        (u.direction.components(), v.direction.components(), w.direction.components())
    )
    return m.det().is_zero()
