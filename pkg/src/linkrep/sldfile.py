"""The .sld plain-text diagram format: parser and canonical serializer.

Line-oriented statements:

    group (tetrahedral | octahedral | icosahedral)
    circle ID
    hopf ID                         members referenced as ID.a / ID.b
    arc ID from REF slot INT to REF slot INT word (REF:+ | REF:-)* [twist INT]
    decorate NODEID = perm "CYCLES" | matrix S11 ... S33
    # comment

Scalars use the "p/q" / "p/q+r/s*r5" syntax.  parse(serialize(doc)) == doc,
and serialize emits a canonical byte-for-byte stable formatting; comments are
preserved as statements.
"""

from __future__ import annotations

import shlex
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from .conditions import Decoration
from .diagram import ArcBand, CircleRef, SingularLinkDiagram
from .field import format_scalar, parse_scalar
from .rotation import (
    CubePermutation,
    RotationElement,
    perm_to_rotation,
)

GROUP_NAMES = ("tetrahedral", "octahedral", "icosahedral")


class SldParseError(Exception):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


@dataclass(frozen=True)
class GroupStmt:
    name: str


@dataclass(frozen=True)
class CircleStmt:
    id: str


@dataclass(frozen=True)
class HopfStmt:
    id: str


@dataclass(frozen=True)
class ArcStmt:
    arc: ArcBand


@dataclass(frozen=True)
class DecorateStmt:
    node: str
    element: RotationElement
    perm: Optional[CubePermutation]  # kept so the textual form round-trips


@dataclass(frozen=True)
class CommentStmt:
    text: str  # without the leading "# "


Statement = Union[GroupStmt, CircleStmt, HopfStmt, ArcStmt, DecorateStmt, CommentStmt]


@dataclass(frozen=True)
class SldDocument:
    statements: Tuple[Statement, ...]

    def group_name(self) -> Optional[str]:
        for s in self.statements:
            if isinstance(s, GroupStmt):
                return s.name
        return None

    def diagram(self) -> SingularLinkDiagram:
        circles = tuple(s.id for s in self.statements if isinstance(s, CircleStmt))
        hopfs = tuple(s.id for s in self.statements if isinstance(s, HopfStmt))
        arcs = tuple(s.arc for s in self.statements if isinstance(s, ArcStmt))
        return SingularLinkDiagram(circles=circles, hopfs=hopfs, arcs=arcs)

    def decoration(self) -> Optional[Decoration]:
        pairs = {
            s.node: s.element for s in self.statements if isinstance(s, DecorateStmt)
        }
        return Decoration.of(pairs) if pairs else None


def _parse_int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise SldParseError(lineno, f"{what} must be an integer, got {token!r}")


def _parse_arc(tokens: List[str], lineno: int) -> ArcBand:
    # arc ID from REF slot INT to REF slot INT word W* [twist INT]
    def expect(keyword: str, pos: int):
        if pos >= len(tokens) or tokens[pos] != keyword:
            raise SldParseError(lineno, f"expected {keyword!r} in arc statement")

    if len(tokens) < 10:
        raise SldParseError(lineno, "truncated arc statement")
    arc_id = tokens[1]
    expect("from", 2)
    start = CircleRef.parse(tokens[3])
    expect("slot", 4)
    start_slot = _parse_int(tokens[5], lineno, "slot")
    expect("to", 6)
    end = CircleRef.parse(tokens[7])
    expect("slot", 8)
    end_slot = _parse_int(tokens[9], lineno, "slot")
    expect("word", 10)
    rest = tokens[11:]
    twist = 0
    if "twist" in rest:
        at = rest.index("twist")
        if at != len(rest) - 2:
            raise SldParseError(lineno, "twist takes exactly one trailing integer")
        twist = _parse_int(rest[-1], lineno, "twist")
        rest = rest[:at]
    word = []
    for tok in rest:
        if ":" not in tok:
            raise SldParseError(lineno, f"word entry {tok!r} is missing its sign")
        ref_text, sign_text = tok.rsplit(":", 1)
        if sign_text not in ("+", "-"):
            raise SldParseError(lineno, f"word sign must be + or -, got {sign_text!r}")
        word.append((CircleRef.parse(ref_text), 1 if sign_text == "+" else -1))
    try:
        return ArcBand(
            id=arc_id,
            start=start,
            start_slot=start_slot,
            end=end,
            end_slot=end_slot,
            word=tuple(word),
            twist=twist,
        )
    except ValueError as exc:
        raise SldParseError(lineno, str(exc))


def _parse_decorate(tokens: List[str], lineno: int) -> DecorateStmt:
    # decorate NODEID = perm "CYCLES" | matrix S11 ... S33
    if len(tokens) < 5 or tokens[2] != "=":
        raise SldParseError(lineno, "malformed decorate statement")
    node = tokens[1]
    kind = tokens[3]
    if kind == "perm":
        if len(tokens) != 5:
            raise SldParseError(lineno, "perm decoration takes one cycle token")
        try:
            perm = CubePermutation.parse(tokens[4])
        except ValueError as exc:
            raise SldParseError(lineno, str(exc))
        return DecorateStmt(node=node, element=perm_to_rotation(perm), perm=perm)
    if kind == "matrix":
        if len(tokens) != 13:
            raise SldParseError(lineno, "matrix decoration takes nine scalars")
        try:
            entries = [parse_scalar(t) for t in tokens[4:13]]
            element = RotationElement.of(
                [entries[0:3], entries[3:6], entries[6:9]]
            )
        except ValueError as exc:
            raise SldParseError(lineno, str(exc))
        return DecorateStmt(node=node, element=element, perm=None)
    raise SldParseError(lineno, f"unknown element kind {kind!r}")


def parse(text: str) -> SldDocument:
    statements: List[Statement] = []
    node_ids = set()
    arc_ids = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            statements.append(CommentStmt(line[1:].strip()))
            continue
        try:
            tokens = shlex.split(line)
        except ValueError as exc:
            raise SldParseError(lineno, f"tokenization failed: {exc}")
        keyword = tokens[0]
        if keyword == "group":
            if len(tokens) != 2 or tokens[1] not in GROUP_NAMES:
                raise SldParseError(
                    lineno, f"group must be one of {', '.join(GROUP_NAMES)}"
                )
            statements.append(GroupStmt(tokens[1]))
        elif keyword in ("circle", "hopf"):
            if len(tokens) != 2:
                raise SldParseError(lineno, f"{keyword} takes exactly one id")
            if tokens[1] in node_ids:
                raise SldParseError(lineno, f"duplicate id {tokens[1]!r}")
            node_ids.add(tokens[1])
            statements.append(
                CircleStmt(tokens[1]) if keyword == "circle" else HopfStmt(tokens[1])
            )
        elif keyword == "arc":
            arc = _parse_arc(tokens, lineno)
            if arc.id in arc_ids:
                raise SldParseError(lineno, f"duplicate id {arc.id!r}")
            arc_ids.add(arc.id)
            statements.append(ArcStmt(arc))
        elif keyword == "decorate":
            statements.append(_parse_decorate(tokens, lineno))
        else:
            raise SldParseError(lineno, f"unknown keyword {keyword!r}")
    return SldDocument(tuple(statements))


def _format_arc(a: ArcBand) -> str:
    parts = [
        "arc",
        a.id,
        "from",
        str(a.start),
        "slot",
        str(a.start_slot),
        "to",
        str(a.end),
        "slot",
        str(a.end_slot),
        "word",
    ]
    for ref, sign in a.word:
        parts.append(f"{ref}:{'+' if sign == 1 else '-'}")
    if a.twist != 0:
        parts.extend(["twist", str(a.twist)])
    return " ".join(parts)


def _format_statement(s: Statement) -> str:
    if isinstance(s, CommentStmt):
        return f"# {s.text}" if s.text else "#"
    if isinstance(s, GroupStmt):
        return f"group {s.name}"
    if isinstance(s, CircleStmt):
        return f"circle {s.id}"
    if isinstance(s, HopfStmt):
        return f"hopf {s.id}"
    if isinstance(s, ArcStmt):
        return _format_arc(s.arc)
    if isinstance(s, DecorateStmt):
        if s.perm is not None:
            return f'decorate {s.node} = perm "{s.perm.cycle_str()}"'
        scalars = " ".join(
            format_scalar(e) for row in s.element.m.rows for e in row
        )
        return f"decorate {s.node} = matrix {scalars}"
    raise TypeError(f"unknown statement {s!r}")


def serialize(doc: SldDocument) -> str:
    return "".join(_format_statement(s) + "\n" for s in doc.statements)
