"""Points of the space built from a digraph: vertices, ends, and interior points of edges and limit edges."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import FormatError
from .periodic import End


@dataclass(frozen=True)
class Vertex:
    name: str

    def __str__(self) -> str:
        return f"v:{self.name}"


@dataclass(frozen=True)
class EdgeInterior:
    """The point at fraction ``lam`` along the host edge ``tail -> head``, measured from the tail."""

    tail: str
    head: str
    lam: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        if not 0 < self.lam < 1:
            raise FormatError(f"edge parameter must lie strictly between 0 and 1, got {self.lam}")
        if self.tail == self.head:
            raise FormatError("an edge needs two distinct endpoints")

    def __str__(self) -> str:
        return f"e:{self.tail},{self.head},{self.lam}"


@dataclass(frozen=True)
class LimitEdgeInterior:
    """Interior point of a limit edge; `start` and `end` are :class:`Vertex` or :class:`End` anchors."""

    start: Union[Vertex, End]
    end: Union[Vertex, End]
    lam: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        if not 0 < self.lam < 1:
            raise FormatError(f"edge parameter must lie strictly between 0 and 1, got {self.lam}")
        if self.start == self.end:
            raise FormatError("a limit edge needs two distinct anchors")
        if not (isinstance(self.start, End) or isinstance(self.end, End)):
            raise FormatError("a limit edge needs at least one end among its anchors")

    def __str__(self) -> str:
        return f"le:{self.start},{self.end},{self.lam}"


Point = Union[Vertex, End, EdgeInterior, LimitEdgeInterior]


def _anchor(a):
    return a.name if isinstance(a, Vertex) else a


def anchors(p: Point) -> tuple:
    """``(vstart, vend, lam)``; vertex anchors are plain names, end anchors :class:`End` objects.

    Vertices and ends are their own start and end; their ``lam`` is unused.
    """
    if isinstance(p, Vertex):
        return p.name, p.name, Fraction(0)
    if isinstance(p, End):
        return p, p, Fraction(0)
    if isinstance(p, EdgeInterior):
        return p.tail, p.head, p.lam
    if isinstance(p, LimitEdgeInterior):
        return _anchor(p.start), _anchor(p.end), p.lam
    raise TypeError(f"not a point: {p!r}")


def is_inner(p: Point) -> bool:
    return isinstance(p, (EdgeInterior, LimitEdgeInterior))


def _parse_anchor(text: str):
    if text.startswith("end:") and len(text) > 4:
        return End(text[4:])
    if text.startswith("v:") and len(text) > 2:
        return Vertex(text[2:])
    raise FormatError(f"bad anchor {text!r}; expected v:<name> or end:<strand>")


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"bad fraction {text!r}") from None


def parse_point(text: str) -> Point:
    """``v:<name>``, ``end:<strand>``, ``e:<tail>,<head>,<n>/<d>`` or ``le:<anchor>,<anchor>,<n>/<d>``."""
    kind, sep, rest = text.partition(":")
    if not sep or not rest:
        raise FormatError(f"bad point {text!r}")
    if kind == "v":
        return Vertex(rest)
    if kind == "end":
        return End(rest)
    bits = rest.split(",")
    if len(bits) != 3:
        raise FormatError(f"bad point {text!r}")
    if kind == "e":
        return EdgeInterior(bits[0], bits[1], _parse_fraction(bits[2]))
    if kind == "le":
        return LimitEdgeInterior(_parse_anchor(bits[0]), _parse_anchor(bits[1]), _parse_fraction(bits[2]))
    raise FormatError(f"unknown point kind {kind!r}")
