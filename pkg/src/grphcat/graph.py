"""Finite multigraphs with loops, and the four graph categories.

A graph's *part set* is the disjoint union of its vertices and edges.  Parts
are identified by ``Part(kind, label)``; labels are strings and only need to be
unique within one kind.
"""

from __future__ import annotations

import enum
from collections import Counter
from collections.abc import Iterable, Mapping
from typing import NamedTuple


class Kind(enum.IntEnum):
    VERTEX = 0
    EDGE = 1

    @property
    def tag(self) -> str:
        return "v" if self is Kind.VERTEX else "e"


class Part(NamedTuple):
    kind: Kind
    label: str

    @property
    def is_vertex(self) -> bool:
        return self.kind is Kind.VERTEX

    @property
    def is_edge(self) -> bool:
        return self.kind is Kind.EDGE

    def __str__(self) -> str:
        return f"{self.kind.tag}:{self.label}"


def vertex(label) -> Part:
    return Part(Kind.VERTEX, str(label))


def edge(label) -> Part:
    return Part(Kind.EDGE, str(label))


Incidence = tuple[Part, Part]


class Category(enum.Enum):
    GRPHS = "Grphs"
    STGRPHS = "StGrphs"
    SIGRPHS = "SiGrphs"
    SLSTGRPHS = "SLStGrphs"

    @property
    def strict(self) -> bool:
        """Edges must map to edges."""
        return self in (Category.STGRPHS, Category.SLSTGRPHS)

    @property
    def epi_mono_on_parts(self) -> bool:
        """Epi/mono are surjective/injective on whole part sets."""
        return self in (Category.GRPHS, Category.STGRPHS)

    @classmethod
    def parse(cls, text: str) -> Category:
        for cat in cls:
            if cat.value.lower() == text.lower() or cat.name.lower() == text.lower():
                return cat
        raise ValueError(f"unknown category {text!r}")

    def __str__(self) -> str:
        return self.value


class Graph:
    """Immutable finite multigraph.

    ``vertices`` is an iterable of labels; ``edges`` maps an edge label to its
    pair of endpoint labels (equal endpoints make a loop).
    """

    __slots__ = ("_vertices", "_vset", "_edges", "_incidence", "_hash")

    def __init__(self, vertices: Iterable = (), edges: Mapping | Iterable = ()):
        vs: set[Part] = set()
        for label in vertices:
            p = vertex(label)
            if p in vs:
                raise ValueError(f"duplicate vertex {p.label!r}")
            vs.add(p)
        items = edges.items() if isinstance(edges, Mapping) else edges
        incidence: dict[Part, Incidence] = {}
        for label, (x, y) in items:
            e = edge(label)
            if e in incidence:
                raise ValueError(f"duplicate edge {e.label!r}")
            ends = (vertex(x), vertex(y))
            for end in ends:
                if end not in vs:
                    raise ValueError(f"edge {e.label!r} references unknown vertex {end.label!r}")
            incidence[e] = ends if ends[0] <= ends[1] else (ends[1], ends[0])
        self._vertices = tuple(sorted(vs))
        self._vset = frozenset(vs)
        self._edges = tuple(sorted(incidence))
        self._incidence = incidence
        self._hash = None

    @classmethod
    def _from_parts(cls, vertices: Iterable[Part], incidence: Mapping[Part, Incidence]) -> Graph:
        # trusted fast path for constructions; incidence pairs must already be sorted
        g = cls.__new__(cls)
        g._vertices = tuple(sorted(vertices))
        g._vset = frozenset(g._vertices)
        g._edges = tuple(sorted(incidence))
        g._incidence = dict(incidence)
        g._hash = None
        return g

    @property
    def vertices(self) -> tuple[Part, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[Part, ...]:
        return self._edges

    @property
    def parts(self) -> tuple[Part, ...]:
        return self._vertices + self._edges

    def __contains__(self, p: Part) -> bool:
        if p.kind is Kind.EDGE:
            return p in self._incidence
        return p in self._vset

    def incidence(self, p: Part) -> Incidence:
        """Endpoints of ``p``; a vertex is incident to itself twice."""
        if p.kind is Kind.EDGE:
            try:
                return self._incidence[p]
            except KeyError:
                raise KeyError(f"unknown part {p}") from None
        if p not in self._vset:
            raise KeyError(f"unknown part {p}")
        return (p, p)

    def is_loop(self, e: Part) -> bool:
        x, y = self._incidence[e]
        return x == y

    def __len__(self) -> int:
        return len(self._vertices) + len(self._edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._incidence == other._incidence

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vertices, frozenset(self._incidence.items())))
        return self._hash

    def __repr__(self) -> str:
        es = ", ".join(f"{e.label}={x.label}~{y.label}" for e, (x, y) in self._incidence.items())
        return f"Graph(V=[{', '.join(v.label for v in self._vertices)}], E=[{es}])"

    def subgraph(self, parts: Iterable[Part]) -> Graph:
        """Subgraph on ``parts``; every edge's endpoints must be included."""
        keep = set(parts)
        vs = [p for p in self._vertices if p in keep]
        vset = set(vs)
        inc = {}
        for e in self._edges:
            if e in keep:
                x, y = self._incidence[e]
                if x not in vset or y not in vset:
                    raise ValueError(f"edge {e.label!r} kept without its endpoints")
                inc[e] = (x, y)
        return Graph._from_parts(vs, inc)

    def degree(self, v: Part) -> int:
        """Degree counting loops twice."""
        return sum((x == v) + (y == v) for x, y in self._incidence.values())


def part_set(g: Graph) -> list[Part]:
    """Vertices then edges, each sorted by label."""
    return list(g.parts)


def incidence_of(g: Graph, p: Part) -> Incidence:
    return g.incidence(p)


def loop_counts(g: Graph) -> Counter:
    return Counter(x for x, y in g._incidence.values() if x == y)


def has_parallel_edges(g: Graph, *, include_loops: bool = True) -> bool:
    seen = Counter(inc for inc in g._incidence.values() if include_loops or inc[0] != inc[1])
    return any(n > 1 for n in seen.values())


def validate_in_category(g: Graph, cat: Category) -> bool:
    if cat in (Category.GRPHS, Category.STGRPHS):
        return True
    if cat is Category.SLSTGRPHS:
        # a second loop on a vertex is a parallel loop
        return not has_parallel_edges(g)
    return not has_parallel_edges(g) and not loop_counts(g)
