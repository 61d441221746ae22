"""Products, coproducts, equalizers and coequalizers in the four categories.

Every construction returns a :class:`ConeResult` whose parts carry
deterministic labels:

* product parts ``(<a>,<b>)`` and, for two proper edges, ``bar(<a>,<b>)``;
* coproduct parts ``<i>.<label>``;
* equalizer parts keep their labels (it is a subgraph);
* coequalizer classes take the smallest label among members of the class's kind.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .graph import Category, Graph, Part, edge, validate_in_category, vertex
from .morphism import Morphism, compose, validate_morphism, violations


@dataclass(frozen=True)
class ConeResult:
    kind: str
    category: Category
    object: Graph
    legs: tuple[Morphism, ...]
    diagram: tuple = ()

    @property
    def leg(self) -> Morphism:
        (only,) = self.legs
        return only


class UnionFind:
    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[ry] = rx
        return True

    def classes(self) -> dict:
        out = defaultdict(list)
        for x in self.parent:
            out[self.find(x)].append(x)
        return out


def _ordered(x: Part, y: Part) -> tuple[Part, Part]:
    return (x, y) if x <= y else (y, x)


def _require_objects(cat: Category, *graphs: Graph) -> None:
    for g in graphs:
        if not validate_in_category(g, cat):
            raise ValueError(f"{g!r} is not an object of {cat}")


def _require_parallel(f: Morphism, g: Morphism, cat: Category) -> None:
    if f.domain != g.domain or f.codomain != g.codomain:
        raise ValueError("morphisms are not parallel (domain/codomain mismatch)")
    for m in (f, g):
        problems = violations(m, cat)
        if problems:
            raise ValueError(f"not a morphism of {cat}: {problems[0]}")


# quotients shared by coequalizers and the product post-collapse


def _stabilize(uf: UnionFind, g: Graph) -> None:
    """An edge identified with a vertex drags its endpoints into that vertex."""
    changed = True
    while changed:
        changed = False
        vertex_roots = {uf.find(v) for v in g.vertices}
        for e in g.edges:
            r = uf.find(e)
            if r in vertex_roots:
                for end in g.incidence(e):
                    if uf.union(r, end):
                        changed = True
                        r = uf.find(e)
                        vertex_roots.add(r)


def _class_parts(uf: UnionFind, g: Graph) -> dict[Part, Part]:
    """Map each class root to the part naming that class."""
    members = uf.classes()
    names = {}
    for root, ms in members.items():
        vs = [m for m in ms if m.is_vertex]
        names[root] = vertex(min(v.label for v in vs)) if vs else edge(min(m.label for m in ms))
    return names


def _collapse(uf: UnionFind, g: Graph, cat: Category) -> None:
    """Identify parallel edges (and, in SiGrphs, loops with their vertex)."""
    if cat not in (Category.SIGRPHS, Category.SLSTGRPHS):
        return
    changed = True
    while changed:
        changed = False
        vertex_roots = {uf.find(v) for v in g.vertices}
        by_ends: dict[tuple, Part] = {}
        for e in g.edges:
            r = uf.find(e)
            if r in vertex_roots:
                continue
            x, y = (uf.find(end) for end in g.incidence(e))
            if cat is Category.SIGRPHS and x == y:
                changed |= uf.union(x, r)
                continue
            key = (x, y) if x <= y else (y, x)
            if key in by_ends:
                changed |= uf.union(by_ends[key], r)
            else:
                by_ends[key] = r
        _stabilize(uf, g)


def _quotient(uf: UnionFind, g: Graph) -> tuple[Graph, dict[Part, Part]]:
    names = _class_parts(uf, g)
    qmap = {p: names[uf.find(p)] for p in g.parts}
    vertices = {qmap[v] for v in g.vertices}
    incidence: dict[Part, tuple[Part, Part]] = {}
    for e in g.edges:
        c = qmap[e]
        if c.is_vertex:
            continue
        x, y = g.incidence(e)
        ends = _ordered(qmap[x], qmap[y])
        seen = incidence.setdefault(c, ends)
        if seen != ends:
            raise AssertionError(f"quotient incidence ill-defined for class {c}: {seen} vs {ends}")
    return Graph._from_parts(vertices, incidence), qmap


# constructions


def _coordinate_labels(g: Graph) -> dict[Part, str]:
    # qualify a label with its kind only where a vertex and an edge share it
    shared = {v.label for v in g.vertices} & {e.label for e in g.edges}
    return {p: (str(p) if p.label in shared else p.label) for p in g.parts}


def product(a: Graph, b: Graph, cat: Category = Category.GRPHS) -> ConeResult:
    _require_objects(cat, a, b)
    la, lb = _coordinate_labels(a), _coordinate_labels(b)
    pair_vertex = {
        (x, y): vertex(f"({la[x]},{lb[y]})") for x in a.vertices for y in b.vertices
    }
    proj0: dict[Part, Part] = {}
    proj1: dict[Part, Part] = {}
    for (x, y), v in pair_vertex.items():
        proj0[v], proj1[v] = x, y
    incidence: dict[Part, tuple[Part, Part]] = {}
    for x in a.parts:
        a1, a2 = a.incidence(x)
        for y in b.parts:
            if x.is_vertex and y.is_vertex:
                continue
            if cat.strict and x.is_vertex != y.is_vertex:
                continue
            b1, b2 = b.incidence(y)
            e = edge(f"({la[x]},{lb[y]})")
            if e in incidence:
                raise ValueError(f"product label collision at {e}")
            incidence[e] = _ordered(pair_vertex[a1, b1], pair_vertex[a2, b2])
            proj0[e], proj1[e] = x, y
            if a1 != a2 and b1 != b2:
                e = edge(f"bar({la[x]},{lb[y]})")
                if e in incidence:
                    raise ValueError(f"product label collision at {e}")
                incidence[e] = _ordered(pair_vertex[a1, b2], pair_vertex[a2, b1])
                proj0[e], proj1[e] = x, y
    if len(set(pair_vertex.values())) != len(pair_vertex):
        raise ValueError("product vertex labels collided")
    obj = Graph._from_parts(pair_vertex.values(), incidence)

    if cat in (Category.SIGRPHS, Category.SLSTGRPHS):
        uf = UnionFind(obj.parts)
        _collapse(uf, obj, cat)
        collapsed, qmap = _quotient(uf, obj)
        if len(collapsed) != len(obj):
            p0, p1 = {}, {}
            for p, c in qmap.items():
                if p0.setdefault(c, proj0[p]) != proj0[p] or p1.setdefault(c, proj1[p]) != proj1[p]:
                    raise AssertionError("collapsed product parts disagree on projections")
            obj, proj0, proj1 = collapsed, p0, p1

    legs = (Morphism._trusted(obj, a, proj0), Morphism._trusted(obj, b, proj1))
    return ConeResult("product", cat, obj, legs, (a, b))


def coproduct(graphs, cat: Category = Category.GRPHS) -> ConeResult:
    """Disjoint union; an empty list gives the empty (initial) graph."""
    graphs = list(graphs)
    _require_objects(cat, *graphs)
    maps = []
    vertices: list[Part] = []
    incidence: dict[Part, tuple[Part, Part]] = {}
    for i, g in enumerate(graphs):
        m = {p: Part(p.kind, f"{i}.{p.label}") for p in g.parts}
        vertices.extend(m[v] for v in g.vertices)
        for e in g.edges:
            x, y = g.incidence(e)
            incidence[m[e]] = _ordered(m[x], m[y])
        maps.append(m)
    obj = Graph._from_parts(vertices, incidence)
    legs = tuple(Morphism._trusted(g, obj, m) for g, m in zip(graphs, maps))
    return ConeResult("coproduct", cat, obj, legs, tuple(graphs))


def equalizer(f: Morphism, g: Morphism, cat: Category = Category.GRPHS) -> ConeResult:
    _require_parallel(f, g, cat)
    a = f.domain
    keep = [
        p for p in a.parts
        if f(p) == g(p) and all(f(end) == g(end) for end in a.incidence(p))
    ]
    eq = a.subgraph(keep)
    incl = Morphism._trusted(eq, a, {p: p for p in eq.parts})
    return ConeResult("equalizer", cat, eq, (incl,), (f, g))


def coequalizer(f: Morphism, g: Morphism, cat: Category = Category.GRPHS) -> ConeResult:
    _require_parallel(f, g, cat)
    b = f.codomain
    uf = UnionFind(b.parts)
    for p in f.domain.parts:
        uf.union(f(p), g(p))
    _stabilize(uf, b)
    _collapse(uf, b, cat)
    obj, qmap = _quotient(uf, b)
    q = Morphism._trusted(b, obj, qmap)
    return ConeResult("coequalizer", cat, obj, (q,), (f, g))


# universal property checks


@dataclass
class UniversalCheck:
    ok: bool = True
    checked: int = 0
    excluded: int = 0
    transcript: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def mediators(source: Graph, target: Graph, candidates, cat: Category) -> list[Morphism]:
    """All morphisms ``source -> target`` with ``m(p) in candidates[p]``.

    ``candidates`` only has to exclude maps that cannot commute, so filtering
    pointwise still enumerates every commuting part map.
    """
    order = list(source.vertices) + list(source.edges)
    found: list[Morphism] = []
    chosen: dict[Part, Part] = {}

    def fits(p: Part, t: Part) -> bool:
        if p.is_vertex:
            return t.is_vertex
        if cat.strict and not t.is_edge:
            return False
        x, y = source.incidence(p)
        return target.incidence(t) == _ordered(chosen[x], chosen[y])

    def walk(i: int) -> None:
        if i == len(order):
            found.append(Morphism._trusted(source, target, dict(chosen)))
            return
        p = order[i]
        for t in candidates.get(p, ()):
            if fits(p, t):
                chosen[p] = t
                walk(i + 1)
                del chosen[p]

    walk(0)
    return found


def _mediator_candidates(cone: ConeResult, test):
    """Return ``(source, target, candidates)`` or a reason the test is excluded."""
    legs, obj = cone.legs, cone.object
    if cone.kind == "product":
        x0, x1 = test
        a, b = cone.diagram
        if x0.domain != x1.domain or x0.codomain != a or x1.codomain != b:
            return "competing legs do not form a span over the factors"
        by_proj = defaultdict(list)
        for p in obj.parts:
            by_proj[legs[0](p), legs[1](p)].append(p)
        cands = {p: by_proj.get((x0(p), x1(p)), []) for p in x0.domain.parts}
        return x0.domain, obj, cands
    if cone.kind == "coproduct":
        ys = tuple(test)
        if len(ys) != len(legs) or any(y.domain != g for y, g in zip(ys, cone.diagram)):
            return "competing legs do not start at the summands"
        if len({y.codomain for y in ys}) > 1:
            return "competing legs have different codomains"
        target = ys[0].codomain if ys else None
        if target is None:
            return "empty coproduct needs an explicit target"
        # parts outside every injection's image are unconstrained
        cands = {p: list(target.parts) for p in obj.parts}
        for inj, y in zip(legs, ys):
            for p in inj.domain.parts:
                cands[inj(p)] = [y(p)]
        return obj, target, cands
    f, g = cone.diagram
    if cone.kind == "equalizer":
        z = test
        if z.codomain != f.domain:
            return "competing morphism does not land in the domain of the pair"
        if compose(f, z) != compose(g, z):
            return "competing morphism does not equalize the pair"
        incl = legs[0]
        by_image = defaultdict(list)
        for p in obj.parts:
            by_image[incl(p)].append(p)
        return z.domain, obj, {p: by_image.get(z(p), []) for p in z.domain.parts}
    if cone.kind == "coequalizer":
        z = test
        if z.domain != f.codomain:
            return "competing morphism does not start at the codomain of the pair"
        if compose(z, f) != compose(z, g):
            return "competing morphism does not coequalize the pair"
        q = legs[0]
        images = defaultdict(set)
        for p in f.codomain.parts:
            images[q(p)].add(z(p))
        cands = {c: list(z.codomain.parts) for c in obj.parts}
        cands.update({c: sorted(ts) if len(ts) == 1 else [] for c, ts in images.items()})
        return obj, z.codomain, cands
    raise ValueError(f"unknown cone kind {cone.kind!r}")


def _commutes(cone: ConeResult, test, m: Morphism) -> bool:
    if cone.kind == "product":
        return all(compose(leg, m) == x for leg, x in zip(cone.legs, test))
    if cone.kind == "coproduct":
        return all(compose(m, inj) == y for inj, y in zip(cone.legs, test))
    if cone.kind == "equalizer":
        return compose(cone.legs[0], m) == test
    return compose(m, cone.legs[0]) == test


def verify_universal_property(kind: str, cone: ConeResult, tests) -> UniversalCheck:
    """Check that each competing (co)cone factors uniquely through ``cone``.

    For products a test is a pair ``(x0, x1)``; for coproducts a tuple of
    morphisms out of the summands; for (co)equalizers a single morphism.
    Tests that are not (co)cones of the diagram are counted as excluded.
    """
    if kind != cone.kind:
        raise ValueError(f"cone is a {cone.kind}, not a {kind}")
    report = UniversalCheck()
    cat = cone.category
    for n, test in enumerate(tests):
        morphisms = test if isinstance(test, (tuple, list)) else (test,)
        if not all(validate_morphism(m, cat) for m in morphisms):
            report.excluded += 1
            report.transcript.append(f"test {n}: excluded, not morphisms of {cat}")
            continue
        setup = _mediator_candidates(cone, test)
        if isinstance(setup, str):
            report.excluded += 1
            report.transcript.append(f"test {n}: excluded, {setup}")
            continue
        report.checked += 1
        found = mediators(*setup, cat)
        if len(found) != 1:
            report.ok = False
            report.transcript.append(f"test {n}: {len(found)} mediating morphisms, expected 1")
        elif not _commutes(cone, test, found[0]):
            report.ok = False
            report.transcript.append(f"test {n}: mediator does not commute")
    return report

