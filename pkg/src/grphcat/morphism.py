"""Graph morphisms as functions on part sets."""

from __future__ import annotations

from collections import Counter, defaultdict
from collections.abc import Mapping
from types import MappingProxyType

from .graph import Category, Graph, Part, validate_in_category


class Morphism:
    """A total function ``P(domain) -> P(codomain)``.

    Construction only checks totality and that images exist in the codomain;
    incidence preservation is checked by :func:`validate_morphism`.
    """

    __slots__ = ("domain", "codomain", "_map")

    def __init__(self, domain: Graph, codomain: Graph, mapping: Mapping[Part, Part]):
        m = dict(mapping)
        if len(m) != len(domain) or any(p not in domain for p in m):
            missing = [str(p) for p in domain.parts if p not in m]
            extra = [str(p) for p in m if p not in domain]
            raise ValueError(f"part map not total on domain (missing {missing}, extra {extra})")
        stray = [str(t) for t in m.values() if t not in codomain]
        if stray:
            raise ValueError(f"images not in codomain: {stray}")
        self.domain = domain
        self.codomain = codomain
        self._map = m

    @classmethod
    def _trusted(cls, domain: Graph, codomain: Graph, mapping: dict[Part, Part]) -> Morphism:
        f = cls.__new__(cls)
        f.domain, f.codomain, f._map = domain, codomain, mapping
        return f

    def __call__(self, p: Part) -> Part:
        return self._map[p]

    @property
    def part_map(self) -> Mapping[Part, Part]:
        return MappingProxyType(self._map)

    def image(self) -> set[Part]:
        return set(self._map.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return (
            self._map == other._map
            and self.domain == other.domain
            and self.codomain == other.codomain
        )

    def __hash__(self) -> int:
        return hash((self.domain, self.codomain, frozenset(self._map.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{p}->{t}" for p, t in sorted(self._map.items()))
        return f"Morphism({body})"


def identity(g: Graph) -> Morphism:
    return Morphism._trusted(g, g, {p: p for p in g.parts})


def inclusion(sub: Graph, g: Graph) -> Morphism:
    return Morphism(sub, g, {p: p for p in sub.parts})


def violations(f: Morphism, cat: Category = Category.GRPHS) -> list[str]:
    """Human-readable reasons ``f`` is not a morphism of ``cat``; empty if it is."""
    problems = []
    if not validate_in_category(f.domain, cat):
        problems.append(f"domain is not an object of {cat}")
    if not validate_in_category(f.codomain, cat):
        problems.append(f"codomain is not an object of {cat}")
    dom, cod = f.domain, f.codomain
    for p in dom.parts:
        t = f(p)
        if p.is_vertex and not t.is_vertex:
            problems.append(f"{p} is a vertex but maps to edge {t}")
            continue
        if cat.strict and p.is_edge and not t.is_edge:
            problems.append(f"{p} is an edge but maps to vertex {t} (strict)")
        x, y = dom.incidence(p)
        fx, fy = f(x), f(y)
        want = (fx, fy) if fx <= fy else (fy, fx)
        if cod.incidence(t) != want:
            problems.append(f"{p} maps to {t} but its ends map to {fx}, {fy}")
    return problems


def validate_morphism(f: Morphism, cat: Category = Category.GRPHS) -> bool:
    return not violations(f, cat)


def compose(g: Morphism, f: Morphism) -> Morphism:
    """``g ∘ f``: apply ``f`` first."""
    if f.codomain != g.domain:
        raise ValueError("cannot compose: codomain of f differs from domain of g")
    gm = g._map
    return Morphism._trusted(f.domain, g.codomain, {p: gm[t] for p, t in f._map.items()})


def is_epi(f: Morphism, cat: Category = Category.GRPHS) -> bool:
    image = f.image()
    if cat.epi_mono_on_parts:
        return len(image) == len(f.codomain)
    return all(v in image for v in f.codomain.vertices)


def is_mono(f: Morphism, cat: Category = Category.GRPHS) -> bool:
    if cat.epi_mono_on_parts:
        return len(f.image()) == len(f.domain)
    return len({f(v) for v in f.domain.vertices}) == len(f.domain.vertices)


def inverse(f: Morphism) -> Morphism | None:
    """Inverse part map if ``f`` is a bijection on parts, else ``None``."""
    if len(f.domain) != len(f.codomain) or len(f.image()) != len(f.codomain):
        return None
    return Morphism._trusted(f.codomain, f.domain, {t: p for p, t in f._map.items()})


def is_iso(f: Morphism, cat: Category = Category.GRPHS) -> bool:
    inv = inverse(f)
    return inv is not None and validate_morphism(inv, cat)


# isomorphism search


def _multiplicities(g: Graph) -> dict[tuple[Part, Part], int]:
    mult: Counter = Counter()
    for e in g.edges:
        mult[g.incidence(e)] += 1
    return mult


def _profiles(g: Graph, mult) -> dict[Part, tuple]:
    loops: Counter = Counter()
    nbrs: dict[Part, list[int]] = defaultdict(list)
    for (x, y), n in mult.items():
        if x == y:
            loops[x] += n
        else:
            nbrs[x].append(n)
            nbrs[y].append(n)
    return {
        v: (loops[v], 2 * loops[v] + sum(nbrs[v]), tuple(sorted(nbrs[v])))
        for v in g.vertices
    }


def invariant_key(g: Graph) -> tuple:
    """Isomorphism-invariant key: vertex profiles refined by one round of
    neighbourhood profiles.  Equal keys do not imply isomorphism."""
    mult = _multiplicities(g)
    prof = _profiles(g, mult)
    around: dict[Part, list] = defaultdict(list)
    for (x, y), n in mult.items():
        if x != y:
            around[x].append((n, prof[y]))
            around[y].append((n, prof[x]))
    refined = sorted((prof[v], tuple(sorted(around[v]))) for v in g.vertices)
    return (len(g.vertices), len(g.edges), tuple(refined))


def _search_order(g: Graph, mult) -> list[Part]:
    adj: dict[Part, set[Part]] = defaultdict(set)
    for x, y in mult:
        if x != y:
            adj[x].add(y)
            adj[y].add(x)
    order: list[Part] = []
    placed: set[Part] = set()
    remaining = list(g.vertices)
    while remaining:
        # most already-placed neighbours first; ties go to the smaller label
        best = remaining[0]
        best_key = (len(adj[best] & placed), len(adj[best]))
        for v in remaining[1:]:
            key = (len(adj[v] & placed), len(adj[v]))
            if key > best_key:
                best, best_key = v, key
        order.append(best)
        placed.add(best)
        remaining.remove(best)
    return order


def find_isomorphism(g: Graph, h: Graph) -> Morphism | None:
    """Some isomorphism ``g -> h`` or ``None``.

    Backtracks over vertex bijections, trying targets in label order, then
    pairs up parallel edges between corresponding vertices by label.
    """
    if len(g.vertices) != len(h.vertices) or len(g.edges) != len(h.edges):
        return None
    gm, hm = _multiplicities(g), _multiplicities(h)
    gp, hp = _profiles(g, gm), _profiles(h, hm)
    if sorted(gp.values()) != sorted(hp.values()):
        return None
    order = _search_order(g, gm)
    earlier = {v: order[:i] for i, v in enumerate(order)}
    phi: dict[Part, Part] = {}
    used: set[Part] = set()

    def mult(m, x, y):
        return m.get((x, y) if x <= y else (y, x), 0)

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for c in h.vertices:
            if c in used or hp[c] != gp[v]:
                continue
            if any(mult(gm, v, u) != mult(hm, c, phi[u]) for u in earlier[v]):
                continue
            phi[v] = c
            used.add(c)
            if extend(i + 1):
                return True
            del phi[v]
            used.discard(c)
        return False

    if not extend(0):
        return None
    by_ends: dict[tuple[Part, Part], list[Part]] = defaultdict(list)
    for e in h.edges:
        by_ends[h.incidence(e)].append(e)
    mapping = dict(phi)
    for e in g.edges:
        x, y = g.incidence(e)
        fx, fy = phi[x], phi[y]
        # g.edges is label-sorted, so parallel classes pair up in label order
        mapping[e] = by_ends[(fx, fy) if fx <= fy else (fy, fx)].pop(0)
    return Morphism._trusted(g, h, mapping)
