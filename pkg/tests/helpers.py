"""Named graphs, random generators and brute-force oracles for the tests.

Nothing here calls the library's constructions; the oracles are meant to
check them.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from hypothesis import strategies as st

from grphcat.graph import Category, Graph, Part, validate_in_category
from grphcat.morphism import Morphism, validate_morphism

ALL_CATS = list(Category)


def k1() -> Graph:
    return Graph(["w"])


def k2() -> Graph:
    return Graph(["u1", "u2"], {"e": ("u1", "u2")})


def k2bar() -> Graph:
    return Graph(["u1", "u2"])


def l1() -> Graph:
    return Graph(["v"], {"l": ("v", "v")})


def p3() -> Graph:
    return Graph("abc", {"ab": ("a", "b"), "bc": ("b", "c")})


def k3() -> Graph:
    return Graph("abc", {"ab": ("a", "b"), "bc": ("b", "c"), "ca": ("c", "a")})


def c4(names="abcd") -> Graph:
    a, b, c, d = names
    return Graph(names, {a + b: (a, b), b + c: (b, c), c + d: (c, d), d + a: (d, a)})


def parallel_pair() -> Graph:
    return Graph(["u1", "u2"], {"e1": ("u1", "u2"), "e2": ("u1", "u2")})


def _part(text: str) -> Part:
    from grphcat.graph import edge, vertex

    kind, label = text.split(":", 1)
    return vertex(label) if kind == "v" else edge(label)


def morph(dom: Graph, cod: Graph, pairs: dict[str, str]) -> Morphism:
    """Morphism from ``{"v:u1": "v:w", ...}``."""
    return Morphism(dom, cod, {_part(k): _part(v) for k, v in pairs.items()})


# random generation


def random_graph(rng: random.Random, max_parts: int, cat: Category = Category.GRPHS,
                 min_vertices: int = 0) -> Graph:
    while True:
        n = rng.randint(min_vertices, max(min_vertices, max_parts))
        m = rng.randint(0, max_parts - n) if n and max_parts > n else 0
        names = [f"v{i}" for i in range(n)]
        edges = {}
        for j in range(m):
            x, y = rng.choice(names), rng.choice(names)
            edges[f"e{j}"] = (x, y)
        g = Graph(names, edges)
        if validate_in_category(g, cat):
            return g


def random_morphism(rng: random.Random, cat: Category, max_parts: int = 8) -> Morphism:
    """A random valid morphism: pick the codomain, then grow a domain over it."""
    while True:
        b = random_graph(rng, max_parts, cat)
        budget = rng.randint(0, max_parts)
        if not b.vertices:
            budget = 0
        n = rng.randint(0, budget)
        names = [f"a{i}" for i in range(n)]
        vmap = {name: rng.choice(b.vertices) for name in names}
        pre: dict[Part, list[str]] = {}
        for name, t in vmap.items():
            pre.setdefault(t, []).append(name)
        targets = [t for t in b.parts if t.is_edge or not cat.strict]
        edges: dict[str, tuple[str, str]] = {}
        emap: dict[str, Part] = {}
        attempts = 0
        while len(edges) < budget - n and attempts < 40 and targets:
            attempts += 1
            t = rng.choice(targets)
            t1, t2 = b.incidence(t)
            if t1 not in pre or t2 not in pre:
                continue
            label = f"d{len(edges)}"
            trial = dict(edges)
            trial[label] = (rng.choice(pre[t1]), rng.choice(pre[t2]))
            if not validate_in_category(Graph(names, trial), cat):
                continue
            edges, emap[label] = trial, t
        a = Graph(names, edges)
        mapping = {p: vmap[p.label] if p.is_vertex else emap[p.label] for p in a.parts}
        f = Morphism(a, b, mapping)
        assert validate_morphism(f, cat), f
        return f


@st.composite
def graphs(draw, max_parts: int = 8, cat: Category = Category.GRPHS) -> Graph:
    n = draw(st.integers(0, max_parts))
    names = [f"v{i}" for i in range(n)]
    if cat is Category.SIGRPHS:
        pool = list(itertools.combinations(range(n), 2))
    else:
        pool = list(itertools.combinations_with_replacement(range(n), 2))
    room = max_parts - n
    if cat in (Category.SIGRPHS, Category.SLSTGRPHS):
        chosen = draw(st.lists(st.sampled_from(pool), unique=True, max_size=room)) if pool else []
    else:
        chosen = draw(st.lists(st.sampled_from(pool), max_size=room)) if pool else []
    return Graph(names, {f"e{j}": (names[x], names[y]) for j, (x, y) in enumerate(chosen)})


def morphisms(cat: Category, max_parts: int = 8):
    return st.integers(0, 2**32 - 1).map(lambda seed: random_morphism(random.Random(seed), cat, max_parts))


# exhaustive enumeration


def hom(a: Graph, b: Graph, cat: Category) -> list[Morphism]:
    """Every morphism ``a -> b`` of ``cat`` by vertex-map enumeration."""
    if not (validate_in_category(a, cat) and validate_in_category(b, cat)):
        return []
    out = []
    for images in itertools.product(b.vertices, repeat=len(a.vertices)):
        vmap = dict(zip(a.vertices, images))
        options = []
        for e in a.edges:
            x, y = a.incidence(e)
            ends = sorted((vmap[x], vmap[y]))
            opts = [t for t in b.parts if list(b.incidence(t)) == ends]
            if cat.strict:
                opts = [t for t in opts if t.is_edge]
            options.append(opts)
        for choice in itertools.product(*options):
            m = dict(vmap)
            m.update(zip(a.edges, choice))
            out.append(Morphism(a, b, m))
    return out


def naive_hom(a: Graph, b: Graph, cat: Category) -> list[Morphism]:
    """Every part map filtered by validity; only for tiny graphs."""
    out = []
    for images in itertools.product(b.parts, repeat=len(a)):
        m = Morphism(a, b, dict(zip(a.parts, images)))
        if validate_morphism(m, cat):
            out.append(m)
    return out


def _canonical(n: int, edges: tuple[tuple[int, int], ...]) -> tuple:
    best = None
    for perm in itertools.permutations(range(n)):
        relabeled = tuple(sorted(tuple(sorted((perm[x], perm[y]))) for x, y in edges))
        if best is None or relabeled < best:
            best = relabeled
    return (n, best)


@lru_cache(maxsize=None)
def small_graphs(max_parts: int) -> tuple[Graph, ...]:
    """One multigraph-with-loops per isomorphism class with at most ``max_parts`` parts."""
    seen = set()
    out = []
    for n in range(max_parts + 1):
        pairs = [(x, y) for x in range(n) for y in range(x, n)]
        for m in range(max_parts - n + 1):
            for es in itertools.combinations_with_replacement(pairs, m):
                key = _canonical(n, es)
                if key in seen:
                    continue
                seen.add(key)
                out.append(Graph([f"n{i}" for i in range(n)],
                                 {f"m{j}": (f"n{x}", f"n{y}") for j, (x, y) in enumerate(es)}))
    return tuple(out)


def universal_is_epi(f: Morphism, cat: Category, tests) -> bool:
    """``g f = h f`` implies ``g = h`` for all ``g, h: B -> X``, X in ``tests``."""
    for x in tests:
        seen = set()
        for g in hom(f.codomain, x, cat):
            key = frozenset((p, g(f(p))) for p in f.domain.parts)
            if key in seen:
                return False
            seen.add(key)
    return True


def universal_is_mono(f: Morphism, cat: Category, tests) -> bool:
    for x in tests:
        seen = set()
        for g in hom(x, f.domain, cat):
            key = frozenset((p, f(g(p))) for p in x.parts)
            if key in seen:
                return False
            seen.add(key)
    return True


def closure_classes(parts, pairs) -> dict:
    """Equivalence closure by repeated transitive expansion (no union-find)."""
    rel = {p: {p} for p in parts}
    for x, y in pairs:
        rel[x].add(y)
        rel[y].add(x)
    changed = True
    while changed:
        changed = False
        for p in parts:
            grown = set().union(*(rel[q] for q in rel[p]))
            if grown != rel[p]:
                rel[p] = grown
                changed = True
    return {p: frozenset(s) for p, s in rel.items()}


def brute_isomorphic(g: Graph, h: Graph) -> bool:
    """Try every vertex bijection and compare edge multiplicities."""
    if len(g.vertices) != len(h.vertices) or len(g.edges) != len(h.edges):
        return False
    from collections import Counter

    hm = Counter(h.incidence(e) for e in h.edges)
    for perm in itertools.permutations(h.vertices):
        phi = dict(zip(g.vertices, perm))
        gm = Counter(tuple(sorted(phi[v] for v in g.incidence(e))) for e in g.edges)
        if gm == hm:
            return True
    return False
