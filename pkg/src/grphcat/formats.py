"""Text formats for graphs and morphisms, and DOT export.

Graph files hold one declaration per line::

    # K2
    v u1
    v u2
    e e u1 u2

Morphism files list one ``p <kind>:<label> <kind>:<label>`` line per domain
part, optionally preceded by ``dom <path>`` and ``cod <path>`` headers.
"""

from __future__ import annotations

import re
from pathlib import Path

from .graph import Graph, Kind, Part

# Hand-written files use [A-Za-z0-9_.-]+; the parser also accepts the
# bracketed labels that products and coproducts generate.
LABEL = re.compile(r"[^\s#]+")


class FormatError(ValueError):
    def __init__(self, message: str, lineno: int | None = None, source: str | None = None):
        where = ""
        if source is not None:
            where += f"{source}:"
        if lineno is not None:
            where += f"{lineno}: "
        elif where:
            where += " "
        super().__init__(where + message)
        self.lineno = lineno


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _label(token: str, lineno: int, source: str | None) -> str:
    if not LABEL.fullmatch(token):
        raise FormatError(f"bad label {token!r}", lineno, source)
    return token


def parse_graph(text: str, source: str | None = None) -> Graph:
    vertices: list[str] = []
    seen_v: set[str] = set()
    edges: dict[str, tuple[str, str]] = {}
    for lineno, tokens in _lines(text):
        head = tokens[0]
        if head == "v":
            if len(tokens) != 2:
                raise FormatError("expected 'v <label>'", lineno, source)
            label = _label(tokens[1], lineno, source)
            if label in seen_v:
                raise FormatError(f"duplicate vertex {label!r}", lineno, source)
            seen_v.add(label)
            vertices.append(label)
        elif head == "e":
            if len(tokens) != 4:
                raise FormatError("expected 'e <label> <v1> <v2>'", lineno, source)
            label, x, y = (_label(t, lineno, source) for t in tokens[1:])
            if label in edges:
                raise FormatError(f"duplicate edge {label!r}", lineno, source)
            for end in (x, y):
                if end not in seen_v:
                    raise FormatError(f"undeclared vertex {end!r}", lineno, source)
            edges[label] = (x, y)
        else:
            raise FormatError(f"unknown declaration {head!r}", lineno, source)
    return Graph(vertices, edges)


def format_graph(g: Graph) -> str:
    out = [f"v {v.label}" for v in g.vertices]
    for e in g.edges:
        x, y = g.incidence(e)
        out.append(f"e {e.label} {x.label} {y.label}")
    return "\n".join(out) + ("\n" if out else "")


def read_graph(path: str | Path) -> Graph:
    path = Path(path)
    return parse_graph(path.read_text(encoding="utf-8"), source=str(path))


def write_graph(g: Graph, path: str | Path) -> None:
    Path(path).write_text(format_graph(g), encoding="utf-8")


def _part(token: str, lineno: int, source: str | None) -> Part:
    kind, sep, label = token.partition(":")
    if not sep or kind not in ("v", "e"):
        raise FormatError(f"expected <v|e>:<label>, got {token!r}", lineno, source)
    return Part(Kind.VERTEX if kind == "v" else Kind.EDGE, _label(label, lineno, source))


def parse_morphism_body(text: str, source: str | None = None):
    """Return ``(headers, part_map)`` without resolving any graph files."""
    headers: dict[str, str] = {}
    mapping: dict[Part, Part] = {}
    for lineno, tokens in _lines(text):
        head = tokens[0]
        if head in ("dom", "cod"):
            if len(tokens) != 2:
                raise FormatError(f"expected '{head} <file>'", lineno, source)
            headers[head] = tokens[1]
        elif head == "p":
            if len(tokens) != 3:
                raise FormatError("expected 'p <src> <dst>'", lineno, source)
            src = _part(tokens[1], lineno, source)
            if src in mapping:
                raise FormatError(f"part {src} mapped twice", lineno, source)
            mapping[src] = _part(tokens[2], lineno, source)
        else:
            raise FormatError(f"unknown declaration {head!r}", lineno, source)
    return headers, mapping


def parse_morphism(text: str, domain: Graph, codomain: Graph, source: str | None = None):
    from .morphism import Morphism

    _, mapping = parse_morphism_body(text, source)
    missing = [p for p in domain.parts if p not in mapping]
    if missing:
        raise FormatError(f"morphism is not total; unmapped: {', '.join(map(str, missing))}", source=source)
    extra = [p for p in mapping if p not in domain]
    if extra:
        raise FormatError(f"unknown domain parts: {', '.join(map(str, extra))}", source=source)
    stray = [p for p in mapping.values() if p not in codomain]
    if stray:
        raise FormatError(f"unknown codomain parts: {', '.join(map(str, stray))}", source=source)
    return Morphism(domain, codomain, mapping)


def read_morphism(path: str | Path, domain: Graph | None = None, codomain: Graph | None = None):
    """Read a morphism file; ``dom``/``cod`` headers resolve relative to it."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    headers, _ = parse_morphism_body(text, str(path))
    if domain is None:
        if "dom" not in headers:
            raise FormatError("no domain: pass one or add a 'dom' header", source=str(path))
        domain = read_graph(path.parent / headers["dom"])
    if codomain is None:
        if "cod" not in headers:
            raise FormatError("no codomain: pass one or add a 'cod' header", source=str(path))
        codomain = read_graph(path.parent / headers["cod"])
    return parse_morphism(text, domain, codomain, str(path))


def format_morphism(f, dom: str | None = None, cod: str | None = None) -> str:
    out = []
    if dom:
        out.append(f"dom {dom}")
    if cod:
        out.append(f"cod {cod}")
    out.extend(f"p {p} {f(p)}" for p in f.domain.parts)
    return "\n".join(out) + ("\n" if out else "")


def _dot_id(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Graph, name: str = "G") -> str:
    """Undirected DOT; one statement per edge so parallel edges survive."""
    out = [f"graph {_dot_id(name)} {{"]
    out.extend(f"  {_dot_id(v.label)};" for v in g.vertices)
    for e in g.edges:
        x, y = g.incidence(e)
        out.append(f"  {_dot_id(x.label)} -- {_dot_id(y.label)} [label={_dot_id(e.label)}];")
    out.append("}")
    return "\n".join(out) + "\n"
