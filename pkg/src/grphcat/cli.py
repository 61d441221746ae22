"""``grphcat`` command line.

Exit status: 0 on success / holds / found, 1 on a negative verdict, 2 on
usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from .fmt import check_fmt, fmt_factorize
from .formats import (
    FormatError,
    format_graph,
    format_morphism,
    parse_graph,
    read_graph,
    read_morphism,
    to_dot,
)
from .graph import Category, Graph, validate_in_category
from .limits import coequalizer, coproduct, equalizer, product
from .morphism import violations
from .reconstruction import (
    HypothesisWarning,
    Mode,
    corpus_sweep,
    make_deck,
    match_decks,
    reconstruction_check,
)

OK, NEGATIVE, USAGE = 0, 1, 2


class _Output:
    def __init__(self):
        self.lines: list[str] = []

    def __call__(self, line: str = "") -> None:
        self.lines.append(line)

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _counts(g: Graph) -> str:
    return f"vertices: {len(g.vertices)}, edges: {len(g.edges)}"


def _emit_graph(out: _Output, g: Graph, args) -> None:
    out(_counts(g))
    if args.out:
        Path(args.out).write_text(format_graph(g), encoding="utf-8")
        out(f"written to {args.out}")
    else:
        out(format_graph(g).rstrip("\n"))


def _looks_like_morphism(text: str) -> bool:
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].split()
        if line:
            return line[0] in ("dom", "cod", "p")
    return False


def _morphism(path: str, args):
    dom = read_graph(args.dom) if getattr(args, "dom", None) else None
    cod = read_graph(args.cod) if getattr(args, "cod", None) else None
    return read_morphism(path, dom, cod)


def cmd_validate(args, out: _Output) -> int:
    text = Path(args.file).read_text(encoding="utf-8")
    if _looks_like_morphism(text):
        f = _morphism(args.file, args)
        problems = violations(f, args.cat)
        if problems:
            out(f"morphism is NOT valid in {args.cat}")
            for p in problems:
                out(f"  {p}")
            return NEGATIVE
        out(f"morphism is valid in {args.cat}")
        return OK
    g = parse_graph(text, source=args.file)
    out(_counts(g))
    if validate_in_category(g, args.cat):
        out(f"graph is valid in {args.cat}")
        return OK
    out(f"graph is NOT valid in {args.cat}")
    return NEGATIVE


def cmd_product(args, out: _Output) -> int:
    cone = product(read_graph(args.a), read_graph(args.b), args.cat)
    out(f"product in {args.cat}")
    _emit_graph(out, cone.object, args)
    return OK


def cmd_coproduct(args, out: _Output) -> int:
    cone = coproduct([read_graph(p) for p in args.graphs], args.cat)
    out(f"coproduct in {args.cat}")
    _emit_graph(out, cone.object, args)
    return OK


def _parallel_pair(args):
    f = _morphism(args.f, args)
    g = _morphism(args.g, args)
    return f, g


def cmd_equalize(args, out: _Output) -> int:
    cone = equalizer(*_parallel_pair(args), args.cat)
    out(f"equalizer in {args.cat}")
    _emit_graph(out, cone.object, args)
    return OK


def cmd_coequalize(args, out: _Output) -> int:
    cone = coequalizer(*_parallel_pair(args), args.cat)
    out(f"coequalizer in {args.cat}")
    _emit_graph(out, cone.object, args)
    out("quotient:")
    out(format_morphism(cone.leg).rstrip("\n"))
    return OK


def cmd_fmt(args, out: _Output) -> int:
    f = _morphism(args.file, args)
    fx = fmt_factorize(f, args.cat)
    verdict = check_fmt(fx)
    out(f"factorization in {args.cat}")
    for name in ("A", "B", "Rf", "I", "I*", "Rf*"):
        out(f"{name}: {_counts(fx.objects()[name])}")
    if verdict:
        out("h: isomorphism (holds)")
    else:
        out("h: NOT isomorphism (fails)")
        out("witness h:")
        out(format_morphism(verdict.witness).rstrip("\n"))
    if args.dot:
        folder = Path(args.dot)
        folder.mkdir(parents=True, exist_ok=True)
        files = {"A": "A", "B": "B", "AxA": "AxA", "Rf": "Rf", "B+B": "BplusB",
                 "Rf*": "Rfstar", "I": "I", "I*": "Istar"}
        for name, g in fx.objects().items():
            (folder / f"{files[name]}.dot").write_text(to_dot(g, name), encoding="utf-8")
        out(f"DOT files written to {folder}")
    return OK if verdict else NEGATIVE


def cmd_deck(args, out: _Output) -> int:
    deck = make_deck(read_graph(args.graph), args.mode)
    out(f"{args.mode.value} deck: {len(deck)} cards")
    for card in deck.cards:
        out(f"# card deleting {card.deleted}: {_counts(card.graph)}")
        text = format_graph(card.graph).rstrip("\n")
        if text:
            out(text)
    return OK


def cmd_match(args, out: _Output) -> int:
    dg = make_deck(read_graph(args.g), args.mode)
    dh = make_deck(read_graph(args.h), args.mode)
    m = match_decks(dg, dh)
    if m is None:
        out("decks do not match")
        return NEGATIVE
    out("decks match")
    for i, j in enumerate(m.sigma):
        out(f"{dg.cards[i].deleted} -> {dh.cards[j].deleted}")
    return OK


def cmd_reconstruct(args, out: _Output) -> int:
    case = reconstruction_check(read_graph(args.g), read_graph(args.h), args.mode)
    for line in case.summary():
        out(line)
    return OK if case.has_delta else NEGATIVE


def cmd_sweep(args, out: _Output) -> int:
    report = corpus_sweep(args.max_n, args.mode, seed=args.seed, workers=args.workers)
    for line in report.lines():
        out(line)
    if args.out:
        Path(args.out).write_text("\n".join(report.csv_rows()) + "\n", encoding="utf-8")
    return OK if report.delta_failures == 0 else NEGATIVE


def cmd_dot(args, out: _Output) -> int:
    g = read_graph(args.graph)
    text = to_dot(g, Path(args.graph).stem)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        out(f"written to {args.out}")
    else:
        out(text.rstrip("\n"))
    return OK


def _category(text: str) -> Category:
    try:
        return Category.parse(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected one of grphs, stgrphs, sigrphs, slstgrphs") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grphcat", description="Categories of graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cat", type=_category, default=Category.GRPHS,
                        help="grphs | stgrphs | sigrphs | slstgrphs (default grphs)")
    common.add_argument("--out", help="write the resulting graph or report here")
    morph = argparse.ArgumentParser(add_help=False)
    morph.add_argument("--dom", help="domain graph, overriding the file's 'dom' header")
    morph.add_argument("--cod", help="codomain graph, overriding the file's 'cod' header")
    mode = argparse.ArgumentParser(add_help=False)
    mode.add_argument("--mode", type=Mode, choices=list(Mode), default=Mode.VERTEX,
                      metavar="{vertex,edge}")

    p = sub.add_parser("validate", parents=[common, morph], help="check a graph or morphism file")
    p.add_argument("file")
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("product", parents=[common], help="categorical product of two graphs")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(run=cmd_product)

    p = sub.add_parser("coproduct", parents=[common], help="disjoint union")
    p.add_argument("graphs", nargs="+")
    p.set_defaults(run=cmd_coproduct)

    for name, run in (("equalize", cmd_equalize), ("coequalize", cmd_coequalize)):
        p = sub.add_parser(name, parents=[common, morph], help=f"{name[:-1]}er of two morphisms")
        p.add_argument("f")
        p.add_argument("g")
        p.set_defaults(run=run)

    p = sub.add_parser("fmt", parents=[common, morph], help="factor a morphism through I -> I*")
    p.add_argument("file")
    p.add_argument("--dot", metavar="DIR", help="write DOT files of all eight objects")
    p.set_defaults(run=cmd_fmt)

    p = sub.add_parser("deck", parents=[common, mode], help="vertex- or edge-deleted deck")
    p.add_argument("graph")
    p.set_defaults(run=cmd_deck)

    for name, run in (("match", cmd_match), ("reconstruct", cmd_reconstruct)):
        p = sub.add_parser(name, parents=[common, mode])
        p.add_argument("g")
        p.add_argument("h")
        p.set_defaults(run=run)

    p = sub.add_parser("sweep", parents=[common, mode], help="exhaustive reconstruction sweep")
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(run=cmd_sweep)

    p = sub.add_parser("dot", parents=[common], help="export a graph as DOT")
    p.add_argument("graph")
    p.set_defaults(run=cmd_dot)
    return parser


def run(argv=None) -> tuple[int, str]:
    """Run a command and return ``(exit code, report text)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (USAGE if exc.code else OK), ""
    out = _Output()
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", HypothesisWarning)
            code = args.run(args, out)
        for w in sorted({str(w.message) for w in caught}):
            out(f"warning: {w}")
    except (FormatError, OSError, ValueError) as exc:
        return USAGE, f"error: {exc}\n"
    return code, out.text()


def main(argv=None) -> int:
    code, text = run(argv)
    stream = sys.stdout if code != USAGE else sys.stderr
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
