"""Decks, deck matching and the morphism-equation test for reconstruction.

Given simple graphs ``G`` and ``H`` whose decks match card for card, the cards
of ``G`` map onto ``H`` through a single morphism ``Gamma`` out of their
disjoint union.  Factoring ``Gamma`` in StGrphs gives a coimage ``I`` that is
isomorphic to ``H``, and ``G`` is isomorphic to ``H`` exactly when there is an
epimorphism ``delta`` out of the disjoint union with ``delta p0 k = delta p1 k``.
"""

from __future__ import annotations

import enum
import logging
import random
import time
import warnings
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .fmt import FmtFactorization, fmt_factorize
from .graph import Category, Graph, Part, validate_in_category
from .limits import ConeResult, coproduct
from .morphism import Morphism, compose, find_isomorphism, invariant_key, is_epi, is_iso

log = logging.getLogger(__name__)

CAT = Category.STGRPHS
MAX_SWEEP_N = 7


class Mode(enum.Enum):
    VERTEX = "vertex"
    EDGE = "edge"


class HypothesisWarning(UserWarning):
    """A graph is below the size the reconstruction conjectures assume."""


class ReconstructionError(ValueError):
    pass


def meets_hypothesis(g: Graph, mode: Mode) -> bool:
    if mode is Mode.VERTEX:
        return len(g.vertices) >= 3
    return len(g.edges) >= 4


@dataclass(frozen=True)
class Card:
    deleted: Part
    graph: Graph


@dataclass(frozen=True)
class Deck:
    mode: Mode
    source: Graph
    cards: tuple[Card, ...]

    def __len__(self) -> int:
        return len(self.cards)


@dataclass(frozen=True)
class DeckMatching:
    sigma: tuple[int, ...]
    gammas: tuple[Morphism, ...]


def make_deck(g: Graph, mode: Mode) -> Deck:
    if not validate_in_category(g, Category.SIGRPHS):
        raise ReconstructionError("decks are defined for simple graphs only")
    if not meets_hypothesis(g, mode):
        need = "3 vertices" if mode is Mode.VERTEX else "4 edges"
        warnings.warn(f"graph has fewer than {need}", HypothesisWarning, stacklevel=2)
    cards = []
    if mode is Mode.EDGE:
        for e in g.edges:
            cards.append(Card(e, g.subgraph(p for p in g.parts if p != e)))
    else:
        for v in g.vertices:
            keep = [p for p in g.parts if p != v and v not in g.incidence(p)]
            cards.append(Card(v, g.subgraph(keep)))
    return Deck(mode, g, tuple(cards))


class IsoClassifier:
    """Assigns isomorphism-class ids, bucketing by :func:`invariant_key`."""

    def __init__(self):
        self._buckets: dict[tuple, list[tuple[Graph, int]]] = defaultdict(list)
        self._seen: dict[Graph, int] = {}
        self.count = 0

    def __call__(self, g: Graph) -> int:
        cid = self._seen.get(g)
        if cid is not None:
            return cid
        bucket = self._buckets[invariant_key(g)]
        for rep, rid in bucket:
            if find_isomorphism(g, rep) is not None:
                cid = rid
                break
        else:
            cid = self.count
            self.count += 1
            bucket.append((g, cid))
        self._seen[g] = cid
        return cid

    def signature(self, deck: Deck) -> tuple[int, ...]:
        return tuple(sorted(self(c.graph) for c in deck.cards))


def _perfect_matching(adj: list[list[int]], n_right: int) -> list[int] | None:
    """Kuhn's augmenting paths; ``sigma[left] = right`` or ``None``."""
    owner = [-1] * n_right

    def augment(u: int, seen: set[int]) -> bool:
        for v in adj[u]:
            if v in seen:
                continue
            seen.add(v)
            if owner[v] == -1 or augment(owner[v], seen):
                owner[v] = u
                return True
        return False

    for u in range(len(adj)):
        if not augment(u, set()):
            return None
    sigma = [0] * len(adj)
    for v, u in enumerate(owner):
        sigma[u] = v
    return sigma


def match_decks(dg: Deck, dh: Deck, classify: IsoClassifier | None = None) -> DeckMatching | None:
    if dg.mode is not dh.mode:
        raise ReconstructionError("decks were built in different modes")
    if len(dg) != len(dh):
        return None
    classify = classify or IsoClassifier()
    left = [classify(c.graph) for c in dg.cards]
    right = [classify(c.graph) for c in dh.cards]
    adj = [[j for j, cj in enumerate(right) if cj == ci] for ci in left]
    sigma = _perfect_matching(adj, len(right))
    if sigma is None:
        return None
    gammas = []
    for i, j in enumerate(sigma):
        gamma = find_isomorphism(dg.cards[i].graph, dh.cards[j].graph)
        if gamma is None:
            raise AssertionError("cards with equal class ids are not isomorphic")
        gammas.append(gamma)
    return DeckMatching(tuple(sigma), tuple(gammas))


def cotuple_gamma(dg: Deck, m: DeckMatching, h: Graph) -> tuple[ConeResult, Morphism]:
    """The map out of the disjoint union of ``dg``'s cards that restricts to
    ``inclusion o gamma_i`` on card ``i``.  Cards of ``h`` are subgraphs under
    the same labels, so the inclusion back into ``h`` is the identity on labels."""
    union = coproduct([c.graph for c in dg.cards], CAT)
    mapping: dict[Part, Part] = {}
    for inj, gamma in zip(union.legs, m.gammas):
        for p in inj.domain.parts:
            t = gamma(p)
            if t not in h:
                raise ReconstructionError(f"matched card part {t} is not a part of H")
            mapping[inj(p)] = t
    return union, Morphism(union.object, h, mapping)


def build_gamma(dg: Deck, m: DeckMatching, h: Graph) -> Morphism:
    _, gamma = cotuple_gamma(dg, m, h)
    if not is_epi(gamma, CAT):
        missing = sorted(set(h.parts) - gamma.image())
        raise ReconstructionError(
            "Gamma is not an epimorphism; uncovered parts: " + ", ".join(map(str, missing))
        )
    return gamma


@dataclass
class ReconstructionCase:
    G: Graph
    H: Graph
    mode: Mode
    matching: DeckMatching | None = None
    Gamma: Morphism | None = None
    fx: FmtFactorization | None = None
    psi: Morphism | None = None
    I_to_H: Morphism | None = None
    Delta: Morphism | None = None
    delta: Morphism | None = None
    reason: str = ""

    @property
    def decks_match(self) -> bool:
        return self.matching is not None

    @property
    def has_delta(self) -> bool:
        return self.delta is not None

    @property
    def hypothesis(self) -> bool:
        return meets_hypothesis(self.G, self.mode) and meets_hypothesis(self.H, self.mode)

    def summary(self) -> list[str]:
        out = [f"mode: {self.mode.value}"]
        out.append(f"G: {len(self.G.vertices)} vertices, {len(self.G.edges)} edges")
        out.append(f"H: {len(self.H.vertices)} vertices, {len(self.H.edges)} edges")
        if not self.hypothesis:
            out.append("warning: below the size hypothesis")
        out.append(f"decks match: {'yes' if self.decks_match else 'no'}")
        if self.Gamma is not None:
            out.append(f"Gamma: {len(self.Gamma.domain)} parts -> {len(self.Gamma.codomain)} parts")
        if self.fx is not None:
            i = self.fx.I
            out.append(f"I: {len(i.vertices)} vertices, {len(i.edges)} edges")
            out.append(f"I isomorphic to H: {'yes' if self.I_to_H is not None else 'no'}")
        out.append(f"delta: {'found' if self.has_delta else 'absent'}")
        if self.reason:
            out.append(f"reason: {self.reason}")
        return out


def reconstruction_check(g: Graph, h: Graph, mode: Mode, classify: IsoClassifier | None = None) -> ReconstructionCase:
    case = ReconstructionCase(g, h, mode)
    dg, dh = make_deck(g, mode), make_deck(h, mode)
    case.matching = match_decks(dg, dh, classify)
    if case.matching is None:
        case.reason = "decks do not match"
        return case
    _, gamma = cotuple_gamma(dg, case.matching, h)
    case.Gamma = gamma
    if not is_epi(gamma, CAT):
        case.reason = "Gamma is not an epimorphism, so the factorization argument does not apply"
        return case

    fx = fmt_factorize(gamma, CAT)
    case.fx = fx
    case.I_to_H = find_isomorphism(fx.I, h)
    psi = compose(fx.qstar, fx.h)
    if not is_iso(psi, CAT) or case.I_to_H is None:
        raise AssertionError("I is not isomorphic to H although Gamma is epi")
    case.psi = psi

    big_delta = find_isomorphism(fx.I, g)
    if big_delta is None:
        case.reason = "I is not isomorphic to G"
        return case
    delta = compose(big_delta, fx.q)
    left, right = compose(fx.p0, fx.k), compose(fx.p1, fx.k)
    if not is_epi(delta, CAT) or compose(delta, left) != compose(delta, right):
        raise AssertionError("delta = Delta q fails its defining equation")
    case.Delta, case.delta = big_delta, delta
    return case


# exhaustive sweep


def atlas_graphs(n_max: int) -> dict[int, list[Graph]]:
    """One simple graph per isomorphism class, grouped by vertex count >= 1."""
    if n_max > MAX_SWEEP_N:
        raise ValueError(f"n_max={n_max} exceeds the budget guard of {MAX_SWEEP_N}")
    from networkx.generators.atlas import graph_atlas_g

    out: dict[int, list[Graph]] = defaultdict(list)
    for nxg in graph_atlas_g():
        n = nxg.number_of_nodes()
        if 1 <= n <= n_max:
            es = sorted(tuple(sorted(e)) for e in nxg.edges())
            out[n].append(Graph(
                (f"g{v}" for v in nxg.nodes()),
                {f"d{i}": (f"g{x}", f"g{y}") for i, (x, y) in enumerate(es)},
            ))
    return dict(out)


def relabeled_copy(g: Graph, rng: random.Random) -> Graph:
    """An isomorphic copy with shuffled, fresh labels."""
    vs = list(g.vertices)
    rng.shuffle(vs)
    name = {v: f"h{i}" for i, v in enumerate(vs)}
    es = list(g.edges)
    rng.shuffle(es)
    return Graph(name.values(), {
        f"x{i}": tuple(name[end] for end in g.incidence(e)) for i, e in enumerate(es)
    })


@dataclass
class SweepRow:
    n: int
    mode: Mode
    pairs_checked: int = 0
    deck_equal_noniso: int = 0
    delta_failures: int = 0
    seconds: float = 0.0

    def csv(self) -> str:
        return (f"{self.n},{self.mode.value},{self.pairs_checked},"
                f"{self.deck_equal_noniso},{self.delta_failures},{self.seconds:.3f}")


@dataclass
class SweepReport:
    mode: Mode
    n_max: int
    rows: list[SweepRow] = field(default_factory=list)
    pipelines: int = 0
    i_iso_h: int = 0
    boundary: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    @property
    def delta_failures(self) -> int:
        return sum(r.delta_failures for r in self.rows)

    def lines(self) -> list[str]:
        out = [f"sweep mode={self.mode.value} n_max={self.n_max}"]
        for r in self.rows:
            out.append(
                f"n={r.n}: pairs={r.pairs_checked} deck-equal non-isomorphic={r.deck_equal_noniso} "
                f"delta failures={r.delta_failures}"
            )
        out.append(f"factorizations run: {self.pipelines}; I isomorphic to H in {self.i_iso_h}")
        out.extend(f"below hypothesis: {b}" for b in self.boundary)
        out.extend(f"FAILURE: {f}" for f in self.failures)
        out.append(f"total delta failures: {self.delta_failures}")
        return out

    def csv_rows(self) -> list[str]:
        header = "n,mode,pairs_checked,deck_equal_noniso,delta_failures,seconds"
        return [header] + [r.csv() for r in self.rows]


def _describe(g: Graph) -> str:
    ends = ", ".join(f"{x.label}{y.label}" for x, y in (g.incidence(e) for e in g.edges))
    return f"({len(g.vertices)}v: {ends or 'no edges'})"


def _run_pair(task):
    g, h, mode, iso = task
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HypothesisWarning)
        case = reconstruction_check(g, h, mode)
    return iso, case.hypothesis, case.has_delta, case.I_to_H is not None, case.fx is not None, case.reason


def corpus_sweep(n_max: int, mode: Mode, *, seed: int = 0, workers: int = 1) -> SweepReport:
    """Run the morphism-equation test over every pair of small simple graphs.

    Pairs of different vertex counts are never deck-equal and are skipped.
    For each class the isomorphic pair ``(G, shuffled copy of G)`` is included.
    """
    if mode is Mode.EDGE and n_max > 6:
        log.warning("edge sweeps above 6 vertices are slow")
    graphs = atlas_graphs(n_max)
    rng = random.Random(seed)
    classify = IsoClassifier()
    report = SweepReport(mode, n_max)
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        for n in sorted(graphs):
            start = time.perf_counter()
            row = SweepRow(n, mode)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", HypothesisWarning)
                decks = [make_deck(g, mode) for g in graphs[n]]
            sigs = [classify.signature(d) for d in decks]
            tasks = []
            for i, g in enumerate(graphs[n]):
                row.pairs_checked += 1
                tasks.append((g, relabeled_copy(g, rng), mode, True))
                for j in range(i + 1, len(graphs[n])):
                    row.pairs_checked += 1
                    if sigs[i] == sigs[j]:
                        row.deck_equal_noniso += 1
                        h = graphs[n][j]
                        tasks.append((g, h, mode, False))
                        tasks.append((h, g, mode, False))
            results = pool.map(_run_pair, tasks) if pool else map(_run_pair, tasks)
            for task, (iso, hyp, has_delta, i_iso_h, ran, reason) in zip(tasks, results):
                g, h = task[0], task[1]
                report.pipelines += ran
                report.i_iso_h += i_iso_h
                label = f"G={_describe(g)} H={_describe(h)}"
                if not hyp:
                    if not iso:
                        status = "delta found" if has_delta else "delta absent"
                        report.boundary.append(f"{label} deck-equal, non-isomorphic, {status}"
                                               + (f" ({reason})" if reason else ""))
                    continue
                if has_delta != iso or (ran and not i_iso_h) or not ran:
                    row.delta_failures += 1
                    report.failures.append(f"{label}: isomorphic={iso} delta={has_delta} {reason}")
            row.seconds = time.perf_counter() - start
            report.rows.append(row)
    finally:
        if pool:
            pool.shutdown()
    return report
