"""Acceptance gate: one test per criterion, each with its own time bound.

Every test logs a ``criterion N: PASS|FAIL`` line, shown in the pytest
terminal summary.  ``python3 tests/test_acceptance.py`` runs the same gate
without pytest.
"""

import itertools
import random
import time
import warnings

import pytest

from grphcat.fmt import check_fmt, fmt_factorize
from grphcat.graph import Category, Graph, validate_in_category
from grphcat.limits import coequalizer, coproduct, equalizer, product, verify_universal_property
from grphcat.morphism import compose, find_isomorphism, inclusion, is_epi, is_iso, is_mono
from grphcat.reconstruction import HypothesisWarning, Mode, corpus_sweep
from helpers import (
    hom,
    k2,
    k2bar,
    random_graph,
    random_morphism,
    small_graphs,
    universal_is_epi,
    universal_is_mono,
)

GR, ST, SI, SL = Category.GRPHS, Category.STGRPHS, Category.SIGRPHS, Category.SLSTGRPHS


def counts(g):
    return len(g.vertices), len(g.edges)


def _finish(log, number, ok, seconds, bound, detail):
    within = seconds < bound
    verdict = "PASS" if ok and within else "FAIL"
    log(f"criterion {number}: {verdict} ({seconds:.2f}s, bound {bound:g}s) {detail}")
    assert ok, detail
    assert within, f"took {seconds:.2f}s, bound {bound}s"


def test_criterion_1_inclusion_in_grphs_and_stgrphs(criterion_log):
    start = time.perf_counter()
    results = {}
    for cat in (GR, ST):
        fx = fmt_factorize(inclusion(k2bar(), k2()), cat)
        results[cat] = (counts(fx.I), counts(fx.Istar), bool(check_fmt(fx)))
    ok = all(r == ((2, 0), (2, 0), True) for r in results.values())
    detail = "; ".join(f"{c}: I={r[0]} I*={r[1]} holds={r[2]}" for c, r in results.items())
    _finish(criterion_log, 1, ok, time.perf_counter() - start, 1, detail)


def test_criterion_2_inclusion_in_simple_categories(criterion_log):
    start = time.perf_counter()
    results = {}
    for cat in (SI, SL):
        fx = fmt_factorize(inclusion(k2bar(), k2()), cat)
        results[cat] = (len(fx.Istar.edges), bool(check_fmt(fx)))
    ok = all(r == (1, False) for r in results.values())
    detail = "; ".join(f"{c}: I* edges={r[0]} holds={r[1]}" for c, r in results.items())
    _finish(criterion_log, 2, ok, time.perf_counter() - start, 1, detail)


def test_criterion_3_randomized_factorizations(criterion_log):
    start = time.perf_counter()
    rng = random.Random(20240)
    holds = total = 0
    bad = []
    for cat in (GR, ST):
        for _ in range(500):
            f = random_morphism(rng, cat, 8)
            fx = fmt_factorize(f, cat)
            total += 1
            holds += bool(check_fmt(fx))
            a, b = f.domain, f.codomain
            q_ok = all((fx.q(x) == fx.q(y)) == (f(x) == f(y)) for x in a.parts for y in a.parts)
            img = f.image()
            k_ok = all((fx.kstar(fx.i0(e)) == fx.kstar(fx.i1(e))) == (e in img) for e in b.parts)
            if not (q_ok and k_ok):
                bad.append(f)
    ok = holds == total == 1000 and not bad
    detail = f"holds {holds}/{total}; identification oracle disagreements {len(bad)}"
    _finish(criterion_log, 3, ok, time.perf_counter() - start, 60, detail)


def test_criterion_4_part_predicates_against_universal_definitions(criterion_log):
    start = time.perf_counter()
    checked = 0
    mismatches = []
    for cat in (GR, ST):
        objects = [g for g in small_graphs(4) if validate_in_category(g, cat)]
        for a, b in itertools.product(objects, repeat=2):
            for f in hom(a, b, cat):
                checked += 1
                epi, mono = is_epi(f, cat), is_mono(f, cat)
                if epi != universal_is_epi(f, cat, objects) or mono != universal_is_mono(f, cat, objects):
                    mismatches.append((cat, f))
                if is_iso(f, cat) != (epi and mono):
                    mismatches.append((cat, f))
    ok = checked > 0 and not mismatches
    detail = f"{checked} morphisms in Grphs and StGrphs, {len(mismatches)} disagreements"
    _finish(criterion_log, 4, ok, time.perf_counter() - start, 120, detail)


def _pair_edge_count(a, b, strict):
    # independent count of product edges straight from the pairing rule
    n = 0
    for x in a.parts:
        for y in b.parts:
            if x.is_vertex and y.is_vertex or (strict and x.is_vertex != y.is_vertex):
                continue
            (a1, a2), (b1, b2) = a.incidence(x), b.incidence(y)
            n += 1 + (a1 != a2 and b1 != b2)
    return n


def test_criterion_5_product_counts(criterion_log):
    start = time.perf_counter()
    gr = counts(product(k2(), k2(), GR).object)
    st = counts(product(k2(), k2(), ST).object)
    si = product(k2(), k2(), SI).object
    k4 = Graph("abcd", {x + y: (x, y) for x, y in itertools.combinations("abcd", 2)})
    ok = (gr == (4, 6) == (4, _pair_edge_count(k2(), k2(), False))
          and st == (4, 2)
          and find_isomorphism(si, k4) is not None)
    detail = f"Grphs {gr}, StGrphs {st}, SiGrphs {counts(si)} isomorphic to K4"
    _finish(criterion_log, 5, ok, time.perf_counter() - start, 1, detail)


def _sample(items, rng, k):
    items = list(items)
    return items if len(items) <= k else rng.sample(items, k)


def _independent_mediator_count(source, target, cat, commutes):
    """Count commuting maps by plain hom enumeration, when that is affordable."""
    if len(target.vertices) ** len(source.vertices) > 4000:
        return None
    return sum(1 for m in hom(source, target, cat) if commutes(m))


def _instance(kind, rng, cat):
    """A cone of ``kind`` plus competing cones through a random test object of at most 6 parts."""
    if kind == "product":
        a, b = random_graph(rng, 3, cat), random_graph(rng, 3, cat)
        cone = product(a, b, cat)
        x = random_graph(rng, 6, cat)
        tests = _sample(itertools.product(hom(x, a, cat), hom(x, b, cat)), rng, 12)

        def commutes(test):
            return lambda m: all(compose(p, m) == t for p, t in zip(cone.legs, test))
        return cone, tests, lambda t: (x, cone.object, commutes(t))
    if kind == "coproduct":
        a, b = random_graph(rng, 3, cat), random_graph(rng, 3, cat)
        cone = coproduct([a, b], cat)
        y = random_graph(rng, 6, cat, min_vertices=1)
        tests = _sample(itertools.product(hom(a, y, cat), hom(b, y, cat)), rng, 12)

        def commutes(test):
            return lambda m: all(compose(m, i) == t for i, t in zip(cone.legs, test))
        return cone, tests, lambda t: (cone.object, y, commutes(t))
    while True:
        a, b = random_graph(rng, 3, cat), random_graph(rng, 4, cat, min_vertices=1)
        maps = hom(a, b, cat)
        if maps:
            break
    f, g = rng.choice(maps), rng.choice(maps)
    if kind == "equalizer":
        cone = equalizer(f, g, cat)
        x = random_graph(rng, 6, cat)
        tests = _sample(hom(x, a, cat), rng, 12)
        return cone, tests, lambda z: (x, cone.object, lambda m: compose(cone.leg, m) == z)
    cone = coequalizer(f, g, cat)
    y = random_graph(rng, 6, cat, min_vertices=1)
    tests = _sample(hom(b, y, cat), rng, 12)
    return cone, tests, lambda z: (cone.object, y, lambda m: compose(m, cone.leg) == z)


def _is_competing(kind, cone, test):
    if kind in ("product", "coproduct"):
        return True
    f, g = cone.diagram
    if kind == "equalizer":
        return compose(f, test) == compose(g, test)
    return compose(test, f) == compose(test, g)


def test_criterion_6_universal_properties(criterion_log):
    start = time.perf_counter()
    rng = random.Random(606)
    cats = list(Category)
    passed = total = cones_checked = cross_checked = 0
    problems = []
    for kind in ("product", "coproduct", "equalizer", "coequalizer"):
        for n in range(50):
            cat = cats[n % len(cats)]
            cone, tests, setup = _instance(kind, rng, cat)
            report = verify_universal_property(kind, cone, tests)
            ok = report.ok
            for t in tests:
                if not _is_competing(kind, cone, t):
                    continue
                source, target, commutes = setup(t)
                count = _independent_mediator_count(source, target, cat, commutes)
                if count is not None:
                    cross_checked += 1
                    ok &= count == 1
            total += 1
            passed += ok
            cones_checked += report.checked
            if not ok:
                problems.append(f"{kind} in {cat}: {report.transcript[:2]}")
    ok = passed == total == 200
    detail = (f"{passed}/{total} instances, {cones_checked} competing cones, "
              f"{cross_checked} cross-checked by hom enumeration")
    if problems:
        detail += f"; first problem: {problems[0]}"
    _finish(criterion_log, 6, ok, time.perf_counter() - start, 120, detail)


@pytest.fixture(scope="module")
def sweeps():
    start = time.perf_counter()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HypothesisWarning)
        reports = {mode: corpus_sweep(5, mode, seed=0) for mode in Mode}
    return reports, time.perf_counter() - start


def test_criterion_7_reconstruction_biconditional(criterion_log, sweeps):
    reports, seconds = sweeps
    vertex, edge = reports[Mode.VERTEX], reports[Mode.EDGE]
    failures = vertex.delta_failures + edge.delta_failures
    k2_pair = [b for b in vertex.boundary if b.startswith("G=(2v: no edges) H=(2v: g0g1)")]
    boundary_ok = bool(k2_pair) and all("deck-equal, non-isomorphic, delta absent" in b for b in k2_pair)
    pairs = sum(r.pairs_checked for r in vertex.rows + edge.rows)
    ok = failures == 0 and boundary_ok
    detail = (f"{pairs} pairs, {failures} violations; K2/K2-bar reported deck-equal, "
              f"non-isomorphic, delta absent: {boundary_ok}")
    _finish(criterion_log, 7, ok, seconds, 600, detail)


def test_criterion_8_coimage_isomorphic_to_h(criterion_log, sweeps):
    reports, seconds = sweeps
    runs = sum(r.pipelines for r in reports.values())
    iso = sum(r.i_iso_h for r in reports.values())
    ok = runs > 0 and iso == runs
    _finish(criterion_log, 8, ok, seconds, 600, f"I isomorphic to H in {iso}/{runs} factorizations")


if __name__ == "__main__":
    import subprocess
    import sys

    # a fresh interpreter, so pytest can rewrite asserts in modules imported above
    sys.exit(subprocess.call([sys.executable, "-m", "pytest", __file__, "-q", "-p", "no:cacheprovider"]))
