"""Kernel-pair / cokernel-pair factorization of a morphism.

For ``f: A -> B`` the factorization builds

    R_f --k--> A x A ==p0,p1==> A --f--> B ==i0,i1==> B + B --k*--> R_f*
                                |q                ^q*
                                I ------h-------> I*

with ``k = eq(f p0, f p1)``, ``q = coeq(p0 k, p1 k)``, ``k* = coeq(i0 f, i1 f)``
and ``q* = eq(k* i0, k* i1)``.  ``h`` is the comparison map from the coimage
to the image; :func:`check_fmt` asks whether it is an isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Category, Graph, Part
from .limits import coequalizer, coproduct, equalizer, mediators, product
from .morphism import Morphism, compose, is_iso, violations


@dataclass(frozen=True)
class FmtFactorization:
    category: Category
    f: Morphism
    Rf: Graph
    k: Morphism
    p0: Morphism
    p1: Morphism
    q: Morphism
    I: Graph
    h: Morphism
    Istar: Graph
    qstar: Morphism
    i0: Morphism
    i1: Morphism
    kstar: Morphism
    Rfstar: Graph
    hprime: Morphism

    @property
    def square(self) -> Graph:
        """The product ``A x A``."""
        return self.p0.domain

    @property
    def doubled(self) -> Graph:
        """The coproduct ``B + B``."""
        return self.i0.codomain

    def objects(self) -> dict[str, Graph]:
        return {
            "Rf": self.Rf,
            "AxA": self.square,
            "A": self.f.domain,
            "B": self.f.codomain,
            "B+B": self.doubled,
            "Rf*": self.Rfstar,
            "I": self.I,
            "I*": self.Istar,
        }


@dataclass(frozen=True)
class FmtVerdict:
    holds: bool
    witness: Morphism | None = None

    def __bool__(self) -> bool:
        return self.holds


def fmt_factorize(f: Morphism, cat: Category = Category.GRPHS) -> FmtFactorization:
    problems = violations(f, cat)
    if problems:
        raise ValueError(f"not a morphism of {cat}: {problems[0]}")
    a, b = f.domain, f.codomain

    prod = product(a, a, cat)
    p0, p1 = prod.legs
    kernel = equalizer(compose(f, p0), compose(f, p1), cat)
    k = kernel.leg
    coimage = coequalizer(compose(p0, k), compose(p1, k), cat)
    q = coimage.leg

    doubled = coproduct([b, b], cat)
    i0, i1 = doubled.legs
    cokernel = coequalizer(compose(i0, f), compose(i1, f), cat)
    kstar = cokernel.leg
    image = equalizer(compose(kstar, i0), compose(kstar, i1), cat)
    qstar = image.leg
    istar = image.object

    # I* is a subgraph of B under its own labels, so f lands in it directly
    hprime_map = {}
    for p in a.parts:
        if f(p) not in istar:
            raise AssertionError(f"f({p}) = {f(p)} is missing from the image object")
        hprime_map[p] = f(p)
    hprime = Morphism._trusted(a, istar, hprime_map)

    h_map: dict[Part, Part] = {}
    for p in a.parts:
        c = q(p)
        if h_map.setdefault(c, f(p)) != f(p):
            raise AssertionError(f"h is ill-defined on {c}: {h_map[c]} vs {f(p)}")
    h = Morphism._trusted(coimage.object, istar, h_map)
    bad = violations(h, cat)
    if bad:
        raise AssertionError(f"h is not a morphism: {bad[0]}")
    if compose(qstar, compose(h, q)) != f:
        raise AssertionError("q* h q does not recover f")

    return FmtFactorization(
        category=cat, f=f,
        Rf=kernel.object, k=k, p0=p0, p1=p1,
        q=q, I=coimage.object, h=h,
        Istar=istar, qstar=qstar,
        i0=i0, i1=i1, kstar=kstar, Rfstar=cokernel.object,
        hprime=hprime,
    )


def check_fmt(fx: FmtFactorization, cat: Category | None = None) -> FmtVerdict:
    cat = fx.category if cat is None else cat
    if is_iso(fx.h, cat):
        return FmtVerdict(True)
    return FmtVerdict(False, fx.h)


def h_is_unique(fx: FmtFactorization) -> bool:
    """Enumerate every morphism ``I -> I*`` with ``q* m q = f``; true iff one."""
    wanted: dict[Part, set[Part]] = {}
    for p in fx.f.domain.parts:
        wanted.setdefault(fx.q(p), set()).add(fx.f(p))
    cands = {c: sorted(ts) if len(ts) == 1 else [] for c, ts in wanted.items()}
    found = [
        m for m in mediators(fx.I, fx.Istar, cands, fx.category)
        if compose(fx.qstar, compose(m, fx.q)) == fx.f
    ]
    return len(found) == 1 and found[0] == fx.h


def kernel_pair_oracle(f: Morphism, cat: Category = Category.GRPHS) -> set[tuple[str, Part, Part]]:
    """Brute-force parts of the kernel pair as ``(tag, a, b)`` triples.

    ``tag`` is ``"pair"`` for ``(a, b)`` and ``"bar"`` for the crossed twin of
    two proper edges.  Independent of :func:`grphcat.limits.product`.
    """
    a = f.domain
    out = set()
    for x in a.parts:
        ux, vx = a.incidence(x)
        for y in a.parts:
            if f(x) != f(y):
                continue
            if cat.strict and x.is_vertex != y.is_vertex:
                continue
            uy, vy = a.incidence(y)
            if f(ux) == f(uy) and f(vx) == f(vy):
                out.add(("pair", x, y))
            if ux != vx and uy != vy and x.is_edge and y.is_edge:
                if f(ux) == f(vy) and f(vx) == f(uy):
                    out.add(("bar", x, y))
    return out


def kernel_pair_parts(fx: FmtFactorization) -> set[tuple[str, Part, Part]]:
    """Read ``R_f`` back as ``(tag, a, b)`` triples via ``k`` and the projections."""
    a = fx.f.domain
    square = fx.square
    out = set()
    for r in fx.Rf.parts:
        s = fx.k(r)
        x, y = fx.p0(s), fx.p1(s)
        if s.is_vertex:
            out.add(("pair", x, y))
            continue
        (ux, vx), (uy, vy) = a.incidence(x), a.incidence(y)
        straight = {(ux, uy), (vx, vy)}
        ends = {(fx.p0(e), fx.p1(e)) for e in square.incidence(s)}
        out.add(("pair" if ends == straight else "bar", x, y))
    return out


def image_oracle(f: Morphism) -> Graph:
    """Subgraph of the codomain spanned by the image parts and their ends."""
    keep = set()
    for p in f.domain.parts:
        t = f(p)
        keep.add(t)
        keep.update(f.codomain.incidence(t))
    return f.codomain.subgraph(keep)
