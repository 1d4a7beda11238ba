"""One-dimensional chromatic complexes for the two-process task.

Scenario prefixes of length r embed into the unit interval as the
edges [ind(w)/3^r, (ind(w)+1)/3^r] of the r-fold chromatic subdivision
of a colored segment, and a whole adversary becomes a subcomplex of
the subdivided input square.  On top of that sit terminating
subdivisions: level-indexed families of "stable" edges marking where a
geometric decision algorithm may halt, together with the radius map
eta and the Finished predicate it uses.

Everything is exact rational arithmetic; connectivity and
ball-inclusion answers are claims about real geometry, so no floats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .adversary import AdversaryAutomaton, ResourceBoundError
from .indexfn import (BLACK, WHITE, ProcessId, TernaryRational, ind,
                      ind_limit)
from .oracle import (CornerWitness, FairWitness, SpecialPairWitness,
                     Verdict, classify)
from .protocol import (Algorithm, DEFAULT_TAILS, Message, ProcessState,
                       Transcript, simulate)
from .words import FiniteWord, GAMMA, LassoWord, Letter

UNIT = "unit"

#: The four sides of the input square, keyed by the input pair they
#: carry: side (iw, ib) joins white's corner for iw to black's for ib.
SQUARE_SEGMENTS = {
    "W0B0": (0, 0),
    "B0W1": (1, 0),
    "W1B1": (1, 1),
    "B1W0": (0, 1),
}


def _tr(x) -> TernaryRational:
    """Exact conversion to a ternary rational (denominator a 3-power)."""
    if isinstance(x, TernaryRational):
        return x
    f = Fraction(x)
    e = 0
    den = f.denominator
    while den % 3 == 0:
        den //= 3
        e += 1
    if den != 1:
        raise ValueError("%s is not a ternary rational" % f)
    return TernaryRational(f.numerator * 1, e)


def position_color(p: TernaryRational) -> ProcessId:
    """Vertex color at k/3^e: white iff the reduced numerator is even."""
    return WHITE if p.numerator % 2 == 0 else BLACK


@dataclass(frozen=True)
class ColoredVertex:
    position: TernaryRational
    color: ProcessId
    segment: str = UNIT


def vertex_at(x, segment: str = UNIT) -> ColoredVertex:
    p = _tr(x)
    return ColoredVertex(p, position_color(p), segment)


@dataclass(frozen=True)
class ComplexEdge:
    a: ColoredVertex
    b: ColoredVertex
    level: Optional[int] = None

    def __post_init__(self):
        if self.a.color == self.b.color:
            raise ValueError("edges must be bichromatic")
        if self.a.segment != self.b.segment:
            raise ValueError("edge endpoints must share a segment")

    @property
    def interval(self) -> tuple:
        lo, hi = sorted((self.a.position.value, self.b.position.value))
        return (lo, hi)


@dataclass(frozen=True)
class Complex:
    edges: tuple
    # corner identifications: frozensets of vertices glued into one
    gluing: tuple = ()
    # declared limit points of an infinite generating family
    accumulation_points: tuple = ()

    def vertices(self) -> set:
        out = set()
        for e in self.edges:
            out.add(e.a)
            out.add(e.b)
        return out

    def segments(self) -> set:
        return {e.a.segment for e in self.edges}


def unit_segment() -> Complex:
    return Complex((ComplexEdge(vertex_at(0), vertex_at(1)),))


def square_complex() -> Complex:
    edges = tuple(
        ComplexEdge(vertex_at(0, seg), vertex_at(1, seg))
        for seg in SQUARE_SEGMENTS
    )
    return Complex(edges, gluing=_square_gluing())


def _square_gluing() -> tuple:
    groups = []
    for corner, pick in (
        ("W0", lambda seg, iw, ib: (iw == 0, 0)),
        ("W1", lambda seg, iw, ib: (iw == 1, 0)),
        ("B0", lambda seg, iw, ib: (ib == 0, 1)),
        ("B1", lambda seg, iw, ib: (ib == 1, 1)),
    ):
        members = set()
        for seg, (iw, ib) in SQUARE_SEGMENTS.items():
            match, end = pick(seg, iw, ib)
            if match:
                members.add(vertex_at(end, seg))
        groups.append(frozenset(members))
    return tuple(groups)


def chromatic_subdivision(c: Complex) -> Complex:
    """Replaces each edge by three with alternating vertex colors."""
    edges = []
    for e in c.edges:
        lo = e.a if e.a.position.value < e.b.position.value else e.b
        hi = e.b if lo is e.a else e.a
        seg = e.a.segment
        p, q = lo.position.value, hi.position.value
        d = q - p
        m1 = ColoredVertex(_tr(p + d / 3), _other(lo.color), seg)
        m2 = ColoredVertex(_tr(p + 2 * d / 3), _other(hi.color), seg)
        edges.append(ComplexEdge(lo, m1))
        edges.append(ComplexEdge(m1, m2))
        edges.append(ComplexEdge(m2, hi))
    return Complex(tuple(edges), c.gluing, c.accumulation_points)


chr_complex = chromatic_subdivision


def _other(c: ProcessId) -> ProcessId:
    return BLACK if c is WHITE else WHITE


def word_to_edge(w: FiniteWord, segment: str = UNIT,
                 level: Optional[int] = None) -> ComplexEdge:
    """The cell [ind(w)/3^r, (ind(w)+1)/3^r] carried by the word."""
    if not w.is_gamma():
        raise ValueError("embedding is defined on GAMMA words only")
    r = len(w)
    k = ind(w)
    return ComplexEdge(
        vertex_at(Fraction(k, 3**r), segment),
        vertex_at(Fraction(k + 1, 3**r), segment),
        level if level is not None else r,
    )


def protocol_complex(a: AdversaryAutomaton, r: int) -> Complex:
    """Subcomplex of the r-subdivided input square whose cells are the
    adversary's length-r prefixes, repeated on all four sides."""
    if r > 8:
        raise ResourceBoundError("protocol complex depth capped at 8")
    words = sorted(a.prefixes(r), key=str)
    edges = []
    for seg in SQUARE_SEGMENTS:
        for w in words:
            edges.append(word_to_edge(w, seg))
    return Complex(tuple(edges), gluing=_square_gluing())


# ---------------------------------------------------------------------------
# connectivity


def abstract_components(k: Complex) -> int:
    """Connected components of the vertex/edge graph (gluing applied)."""
    parent: dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent.setdefault(x, x)
        parent.setdefault(y, y)
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for e in k.edges:
        union(e.a, e.b)
    present = k.vertices()
    for group in k.gluing:
        members = [v for v in group if v in present]
        for v, v2 in zip(members, members[1:]):
            union(v, v2)
    return len({find(v) for v in parent})


def realization_components(k: Complex, closure_depth: int = 12) -> int:
    """Components of the union of the closed intervals, on one segment.

    Declared accumulation points capture the closure of an infinite
    generating family: a component whose endpoint approaches such a
    point p (within 1/3^(closure_depth-1)) is merged with the component
    materially containing p -- but only when p lies inside some
    interval; a bare limit point outside the union separates nothing.
    """
    if len(k.segments()) > 1:
        raise ValueError("realization counting works on a single segment")
    intervals = sorted(e.interval for e in k.edges)
    if not intervals:
        return 0
    merged = [list(intervals[0])]
    for lo, hi in intervals[1:]:
        if lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    tol = Fraction(1, 3 ** (closure_depth - 1))
    parent = list(range(len(merged)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for p in k.accumulation_points:
        p = Fraction(p)
        home = None
        for i, (lo, hi) in enumerate(merged):
            if lo <= p <= hi:
                home = i
                break
        if home is None:
            continue
        for i, (lo, hi) in enumerate(merged):
            if i == home:
                continue
            if min(abs(lo - p), abs(hi - p)) <= tol:
                parent[find(i)] = find(home)
    return len({find(i) for i in range(len(merged))})


# ---------------------------------------------------------------------------
# terminating subdivisions


@dataclass
class TerminatingSubdivision:
    """Stable edges appearing level by level around a gap point z.

    Level k holds the cells of length-k adversary prefixes whose
    interval has just separated from z (their parent interval still
    contained it).  The word view is an antichain by construction.
    """

    adversary: AdversaryAutomaton
    z: Fraction
    levels: dict = field(default_factory=dict)
    words: dict = field(default_factory=dict)
    _frontier: list = field(default_factory=list)
    _depth: int = 0

    def materialize(self, depth: int):
        while self._depth < depth:
            self._grow()
        return self

    def _grow(self):
        k = self._depth + 1
        a = self.adversary
        stable_words = []
        frontier = []
        for w, state in self._frontier:
            for letter in GAMMA:
                nxt, _ = a.step(state, letter)
                if not a.has_nonempty_residual(nxt):
                    continue
                child = w + FiniteWord.of(letter)
                lo = Fraction(ind(child), 3**k)
                hi = lo + Fraction(1, 3**k)
                if lo <= self.z <= hi:
                    frontier.append((child, nxt))
                else:
                    stable_words.append(child)
        self.words[k] = tuple(sorted(stable_words, key=str))
        self.levels[k] = tuple(
            word_to_edge(w, level=k) for w in self.words[k]
        )
        self._frontier = frontier
        self._depth = k
        self._check_gap()

    def _check_gap(self):
        for w, _ in self._frontier:
            for tail in DEFAULT_TAILS:
                lasso = LassoWord(w + tail.stem, tail.cycle)
                if self.adversary.contains(lasso) and \
                        ind_limit(lasso) == self.z:
                    raise ValueError(
                        "%s is not a gap point: it is the limit of %s"
                        % (self.z, lasso)
                    )

    def stable_complex(self, max_level: Optional[int] = None) -> Complex:
        top = max_level if max_level is not None else self._depth
        edges = []
        for k in sorted(self.levels):
            if k > top:
                break
            edges.extend(self.levels[k])
        return Complex(tuple(edges), accumulation_points=(self.z,))

    def stable_edges(self, max_level: Optional[int] = None):
        return self.stable_complex(max_level).edges

    def admissible(self, depth: int,
                   tails: Iterable[LassoWord] = DEFAULT_TAILS,
                   horizon: int = 48) -> bool:
        """Finite-depth admissibility: every scenario obtained by
        completing a depth-prefix of the adversary with a contained
        tail has a stable prefix (found within the horizon)."""
        self.materialize(horizon)
        stable = set()
        for k in self.words:
            stable.update(w.letters for w in self.words[k])
        for w in self.adversary.prefixes(depth):
            for t in tails:
                lasso = LassoWord(w + t.stem, t.cycle)
                if not self.adversary.contains(lasso):
                    continue
                if not any(
                    lasso.prefix(n).letters in stable
                    for n in range(1, horizon + 1)
                ):
                    return False
        return True


def build_terminating_subdivision(a: AdversaryAutomaton, z,
                                  depth: int = 6) -> TerminatingSubdivision:
    z = Fraction(z)
    if not 0 <= z <= 1:
        raise ValueError("gap point must lie in [0, 1]")
    if not a.has_nonempty_residual(a.initial):
        raise ValueError("empty adversary has no subdivision")
    ts = TerminatingSubdivision(a, z)
    ts.levels[0] = ()
    ts.words[0] = ()
    ts._frontier = [(FiniteWord(), a.initial)]
    ts._check_gap()
    ts.materialize(depth)
    return ts


@dataclass
class Eta:
    """Halting radius per stable vertex: min 1/3^(r+1) over the levels
    r at which the vertex bounds a stable edge."""

    radius: dict

    def __getitem__(self, v: ColoredVertex) -> Fraction:
        return self.radius[v]


def eta_of(ts: TerminatingSubdivision,
           max_level: Optional[int] = None) -> Eta:
    radius: dict = {}
    top = max_level if max_level is not None else ts._depth
    for k in sorted(ts.levels):
        if k > top:
            break
        r = Fraction(1, 3 ** (k + 1))
        for e in ts.levels[k]:
            for v in (e.a, e.b):
                radius[v] = min(radius.get(v, r), r)
    return Eta(radius)


def finished_witness(r: int, x, ts: TerminatingSubdivision,
                     eta: Eta) -> Optional[ColoredVertex]:
    """A level-r subdivision point y inside the stable realization
    whose open eta-ball contains the closed ball around x of radius
    1/3^r, if any.

    Eta at a stable vertex comes from the radius map; in the interior
    of a stable edge it is the min of the edge's endpoint radii.  Only
    the candidates nearest to x in each edge can win, so the search
    stays finite at any level.
    """
    if ts._depth < r:
        raise ResourceBoundError(
            "subdivision materialized to level %d < %d" % (ts._depth, r)
        )
    x = Fraction(x)
    ball = Fraction(1, 3**r)
    pow3 = 3**r
    kx = (x.numerator * pow3) // x.denominator
    best = None
    best_key = None
    for k in sorted(ts.levels):
        if k > r:
            break
        for e in ts.levels[k]:
            lo, hi = e.interval
            klo = -((-lo.numerator * pow3) // lo.denominator)
            khi = (hi.numerator * pow3) // hi.denominator
            if klo > khi:
                continue
            h_edge = min(eta.radius[e.a], eta.radius[e.b])
            for kc in {max(klo, min(khi, kx)),
                       max(klo, min(khi, kx + 1))}:
                y = Fraction(kc, pow3)
                if y == e.a.position.value:
                    h = eta.radius[e.a]
                elif y == e.b.position.value:
                    h = eta.radius[e.b]
                else:
                    h = h_edge
                if abs(x - y) + ball < h:
                    key = (abs(x - y), y)
                    if best_key is None or key < best_key:
                        best, best_key = y, key
    return vertex_at(best) if best is not None else None


def finished(r: int, x, ts: TerminatingSubdivision, eta: Eta) -> bool:
    return finished_witness(r, x, ts, eta) is not None


def side_decision_map(z) -> Callable:
    """Default decision map: points left of the gap adopt white's
    input, points right of it adopt black's."""
    z = Fraction(z)

    def delta(position: Fraction) -> ProcessId:
        return WHITE if Fraction(position) < z else BLACK

    return delta


class GeometricAlgorithm(Algorithm):
    """Algorithm A_eta: same index updates as the index-guard
    algorithm, halting as soon as Finished(r, ind/3^r) holds, deciding
    the input of the process the decision map assigns to the witness
    vertex."""

    name = "aeta"

    def __init__(self, ts: TerminatingSubdivision, eta: Eta,
                 delta: Callable):
        self.ts = ts
        self.eta = eta
        self.delta = delta

    def start(self, pid: ProcessId, init: int) -> ProcessState:
        return ProcessState(pid, init, ind=0 if pid is WHITE else 1)

    def maybe_halt(self, s: ProcessState) -> ProcessState:
        r = s.round
        if r == 0:
            return s
        if self.ts._depth < r:
            self.ts.materialize(r)
            self.eta = eta_of(self.ts)
        x = Fraction(s.ind, 3**r)
        y = finished_witness(r, x, self.ts, self.eta)
        if y is None:
            return s
        side = self.delta(y.position.value)
        value = s.init if side is s.id else s.initother
        assert value is not None, "decision map points at an unseen input"
        from dataclasses import replace
        return replace(s, decided=value, halted=True)


def alg_eta_simulate(ts: TerminatingSubdivision, eta: Eta,
                     delta: Callable, scenario: LassoWord, inputs: tuple,
                     max_rounds: int = 64) -> Transcript:
    algo = GeometricAlgorithm(ts, eta, delta)
    return simulate(algo, scenario, inputs, max_rounds)


def gap_point(v: Verdict) -> Fraction:
    """Translates a solvability witness into the point the stable
    complex avoids."""
    w = v.witness
    if isinstance(w, FairWitness):
        return ind_limit(w.scenario)
    if isinstance(w, SpecialPairWitness):
        return ind_limit(w.first)
    if isinstance(w, CornerWitness):
        return ind_limit(w.scenario)
    raise ValueError("verdict carries no witness")


@dataclass(frozen=True)
class Connectivity:
    connected: bool
    gap: Optional[Fraction]
    reason: str


def limit_connectivity(a: AdversaryAutomaton) -> Connectivity:
    """Connectivity of the limit realization of the adversary complex.

    Restatement of the solvability verdict: the realization is
    disconnected exactly when consensus is solvable, the gap being the
    limit point the excluded scenarios vacate.  This is a reduction to
    classify, not an independent geometric computation.
    """
    v = classify(a)
    if not v.solvable:
        return Connectivity(True, None, "no limit point is vacated")
    z = gap_point(v)
    if isinstance(v.witness, CornerWitness):
        reason = "corner gluing broken at %s" % z
    elif isinstance(v.witness, FairWitness):
        reason = "fair limit point %s removed (sole preimage)" % z
    else:
        reason = "shared limit %s removed with both preimages" % z
    return Connectivity(False, z, reason)


# ---------------------------------------------------------------------------
# the abstract-vs-geometric counter-example


def contrex(depth: int = 6) -> Complex:
    """Hand-coded stable family whose abstract complex has two
    components while its geometric realization is the whole interval:
    level 1 contributes [0,1/3] and [2/3,1]; level r >= 2 contributes
    the two cells ending at 2/3 - 1/3^r, creeping up to 2/3 from the
    left without ever reaching it."""
    edges = [
        word_to_edge(FiniteWord.of(Letter.LB), level=1),
        word_to_edge(FiniteWord.of(Letter.LW), level=1),
    ]
    for r in range(2, depth + 1):
        left = Fraction(2, 3) - Fraction(1, 3 ** (r - 1))
        mid = Fraction(2, 3) - Fraction(2, 3**r)
        right = Fraction(2, 3) - Fraction(1, 3**r)
        edges.append(ComplexEdge(vertex_at(left), vertex_at(mid), level=r))
        edges.append(ComplexEdge(vertex_at(mid), vertex_at(right), level=r))
    return Complex(tuple(edges), accumulation_points=(Fraction(2, 3),))


# ---------------------------------------------------------------------------
# export


def export(obj, format: str = "json") -> str:
    if format == "json":
        return export_json(obj)
    if format == "svg":
        return export_svg(obj)
    raise ValueError("unknown export format %r" % format)


def export_json(obj) -> str:
    if isinstance(obj, TerminatingSubdivision):
        doc = _complex_doc(obj.stable_complex())
        doc["type"] = "terminating-subdivision"
        doc["z"] = _frac_str(obj.z)
        doc["depth"] = obj._depth
        return json.dumps(doc, sort_keys=True)
    return json.dumps(_complex_doc(obj), sort_keys=True)


def _frac_str(f: Fraction) -> str:
    f = Fraction(f)
    return "%d/%d" % (f.numerator, f.denominator)


def _vertex_key(v: ColoredVertex):
    return (v.segment, v.position.value)


def _complex_doc(c: Complex) -> dict:
    verts = sorted(c.vertices(), key=_vertex_key)
    index = {v: i for i, v in enumerate(verts)}
    return {
        "type": "complex",
        "vertices": [
            {
                "position": str(v.position),
                "color": v.color.value,
                "segment": v.segment,
            }
            for v in verts
        ],
        "edges": sorted(
            (
                {
                    "a": index[e.a],
                    "b": index[e.b],
                    "level": e.level,
                }
                for e in c.edges
            ),
            key=lambda d: (d["a"], d["b"]),
        ),
        "gluing": sorted(
            sorted(index[v] for v in group if v in index)
            for group in c.gluing
        ),
        "accumulation_points": [
            _frac_str(p) for p in c.accumulation_points
        ],
    }


def complex_from_json(text: str) -> Complex:
    doc = json.loads(text)
    if doc.get("type") not in ("complex", "terminating-subdivision"):
        raise ValueError("not a complex document")
    verts = []
    for d in doc["vertices"]:
        num, den = d["position"].split("/")
        verts.append(ColoredVertex(
            _tr(Fraction(int(num), int(den))),
            ProcessId(d["color"]),
            d["segment"],
        ))
    edges = tuple(
        ComplexEdge(verts[d["a"]], verts[d["b"]], d.get("level"))
        for d in doc["edges"]
    )
    gluing = tuple(
        frozenset(verts[i] for i in group) for group in doc.get("gluing", [])
    )
    acc = tuple(
        Fraction(int(p.split("/")[0]), int(p.split("/")[1]))
        for p in doc.get("accumulation_points", [])
    )
    return Complex(edges, gluing, acc)


_SQUARE_ANCHORS = {
    # segment -> ((x0, y0), (x1, y1)) endpoints for positions 0 and 1
    "W0B0": ((50, 950), (950, 950)),
    "B0W1": ((950, 50), (950, 950)),
    "W1B1": ((950, 50), (50, 50)),
    "B1W0": ((50, 950), (50, 50)),
    UNIT: ((50, 500), (950, 500)),
}


def _coord(segment: str, p: Fraction) -> tuple:
    (x0, y0), (x1, y1) = _SQUARE_ANCHORS[segment]
    x = Fraction(x0) + (Fraction(x1) - Fraction(x0)) * p
    y = Fraction(y0) + (Fraction(y1) - Fraction(y0)) * p

    def fmt(v: Fraction) -> str:
        scaled = round(v * 100)
        return "%d.%02d" % divmod(scaled, 100)

    return fmt(x), fmt(y)


def export_svg(obj) -> str:
    c = obj.stable_complex() if isinstance(obj, TerminatingSubdivision) else obj
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1000 1000">',
        '<!-- segments horizontal; stable edges stroke 3; '
        'white vertices open, black filled -->',
    ]
    for e in sorted(c.edges, key=lambda e: (_vertex_key(e.a),
                                            _vertex_key(e.b))):
        x1, y1 = _coord(e.a.segment, e.a.position.value)
        x2, y2 = _coord(e.b.segment, e.b.position.value)
        width = 3 if e.level is not None else 1
        lines.append(
            '<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="black" '
            'stroke-width="%d"/>' % (x1, y1, x2, y2, width)
        )
    for v in sorted(c.vertices(), key=_vertex_key):
        x, y = _coord(v.segment, v.position.value)
        fill = "white" if v.color is WHITE else "black"
        lines.append(
            '<circle cx="%s" cy="%s" r="6" fill="%s" stroke="black"/>'
            % (x, y, fill)
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
