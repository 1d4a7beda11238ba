"""Message adversaries as deterministic parity automata.

An adversary is an omega-language over the round alphabet.  The DSL
below covers every adversary used in practice (oblivious sets, a finite
regex prefix followed by an oblivious tail, unions, and the full
language minus finitely many lassos) and compiles to deterministic,
complete automata.

Acceptance bookkeeping: every transition carries a tuple of colors, one
per "track", and the automaton's acceptance condition is a positive
Boolean combination of atoms "the maximum color seen infinitely often
on track t is even".  Single-track automata are ordinary parity
automata; products (union/intersection) simply concatenate tracks, and
complement dualizes the formula, shifting colors of negated atoms by
one.  Membership of a lasso and emptiness (with a lasso witness) are
decided exactly on this representation.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Optional, Sequence

from .words import (
    EPSILON,
    FiniteWord,
    G2,
    GAMMA,
    LETTER_ORDER,
    LassoWord,
    Letter,
    ParseError,
    parse_lasso,
)


class CompileError(ValueError):
    """Raised on expressions the compiler does not support."""


class ResourceBoundError(RuntimeError):
    """Raised when an enumeration bound is exceeded."""


# ---------------------------------------------------------------------------
# acceptance formulas


@dataclass(frozen=True)
class Atom:
    """Max color seen infinitely often on this track is even."""

    track: int


@dataclass(frozen=True)
class And:
    parts: tuple


@dataclass(frozen=True)
class Or:
    parts: tuple


def _eval_formula(f, track_even: Sequence[bool]) -> bool:
    if isinstance(f, Atom):
        return track_even[f.track]
    if isinstance(f, And):
        return all(_eval_formula(p, track_even) for p in f.parts)
    if isinstance(f, Or):
        return any(_eval_formula(p, track_even) for p in f.parts)
    raise TypeError(f)


def _dnf(f) -> list[frozenset[int]]:
    """Disjunctive normal form: a list of required-track sets."""
    if isinstance(f, Atom):
        return [frozenset([f.track])]
    if isinstance(f, Or):
        out = []
        for p in f.parts:
            out.extend(_dnf(p))
        return out
    if isinstance(f, And):
        prod = [frozenset()]
        for p in f.parts:
            prod = [a | b for a in prod for b in _dnf(p)]
        return prod
    raise TypeError(f)


# ---------------------------------------------------------------------------
# the automaton


@dataclass
class AdversaryAutomaton:
    """Deterministic complete automaton over ``alphabet``.

    ``transitions[state][letter] = (next_state, colors)`` where colors
    is a tuple with one entry per track.  ``acceptance`` is a positive
    formula over track atoms.  States are arbitrary hashables.
    """

    alphabet: tuple
    initial: Hashable
    transitions: dict
    num_tracks: int
    acceptance: object
    source: object = None

    def __post_init__(self):
        for st, row in self.transitions.items():
            assert set(row) == set(self.alphabet), "automaton not complete"

    @property
    def states(self):
        return list(self.transitions)

    def step(self, state, letter):
        return self.transitions[state][letter]

    # -- queries ----------------------------------------------------------

    def contains(self, l: LassoWord) -> bool:
        """Membership of an ultimately periodic word."""
        for a in itertools.chain(l.stem, l.cycle):
            if a not in self.alphabet:
                raise ValueError("letter %s not in automaton alphabet" % (a,))
        state = self.initial
        for a in l.stem:
            state, _ = self.step(state, a)
        # iterate the cycle until the state at cycle start repeats
        seen = {state: 0}
        states_at_start = [state]
        while True:
            for a in l.cycle:
                state, _ = self.step(state, a)
            if state in seen:
                loop_start = seen[state]
                break
            seen[state] = len(states_at_start)
            states_at_start.append(state)
        # max colors on the repeating loop
        maxima = [-1] * self.num_tracks
        state = states_at_start[loop_start]
        for _ in range(loop_start, len(states_at_start)):
            for a in l.cycle:
                state, colors = self.step(state, a)
                for t, c in enumerate(colors):
                    if c > maxima[t]:
                        maxima[t] = c
        return _eval_formula(self.acceptance, [m % 2 == 0 for m in maxima])

    def is_empty(self) -> Optional[LassoWord]:
        """None if the language is empty, else a witness lasso."""
        return self.witness_from(self.initial)

    def witness_from(self, start) -> Optional[LassoWord]:
        """A lasso accepted from ``start``, or None."""
        reachable = self._reachable(start)
        edges = [
            (st, a, *self.transitions[st][a])
            for st in reachable
            for a in self.alphabet
            if self.transitions[st][a][0] in reachable
        ]
        for required in _dnf(self.acceptance):
            walk = _good_cycle(edges, required)
            if walk is not None:
                anchor = walk[0][0]
                stem = _letter_path(self._edge_map(edges), start, anchor)
                loop = [a for (_, a) in walk]
                return LassoWord(
                    FiniteWord(tuple(stem)), FiniteWord(tuple(loop))
                )
        return None

    def has_nonempty_residual(self, state) -> bool:
        return self.witness_from(state) is not None

    def prefixes(self, r: int, bound: int = 12) -> set[FiniteWord]:
        """All length-r words extendable to an accepted infinite word."""
        if r > bound:
            raise ResourceBoundError(
                "prefix enumeration depth %d exceeds bound %d" % (r, bound)
            )
        live: dict = {}

        def alive(state) -> bool:
            if state not in live:
                live[state] = self.has_nonempty_residual(state)
            return live[state]

        order = sorted(self.alphabet, key=lambda a: LETTER_ORDER[a])
        out: set[FiniteWord] = set()

        def walk(state, acc: tuple):
            if len(acc) == r:
                out.add(FiniteWord(acc))
                return
            for a in order:
                nxt, _ = self.step(state, a)
                if alive(nxt):
                    walk(nxt, acc + (a,))

        if alive(self.initial):
            walk(self.initial, ())
        return out

    # -- helpers ----------------------------------------------------------

    def _reachable(self, start) -> set:
        seen = {start}
        todo = [start]
        while todo:
            st = todo.pop()
            for a in self.alphabet:
                nxt, _ = self.transitions[st][a]
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        return seen

    @staticmethod
    def _edge_map(edges):
        out: dict = {}
        for (src, a, dst, _) in edges:
            out.setdefault(src, []).append((a, dst))
        return out

    def relabel(self) -> "AdversaryAutomaton":
        """Renumbers states 0..n-1 in BFS order (stable JSON export)."""
        order = {self.initial: 0}
        queue = [self.initial]
        abc = sorted(self.alphabet, key=lambda a: LETTER_ORDER[a])
        while queue:
            st = queue.pop(0)
            for a in abc:
                nxt, _ = self.transitions[st][a]
                if nxt not in order:
                    order[nxt] = len(order)
                    queue.append(nxt)
        trans = {
            order[st]: {
                a: (order[nxt], colors)
                for a, (nxt, colors) in row.items()
            }
            for st, row in self.transitions.items()
            if st in order
        }
        return AdversaryAutomaton(
            self.alphabet, 0, trans, self.num_tracks, self.acceptance,
            self.source,
        )

    def to_json(self) -> str:
        auto = self.relabel()
        abc = sorted(auto.alphabet, key=lambda a: LETTER_ORDER[a])
        doc = {
            "alphabet": [a.value for a in abc],
            "initial": auto.initial,
            "num_tracks": auto.num_tracks,
            "states": sorted(auto.transitions),
            "transitions": [
                {
                    "from": st,
                    "letter": a.value,
                    "to": auto.transitions[st][a][0],
                    "colors": list(auto.transitions[st][a][1]),
                }
                for st in sorted(auto.transitions)
                for a in abc
            ],
            "acceptance": _formula_json(auto.acceptance),
        }
        return json.dumps(doc, sort_keys=False)


def _formula_json(f):
    if isinstance(f, Atom):
        return {"even": f.track}
    if isinstance(f, And):
        return {"and": [_formula_json(p) for p in f.parts]}
    if isinstance(f, Or):
        return {"or": [_formula_json(p) for p in f.parts]}
    raise TypeError(f)


def _letter_path(edge_map, src, dst) -> list:
    """Letters along a shortest path src -> dst (BFS)."""
    if src == dst:
        return []
    prev = {src: None}
    queue = [src]
    while queue:
        st = queue.pop(0)
        for a, nxt in edge_map.get(st, ()):
            if nxt not in prev:
                prev[nxt] = (st, a)
                if nxt == dst:
                    out = []
                    cur = dst
                    while prev[cur] is not None:
                        st2, a2 = prev[cur]
                        out.append(a2)
                        cur = st2
                    return list(reversed(out))
                queue.append(nxt)
    raise AssertionError("no path between states of one component")


def _good_cycle(edges, required: frozenset[int]):
    """A closed walk whose per-track max color is even for every
    required track, or None.  SCC decomposition with iterated removal
    of forced-odd maximal colors."""
    for scc_edges in _edge_sccs(edges):
        result = _good_cycle_in_scc(scc_edges, required)
        if result is not None:
            return result
    return None


def _edge_sccs(edges):
    """Partitions ``edges`` into SCC-internal edge groups (Tarjan)."""
    adj: dict = {}
    nodes = set()
    for (src, a, dst, colors) in edges:
        adj.setdefault(src, []).append(dst)
        nodes.add(src)
        nodes.add(dst)
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    comp_of: dict = {}
    counter = itertools.count()
    ncomp = itertools.count()

    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(adj.get(root, ())))]
        index[root] = low[root] = next(counter)
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = next(counter)
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(adj.get(nxt, ()))))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if low[node] == index[node]:
                cid = next(ncomp)
                while True:
                    top = stack.pop()
                    on_stack.discard(top)
                    comp_of[top] = cid
                    if top == node:
                        break
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])

    groups: dict = {}
    for e in edges:
        src, _, dst, _ = e
        if comp_of[src] == comp_of[dst]:
            groups.setdefault(comp_of[src], []).append(e)
    return list(groups.values())


def _good_cycle_in_scc(scc_edges, required: frozenset[int]):
    """Recursive color filtering inside one SCC's edge set."""
    if not scc_edges:
        return None
    maxima = {t: max(e[3][t] for e in scc_edges) for t in required}
    odd = [t for t, m in maxima.items() if m % 2 == 1]
    if not odd:
        return _closed_walk(scc_edges)
    # a suitable cycle must avoid the maximal odd-colored edges, since
    # using one would make that track's max on the cycle odd
    pruned = [
        e for e in scc_edges if all(e[3][t] < maxima[t] for t in odd)
    ]
    for sub in _edge_sccs(pruned):
        found = _good_cycle_in_scc(sub, required)
        if found is not None:
            return found
    return None


def _closed_walk(scc_edges):
    """A closed walk through every edge of an SCC, as (state, letter)
    steps; per-track maxima equal the SCC maxima."""
    edge_map = AdversaryAutomaton._edge_map(scc_edges)
    dst_of = {(src, a): dst for (src, a, dst, _) in scc_edges}
    start = scc_edges[0][0]
    walk = []
    cur = start
    for (src, a, dst, _) in scc_edges:
        for step in _letter_path(edge_map, cur, src):
            walk.append((cur, step))
            cur = dst_of[(cur, step)]
        walk.append((src, a))
        cur = dst
    for step in _letter_path(edge_map, cur, start):
        walk.append((cur, step))
        cur = dst_of[(cur, step)]
    return walk


# ---------------------------------------------------------------------------
# expression AST


@dataclass(frozen=True)
class RegexLetter:
    letter: Letter


@dataclass(frozen=True)
class RegexConcat:
    parts: tuple


@dataclass(frozen=True)
class RegexUnion:
    parts: tuple


@dataclass(frozen=True)
class RegexStar:
    inner: object


@dataclass(frozen=True)
class OmegaPower:
    letters: frozenset


@dataclass(frozen=True)
class Concat:
    prefix: object  # finite regex
    tail: object  # adversary expression


@dataclass(frozen=True)
class Union:
    parts: tuple


@dataclass(frozen=True)
class DifferenceFromFull:
    alphabet: tuple  # GAMMA or G2
    excluded: tuple  # of LassoWord


@dataclass(frozen=True)
class Named:
    name: str


@dataclass(frozen=True)
class LassoExpr:
    """The singleton language of one ultimately periodic word."""

    word: LassoWord


AdversaryExpr = object


def expr_alphabet(e) -> tuple:
    """GAMMA when no LL appears anywhere in the expression, else G2."""

    def uses_ll(e) -> bool:
        if isinstance(e, OmegaPower):
            return Letter.LL in e.letters
        if isinstance(e, Concat):
            return _regex_uses_ll(e.prefix) or uses_ll(e.tail)
        if isinstance(e, Union):
            return any(uses_ll(p) for p in e.parts)
        if isinstance(e, DifferenceFromFull):
            return e.alphabet == G2
        if isinstance(e, Named):
            return uses_ll(builtin(e.name))
        if isinstance(e, LassoExpr):
            return not e.word.is_gamma()
        raise TypeError(e)

    return G2 if uses_ll(e) else GAMMA


def _regex_uses_ll(rx) -> bool:
    if isinstance(rx, RegexLetter):
        return rx.letter is Letter.LL
    if isinstance(rx, (RegexConcat, RegexUnion)):
        return any(_regex_uses_ll(p) for p in rx.parts)
    if isinstance(rx, RegexStar):
        return _regex_uses_ll(rx.inner)
    raise TypeError(rx)


# ---------------------------------------------------------------------------
# built-in adversaries (the seven standard environments)


def builtin(name: str) -> AdversaryExpr:
    table = {
        "S0": OmegaPower(frozenset({Letter.OK})),
        "TW": OmegaPower(frozenset({Letter.OK, Letter.LW})),
        "TB": OmegaPower(frozenset({Letter.OK, Letter.LB})),
        "C1": Union(
            (
                OmegaPower(frozenset({Letter.OK})),
                Concat(
                    RegexStar(RegexLetter(Letter.OK)),
                    OmegaPower(frozenset({Letter.LW})),
                ),
                Concat(
                    RegexStar(RegexLetter(Letter.OK)),
                    OmegaPower(frozenset({Letter.LB})),
                ),
            )
        ),
        "S1": Union(
            (
                OmegaPower(frozenset({Letter.OK, Letter.LW})),
                OmegaPower(frozenset({Letter.OK, Letter.LB})),
            )
        ),
        "R1": OmegaPower(frozenset({Letter.OK, Letter.LW, Letter.LB})),
        "S2": OmegaPower(
            frozenset({Letter.OK, Letter.LW, Letter.LB, Letter.LL})
        ),
    }
    if name not in table:
        raise ParseError("unknown adversary name %r" % name)
    return table[name]


BUILTIN_NAMES = ("S0", "TW", "TB", "C1", "S1", "R1", "S2")


# ---------------------------------------------------------------------------
# finite regex -> DFA (Thompson + subset construction)


def _regex_nfa(rx, counter):
    """(start, finals, transitions) with epsilon moves as letter None."""
    if isinstance(rx, RegexLetter):
        s, f = next(counter), next(counter)
        return s, {f}, [(s, rx.letter, f)]
    if isinstance(rx, RegexConcat):
        if not rx.parts:
            s = next(counter)
            return s, {s}, []
        start, finals, trans = _regex_nfa(rx.parts[0], counter)
        for part in rx.parts[1:]:
            s2, f2, t2 = _regex_nfa(part, counter)
            trans += t2 + [(f, None, s2) for f in finals]
            finals = f2
        return start, finals, trans
    if isinstance(rx, RegexUnion):
        s = next(counter)
        finals = set()
        trans = []
        for part in rx.parts:
            s2, f2, t2 = _regex_nfa(part, counter)
            trans += t2 + [(s, None, s2)]
            finals |= f2
        return s, finals, trans
    if isinstance(rx, RegexStar):
        s2, f2, t2 = _regex_nfa(rx.inner, counter)
        s = next(counter)
        trans = t2 + [(s, None, s2)] + [(f, None, s) for f in f2]
        return s, {s}, trans
    raise TypeError(rx)


def regex_to_dfa(rx, alphabet):
    """(initial, transitions {state: {letter: state}}, finals) over
    frozenset states; complete over ``alphabet``."""
    counter = itertools.count()
    start, finals, trans = _regex_nfa(rx, counter)
    eps: dict = {}
    by_letter: dict = {}
    for (src, a, dst) in trans:
        if a is None:
            eps.setdefault(src, set()).add(dst)
        else:
            by_letter.setdefault((src, a), set()).add(dst)

    def closure(states):
        out = set(states)
        todo = list(states)
        while todo:
            st = todo.pop()
            for nxt in eps.get(st, ()):
                if nxt not in out:
                    out.add(nxt)
                    todo.append(nxt)
        return frozenset(out)

    init = closure({start})
    dfa_trans = {}
    todo = [init]
    while todo:
        cur = todo.pop()
        if cur in dfa_trans:
            continue
        row = {}
        for a in alphabet:
            tgt = set()
            for st in cur:
                tgt |= by_letter.get((st, a), set())
            nxt = closure(tgt)
            row[a] = nxt
            if nxt not in dfa_trans and nxt != cur:
                todo.append(nxt)
        dfa_trans[cur] = row
    dfa_finals = {st for st in dfa_trans if st & finals}
    return init, dfa_trans, dfa_finals


# ---------------------------------------------------------------------------
# compilation


def compile_expr(e: AdversaryExpr) -> AdversaryAutomaton:
    alphabet = expr_alphabet(e)
    return _compile(e, alphabet)


compile = compile_expr  # spec operation name


def _compile(e, alphabet) -> AdversaryAutomaton:
    if isinstance(e, Named):
        return _compile(builtin(e.name), alphabet)
    if isinstance(e, OmegaPower):
        return _compile_omega_power(e.letters, alphabet, e)
    if isinstance(e, Union):
        if not e.parts:
            raise CompileError("empty union")
        autos = [_compile(p, alphabet) for p in e.parts]
        out = autos[0]
        for other in autos[1:]:
            out = union(out, other)
        out.source = e
        return out
    if isinstance(e, Concat):
        return _compile_concat(e, alphabet)
    if isinstance(e, LassoExpr):
        out = _lasso_singleton(e.word, alphabet)
        out.source = e
        return out
    if isinstance(e, DifferenceFromFull):
        full = _compile_omega_power(frozenset(e.alphabet), alphabet, None)
        out = full
        for l in e.excluded:
            out = intersect(out, complement(_lasso_singleton(l, alphabet)))
        out.source = e
        return out
    raise CompileError("unsupported expression %r" % (e,))


def _compile_omega_power(letters, alphabet, source) -> AdversaryAutomaton:
    trans = {
        "in": {},
        "sink": {a: ("sink", (1,)) for a in alphabet},
    }
    for a in alphabet:
        trans["in"][a] = ("in", (0,)) if a in letters else ("sink", (1,))
    return AdversaryAutomaton(alphabet, "in", trans, 1, Atom(0), source)


def _lasso_singleton(l: LassoWord, alphabet) -> AdversaryAutomaton:
    """The singleton language {l}: follow the word exactly or reject."""
    stem, cycle = l.stem.letters, l.cycle.letters
    n, p = len(stem), len(cycle)
    trans: dict = {"sink": {a: ("sink", (1,)) for a in alphabet}}
    for i in range(n + p):
        expected = stem[i] if i < n else cycle[i - n]
        nxt = i + 1 if i + 1 < n + p else n
        trans[i] = {
            a: ((nxt, (0,)) if a == expected else ("sink", (1,)))
            for a in alphabet
        }
    return AdversaryAutomaton(alphabet, 0, trans, 1, Atom(0), None)


def _flatten_concat(e: Concat):
    """Normalizes nested Concat/Union tails into (regex, letterset) pairs."""
    tail = e.tail
    if isinstance(tail, Named):
        tail = builtin(tail.name)
    if isinstance(tail, OmegaPower):
        return [(e.prefix, tail.letters)]
    if isinstance(tail, Union):
        out = []
        for part in tail.parts:
            out.extend(_flatten_concat(Concat(e.prefix, part)))
        return out
    if isinstance(tail, Concat):
        inner = _flatten_concat(tail)
        return [
            (RegexConcat((e.prefix, rx)), letters) for rx, letters in inner
        ]
    raise CompileError(
        "unsupported tail under concatenation: %r" % (tail,)
    )


def _compile_concat(e: Concat, alphabet) -> AdversaryAutomaton:
    pairs = _flatten_concat(e)
    autos = [
        _compile_prefixed_oblivious(rx, letters, alphabet)
        for rx, letters in pairs
    ]
    out = autos[0]
    for other in autos[1:]:
        out = union(out, other)
    out.source = e
    return out


def _compile_prefixed_oblivious(rx, letters, alphabet) -> AdversaryAutomaton:
    """Deterministic co-Buchi automaton for ``L(rx) . letters^w``.

    Tracks the regex DFA state plus a flag: "some prefix since the last
    out-of-set letter was in L(rx)".  A word belongs to the language
    iff from some point on every letter is in the set and the flag is
    up, i.e. the complement of that condition happens finitely often.
    """
    init, dfa_trans, finals = regex_to_dfa(rx, alphabet)
    states = [(q, g) for q in dfa_trans for g in (False, True)]
    trans: dict = {}
    for (q, g) in states:
        row = {}
        for a in alphabet:
            q2 = dfa_trans[q][a]
            if a in letters:
                g2 = g or (q2 in finals)
            else:
                g2 = q2 in finals
            color = 0 if (a in letters and g2) else 1
            row[a] = ((q2, g2), (color,))
        trans[(q, g)] = row
    return AdversaryAutomaton(
        alphabet, (init, init in finals), trans, 1, Atom(0), None
    )


# ---------------------------------------------------------------------------
# Boolean operations


def _shift_track(auto: AdversaryAutomaton, track: int):
    """In-place-free color shift of one track (parity dualization)."""
    trans = {
        st: {
            a: (nxt, tuple(
                c + 1 if t == track else c for t, c in enumerate(colors)
            ))
            for a, (nxt, colors) in row.items()
        }
        for st, row in auto.transitions.items()
    }
    return trans


def complement(a: AdversaryAutomaton) -> AdversaryAutomaton:
    """Language complement within a's full alphabet."""

    def negate(f, trans):
        if isinstance(f, Atom):
            return Atom(f.track), _shift_colors(trans, f.track)
        if isinstance(f, And):
            parts = []
            for p in f.parts:
                np, trans = negate(p, trans)
                parts.append(np)
            return Or(tuple(parts)), trans
        if isinstance(f, Or):
            parts = []
            for p in f.parts:
                np, trans = negate(p, trans)
                parts.append(np)
            return And(tuple(parts)), trans
        raise TypeError(f)

    acc, trans = negate(a.acceptance, a.transitions)
    return AdversaryAutomaton(
        a.alphabet, a.initial, trans, a.num_tracks, acc, None
    )


def _shift_colors(transitions, track):
    return {
        st: {
            a: (nxt, tuple(
                c + 1 if t == track else c for t, c in enumerate(colors)
            ))
            for a, (nxt, colors) in row.items()
        }
        for st, row in transitions.items()
    }


def _product(a, b, combine):
    if a.alphabet != b.alphabet:
        raise ValueError("alphabet mismatch")
    shift = a.num_tracks
    acc_b = _shift_formula(b.acceptance, shift)
    init = (a.initial, b.initial)
    trans: dict = {}
    todo = [init]
    while todo:
        (sa, sb) = todo.pop()
        if (sa, sb) in trans:
            continue
        row = {}
        for letter in a.alphabet:
            na, ca = a.transitions[sa][letter]
            nb, cb = b.transitions[sb][letter]
            row[letter] = ((na, nb), ca + cb)
            if (na, nb) not in trans:
                todo.append((na, nb))
        trans[(sa, sb)] = row
    return AdversaryAutomaton(
        a.alphabet, init, trans, a.num_tracks + b.num_tracks,
        combine(a.acceptance, acc_b), None,
    )


def _shift_formula(f, shift):
    if isinstance(f, Atom):
        return Atom(f.track + shift)
    if isinstance(f, And):
        return And(tuple(_shift_formula(p, shift) for p in f.parts))
    if isinstance(f, Or):
        return Or(tuple(_shift_formula(p, shift) for p in f.parts))
    raise TypeError(f)


def intersect(a, b) -> AdversaryAutomaton:
    return _product(a, b, lambda x, y: And((x, y)))


def union(a, b) -> AdversaryAutomaton:
    return _product(a, b, lambda x, y: Or((x, y)))


def fairness_automaton() -> AdversaryAutomaton:
    """Fair scenarios over GAMMA: messages of both processes delivered
    infinitely often.  An OK letter or a switch between LW and LB is a
    good event; accepting iff good events recur forever."""
    trans = {}
    for last in ("W", "B"):
        row = {}
        for a in GAMMA:
            if a is Letter.OK:
                row[a] = (last, (2,))
            elif a is Letter.LW:
                row[a] = ("W", (1,) if last == "W" else (2,))
            else:
                row[a] = ("B", (1,) if last == "B" else (2,))
        trans[last] = row
    return AdversaryAutomaton(GAMMA, "W", trans, 1, Atom(0), None)


# ---------------------------------------------------------------------------
# DSL parser


class _DslParser:
    """Recursive descent over the adversary DSL.

    adversary := union
    union     := term { "|" term }
    term      := name | omega | "(" adversary ")" | prefix "." omega | diff
    omega     := set "^w"
    set       := "{" letter { "," letter } "}" | letter
    diff      := ("GAMMA" | "G2") "^w" "\\" "{" lasso { "," lasso } "}"
    """

    def __init__(self, text: str):
        self.toks = self._lex(text)
        self.pos = 0

    @staticmethod
    def _lex(text: str) -> list[str]:
        out = []
        i = 0
        symbols = ("^w", "{", "}", "(", ")", "|", ",", ".", "*", "\\")
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            for sym in symbols:
                if text.startswith(sym, i):
                    out.append(sym)
                    i += len(sym)
                    break
            else:
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                if j == i:
                    raise ParseError(
                        "unexpected character %r at %d" % (ch, i)
                    )
                out.append(text[i:j])
                i = j
        return out

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        if expected is not None and tok != expected:
            raise ParseError(
                "expected %r at token %d, got %r"
                % (expected, self.pos, tok)
            )
        self.pos += 1
        return tok

    def parse(self):
        e = self.union()
        if self.peek() is not None:
            raise ParseError("trailing input at token %d" % self.pos)
        return e

    def union(self):
        parts = [self.term()]
        while self.peek() == "|":
            self.take("|")
            parts.append(self.term())
        return parts[0] if len(parts) == 1 else Union(tuple(parts))

    def term(self):
        tok = self.peek()
        if tok in ("GAMMA", "G2"):
            return self.diff()
        if tok == "(":
            # "( LB )^w" sugar for the single-letter omega power
            nxt = self.toks[self.pos + 1 : self.pos + 4]
            if (
                len(nxt) == 3
                and nxt[0] in ("OK", "LW", "LB", "LL")
                and nxt[1] == ")"
                and nxt[2] == "^w"
            ):
                self.pos += 4
                return OmegaPower(frozenset({Letter(nxt[0])}))
            # a multi-letter "( ... )^w" is a cycle-only lasso word
            save = self.pos
            try:
                return LassoExpr(self.lasso())
            except ParseError:
                self.pos = save
            # either a parenthesized adversary or a regex prefix; try
            # the adversary reading first, fall back to regex prefix
            try:
                self.take("(")
                inner = self.union()
                self.take(")")
                if self.peek() == "^w":
                    self.take("^w")
                    if isinstance(inner, OmegaPower):
                        return inner
                    raise ParseError("'^w' after a non-set expression")
                if self.peek() in (".", "*"):
                    raise ParseError("regex prefix")
                return inner
            except ParseError:
                self.pos = save
                return self.prefixed()
        if tok == "{":
            save = self.pos
            letters = self.letter_set()
            if self.peek() == "^w":
                self.take("^w")
                return OmegaPower(letters)
            self.pos = save
            raise ParseError("expected '^w' after letter set")
        if tok in BUILTIN_NAMES:
            self.take()
            if self.peek() in (".", "*"):
                raise ParseError("built-in name inside a regex")
            return Named(tok)
        # single letter: LETTER^w, a lasso word, or a regex prefix
        if tok in ("OK", "LW", "LB", "LL"):
            save = self.pos
            self.take()
            if self.peek() == "^w":
                self.take("^w")
                return OmegaPower(frozenset({Letter(tok)}))
            self.pos = save
            try:
                return LassoExpr(self.lasso())
            except ParseError:
                self.pos = save
            return self.prefixed()
        raise ParseError("unexpected token %r" % tok)

    def prefixed(self):
        rx = self.regex()
        self.take(".")
        tail = self.omega_tail()
        return Concat(rx, tail)

    def omega_tail(self):
        if self.peek() == "(":
            nxt = self.toks[self.pos + 1 : self.pos + 4]
            if (
                len(nxt) == 3
                and nxt[0] in ("OK", "LW", "LB", "LL")
                and nxt[1] == ")"
                and nxt[2] == "^w"
            ):
                self.pos += 4
                return OmegaPower(frozenset({Letter(nxt[0])}))
            self.take("(")
            inner = self.union()
            self.take(")")
            if self.peek() == "^w":
                self.take("^w")
                if isinstance(inner, OmegaPower):
                    return inner
                raise ParseError("'^w' after a non-set expression")
            return inner
        tok = self.peek()
        if tok == "{":
            letters = self.letter_set()
            self.take("^w")
            return OmegaPower(letters)
        if tok in ("OK", "LW", "LB", "LL"):
            self.take()
            self.take("^w")
            return OmegaPower(frozenset({Letter(tok)}))
        if tok in BUILTIN_NAMES:
            self.take()
            return Named(tok)
        raise ParseError("expected an omega expression after '.'")

    def letter_set(self) -> frozenset:
        self.take("{")
        letters = {self.letter()}
        while self.peek() == ",":
            self.take(",")
            letters.add(self.letter())
        self.take("}")
        return frozenset(letters)

    def letter(self) -> Letter:
        tok = self.take()
        try:
            return Letter(tok)
        except ValueError:
            raise ParseError("unknown letter %r" % tok) from None

    def diff(self):
        kind = self.take()
        alphabet = GAMMA if kind == "GAMMA" else G2
        self.take("^w")
        self.take("\\")
        self.take("{")
        lassos = [self.lasso()]
        while self.peek() == ",":
            self.take(",")
            lassos.append(self.lasso())
        self.take("}")
        for l in lassos:
            if alphabet == GAMMA and not l.is_gamma():
                raise ParseError("LL letter in a GAMMA-difference lasso")
        return DifferenceFromFull(alphabet, tuple(lassos))

    def lasso(self) -> LassoWord:
        stem: list[Letter] = []
        while self.peek() not in ("(",):
            stem.append(self.letter())
        self.take("(")
        cycle: list[Letter] = []
        while self.peek() != ")^w" and self.peek() != ")":
            cycle.append(self.letter())
        # the lexer splits ")^w" into ")" "^w"
        self.take(")")
        self.take("^w")
        if not cycle:
            raise ParseError("lasso cycle must be non-empty")
        return LassoWord.of(stem, cycle)

    # regex over letters with *, |, concatenation, parentheses
    def regex(self):
        return self.regex_union()

    def regex_union(self):
        parts = [self.regex_concat()]
        while self.peek() == "|":
            self.take("|")
            parts.append(self.regex_concat())
        return parts[0] if len(parts) == 1 else RegexUnion(tuple(parts))

    def regex_concat(self):
        parts = []
        while True:
            tok = self.peek()
            if tok in ("OK", "LW", "LB", "LL"):
                self.take()
                atom = RegexLetter(Letter(tok))
            elif tok == "(":
                save = self.pos
                self.take("(")
                inner = self.regex_union()
                if self.peek() != ")":
                    self.pos = save
                    break
                self.take(")")
                atom = inner
            else:
                break
            while self.peek() == "*":
                self.take("*")
                atom = RegexStar(atom)
            parts.append(atom)
        if not parts:
            raise ParseError("empty regex")
        return parts[0] if len(parts) == 1 else RegexConcat(parts)


def parse_adversary(text: str) -> AdversaryExpr:
    return _DslParser(text).parse()


def load(text: str) -> AdversaryAutomaton:
    """parse + compile in one call."""
    return compile_expr(parse_adversary(text))
