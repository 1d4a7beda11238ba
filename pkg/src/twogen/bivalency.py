"""Valency exploration for a concrete algorithm under an adversary.

A partial scenario is i-valent when every enumerated completion makes
both processes decide i, and bivalent when both values are reachable.
Everything here is relative to a fixed executable algorithm and a
bounded unrolling: extensions are enumerated up to a depth and closed
off with a tail set, so an Undetermined verdict only signals bound
exhaustion, never a theorem.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .adversary import AdversaryAutomaton
from .protocol import Algorithm, DEFAULT_TAILS, simulate
from .words import FiniteWord, LassoWord


class Valency(enum.Enum):
    ZERO_VALENT = "ZeroValent"
    ONE_VALENT = "OneValent"
    BIVALENT = "Bivalent"
    UNDETERMINED = "Undetermined"

    def __str__(self):
        return self.value


def _completions_of(a: AdversaryAutomaton, prefix: FiniteWord, depth: int,
                    tails: Iterable[LassoWord]):
    """Scenarios prefix.u.tail inside a, with |u| ranging over 0..depth.

    Extensions are generated from the adversary's prefix sets so that
    every enumerated scenario really extends ``prefix`` within it.
    """
    n = len(prefix)
    seen = set()
    for extra in range(depth + 1):
        for word in sorted(a.prefixes(n + extra), key=str):
            if word.letters[:n] != prefix.letters:
                continue
            for tail in tails:
                lasso = LassoWord(word + tail.stem, tail.cycle)
                if lasso in seen:
                    continue
                seen.add(lasso)
                if a.contains(lasso):
                    yield lasso


def valency(algorithm: Algorithm, a: AdversaryAutomaton,
            prefix: FiniteWord, inputs: tuple, depth: int,
            tails: Iterable[LassoWord] = DEFAULT_TAILS,
            max_rounds: Optional[int] = None) -> Valency:
    """Valency of ``prefix`` for the given inputs, over completions of
    the prefix inside the adversary bounded by ``depth``."""
    if prefix not in a.prefixes(len(prefix)):
        raise ValueError("prefix %r is not a prefix of the adversary" % str(prefix))
    budget = max_rounds if max_rounds is not None else len(prefix) + depth + 40
    decided = set()
    undecided = False
    for scenario in _completions_of(a, prefix, depth, tails):
        t = simulate(algorithm, scenario, inputs, budget)
        if not t.both_halted():
            undecided = True
            continue
        dw, db = t.decisions
        if dw != db:
            # an agreement violation makes valency meaningless; surface
            # it as bivalence of the offending prefix
            decided.update({dw, db})
        else:
            decided.add(dw)
    if decided == {0} and not undecided:
        return Valency.ZERO_VALENT
    if decided == {1} and not undecided:
        return Valency.ONE_VALENT
    if {0, 1} <= decided:
        return Valency.BIVALENT
    return Valency.UNDETERMINED


@dataclass
class ExplorationNode:
    prefix: FiniteWord
    valency: Valency
    children: list = field(default_factory=list)

    def to_dict(self):
        return {
            "prefix": str(self.prefix),
            "valency": self.valency.value,
            "children": [c.to_dict() for c in self.children],
        }


def explore(algorithm: Algorithm, a: AdversaryAutomaton, inputs: tuple,
            depth: int, tails: Iterable[LassoWord] = DEFAULT_TAILS
            ) -> ExplorationNode:
    """Valency tree over Pref(a) up to ``depth`` letters."""

    def node(prefix: FiniteWord) -> ExplorationNode:
        v = valency(algorithm, a, prefix, inputs, depth - len(prefix),
                    tails)
        n = ExplorationNode(prefix, v)
        if len(prefix) < depth and v is Valency.BIVALENT:
            children = sorted(a.prefixes(len(prefix) + 1), key=str)
            for child in children:
                if child.letters[: len(prefix)] == prefix.letters:
                    n.children.append(node(child))
        return n

    return node(FiniteWord())


@dataclass
class DecisiveReport:
    decisive: list  # FiniteWord: bivalent, all children univalent
    inconclusive: list  # bivalent with some Undetermined child

    def to_json(self) -> str:
        return json.dumps({
            "decisive": [str(w) for w in self.decisive],
            "inconclusive": [str(w) for w in self.inconclusive],
        })


def find_decisive(algorithm: Algorithm, a: AdversaryAutomaton,
                  inputs: tuple, depth: int,
                  tails: Iterable[LassoWord] = DEFAULT_TAILS
                  ) -> DecisiveReport:
    """Breadth-first search for decisive prefixes: bivalent words all
    of whose one-letter extensions inside the adversary are univalent.
    Candidates with an Undetermined child are reported separately."""
    decisive = []
    inconclusive = []
    frontier = [FiniteWord()]
    for level in range(depth + 1):
        next_frontier = []
        for prefix in frontier:
            v = valency(algorithm, a, prefix, inputs, depth - level, tails)
            if v is not Valency.BIVALENT:
                continue
            children = [
                w for w in sorted(a.prefixes(level + 1), key=str)
                if w.letters[:level] == prefix.letters
            ]
            child_vals = [
                valency(algorithm, a, w, inputs, max(depth - level - 1, 0),
                        tails)
                for w in children
            ]
            if all(cv in (Valency.ZERO_VALENT, Valency.ONE_VALENT)
                   for cv in child_vals):
                decisive.append(prefix)
            elif any(cv is Valency.UNDETERMINED for cv in child_vals):
                inconclusive.append(prefix)
            if level < depth:
                next_frontier.extend(
                    w for w, cv in zip(children, child_vals)
                    if cv is Valency.BIVALENT
                )
        frontier = next_frontier
    return DecisiveReport(decisive, inconclusive)
