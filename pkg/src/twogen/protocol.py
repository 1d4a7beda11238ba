"""Executable round-based consensus protocols for two processes.

The simulator drives both processes in lockstep synchronous rounds;
whether a round's messages arrive is dictated by the scenario letter
(OK both, LW drops white's, LB drops black's, LL both).  A process that
has halted sends nothing, so its peer's receive returns nothing
regardless of the letter.

The index-guard algorithm ("A_w") is parameterized by a scenario w
excluded from the adversary: each process maintains an integer that
brackets the index of the partial scenario seen so far and runs while
that integer stays within 2 of ind(w|_r), then decides by comparing
sides.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional

from .adversary import AdversaryAutomaton
from .indexfn import BLACK, WHITE, ProcessId, ind, ind_step
from .words import FiniteWord, GAMMA, LassoWord, Letter


@dataclass(frozen=True)
class Message:
    init: int
    ind: int


@dataclass(frozen=True)
class ProcessState:
    id: ProcessId
    init: int
    initother: Optional[int] = None
    ind: int = 0
    round: int = 0
    decided: Optional[int] = None
    halted: bool = False


class Algorithm:
    """Strategy interface used by the simulator."""

    name = "algorithm"

    def start(self, pid: ProcessId, init: int) -> ProcessState:
        raise NotImplementedError

    def maybe_halt(self, s: ProcessState) -> ProcessState:
        """Called at the top of each round; may halt and decide."""
        raise NotImplementedError

    def receive(self, s: ProcessState,
                received: Optional[Message]) -> ProcessState:
        """Index/state update after the exchange of one round."""
        if received is None:
            return replace(s, ind=3 * s.ind, round=s.round + 1)
        return replace(
            s,
            ind=2 * received.ind + s.ind,
            initother=received.init,
            round=s.round + 1,
        )


class IndexGuardAlgorithm(Algorithm):
    """Algorithm A_w: run while |ind - ind(w|_r)| <= 2, then decide by
    which side of the target index the local index fell on."""

    name = "aw"

    def __init__(self, w: LassoWord):
        if not w.is_gamma():
            raise ValueError("the forbidden scenario must avoid LL")
        self.w = w

    def start(self, pid: ProcessId, init: int) -> ProcessState:
        return ProcessState(pid, init, ind=0 if pid is WHITE else 1)

    def target_index(self, r: int) -> int:
        # incremental per round in the simulator; direct here
        i = 0
        for k in range(r):
            i = ind_step(i, self.w.letter_at(k))
        return i

    def maybe_halt(self, s: ProcessState) -> ProcessState:
        target = self.target_index(s.round)
        if abs(s.ind - target) <= 2:
            return s
        assert s.ind != target
        if s.id is WHITE:
            value = s.init if s.ind < target else s.initother
        else:
            value = s.init if s.ind > target else s.initother
        assert value is not None, "decided on an absent initother"
        return replace(s, decided=value, halted=True)


class OwnInputAlgorithm(Algorithm):
    """Strawman that decides its own input immediately (round 1)."""

    name = "own-input"

    def start(self, pid: ProcessId, init: int) -> ProcessState:
        return ProcessState(pid, init, ind=0 if pid is WHITE else 1)

    def maybe_halt(self, s: ProcessState) -> ProcessState:
        if s.round >= 1:
            return replace(s, decided=s.init, halted=True)
        return s


@dataclass
class Transcript:
    scenario: LassoWord
    inputs: tuple
    rounds: list = field(default_factory=list)
    white: Optional[ProcessState] = None
    black: Optional[ProcessState] = None
    exhausted: bool = False

    @property
    def decisions(self) -> tuple:
        return (
            self.white.decided if self.white else None,
            self.black.decided if self.black else None,
        )

    def both_halted(self) -> bool:
        return bool(
            self.white and self.black
            and self.white.halted and self.black.halted
        )

    def to_json(self) -> str:
        doc = {
            "scenario": str(self.scenario),
            "inputs": list(self.inputs),
            "rounds": [
                {
                    "letter": letter.value,
                    "white": _state_json(w),
                    "black": _state_json(b),
                }
                for (letter, w, b) in self.rounds
            ],
            "decisions": {
                "white": self.decisions[0],
                "black": self.decisions[1],
            },
            "halting_rounds": {
                "white": self.white.round if self.white.halted else None,
                "black": self.black.round if self.black.halted else None,
            },
            "exhausted": self.exhausted,
        }
        return json.dumps(doc)


def _state_json(s: ProcessState):
    return {
        "ind": s.ind,
        "initother": s.initother,
        "decided": s.decided,
        "halted": s.halted,
    }


def _delivered(letter: Letter, sender: ProcessId) -> bool:
    if letter is Letter.OK:
        return True
    if letter is Letter.LL:
        return False
    if letter is Letter.LW:
        return sender is not WHITE
    return sender is not BLACK  # LB drops black's message


def simulate(algorithm: Algorithm, scenario: LassoWord,
             inputs: tuple, max_rounds: int = 64) -> Transcript:
    """Runs both processes under the scenario until both halt or the
    round budget runs out (reported, not raised)."""
    white = algorithm.start(WHITE, inputs[0])
    black = algorithm.start(BLACK, inputs[1])
    t = Transcript(scenario, tuple(inputs))
    for r in range(max_rounds):
        if not white.halted:
            white = algorithm.maybe_halt(white)
        if not black.halted:
            black = algorithm.maybe_halt(black)
        if white.halted and black.halted:
            break
        letter = scenario.letter_at(r)
        msg_w = Message(white.init, white.ind) if not white.halted else None
        msg_b = Message(black.init, black.ind) if not black.halted else None
        to_black = msg_w if _delivered(letter, WHITE) else None
        to_white = msg_b if _delivered(letter, BLACK) else None
        if not white.halted:
            white = algorithm.receive(white, to_white)
        if not black.halted:
            black = algorithm.receive(black, to_black)
        t.rounds.append((letter, white, black))
    else:
        t.exhausted = not (white.halted and black.halted)
    t.white, t.black = white, black
    return t


DEFAULT_TAILS = (
    LassoWord.of((), (Letter.OK,)),
    LassoWord.of((), (Letter.LW,)),
    LassoWord.of((), (Letter.LB,)),
)

INPUT_VECTORS = ((0, 0), (0, 1), (1, 0), (1, 1))


@dataclass(frozen=True)
class Violation:
    kind: str  # agreement | validity | termination
    scenario: LassoWord
    inputs: tuple
    detail: str


@dataclass
class Report:
    checked: int
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> str:
        doc = {
            "checked": self.checked,
            "ok": self.ok,
            "violations": [
                {
                    "kind": v.kind,
                    "scenario": str(v.scenario),
                    "inputs": list(v.inputs),
                    "detail": v.detail,
                }
                for v in sorted(
                    self.violations,
                    key=lambda v: (v.kind, str(v.scenario), v.inputs),
                )
            ],
        }
        return json.dumps(doc)


def completions(a: AdversaryAutomaton, depth: int,
                tails: Iterable[LassoWord] = DEFAULT_TAILS):
    """All lassos prefix.tail with prefix in Pref_depth(a) that remain
    inside the adversary, deduplicated canonically."""
    seen = set()
    for prefix in sorted(a.prefixes(depth), key=str):
        for tail in tails:
            lasso = LassoWord(prefix + tail.stem, tail.cycle)
            if lasso in seen:
                continue
            seen.add(lasso)
            if a.contains(lasso):
                yield lasso


def verify(algorithm: Algorithm, a: AdversaryAutomaton, depth: int = 4,
           tails: Iterable[LassoWord] = DEFAULT_TAILS,
           max_rounds: Optional[int] = None) -> Report:
    """Checks Agreement, Validity and Termination over every scenario
    obtained by completing the adversary's depth-prefixes with the
    given tails, across all four input vectors."""
    if depth > 10:
        raise ValueError("verification depth capped at 10")
    budget = max_rounds if max_rounds is not None else depth + 40
    checked = 0
    violations = []
    for scenario in completions(a, depth, tails):
        for inputs in INPUT_VECTORS:
            checked += 1
            t = simulate(algorithm, scenario, inputs, budget)
            dw, db = t.decisions
            if not t.both_halted():
                violations.append(Violation(
                    "termination", scenario, inputs,
                    "undecided after %d rounds" % budget,
                ))
                continue
            if dw != db:
                violations.append(Violation(
                    "agreement", scenario, inputs,
                    "white decided %s, black decided %s" % (dw, db),
                ))
            if inputs[0] == inputs[1] and dw != inputs[0]:
                violations.append(Violation(
                    "validity", scenario, inputs,
                    "unanimous %d but white decided %s" % (inputs[0], dw),
                ))
    return Report(checked, violations)
