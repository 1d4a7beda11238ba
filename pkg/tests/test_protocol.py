import itertools
import json

import pytest

from conftest import all_words
from twogen import adversary as adv
from twogen.indexfn import BLACK, WHITE, ind
from twogen.oracle import classify, select_forbidden_scenario
from twogen.protocol import (DEFAULT_TAILS, IndexGuardAlgorithm, Message,
                             OwnInputAlgorithm, _delivered, completions,
                             simulate, verify)
from twogen.words import FiniteWord, GAMMA, LassoWord, Letter, parse_lasso


def L(text):
    return parse_lasso(text)


def _run_rounds(algo, letters, inputs=(0, 1)):
    """Drives both processes through the given prefix without letting
    either one halt; returns the two states."""
    white = algo.start(WHITE, inputs[0])
    black = algo.start(BLACK, inputs[1])
    for a in letters:
        mw = Message(white.init, white.ind)
        mb = Message(black.init, black.ind)
        to_white = mb if _delivered(a, BLACK) else None
        to_black = mw if _delivered(a, WHITE) else None
        white = algo.receive(white, to_white)
        black = algo.receive(black, to_black)
    return white, black


@pytest.fixture(scope="module")
def guard_far_away():
    # target along (LW)^w keeps the guard from firing in short runs
    return IndexGuardAlgorithm(L("( LW )^w"))


@pytest.mark.parametrize("r", range(1, 6))
def test_index_bracket_invariant(guard_far_away, r):
    """At every round: white's counter is even, black's odd, they
    differ by one, their min is the true scenario index and the sign
    of (black - white) is (-1)^ind."""
    for letters in itertools.product(GAMMA, repeat=r):
        white, black = _run_rounds(guard_far_away, letters)
        i = ind(FiniteWord(letters))
        assert white.ind % 2 == 0 and black.ind % 2 == 1
        assert abs(black.ind - white.ind) == 1
        assert min(white.ind, black.ind) == i
        assert (black.ind - white.ind) == (1 if i % 2 == 0 else -1)


def test_guard_never_fires_on_the_forbidden_scenario():
    w = L("LW LB ( OK )^w")
    algo = IndexGuardAlgorithm(w)
    t = simulate(algo, w, (0, 1), max_rounds=200)
    assert not t.white.halted and not t.black.halted
    assert t.exhausted
    # the guard quantity stays within 2 the whole way
    for r, (_, ws, bs) in enumerate(t.rounds, start=1):
        target = algo.target_index(r)
        assert abs(ws.ind - target) <= 2
        assert abs(bs.ind - target) <= 2


def test_ll_rejected_as_parameter():
    with pytest.raises(ValueError):
        IndexGuardAlgorithm(LassoWord.of((), (Letter.LL,)))


VERIFY_CASES = [
    ("C1", None),
    ("S1", None),
    ("GAMMA^w \\ { LW LB ( OK )^w }", "LW LB ( OK )^w"),
    ("GAMMA^w \\ { OK ( LW )^w , LB ( LW )^w }", "LB ( LW )^w"),
]


@pytest.mark.parametrize("text,wtext", VERIFY_CASES)
def test_aw_verify_clean(text, wtext):
    a = adv.load(text)
    if wtext is None:
        w = select_forbidden_scenario(classify(a))
    else:
        w = L(wtext)
    rep = verify(IndexGuardAlgorithm(w), a, depth=4)
    assert rep.ok, rep.violations[:3]
    assert rep.checked > 0


@pytest.mark.parametrize("text,wtext", VERIFY_CASES)
def test_aw_guard_fires_on_verified_scenarios(text, wtext):
    a = adv.load(text)
    w = L(wtext) if wtext else select_forbidden_scenario(classify(a))
    algo = IndexGuardAlgorithm(w)
    for scenario in completions(a, 3):
        t = simulate(algo, scenario, (0, 1))
        assert t.both_halted(), scenario


def test_strawman_violates_agreement(builtins):
    rep = verify(OwnInputAlgorithm(), builtins["S1"], depth=2)
    assert not rep.ok
    kinds = {v.kind for v in rep.violations}
    assert "agreement" in kinds
    # unanimity still satisfied: deciding your own input is valid
    assert "validity" not in kinds


def test_transcript_json_roundtrippable():
    algo = IndexGuardAlgorithm(L("( LW )^w"))
    t = simulate(algo, L("( OK )^w"), (1, 0))
    doc = json.loads(t.to_json())
    assert doc["scenario"] == "( OK )^w"
    assert doc["decisions"]["white"] == doc["decisions"]["black"]
    assert doc["rounds"][0]["letter"] == "OK"


def test_halted_peer_message_absent():
    """Once one process halts the other stops hearing from it even
    under OK letters."""
    algo = IndexGuardAlgorithm(L("( LB )^w"))
    t = simulate(algo, L("( OK )^w"), (0, 1))
    assert t.both_halted()
    hw = t.white.round if t.white.halted else None
    hb = t.black.round
    assert t.decisions[0] == t.decisions[1]


def test_completions_stay_inside(builtins):
    for name in ("C1", "S1", "TW"):
        for scenario in completions(builtins[name], 3):
            assert builtins[name].contains(scenario)


def test_verify_depth_cap(builtins):
    with pytest.raises(ValueError):
        verify(OwnInputAlgorithm(), builtins["S0"], depth=11)
