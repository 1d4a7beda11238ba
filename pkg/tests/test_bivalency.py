import json

import pytest

from twogen import adversary as adv
from twogen.bivalency import (DecisiveReport, Valency, explore,
                              find_decisive, valency)
from twogen.protocol import IndexGuardAlgorithm, OwnInputAlgorithm
from twogen.words import FiniteWord, parse_lasso, parse_word

FAIR = "GAMMA^w \\ { LW LB ( OK )^w }"
PAIR = "GAMMA^w \\ { OK ( LW )^w , LB ( LW )^w }"


def _setup(text, wtext):
    a = adv.load(text)
    return a, IndexGuardAlgorithm(parse_lasso(wtext))


def test_epsilon_bivalent_for_mixed_inputs():
    a, algo = _setup(FAIR, "LW LB ( OK )^w")
    assert valency(algo, a, FiniteWord(), (0, 1), 4) is Valency.BIVALENT


def test_epsilon_univalent_for_unanimous_inputs():
    a, algo = _setup(FAIR, "LW LB ( OK )^w")
    assert valency(algo, a, FiniteWord(), (0, 0), 4) is Valency.ZERO_VALENT
    assert valency(algo, a, FiniteWord(), (1, 1), 4) is Valency.ONE_VALENT


def test_prefix_not_in_adversary_rejected(builtins):
    algo = IndexGuardAlgorithm(parse_lasso("( LW )^w"))
    with pytest.raises(ValueError):
        valency(algo, builtins["S0"], parse_word("LB"), (0, 1), 2)


def test_valency_monotone_under_extension():
    """A univalent prefix never has an opposite-valent extension."""
    a, algo = _setup(FAIR, "LW LB ( OK )^w")
    for prefix in sorted(a.prefixes(1), key=str):
        v = valency(algo, a, prefix, (0, 1), 3)
        if v not in (Valency.ZERO_VALENT, Valency.ONE_VALENT):
            continue
        for child in sorted(a.prefixes(2), key=str):
            if child.letters[:1] != prefix.letters:
                continue
            assert valency(algo, a, child, (0, 1), 2) is v


def test_bivalent_prefix_has_interesting_children():
    """A bivalent node either keeps a bivalent child or splits into
    children of both valencies."""
    a, algo = _setup(FAIR, "LW LB ( OK )^w")
    tree = explore(algo, a, (0, 1), 3)

    def check(node):
        if node.valency is Valency.BIVALENT and node.children:
            vals = [c.valency for c in node.children]
            assert (
                Valency.BIVALENT in vals
                or (Valency.ZERO_VALENT in vals
                    and Valency.ONE_VALENT in vals)
            ), node.prefix
        for c in node.children:
            check(c)

    check(tree)


def test_explore_tree_shape():
    a, algo = _setup(FAIR, "LW LB ( OK )^w")
    tree = explore(algo, a, (0, 1), 2)
    doc = tree.to_dict()
    assert doc["prefix"] == ""
    assert doc["valency"] == "Bivalent"
    assert {c["prefix"] for c in doc["children"]} == {"LB", "OK", "LW"}
    json.dumps(doc)  # serializable


def test_decisive_for_pair_adversary():
    """Both excluded scenarios diverge at the first letter, so the
    empty prefix is decisive: bivalent with univalent children only."""
    a, algo = _setup(PAIR, "LB ( LW )^w")
    rep = find_decisive(algo, a, (0, 1), 3)
    assert FiniteWord() in rep.decisive
    assert not rep.inconclusive


def test_decisive_empty_when_a_fair_word_is_excluded():
    """The prefixes of the excluded scenario remain bivalent at every
    depth and each has a bivalent child, so no decisive prefix exists
    in a bounded search (the excluded word itself is outside the
    adversary and never forces a decision)."""
    a, algo = _setup(FAIR, "LW LB ( OK )^w")
    rep = find_decisive(algo, a, (0, 1), 4)
    assert rep.decisive == []
    assert rep.inconclusive == []


def test_decisive_empty_on_singleton(builtins):
    algo = IndexGuardAlgorithm(parse_lasso("( LW )^w"))
    rep = find_decisive(algo, builtins["S0"], (0, 0), 3)
    assert rep.decisive == []


def test_report_json():
    a, algo = _setup(PAIR, "LB ( LW )^w")
    rep = find_decisive(algo, a, (0, 1), 2)
    doc = json.loads(rep.to_json())
    assert "" in doc["decisive"]
