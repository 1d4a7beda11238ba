"""Running and verifying the consensus algorithms.

The index-guard algorithm is parameterized by one scenario w excluded
from the adversary.  Both processes track a running index of the
communication pattern they have seen; they keep running while that
index stays within 2 of the index of w's prefix, which can only
happen along w itself.  Since w never occurs, every actual run halts,
and the halting side of w's limit determines the decision.
"""

from twogen import adversary as adv
from twogen.bivalency import explore, find_decisive
from twogen.protocol import IndexGuardAlgorithm, simulate, verify
from twogen.words import parse_lasso

FAIR_ADV = "GAMMA^w \\ { LW LB ( OK )^w }"
FAIR_W = "LW LB ( OK )^w"

a = adv.load(FAIR_ADV)
algo = IndexGuardAlgorithm(parse_lasso(FAIR_W))

print("A run of the index-guard algorithm on ( OK )^w, inputs (0, 1)")
print("-" * 60)
t = simulate(algo, parse_lasso("( OK )^w"), (0, 1))
for r, (letter, ws, bs) in enumerate(t.rounds, start=1):
    print("  round %d: letter %-3s white.ind=%-3d black.ind=%d"
          % (r, letter, ws.ind, bs.ind))
print("  decisions: white=%s black=%s" % t.decisions)

print()
print("On the excluded scenario itself the guard never fires:")
t = simulate(algo, parse_lasso(FAIR_W), (0, 1), max_rounds=30)
print("  after 30 rounds, halted = (%s, %s)"
      % (t.white.halted, t.black.halted))

print()
print("Exhaustive verification (termination, agreement, validity)")
print("over every depth-4 scenario completion and all input vectors:")
for text in ("C1", "S1", FAIR_ADV):
    w = parse_lasso(FAIR_W) if text == FAIR_ADV else None
    if w is None:
        from twogen.oracle import classify, select_forbidden_scenario
        w = select_forbidden_scenario(classify(adv.load(text)))
    rep = verify(IndexGuardAlgorithm(w), adv.load(text), depth=4)
    print("  %-32s ok=%-5s checks=%d" % (text, rep.ok, rep.checked))

print()
print("Bivalency view: with mixed inputs the empty prefix is bivalent,")
print("and along prefixes of the excluded scenario it stays bivalent.")
tree = explore(algo, a, (0, 1), 2)


def show(node, depth=0):
    print("  %s%-6s %s" % ("  " * depth, str(node.prefix) or "<eps>",
                           node.valency.value))
    for c in node.children:
        show(c, depth + 1)


show(tree)
rep = find_decisive(algo, a, (0, 1), 3)
print("  decisive prefixes up to depth 3: %s"
      % ([str(p) for p in rep.decisive] or "none"))
