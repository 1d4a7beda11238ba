"""Deciding solvability of the coordinated attack problem.

For each adversary the oracle decides whether uniform consensus is
solvable and, when it is, produces a witness: either a fair scenario
the adversary excludes, an excluded special pair (two runs sharing a
limit index), or an excluded corner run.  Solvability is exactly the
union of those four obstruction-free families.
"""

from twogen import adversary as adv
from twogen.oracle import classify, round_lower_bound, \
    select_forbidden_scenario

print("Verdicts for the builtin adversaries")
print("-" * 50)
for name in ("S0", "TW", "TB", "C1", "S1", "R1"):
    a = adv.load(name)
    v = classify(a)
    fams = ",".join(f.name for f in sorted(v.families, key=lambda f: f.name))
    print("  %-3s solvable=%-5s families=%-12s lower bound=%d rounds"
          % (name, v.solvable, fams or "-", round_lower_bound(a)))

print()
print("Sensitivity: which scenarios are excluded matters, not how many.")
cases = [
    "GAMMA^w \\ { OK ( LW )^w }",
    "GAMMA^w \\ { OK ( LW )^w , LB ( LW )^w }",
    "GAMMA^w \\ { LW LB ( OK )^w }",
]
for text in cases:
    v = classify(adv.load(text))
    if v.solvable:
        w = select_forbidden_scenario(v)
        print("  %-46s solvable, guard scenario %s" % (text, w))
    else:
        print("  %-46s obstruction" % text)

print()
print("Removing a single unfair scenario is not enough: its special")
print("partner still reaches the same limit index, so the two runs")
print("remain indistinguishable in the limit.  Removing both members")
print("of the pair (case two) or one fair scenario (case three)")
print("breaks the chain and consensus becomes solvable.")
