"""Message adversaries as omega-regular languages.

A message adversary is a set of infinite scenarios; this package
represents them as deterministic parity automata and offers a small
expression language for building them.  Builtin names cover the
classic cases: S0 (lossless), TW/TB (one direction may drop), C1 (at
most one loss per run), S1 (finitely many losses), R1 (anything goes
except total silence each round).
"""

from twogen import adversary as adv
from twogen.words import parse_lasso

print("Builtin adversaries and some membership checks")
print("-" * 50)
scenarios = ["( OK )^w", "( LW )^w", "LB ( OK )^w", "( LB LW )^w"]
for name in adv.BUILTIN_NAMES:
    a = adv.load(name)
    members = []
    for s in scenarios:
        l = parse_lasso(s)
        if all(x in a.alphabet for x in (*l.stem, *l.cycle)) \
                and a.contains(l):
            members.append(s)
    print("  %-3s contains: %s" % (name, ", ".join(members) or "(none)"))

print()
print("The expression language supports difference, union, and")
print("omega-closure of letter sets:")
for text in (
    "GAMMA^w \\ { LW LB ( OK )^w }",
    "{ OK , LW }^w",
    "OK* . { LW }^w",
    "( LB LW )^w",
):
    a = adv.load(text)
    counts = [len(a.prefixes(r)) for r in (1, 2, 3)]
    print("  %-28s empty=%-5s prefix counts=%s"
          % (text, a.is_empty() is None, counts))

print()
print("Boolean operations come with emptiness checking, so language")
print("inclusion is decidable:")
s0 = adv.load("S0")
c1 = adv.load("C1")
diff = adv.intersect(s0, adv.complement(c1))
print("  S0 minus C1 is empty:", diff.is_empty() is None)
diff2 = adv.intersect(c1, adv.complement(s0))
print("  C1 minus S0 is empty: %s  (witness: %s)"
      % (diff2.is_empty() is None, diff2.is_empty()))
