"""Indexes of communication scenarios.

Each round of the two-process model is summarized by one letter:
OK (both messages delivered), LW (white's message lost), LB (black's
message lost).  A finite word over this alphabet is a partial
scenario, and the index function encodes each length-r word as an
integer in [0, 3^r - 1] -- bijectively, so a scenario prefix *is* a
base-3 address of a cell of the subdivided unit interval.
"""

from fractions import Fraction

from twogen.indexfn import ind, ind_inverse, ind_limit, ind_normalized
from twogen.words import GAMMA, FiniteWord, parse_lasso, parse_word

print("Indexes of the twelve shortest words")
print("-" * 40)
for r in (1, 2):
    for letters in __import__("itertools").product(GAMMA, repeat=r):
        w = FiniteWord(letters)
        print("  %-7s -> %d" % (w, ind(w)))

print()
print("The map is a bijection: every integer names exactly one word.")
for k in range(9):
    print("  ind_inverse(2, %d) = %s" % (k, ind_inverse(2, k)))

print()
print("Normalizing by 3^r embeds prefixes into [0, 1]:")
for text in ("LW", "LW OK", "LW OK LB"):
    w = parse_word(text)
    print("  %-9s occupies [%s, %s)" % (
        text, ind_normalized(w).value,
        ind_normalized(w).value + Fraction(1, 3 ** len(w))))

print()
print("Infinite (ultimately periodic) scenarios converge to a limit")
print("point of the interval:")
for text in ("( LB )^w", "( OK )^w", "( LW )^w", "OK ( LW )^w",
             "LW LB ( OK )^w"):
    print("  %-16s -> %s" % (text, ind_limit(parse_lasso(text))))
