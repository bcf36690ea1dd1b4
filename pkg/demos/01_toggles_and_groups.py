"""
Toggles and the groups they generate
====================================

A family of subsets of a small ground set. Each ground element gives an
involution on the family: add or remove that element when the result is
still in the family, otherwise stay put.
"""

from togglelab import SetFamily, build_toggles, toggle_group
from togglelab import permgroup as pg

# three nested sets: a chain
chain = SetFamily("ab", [[], ["a"], ["a", "b"]])
print(chain)

# each toggle as a permutation of the three sets, in cycle notation
for e, t in build_toggles(chain).toggles.items():
    print(e, t)

# the generated group is all of S3
g = toggle_group(chain)
print("order", g.order, "symmetric:", g.is_symmetric())

# the square: four sets, two commuting double transpositions
square = SetFamily("ab", [[], ["a"], ["b"], ["a", "b"]])
g = toggle_group(square)
print(square, "order", g.order)

# cycle lengths present in the group
for k, c in pg.cycle_spectrum(g).items():
    print(f"{k}-cycle:", c.answer.value, f"({c.reason})")
