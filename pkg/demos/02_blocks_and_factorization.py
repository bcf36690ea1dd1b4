"""
Blocks, layers and Cartesian factors
====================================

An imprimitive toggle group often comes from a product family: every set
is a union of one set from each factor, over disjoint grounds.
"""

from togglelab import SetFamily, build_toggles, cartesian_product, decompose, layers, try_factor
from togglelab import permgroup as pg
from togglelab.togglecore import format_set

left = SetFamily("a", [[], ["a"]])
right = SetFamily("bc", [[], ["b"], ["b", "c"]])
f = cartesian_product(left, right)
print(f)

gens = build_toggles(f).generators()
systems = pg.nontrivial_block_systems(gens, f.n)
for bs in systems:
    print("blocks:", [[format_set(f.sets[p]) for p in b] for b in bs.blocks()])

# pick the system whose blocks are the copies of the right factor
bs = next(s for s in systems if s.block_size == 3)
print("layers:", layers(f, build_toggles(f), bs).layers)

fact = try_factor(f, bs)
print("E1", fact.E1, "E2", fact.E2)
print("L1", fact.L1, "L2", fact.L2)

# the full recursive decomposition
tree = decompose(f)
for leaf in tree.leaves():
    print("leaf degree", leaf.degree, "order", leaf.group.order, leaf.family)
print("product of leaf orders:", tree.group.order)
