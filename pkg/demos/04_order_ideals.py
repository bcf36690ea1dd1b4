"""
Order ideals of small posets
============================

The down-sets of a poset are closed under union and intersection. When the
Hasse diagram is connected the toggle group on them is symmetric or
alternating; a disconnected poset need not behave that way.
"""

import math

from togglelab import order_ideals, toggle_group
from togglelab.generators import all_posets, antichain, chain, hasse_connected

for p in (chain(3), antichain(2)):
    f = order_ideals(p)
    order = toggle_group(f).order
    print(p.covers, f, "order", order, "of", math.factorial(f.n))

# every labelled poset on four points
rows = []
for p in all_posets(4):
    f = order_ideals(p)
    order = toggle_group(f).order
    kind = "S" if order == math.factorial(f.n) else "A" if order == math.factorial(f.n) // 2 else "other"
    rows.append((hasse_connected(p), kind))
for connected in (True, False):
    kinds = [k for c, k in rows if c == connected]
    print("connected" if connected else "disconnected", {k: kinds.count(k) for k in set(kinds)})
