"""Every tropical type of polytrope for n = 4.

Walks through the six chamber classes, then every cone of the refined fan,
the boundary filter, and the two histograms.  Takes a few seconds.

Run:  python3 demos/four_nodes.py
"""
from collections import Counter

from polytropes.binomials import enumerate_binomials, relation_circuits
from polytropes.fans import enumerate_all_cones, enumerate_maximal, filter_boundary, group_by_linearity
from polytropes.geometry import classify, shape_of

bs = enumerate_binomials(4, 2)
print(len(bs), "binomials:")
for b in bs:
    print("  ", b.sparse())

(circuit,), = relation_circuits(4)
print("the one relation among them:", circuit.terms)

maxi = enumerate_maximal(4)
print("\nmaximal classes:")
for r in maxi:
    sh = shape_of(r.witness)
    print("  orbit %2d  vertices %d  signs %s" % (r.orbit_size, sh.vertex_count,
                                                   r.sign.to_json()["binomial"]))
print("chambers in total:", sum(r.orbit_size for r in maxi))

allc = enumerate_all_cones(4, maxi)
kept, removed = filter_boundary(allc)
print("\n%d cone classes, %d touch a zero cycle, %d remain" % (len(allc), len(removed), len(kept)))
print("by dimension:", dict(sorted(Counter(r.dim for r in allc).items())))

print("\nclasses by vertex count:", classify(kept))
groups, hist = group_by_linearity(kept)
print("%d linearity groups, sizes: %s" % (len(groups), hist))
