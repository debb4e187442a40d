"""Spanning trees of the figure-8 Tait graph and the bracket they add up to."""

from khspan import fixtures
from khspan.diagram import medial
from khspan.khovanov import bracket_state_sum
from khspan.trees import bracket_by_trees, jones, tree_records

g = fixtures.figure8_graph()
print(g.emit())

# one row per spanning tree: activity word, gradings, monomial, partial smoothing
for r in tree_records(g):
    print(f"T{r.index}  {str(r.word):6} u={r.u:+d} v={r.v}  {str(r.monomial):6}  {r.smoothing}")

b = bracket_by_trees(g)
print("bracket from trees :", b)

# the same number from all 16 Kauffman states of the medial diagram
d = medial(g)
print("bracket from states:", bracket_state_sum(d))
print("writhe", d.writhe, " Jones", jones(d))
