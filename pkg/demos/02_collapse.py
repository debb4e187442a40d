"""Collapse the Khovanov complex of 8_20 onto its spanning trees.

8_20 is not alternating, so the tree complex has a nonzero differential.
"""

from khspan import fixtures
from khspan.khovanov import build_complex
from khspan.tree_complex import TreeData, TreeGen, collapse_to_tree_complex, ladders

d = fixtures.load("8_20")
td = TreeData(d)
kc = build_complex(d, reduced=True, space=td.space)
print(f"{d.n_crossings} crossings, {len(kc)} enhanced states, {len(td)} trees")

tc = collapse_to_tree_complex(d, True, td, khovanov=kc)
print("same homology:", tc.homology() == kc.homology())
print(kc.homology().table())

direct = [(a, b, v) for a, b, v in tc.entries() if td.direct_incidence(a.tree, b.tree)]
print(f"{len(tc.entries())} nonzero entries, {len(direct)} of them direct incidences")
for a, b, v in direct[:5]:
    print(f"  {a.label():4} -> {b.label():4} {v:+d}   {td.words[a.tree]} -> {td.words[b.tree]}")

# a non-direct entry explained by a single ladder through an intermediate tree
for a, b, v in tc.entries():
    if td.direct_incidence(a.tree, b.tree):
        continue
    found = ladders(td, a.tree, b.tree, kmax=2)
    if len(found) == 1 and found[0].contribution == v:
        x = found[0]
        print("ladder", " -> ".join(f"T{t + 1}" for t in x.trees), "contributes", x.contribution,
              "and the collapsed entry is", tc.incidence(TreeGen(a.tree), TreeGen(b.tree)))
        break
