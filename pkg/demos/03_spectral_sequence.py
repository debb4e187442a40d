"""Pages of the spanning tree spectral sequence for 9_42."""

from khspan import fixtures
from khspan.khovanov import build_complex
from khspan.tree_complex import TreeData, collapse_to_tree_complex, rational_page, spectral_page

d = fixtures.load("9_42")
td = TreeData(d)
levels = td.poset.by_level()
print(f"{len(td)} trees on {len(levels)} filtration levels:",
      {p: len(ts) for p, ts in levels.items()})

tc = collapse_to_tree_complex(d, True, td)
# E1 and the integral E2 come from tree data alone; later pages use the collapsed complex
last = None
for r in range(1, d.n_crossings + 2):
    total = sum(spectral_page(d, r, trees=td, tree_complex=tc).ranks.values())
    if total != last:
        print(f"E{r}: total rank {total}")
        last = total

limit = rational_page(tc, d.n_crossings)
print("E_c totals :", limit.total_by_degree())
print("homology   :", build_complex(d, True).homology().ranks())
