"""Kinoshita-Terasaka and Conway: mutants that the tree data cannot tell apart."""

from khspan import fixtures
from khspan.diagram import canonical_tait_graph
from khspan.khovanov import build_complex
from khspan.matroid import apply_flip, are_mutants, compare_E2, conjecture_probe
from khspan.trees import jones

kt, conway = fixtures.load(fixtures.KT), fixtures.load(fixtures.CONWAY)
print("Jones equal:", jones(kt) == jones(conway))

# the Tait graphs differ by one 2-flip
move = fixtures.recorded_flip(fixtures.KT)
flipped = apply_flip(canonical_tait_graph(kt), move)
print("flip", move.to_json(), "gives the Conway graph:",
      flipped.plane_isomorphism(canonical_tait_graph(conway)) is not None)

rep = are_mutants(kt, conway)
print("matroid witness:", [x + 1 for x in rep.witness])
print("E2 equal:", compare_E2(kt, conway).equal)
print("reduced Kh equal:", build_complex(kt, True).homology() == build_complex(conway, True).homology())

probe = conjecture_probe(kt, conway).to_json()
print("tree complex entries, agree/total:", probe["by_kind"])
print("equal after flipping generator signs:", probe["equal_up_to_generator_signs"])
