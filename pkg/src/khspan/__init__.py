"""Spanning-tree models for the Jones polynomial and Khovanov homology."""

from .algebra import BigradedGroups, SparseComplex
from .diagram import Diagram, canonical_tait_graph, from_braid, medial, parse_pd, unknot
from .graph import SignedPlanarGraph, parse_graph
from .khovanov import bracket_state_sum, build_complex, homology
from .matroid import (FlipMove, apply_flip, are_mutants, colored_matroid, compare_E2,
                      conjecture_probe, matroid_isomorphic, two_separations)
from .polynomial import LaurentPoly
from .tree_complex import (TreeData, classify_direct, collapse_to_tree_complex, filtration,
                           ladders, spectral_page, tree_poset)
from .trees import ActivityWord, activity_word, bracket_by_trees, enumerate_trees, jones, tree_records

__version__ = "0.1.0"
