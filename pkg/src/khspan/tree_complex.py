"""The spanning tree complex, its filtration, and the induced differential.

Every Kauffman state lies in exactly one twisted-unknot subcomplex: the one
whose tree's dead markers it shares.  Each subcomplex is collapsed onto its
fundamental cycle, which leaves one generator per tree (two per tree in the
unreduced theory).
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .algebra import BigradedGroups, DifferentialError, SparseComplex, rank_q
from .diagram import Diagram, canonical_tait_graph
from .graph import SignedPlanarGraph
from .khovanov import Chain, Gen, KhovanovComplex, StateSpace, build_complex, markers_to_mask
from .trees import (ActivityWord, MACRON, activity_word, enumerate_trees, fundamental_markers,
                    grading_u, grading_v, mask_edges, partial_smoothing)


class TreeComplexError(RuntimeError):
    pass


# -- per-diagram tree data ------------------------------------------------------

class TreeData:
    """Trees of the canonical Tait graph together with their smoothings and cycles.

    Tree indices are 0-based positions in the lexicographic enumeration.
    ``graph`` may be given to fix the edge order; it must be a Tait graph of
    ``diagram`` with edge ``k`` at crossing ``k``.
    """

    def __init__(self, diagram: Diagram, graph: SignedPlanarGraph | None = None,
                 space: StateSpace | None = None):
        self.diagram = diagram
        self.graph = graph if graph is not None else canonical_tait_graph(diagram)
        if self.graph.n_edges != diagram.n_crossings:
            raise TreeComplexError("graph and diagram sizes differ")
        self.space = space or StateSpace(diagram)
        self.trees = enumerate_trees(self.graph)
        self.words = [activity_word(self.graph, t) for t in self.trees]
        self.smoothings = [partial_smoothing(w) for w in self.words]
        self.markers = [fundamental_markers(w) for w in self.words]

    def __len__(self) -> int:
        return len(self.trees)

    @cached_property
    def state_tree(self) -> dict[int, int]:
        """Kauffman state mask -> index of the tree whose subcomplex contains it."""
        out: dict[int, int] = {}
        for idx, sm in enumerate(self.smoothings):
            base = markers_to_mask(sm.replace("*", "A"))
            live = [c for c, x in enumerate(sm) if x == "*"]
            for sub in range(1 << len(live)):
                mask = base
                for k, c in enumerate(live):
                    if sub >> k & 1:
                        mask |= 1 << c
                if mask in out:
                    raise TreeComplexError(f"state {mask} lies in two twisted unknots")
                out[mask] = idx
        if len(out) != 1 << self.diagram.n_crossings:
            raise TreeComplexError("twisted unknots do not cover every state")
        return out

    def uv(self, idx: int) -> tuple[int, int]:
        w = self.words[idx]
        return grading_u(w), grading_v(w)

    # fundamental cycles
    def fundamental_cycle(self, idx: int, variant: int = 1, order: str = "bfs") -> Chain:
        return fundamental_cycle_from_markers(self.space, self.markers[idx], self.smoothings[idx],
                                              variant, order)

    @cached_property
    def cycles(self) -> list[Chain]:
        return [self.fundamental_cycle(i, 1) for i in range(len(self))]

    @cached_property
    def poset(self) -> "TreePoset":
        return tree_poset(self.smoothings)

    def block_states(self, idx: int) -> list[Gen]:
        """Reduced enhanced states of the twisted-unknot subcomplex of tree ``idx``."""
        st = self.state_tree
        return [(m, e) for m in sorted(m for m, t in st.items() if t == idx)
                for e in self.space.enhancements(m, True)]

    def block_functional(self, idx: int) -> dict[Gen, int]:
        """Coordinate of ``Z(idx)`` on each state of its subcomplex, after collapsing it alone.

        This is the coordinate the full collapse assigns to ``Z(idx)`` before
        any other subcomplex interferes.  States absent from the result have
        coordinate zero.
        """
        cache = self.__dict__.setdefault("_functionals", {})
        if idx in cache:
            return cache[idx]
        states = self.block_states(idx)
        target = self.space.grading(next(iter(self.cycles[idx])))
        cx = SparseComplex()
        for g in states:
            cx.add_generator(g, *self.space.grading(g))
        inside = set(states)
        for g in states:
            for y, v in self.space.differential(g).items():
                if y in inside:
                    cx.add_entry(g, y, v)
        probes = {}
        for g in states:
            if self.space.grading(g) == target:
                probes[g] = ("probe", g)
                cx.add_generator(probes[g], target[0] - 1, target[1])
                cx.add_entry(probes[g], g, 1)
        _collapse_tree(cx, self, idx, set(states), True)
        key = TreeGen(idx, 1)
        out = {g: cx.entry(p, key) for g, p in probes.items()}
        cache[idx] = {g: v for g, v in out.items() if v}
        return cache[idx]

    def block_coefficient(self, idx: int, chain: Chain) -> int:
        phi = self.block_functional(idx)
        return sum(v * phi.get(g, 0) for g, v in chain.items())

    def direct_incidence(self, i1: int, i2: int) -> int:
        """``<d Z1, Z2>``: the coordinate of ``Z2`` in ``d Z1`` once ``Z2`` is a basis element.

        Only the terms of ``d Z1`` on the marker state carrying ``Z2`` count;
        they are read through the collapse of the subcomplex of ``Z2``, which
        fixes the coordinate when ``Z2`` has several summands.
        """
        if i1 == i2:
            return 0
        mask = next(iter(self.cycles[i2]))[0]
        dz = self.space.differential_chain(self.cycles[i1])
        return self.block_coefficient(i2, {g: v for g, v in dz.items() if g[0] == mask})

    @cached_property
    def grading_offset(self) -> tuple[int, int]:
        """Constants ``(c1, c2)`` with ``(i, j) = (u - 2v + c1, 2u - 2v + c2)`` for every tree."""
        offsets = set()
        for idx, z in enumerate(self.cycles):
            degs = {self.space.grading(g) for g in z}
            if len(degs) != 1:
                raise TreeComplexError(f"fundamental cycle {idx} is not homogeneous")
            (i, j), = degs
            u, v = self.uv(idx)
            offsets.add((i - u + 2 * v, j - 2 * u + 2 * v))
        if len(offsets) > 1:
            raise TreeComplexError(f"inconsistent grading offsets {offsets}")
        return offsets.pop() if offsets else (0, 0)

    def ij(self, u: int, v: int) -> tuple[int, int]:
        c1, c2 = self.grading_offset
        return u - 2 * v + c1, 2 * u - 2 * v + c2

    def uv_of(self, i: int, j: int) -> tuple[int, int]:
        c1, c2 = self.grading_offset
        # invert i = u - 2v + c1, j = 2u - 2v + c2
        u = (j - c2) - (i - c1)
        v2 = u - (i - c1)
        if v2 % 2:
            raise ValueError("bidegree is not in the image of (u, v)")
        return u, v2 // 2


def pairing(a: Chain, b: Chain) -> int:
    if len(a) > len(b):
        a, b = b, a
    return sum(v * b.get(k, 0) for k, v in a.items())


# -- fundamental cycles -----------------------------------------------------------

def fundamental_cycle_from_markers(space: StateSpace, markers: str, smoothing: str,
                                   variant: int = 1, order: str = "bfs") -> Chain:
    """Fundamental cycle on the maximally disconnected state of a twisted unknot.

    ``markers`` is the full A/B state; live crossings are the ``*`` positions of
    ``smoothing``.  The basepoint loop starts ``+`` (``variant=1``) or ``-``
    (``variant=-1``); live crossings are then untwisted outward from it.  A
    positive twist (A marker) keeps a ``+`` parent and labels the child ``+``,
    and sends a ``-`` parent to ``(-, +) - (+, -)``; a negative twist (B
    marker) labels the child ``-``.
    ``order`` picks breadth-first or depth-first (reversed) untwisting, which
    must not change the result.
    """
    mask = markers_to_mask(markers)
    label_loop = space.label_loop(mask)
    loops = space.loops(mask)
    rec = space.diagram.crossings
    adj: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for c, x in enumerate(smoothing):
        if x != "*":
            continue
        touched = sorted({label_loop[a] for a in rec[c]})
        if len(touched) != 2:
            raise TreeComplexError(f"live crossing {c} does not separate two loops")
        a, b = touched
        adj[a].append((b, c))
        adj[b].append((a, c))
    root = space.basepoint_loop(mask)
    # untwisting sequence: (parent, child, crossing)
    steps: list[tuple[int, int, int]] = []
    seen = {root}
    if order == "bfs":
        queue = deque([root])
        while queue:
            p = queue.popleft()
            for ch, c in sorted(adj[p], key=lambda t: t[1]):
                if ch not in seen:
                    seen.add(ch)
                    steps.append((p, ch, c))
                    queue.append(ch)
    elif order == "dfs":
        stack = [root]
        while stack:
            p = stack.pop()
            for ch, c in sorted(adj[p], key=lambda t: -t[1]):
                if ch not in seen:
                    seen.add(ch)
                    steps.append((p, ch, c))
                    stack.append(ch)
    else:
        raise ValueError(order)
    if len(seen) != len(loops):
        raise TreeComplexError("live crossings do not connect all loops of the state")
    # labels: dict loop -> 1 (+) / 0 (-); chain over partial labellings
    terms: dict[tuple, int] = {((root, 1 if variant > 0 else 0),): 1}
    for p, ch, c in steps:
        positive = markers[c] == "A"
        new: dict[tuple, int] = defaultdict(int)
        for lab, coeff in terms.items():
            labels = dict(lab)
            y = labels[p]
            if not positive:
                out = [({**labels, ch: 0}, 1)]
            elif y:
                out = [({**labels, ch: 1}, 1)]
            else:
                out = [({**labels, ch: 1}, 1), ({**labels, p: 1, ch: 0}, -1)]
            for lab2, v in out:
                new[tuple(sorted(lab2.items()))] += coeff * v
        terms = {k: v for k, v in new.items() if v}
    chain: Chain = {}
    for lab, coeff in terms.items():
        enh = 0
        for k, bit in lab:
            if bit:
                enh |= 1 << k
        chain[(mask, enh)] = coeff
    return chain


# -- direct incidence classification ------------------------------------------

_DIRECT_PATTERNS = {
    ("L", "d" + MACRON): ("d", "D" + MACRON),
    ("d" + MACRON, "D"): ("L" + MACRON, "d"),
    ("ℓ" + MACRON, "D"): ("D" + MACRON, "d"),
    ("D", "d" + MACRON): ("ℓ", "D" + MACRON),
}


def classify_direct(w1: ActivityWord, w2: ActivityWord) -> bool:
    """True iff ``w2`` comes from ``w1`` by one of the four two-letter swaps.

    The pair is read at positions ``i < j`` in edge order.
    """
    if len(w1) != len(w2):
        raise ValueError("activity words of different lengths")
    diff = [k for k in range(len(w1)) if w1[k] != w2[k]]
    if len(diff) != 2:
        return False
    i, j = diff
    return _DIRECT_PATTERNS.get((w1[i], w1[j])) == (w2[i], w2[j])


def exchange_structure(g: SignedPlanarGraph, t1: int, t2: int) -> Optional[tuple[int, int]]:
    """``(e, f)`` when tree mask ``t2 = t1 - e + f`` with ``e`` positive, ``f`` negative, ``f`` in cut(t1, e)."""
    from .trees import cut
    gone = mask_edges(t1 & ~t2)
    came = mask_edges(t2 & ~t1)
    if len(gone) != 1 or len(came) != 1:
        return None
    e, f = gone[0], came[0]
    if g.edges[e][2] != 1 or g.edges[f][2] != -1 or f not in cut(g, t1, e):
        return None
    return e, f


# -- poset and filtration -------------------------------------------------------

@dataclass(frozen=True)
class TreePoset:
    size: int
    greater: tuple[frozenset[int], ...]  # greater[i] = {j : T_i > T_j}
    level: tuple[int, ...]

    def gt(self, a: int, b: int) -> bool:
        return b in self.greater[a]

    def maximal(self) -> list[int]:
        below = set().union(*self.greater) if self.greater else set()
        return [i for i in range(self.size) if i not in below]

    def minimal(self) -> list[int]:
        return [i for i in range(self.size) if not self.greater[i]]

    def cover_pairs(self) -> list[tuple[int, int]]:
        out = []
        for a in range(self.size):
            for b in self.greater[a]:
                if not any(b in self.greater[c] for c in self.greater[a]):
                    out.append((a, b))
        return sorted(out)

    def chains(self) -> list[list[int]]:
        """Maximal chains of cover relations, from maximal to minimal elements."""
        covers = defaultdict(list)
        for a, b in self.cover_pairs():
            covers[a].append(b)
        out = []

        def walk(path):
            nxt = covers[path[-1]]
            if not nxt:
                out.append(path)
                return
            for b in sorted(nxt):
                walk(path + [b])

        for m in self.maximal():
            walk([m])
        return out

    def by_level(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = defaultdict(list)
        for i, lv in enumerate(self.level):
            out[lv].append(i)
        return dict(sorted(out.items()))


def smoothing_relation(x: str, y: str) -> bool:
    """The generating relation ``x > y`` on partial smoothings."""
    strict = False
    for a, b in zip(x, y):
        if b == "A" and a not in "A*":
            return False
        if a == "A" and b == "B":
            strict = True
    return strict


def tree_poset(smoothings: Sequence[str]) -> TreePoset:
    n = len(smoothings)
    direct = [{j for j in range(n) if j != i and smoothing_relation(smoothings[i], smoothings[j])}
              for i in range(n)]
    # transitive closure
    closure = [set(s) for s in direct]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            extra = set()
            for j in closure[i]:
                extra |= closure[j] - closure[i]
            if extra:
                closure[i] |= extra
                changed = True
    for i in range(n):
        if i in closure[i]:
            raise TreeComplexError("tree relation is not antisymmetric")
    # level = longest chain from a maximal element, counted from 1
    level = [0] * n
    order = sorted(range(n), key=lambda i: -len(closure[i]))
    for i in order:
        above = [j for j in range(n) if i in closure[j]]
        level[i] = 1 + max((level[j] for j in above), default=0)
    # above elements have strictly larger down-sets, so they were processed first
    return TreePoset(n, tuple(frozenset(s) for s in closure), tuple(level))


def filtration(td: TreeData) -> dict[int, list[int]]:
    """``p -> tree indices`` spanning ``F^p`` (level at least ``p``)."""
    levels = td.poset.level
    top = max(levels) if levels else 1
    return {p: [i for i, lv in enumerate(levels) if lv >= p] for p in range(1, top + 1)}


# -- collapse -------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class TreeGen:
    """Generator of the tree complex: ``sign`` is +1 for ``T+`` and -1 for ``T-``."""

    tree: int
    sign: int = 1

    def label(self) -> str:
        return f"T{self.tree + 1}" + ("" if self.sign > 0 else "-")


@dataclass
class TreeComplexData:
    """Collapsed complex: one generator per tree (two per tree when unreduced)."""

    trees: TreeData
    reduced: bool
    complex: SparseComplex
    pivots: list[tuple[Gen, Gen]] = field(default_factory=list)
    cycle_pivots: dict = field(default_factory=dict)

    def generators(self) -> list[TreeGen]:
        return sorted(self.complex.degree)

    def uv(self, gen: TreeGen) -> tuple[int, int]:
        u, v = self.trees.uv(gen.tree)
        return (u, v) if gen.sign > 0 else (u + 2, v + 1)

    def incidence(self, a: TreeGen, b: TreeGen) -> int:
        return self.complex.entry(a, b)

    def entries(self) -> list[tuple[TreeGen, TreeGen, int]]:
        return sorted((a, b, v) for a, row in self.complex.d.items() for b, v in row.items())

    def homology(self) -> BigradedGroups:
        return self.complex.homology()


def _collapse_tree(cx: SparseComplex, td: TreeData, t: int, mem: set, reduced: bool,
                   reverse_pivots: bool = False) -> tuple[dict, list]:
    """Collapse the states ``mem`` of tree ``t`` inside ``cx`` onto its fundamental cycle(s).

    Returns the generator each cycle replaced and the eliminated pairs.
    """
    cycle_pivots, pivots = {}, []
    for var in ([1] if reduced else [-1, 1]):
        z = td.cycles[t] if var > 0 else td.fundamental_cycle(t, var)
        if var < 0:
            # keep the basepoint-negative term for Z-, the positive one is claimed by Z+
            cands = [g for g, c in z.items() if c in (1, -1)
                     and not g[1] >> td.space.basepoint_loop(g[0]) & 1]
        else:
            cands = [g for g, c in z.items() if c in (1, -1) and g in mem]
        if not cands:
            raise TreeComplexError(f"fundamental cycle of tree {t} has no unit term")
        piv = max(cands) if reverse_pivots else min(cands)
        key = TreeGen(t, var)
        cx.change_basis(piv, key, z)
        mem.discard(piv)
        cycle_pivots[key] = piv
    progress = True
    while progress:
        progress = False
        for a in sorted(mem, reverse=reverse_pivots):
            if a not in cx.degree:
                continue
            bs = sorted(b for b, v in cx.d[a].items() if v in (1, -1) and b in mem)
            if bs:
                b = bs[-1] if reverse_pivots else bs[0]
                cx.eliminate(a, b)
                mem.discard(a)
                mem.discard(b)
                pivots.append((a, b))
                progress = True
    if mem:
        raise TreeComplexError(
            f"collapse of tree {t} stuck with {len(mem)} states left (no unit pivot)")
    return cycle_pivots, pivots


def collapse_to_tree_complex(d: Diagram, reduced: bool = True, trees: TreeData | None = None,
                             verify_blocks: bool = False,
                             khovanov: KhovanovComplex | None = None,
                             reverse_pivots: bool = False) -> TreeComplexData:
    """Collapse every twisted-unknot subcomplex onto its fundamental cycle(s).

    Trees are processed from the deepest filtration level up.  Inside each
    subcomplex the fundamental cycle first replaces one of its unit terms in
    the basis; unit incidences among the remaining states are then eliminated
    in sorted order (reverse order with ``reverse_pivots``, used to probe
    whether induced entries depend on the elimination order).  With
    ``verify_blocks`` the diagonal blocks of all subcomplexes still waiting
    are compared before and after each collapse.
    """
    td = trees or TreeData(d)
    kc = khovanov or build_complex(d, reduced, td.space)
    cx = kc.complex.copy()
    owner_state = td.state_tree
    members: dict[int, set] = defaultdict(set)
    for g in cx.degree:
        members[owner_state[g[0]]].add(g)
    levels = td.poset.level
    order = sorted(range(len(td)), key=lambda i: (-levels[i], i))
    result = TreeComplexData(td, reduced, cx)

    def block(t):
        mem = members[t]
        return {(x, y): v for x in mem if x in cx.d for y, v in cx.d[x].items() if y in mem}

    snapshots = {t: block(t) for t in order} if verify_blocks else {}
    for pos, t in enumerate(order):
        cps, pivs = _collapse_tree(cx, td, t, members[t], reduced, reverse_pivots)
        result.cycle_pivots.update(cps)
        result.pivots.extend(pivs)
        if verify_blocks:
            for t2 in order[pos + 1:]:
                if block(t2) != snapshots[t2]:
                    raise TreeComplexError(
                        f"collapsing tree {t} changed incidences inside tree {t2}")
    return result


# -- spectral sequence --------------------------------------------------------------

@dataclass
class Page:
    """Ranks of ``E_r`` keyed by ``(p, i, j)``; ``integral`` holds torsion data for E2."""

    r: int
    ranks: dict[tuple[int, int, int], int]
    torsion: dict[tuple[int, int, int], tuple[int, ...]] = field(default_factory=dict)
    stabilized: bool = False
    differential: list = field(default_factory=list)

    def total_by_degree(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = defaultdict(int)
        for (p, i, j), r in self.ranks.items():
            out[(i, j)] += r
        return {k: v for k, v in sorted(out.items()) if v}

    def groups(self) -> BigradedGroups:
        """Total ``(i, j)`` data with torsion (torsion only recorded on E2)."""
        tor: dict = defaultdict(list)
        for (p, i, j), t in self.torsion.items():
            tor[(i, j)].extend(t)
        return BigradedGroups.from_parts(self.total_by_degree(), tor)

    def same_groups(self, other: "Page") -> bool:
        return ({k: v for k, v in self.ranks.items() if v} == {k: v for k, v in other.ranks.items() if v}
                and {k: v for k, v in self.torsion.items() if v} == {k: v for k, v in other.torsion.items() if v})

    def to_json(self, trees: TreeData | None = None) -> dict:
        rows = []
        for (p, i, j), r in sorted(self.ranks.items()):
            t = list(self.torsion.get((p, i, j), ()))
            if not r and not t:
                continue
            row = {"p": p, "i": i, "j": j, "rank": r, "torsion": t}
            if trees is not None:
                try:
                    row["u"], row["v"] = trees.uv_of(i, j)
                except ValueError:
                    pass
            rows.append(row)
        return {"r": self.r, "stabilized": self.stabilized, "groups": rows,
                "d": [list(x) for x in self.differential]}


class FilteredComplex:
    """A finite free complex with an integer filtration level on each generator.

    ``F^p`` is spanned by the generators of level at least ``p``; the
    differential must not lower the level.
    """

    def __init__(self, cx: SparseComplex, level: dict):
        self.cx = cx
        self.level = level
        for x, row in cx.d.items():
            for y in row:
                if level[y] < level[x]:
                    raise TreeComplexError(f"differential lowers filtration: {x!r} -> {y!r}")
        self.pmin = min(level.values(), default=1)
        self.pmax = max(level.values(), default=1)
        self._blocks: dict[tuple[int, int], list] = defaultdict(list)
        for x, (i, j) in cx.degree.items():
            self._blocks[(i, j)].append(x)
        self._rank_cache: dict = {}

    def _rank(self, i: int, j: int, row_min: int, col_max: Optional[int]) -> int:
        """Rank of d from gens of degree (i,j), level >= row_min, to gens of level < col_max."""
        key = (i, j, row_min, col_max)
        if key in self._rank_cache:
            return self._rank_cache[key]
        rows = [x for x in self._blocks.get((i, j), []) if self.level[x] >= row_min]
        cols = [y for y in self._blocks.get((i + 1, j), [])
                if col_max is None or self.level[y] < col_max]
        if not rows or not cols:
            r = 0
        else:
            r = rank_q(self.cx.matrix(rows, cols))
        self._rank_cache[key] = r
        return r

    def _dim_f(self, i, j, p) -> int:
        return sum(1 for x in self._blocks.get((i, j), []) if self.level[x] >= p)

    def _dim_z(self, i, j, r, p) -> int:
        # Z_r^p = F^p ∩ d^{-1}(F^{p+r})
        return self._dim_f(i, j, p) - self._rank(i, j, p, p + r)

    def _dim_dz(self, i, j, s, q) -> int:
        # dim d(Z_s^q) = dim Z_s^q - dim(F^q ∩ ker d); lives in degree i+1
        return self._dim_z(i, j, s, q) - (self._dim_f(i, j, q) - self._rank(i, j, q, None))

    def page_ranks(self, r: int) -> dict[tuple[int, int, int], int]:
        if r < 0:
            raise ValueError("page index must be nonnegative")
        out = {}
        for (i, j) in self._blocks:
            for p in range(self.pmin, self.pmax + 1):
                if r == 0:
                    dim = self._dim_f(i, j, p) - self._dim_f(i, j, p + 1)
                else:
                    dim = (self._dim_z(i, j, r, p) - self._dim_z(i, j, r - 1, p + 1)
                           - self._dim_dz(i - 1, j, r - 1, p - r + 1)
                           + self._dim_dz(i - 1, j, r, p - r + 1))
                if dim:
                    out[(p, i, j)] = dim
        return out


def _tree_filtered(tc: TreeComplexData) -> FilteredComplex:
    lv = tc.trees.poset.level
    return FilteredComplex(tc.complex, {g: lv[g.tree] for g in tc.complex.degree})


def khovanov_filtered(td: TreeData, kc: KhovanovComplex) -> FilteredComplex:
    lv = td.poset.level
    st = td.state_tree
    return FilteredComplex(kc.complex, {g: lv[st[g[0]]] for g in kc.complex.degree})


def d1_entries(td: TreeData) -> list[tuple[int, int, int]]:
    """``(T1, T2, <dZ1, Z2>)`` for directly incident trees one filtration level apart."""
    lv = td.poset.level
    out = []
    by_uv: dict[tuple[int, int], list[int]] = defaultdict(list)
    for i in range(len(td)):
        by_uv[td.uv(i)].append(i)
    for a in range(len(td)):
        u, v = td.uv(a)
        for b in by_uv.get((u - 1, v - 1), []):
            if lv[b] != lv[a] + 1 or not classify_direct(td.words[a], td.words[b]):
                continue
            val = td.direct_incidence(a, b)
            if val:
                out.append((a, b, val))
    return out


def e2_integral(td: TreeData) -> Page:
    """E2 over the integers: homology of the tree generators under ``d1``."""
    lv = td.poset.level
    cx = SparseComplex()
    for a in range(len(td)):
        i, j = td.ij(*td.uv(a))
        # d1 raises i and p together; (j, p - i) is preserved
        cx.add_generator(a, i, (j, lv[a] - i))
    entries = d1_entries(td)
    for a, b, v in entries:
        cx.add_entry(a, b, v)
    h = cx.homology()
    ranks, torsion = {}, {}
    for (i, (j, pi)), (r, t) in h.groups.items():
        key = (pi + i, i, j)
        ranks[key] = r
        if t:
            torsion[key] = t
    page = Page(2, ranks, torsion, differential=[(a, b, v) for a, b, v in entries])
    return page


def e1_page(td: TreeData) -> Page:
    lv = td.poset.level
    ranks: dict = defaultdict(int)
    for a in range(len(td)):
        i, j = td.ij(*td.uv(a))
        ranks[(lv[a], i, j)] += 1
    return Page(1, dict(ranks), differential=[(a, b, v) for a, b, v in d1_entries(td)])


def spectral_page(d: Diagram, r: int, trees: TreeData | None = None,
                  tree_complex: TreeComplexData | None = None, bound: Optional[int] = None) -> Page:
    """Page ``E_r`` of the spanning tree spectral sequence of the reduced complex.

    ``E_0`` comes from the full enhanced-state complex, ``E_1`` and the
    integral ``E_2`` from tree data, and ``r >= 3`` (also rational ``E_2``
    via :func:`rational_page`) from the collapsed filtered complex.  Pages
    past the crossing number are returned with ``stabilized=True``.
    """
    td = trees or TreeData(d)
    if r < 0:
        raise ValueError("page index must be nonnegative")
    limit = bound if bound is not None else max(d.n_crossings, 1)
    if r == 0:
        kc = build_complex(d, True, td.space)
        return Page(0, khovanov_filtered(td, kc).page_ranks(0))
    if r == 1:
        return e1_page(td)
    if r == 2:
        return e2_integral(td)
    stabilized = r > limit
    rr = min(r, limit + 1)
    tc = tree_complex or collapse_to_tree_complex(d, True, td)
    return Page(r, _tree_filtered(tc).page_ranks(rr), stabilized=stabilized)


def rational_page(tc: TreeComplexData, r: int) -> Page:
    return Page(r, _tree_filtered(tc).page_ranks(r))


# -- ladders --------------------------------------------------------------------------

@dataclass(frozen=True)
class Ladder:
    trees: tuple[int, ...]            # tree of each rung, T1 first and T2 last
    states: tuple[tuple[Gen, Gen], ...]  # (x_i, y_i) rungs between the ends
    contribution: int
    marker_changes: tuple[tuple[int, int], ...]  # (crossing changed A->B, crossing changed B->A)

    def to_json(self, td: TreeData) -> dict:
        n = td.diagram.n_crossings
        from .khovanov import mask_to_markers
        return {
            "trees": [t + 1 for t in self.trees],
            "words": [str(td.words[t]) for t in self.trees],
            "rungs": [{"x": [mask_to_markers(x[0], n), x[1]], "y": [mask_to_markers(y[0], n), y[1]]}
                      for x, y in self.states],
            "marker_changes": [list(p) for p in self.marker_changes],
            "contribution": self.contribution,
        }


def _changed_crossing(a: int, b: int) -> int:
    diff = a ^ b
    return diff.bit_length() - 1


def ladders(td: TreeData, t1: int, t2: int, kmax: int, budget: int = 200000,
            pivots: Optional[set] = None) -> list[Ladder]:
    """All ladders of enhanced states from ``Z(t1)`` to ``Z(t2)`` of length at most ``kmax``.

    Rungs ``(x_i, y_i)`` lie in subcomplexes of trees strictly between
    ``t1`` and ``t2`` in the poset, avoid the states replaced by fundamental
    cycles, and have ``<d x_i, y_i> != 0``.  With ``pivots`` only rungs that
    are elimination pairs of a recorded collapse are used.
    """
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    if t1 == t2:
        return []
    poset = td.poset
    if not poset.gt(t1, t2):
        return []
    space = td.space
    st = td.state_tree
    z1, z2 = td.cycles[t1], td.cycles[t2]
    excluded = {min(g for g, c in td.cycles[t].items() if c in (1, -1)) for t in range(len(td))}
    out: list[Ladder] = []
    direct = td.direct_incidence(t1, t2)
    if direct:
        out.append(Ladder((t1, t2), (), direct, ()))
    if kmax == 1:
        return out
    between = {t for t in range(len(td)) if poset.gt(t1, t) and poset.gt(t, t2)}
    n_nodes = [0]
    dz1 = space.differential_chain(z1)
    z2_support = set(z2)

    def sources_in(y: Gen, tree: int) -> list[tuple[Gen, int]]:
        # states x in the same subcomplex with <dx, y> != 0
        mask, _ = y
        res = []
        for c in range(space.n):
            if not mask >> c & 1:
                continue
            xm = mask & ~(1 << c)
            if st.get(xm) != tree:
                continue
            for enh in space.enhancements(xm, True):
                x = (xm, enh)
                v = sum(w for t, w in space.boundary(x, c) if t == y)
                if v:
                    res.append((x, v))
        return res

    def extend(k: int, chain_trees: list[int], rungs: list, coeff: int, last_tree: int,
               y_chain: Chain, changes: list):
        # y_chain: {y: <d x_{k-1}, y>} candidates for the next rung's y
        if n_nodes[0] > budget:
            return
        for y, v_in in sorted(y_chain.items()):
            tree = st[y[0]]
            if tree not in between or y in excluded:
                continue
            if last_tree != t1 and not (tree == last_tree or poset.gt(last_tree, tree)):
                continue
            for x, v_xy in sources_in(y, tree):
                if x in excluded or x == y:
                    continue
                if pivots is not None and (x, y) not in pivots:
                    continue
                n_nodes[0] += 1
                new_coeff = coeff * v_in * v_xy
                new_rungs = rungs + [(x, y)]
                new_trees = chain_trees + [tree]
                new_changes = changes + [(_changed_crossing(x[0], y[0]),)]
                dx = space.differential(x)
                end = td.block_coefficient(t2, dx)
                kk = len(new_rungs) + 1
                if end:
                    contrib = (-1) ** (kk - 1) * new_coeff * end
                    out.append(Ladder(tuple([t1] + new_trees + [t2]), tuple(new_rungs), contrib,
                                      tuple(_ladder_changes(td, t1, t2, new_rungs))))
                if kk < kmax:
                    nxt = {g: w for g, w in dx.items() if g not in z2_support}
                    extend(kk, new_trees, new_rungs, new_coeff, tree, nxt, new_changes)

    extend(1, [], [], 1, t1, dz1, [])
    return out


def _ladder_changes(td: TreeData, t1: int, t2: int, rungs) -> list[tuple[int, int]]:
    """Marker changes along the ladder as (crossing, +1 for A->B / -1 for B->A) steps."""
    space = td.space
    seq = [markers_to_mask(td.markers[t1])]
    for x, y in rungs:
        seq += [y[0], x[0]]
    seq.append(markers_to_mask(td.markers[t2]))
    out = []
    for a, b in zip(seq, seq[1:]):
        if a == b:
            continue
        for c in range(space.n):
            if (a ^ b) >> c & 1:
                out.append((c, 1 if b >> c & 1 else -1))
    return out
