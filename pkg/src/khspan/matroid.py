"""Colored graphic matroids, graph flips, and mutation comparisons."""

from __future__ import annotations

import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from .diagram import Diagram, canonical_tait_graph
from .graph import SignedPlanarGraph
from .trees import enumerate_trees, mask_edges


class FlipError(ValueError):
    pass


# -- matroids -------------------------------------------------------------------

@dataclass(frozen=True)
class ColoredMatroid:
    colors: tuple[int, ...]
    bases: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.colors)

    @property
    def rank(self) -> int:
        return bin(next(iter(self.bases))).count("1") if self.bases else 0

    def element_degrees(self) -> list[int]:
        return [sum(1 for b in self.bases if b >> e & 1) for e in range(self.size)]

    def pair_counts(self) -> list[list[int]]:
        n = self.size
        out = [[0] * n for _ in range(n)]
        for b in self.bases:
            es = mask_edges(b)
            for x in es:
                for y in es:
                    out[x][y] += 1
        return out

    def check_exchange(self, samples: int = 200, seed: int = 0) -> bool:
        """Spot-check the basis exchange axiom on random basis pairs."""
        rng = random.Random(seed)
        bases = sorted(self.bases)
        if len({bin(b).count("1") for b in bases}) > 1:
            return False
        for _ in range(min(samples, len(bases) ** 2)):
            b1, b2 = rng.choice(bases), rng.choice(bases)
            for x in mask_edges(b1 & ~b2):
                if not any(((b1 & ~(1 << x)) | (1 << y)) in self.bases for y in mask_edges(b2 & ~b1)):
                    return False
        return True

    def relabeled(self, perm: Sequence[int]) -> "ColoredMatroid":
        """Image under ``element k -> perm[k]``."""
        colors = [0] * self.size
        for k, c in enumerate(self.colors):
            colors[perm[k]] = c
        return ColoredMatroid(tuple(colors), frozenset(_map_mask(b, perm) for b in self.bases))


def _map_mask(mask: int, perm: Sequence[int]) -> int:
    out = 0
    for e in mask_edges(mask):
        out |= 1 << perm[e]
    return out


def colored_matroid(g: SignedPlanarGraph) -> ColoredMatroid:
    return ColoredMatroid(g.signs, frozenset(enumerate_trees(g)))


def matroid_isomorphic(m1: ColoredMatroid, m2: ColoredMatroid) -> Optional[list[int]]:
    """A color-preserving bijection carrying bases to bases, or ``None``.

    Exact backtracking; candidates must agree in color, basis degree and
    pairwise co-basis counts with every element already placed.  The first
    bijection in lexicographic order is returned.
    """
    n = m1.size
    if n != m2.size or len(m1.bases) != len(m2.bases):
        return None
    if Counter(m1.colors) != Counter(m2.colors):
        return None
    if m1.bases and m1.rank != m2.rank:
        return None
    deg1, deg2 = m1.element_degrees(), m2.element_degrees()
    if sorted(zip(m1.colors, deg1)) != sorted(zip(m2.colors, deg2)):
        return None
    pc1, pc2 = m1.pair_counts(), m2.pair_counts()
    if sorted(map(sorted, pc1)) != sorted(map(sorted, pc2)):
        return None
    cands = [[y for y in range(n) if m2.colors[y] == m1.colors[x] and deg2[y] == deg1[x]
              and sorted(pc2[y]) == sorted(pc1[x])] for x in range(n)]
    order = sorted(range(n), key=lambda x: (len(cands[x]), x))
    perm = [-1] * n
    used = [False] * n

    def rec(k: int) -> bool:
        if k == n:
            return all(_map_mask(b, perm) in m2.bases for b in m1.bases)
        x = order[k]
        for y in cands[x]:
            if used[y]:
                continue
            if any(pc1[x][z] != pc2[y][perm[z]] for z in order[:k]):
                continue
            perm[x] = y
            used[y] = True
            if rec(k + 1):
                return True
            used[y] = False
            perm[x] = -1
        return False

    return list(perm) if rec(0) else None


# -- flips ------------------------------------------------------------------------

@dataclass(frozen=True)
class FlipMove:
    """A graph move that preserves the colored matroid.

    ``kind`` is ``"2-flip"`` (reglue ``side`` with ``u`` and ``v`` swapped)
    or ``"1-flip"`` (split at cut vertex ``u`` and reattach ``side`` at ``v``).
    ``side`` is the set of edge indices forming one side of the separation.
    """

    kind: str
    u: int
    v: int
    side: frozenset[int]

    def to_json(self) -> dict:
        return {"kind": self.kind, "u": self.u, "v": self.v, "side": sorted(e + 1 for e in self.side)}


def _side_vertices(g: SignedPlanarGraph, side: frozenset[int]) -> set[int]:
    return {x for e in side for x in g.edges[e][:2]}


def _check_separation(g: SignedPlanarGraph, side: frozenset[int], attach: set[int]) -> None:
    if not side or len(side) == g.n_edges:
        raise FlipError("separation side must be a proper nonempty edge set")
    inner = _side_vertices(g, side)
    other = _side_vertices(g, frozenset(range(g.n_edges)) - side)
    shared = inner & other
    if not shared <= attach:
        raise FlipError(f"sides share vertices {sorted(shared - attach)} outside the separation")


def _rotate_interval(rot: list, members: set) -> Optional[list]:
    """Rotate a cyclic list so the darts in ``members`` form a prefix, if contiguous."""
    k = len(rot)
    flags = [h in members for h in rot]
    if all(flags) or not any(flags):
        return list(rot)
    starts = [i for i in range(k) if flags[i] and not flags[i - 1]]
    if len(starts) != 1:
        return None
    s = starts[0]
    return rot[s:] + rot[:s]


def apply_flip(g: SignedPlanarGraph, m: FlipMove) -> SignedPlanarGraph:
    """Apply a flip, keeping a planar embedding; raises on an invalid separation."""
    side = frozenset(m.side)
    if m.kind == "2-flip":
        _check_separation(g, side, {m.u, m.v})
        if m.u == m.v:
            raise FlipError("2-flip needs two distinct vertices")
        inner = _side_vertices(g, side)
        if not {m.u, m.v} <= inner:
            raise FlipError("2-flip side must touch both separating vertices")
        swap = {m.u: m.v, m.v: m.u}
        edges = []
        for e, (a, b, s) in enumerate(g.edges):
            if e in side:
                a, b = swap.get(a, a), swap.get(b, b)
            edges.append((a, b, s))
        rotation = [list(r) for r in g.rotation]
        blocks = {}
        for x in (m.u, m.v):
            rot = _rotate_interval(rotation[x], {h for h in rotation[x] if h[0] in side})
            if rot is None:
                raise FlipError(f"side is not contiguous around vertex {x} in this embedding")
            k = sum(1 for h in rot if h[0] in side)
            blocks[x] = (rot[:k], rot[k:])
        # a rotation by pi of the side's disc carries its darts at u to v and back
        rotation[m.u] = blocks[m.v][0] + blocks[m.u][1]
        rotation[m.v] = blocks[m.u][0] + blocks[m.v][1]
        outer = g.outer
        out = SignedPlanarGraph(g.n_vertices, tuple(edges), tuple(tuple(r) for r in rotation),
                                outer, g.name)
    elif m.kind == "1-flip":
        _check_separation(g, side, {m.u})
        inner = _side_vertices(g, side)
        if m.u not in inner:
            raise FlipError("1-flip side must contain the cut vertex")
        if m.v in inner - {m.u} or not (0 <= m.v < g.n_vertices):
            raise FlipError("1-flip target must lie on the other side")
        edges = []
        for e, (a, b, s) in enumerate(g.edges):
            if e in side:
                a = m.v if a == m.u else a
                b = m.v if b == m.u else b
            edges.append((a, b, s))
        rotation = [list(r) for r in g.rotation]
        rot = _rotate_interval(rotation[m.u], {h for h in rotation[m.u] if h[0] in side})
        if rot is None:
            raise FlipError("side is not contiguous around the cut vertex")
        k = sum(1 for h in rot if h[0] in side)
        rotation[m.u] = rot[k:]
        rotation[m.v] = rot[:k] + rotation[m.v]
        # drop an isolated cut vertex by renumbering
        out = SignedPlanarGraph(g.n_vertices, tuple(edges), tuple(tuple(r) for r in rotation),
                                g.outer, g.name)
        if not rotation[m.u]:
            out = _drop_vertex(out, m.u)
    else:
        raise FlipError(f"unknown flip kind {m.kind!r}")
    if out.euler_genus() != 0:
        raise FlipError("flip produced a non-planar rotation system")
    if out.outer is not None and out.outer[0] == "V" and out.outer[1] >= out.n_vertices:
        out = SignedPlanarGraph(out.n_vertices, out.edges, out.rotation, None, out.name)
    return out


def _drop_vertex(g: SignedPlanarGraph, x: int) -> SignedPlanarGraph:
    ren = {y: (y if y < x else y - 1) for y in range(g.n_vertices) if y != x}
    edges = tuple((ren[a], ren[b], s) for a, b, s in g.edges)
    rotation = tuple(r for y, r in enumerate(g.rotation) if y != x)
    outer = g.outer
    if outer is not None and outer[0] == "V":
        outer = None if outer[1] == x else ("V", ren[outer[1]])
    return SignedPlanarGraph(g.n_vertices - 1, edges, rotation, outer, g.name)


def two_separations(g: SignedPlanarGraph, min_side: int = 2) -> list[FlipMove]:
    """2-flips whose side is contiguous at both separating vertices.

    Sides are unions of bridges of ``{u, v}`` (components of ``G - {u, v}``
    with their attaching edges, or single ``u``-``v`` edges).
    """
    out = []
    n = g.n_vertices
    for u, v in combinations(range(n), 2):
        bridges = _bridges(g, {u, v})
        if len(bridges) < 2:
            continue
        for r in range(1, len(bridges)):
            for combo in combinations(range(len(bridges)), r):
                side = frozenset().union(*(bridges[k] for k in combo))
                if len(side) < min_side or g.n_edges - len(side) < min_side:
                    continue
                if 0 in side:
                    # each separation once: the side without edge 0
                    continue
                verts = _side_vertices(g, side)
                if not {u, v} <= verts:
                    continue
                move = FlipMove("2-flip", u, v, side)
                ok = all(_rotate_interval(list(g.rotation[x]), {h for h in g.rotation[x] if h[0] in side})
                         is not None for x in (u, v))
                if ok:
                    out.append(move)
    return out


def _bridges(g: SignedPlanarGraph, sep: set[int]) -> list[frozenset[int]]:
    parent = list(range(g.n_vertices))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b, _ in g.edges:
        if a not in sep and b not in sep:
            parent[find(a)] = find(b)
    groups: dict = defaultdict(set)
    for e, (a, b, _) in enumerate(g.edges):
        inner = [x for x in (a, b) if x not in sep]
        if inner:
            groups[("c", find(inner[0]))].add(e)
        else:
            groups[("e", e)].add(e)
    return [frozenset(s) for _, s in sorted(groups.items(), key=lambda kv: min(kv[1]))]


# -- mutation -----------------------------------------------------------------------

@dataclass
class MutantReport:
    mutants: bool
    witness: Optional[list[int]]

    def to_json(self) -> dict:
        return {"mutants": self.mutants, "witness": self.witness}


def are_mutants(d1: Diagram, d2: Diagram) -> MutantReport:
    """Decide mutation through colored matroids of the canonical Tait graphs.

    ``witness[k]`` is the crossing of ``d2`` matched with crossing ``k`` of ``d1``.
    """
    m1 = colored_matroid(canonical_tait_graph(d1))
    m2 = colored_matroid(canonical_tait_graph(d2))
    perm = matroid_isomorphic(m1, m2)
    return MutantReport(perm is not None, perm)


def transport_order(d2: Diagram, witness: Sequence[int]) -> Diagram:
    """Reorder ``d2`` so its crossing ``k`` is the witness image of crossing ``k`` of ``d1``."""
    return d2.reorder(list(witness))


@dataclass
class E2Comparison:
    equal: bool
    equal_uv: bool
    witness: Optional[list[int]]
    first: dict
    second: dict

    def to_json(self) -> dict:
        return {"equal": self.equal, "equal_uv": self.equal_uv, "witness": self.witness,
                "first": self.first, "second": self.second}


def compare_E2(d1: Diagram, d2: Diagram) -> E2Comparison:
    """Integral E2 terms of both diagrams, after transporting the edge order when possible."""
    from .tree_complex import TreeData, e2_integral
    rep = are_mutants(d1, d2)
    other = transport_order(d2, rep.witness) if rep.witness is not None else d2
    td1, td2 = TreeData(d1), TreeData(other)
    p1, p2 = e2_integral(td1), e2_integral(td2)
    equal = p1.same_groups(p2)

    def uv_key(td, page):
        out = {}
        for (p, i, j), r in page.ranks.items():
            u, v = td.uv_of(i, j)
            out[(p, u, v)] = (r, page.torsion.get((p, i, j), ()))
        return {k: x for k, x in out.items() if x[0] or x[1]}

    equal_uv = uv_key(td1, p1) == uv_key(td2, p2)
    return E2Comparison(equal, equal_uv, rep.witness, p1.to_json(td1), p2.to_json(td2))


@dataclass
class ProbeReport:
    agreements: int
    disagreements: list[dict]
    unmatched: list[str]
    entries_first: int
    entries_second: int
    homology_equal: bool
    witness: list[int]
    details: list[dict] = field(default_factory=list)

    def counts(self) -> dict:
        out = {"direct": [0, 0], "higher": [0, 0]}
        for rec in self.details:
            slot = out["direct" if rec["direct"] else "higher"]
            slot[1] += 1
            slot[0] += rec["first"] == rec["second"]
        return {k: {"agree": a, "total": t} for k, (a, t) in out.items()}

    def sign_gauge(self) -> Optional[dict]:
        """Signs ``s`` on generators with ``second = s(a) s(b) first`` on every entry, if any."""
        adj: dict = defaultdict(list)
        for rec in self.details:
            a, b, x, y = rec["from"], rec["to"], rec["first"], rec["second"]
            if y is None or abs(x) != abs(y):
                return None
            if x:
                adj[a].append((b, 1 if x == y else -1))
                adj[b].append((a, 1 if x == y else -1))
        sign: dict = {}
        for root in sorted(adj):
            if root in sign:
                continue
            sign[root] = 1
            stack = [root]
            while stack:
                a = stack.pop()
                for b, rel in adj[a]:
                    want = sign[a] * rel
                    if b not in sign:
                        sign[b] = want
                        stack.append(b)
                    elif sign[b] != want:
                        return None
        return sign

    def to_json(self) -> dict:
        gauge = self.sign_gauge()
        return {
            "agreements": self.agreements,
            "disagreements": self.disagreements,
            "by_kind": self.counts(),
            "equal_up_to_generator_signs": gauge is not None,
            "unmatched_words": self.unmatched,
            "nonzero_entries": [self.entries_first, self.entries_second],
            "homology_equal": self.homology_equal,
            "witness": self.witness,
            "entries": self.details,
        }


def conjecture_probe(d1: Diagram, d2: Diagram, reduced: bool = True) -> ProbeReport:
    """Compare collapsed tree-complex differentials of two matroid-isomorphic diagrams.

    Trees are matched by identical activity words after edge-order
    transport; every ordered pair with a nonzero entry on either side is
    compared.  This gathers evidence and asserts nothing.
    """
    from .tree_complex import TreeData, TreeGen, classify_direct, collapse_to_tree_complex
    rep = are_mutants(d1, d2)
    if rep.witness is None:
        raise FlipError("diagrams have non-isomorphic colored matroids")
    other = transport_order(d2, rep.witness)
    td1, td2 = TreeData(d1), TreeData(other)
    tc1 = collapse_to_tree_complex(d1, reduced, td1)
    tc2 = collapse_to_tree_complex(other, reduced, td2)
    words1 = {str(w): i for i, w in enumerate(td1.words)}
    words2 = {str(w): i for i, w in enumerate(td2.words)}
    unmatched = sorted(set(words1) ^ set(words2))
    match = {i: words2[w] for w, i in words1.items() if w in words2}
    inv = {v: k for k, v in match.items()}

    def img(g: TreeGen) -> Optional[TreeGen]:
        t = match.get(g.tree)
        return None if t is None else TreeGen(t, g.sign)

    e1 = {(a, b): v for a, b, v in tc1.entries()}
    e2 = {(a, b): v for a, b, v in tc2.entries()}
    keys = set(e1)
    for (a, b) in e2:
        if a.tree in inv and b.tree in inv:
            keys.add((TreeGen(inv[a.tree], a.sign), TreeGen(inv[b.tree], b.sign)))
    agree = 0
    disagreements, details = [], []
    for a, b in sorted(keys):
        ia, ib = img(a), img(b)
        v1 = e1.get((a, b), 0)
        v2 = e2.get((ia, ib), 0) if ia is not None and ib is not None else None
        rec = {"from": str(td1.words[a.tree]) + ("" if a.sign > 0 else "-"),
               "to": str(td1.words[b.tree]) + ("" if b.sign > 0 else "-"),
               "direct": classify_direct(td1.words[a.tree], td1.words[b.tree]),
               "first": v1, "second": v2}
        details.append(rec)
        if v1 == v2:
            agree += 1
        else:
            disagreements.append(rec)
    return ProbeReport(agree, disagreements, unmatched, len(e1), len(e2),
                       tc1.homology() == tc2.homology(), rep.witness, details)
