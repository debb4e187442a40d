"""Spanning trees of Tait graphs, edge activities and the Thistlethwaite expansion.

Trees are bit masks over edge positions (bit ``i`` set when edge ``i`` is in
the tree). An edge is *live* when it is the lowest-ordered edge of its cut
(tree edges) or of its fundamental cycle (non-tree edges).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .diagram import Diagram, canonical_tait_graph
from .graph import SignedPlanarGraph
from .polynomial import LaurentPoly

MACRON = "̄"
LIVE_TREE, DEAD_TREE, LIVE_COTREE, DEAD_COTREE = "L", "D", "ℓ", "d"
_BASE = (LIVE_TREE, DEAD_TREE, LIVE_COTREE, DEAD_COTREE)

# Dead letters fix a marker in the partial smoothing; live letters leave '*'.
_SMOOTHING = {"D": "A", "d": "B", "D" + MACRON: "B", "d" + MACRON: "A"}
# Markers of the maximally disconnected state of the twisted unknot.
_FUNDAMENTAL = {"L": "B", "D": "A", "ℓ": "A", "d": "B",
                "L" + MACRON: "A", "D" + MACRON: "B", "ℓ" + MACRON: "B", "d" + MACRON: "A"}


class TreeError(ValueError):
    pass


# -- small union-find -------------------------------------------------------

class _DSU:
    __slots__ = ("parent",)

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def mask_edges(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def edges_mask(edges: Iterable[int]) -> int:
    m = 0
    for e in edges:
        m |= 1 << e
    return m


# -- enumeration ------------------------------------------------------------

def enumerate_trees(g: SignedPlanarGraph) -> list[int]:
    """All spanning trees, ordered lexicographically by their sorted edge tuples.

    Contraction-deletion recursion over edges in order; an edge is contracted
    (kept) before it is deleted, which yields lexicographic output directly.
    """
    if not g.is_connected():
        raise TreeError("graph is disconnected")
    n, m = g.n_vertices, g.n_edges
    ends = [(u, v) for u, v, _ in g.edges]
    out: list[int] = []

    def connects(parent: list[int], start: int) -> bool:
        dsu = _DSU(n)
        dsu.parent = parent[:]
        comps = len({dsu.find(x) for x in range(n)})
        for j in range(start, m):
            if dsu.union(*ends[j]):
                comps -= 1
                if comps == 1:
                    return True
        return comps == 1

    def rec(i: int, parent: list[int], mask: int, size: int):
        if size == n - 1:
            out.append(mask)
            return
        if i == m:
            return
        dsu = _DSU(n)
        dsu.parent = parent[:]
        u, v = ends[i]
        if dsu.find(u) != dsu.find(v):
            dsu.union(u, v)
            rec(i + 1, dsu.parent, mask | (1 << i), size + 1)
        if connects(parent, i + 1):
            rec(i + 1, parent, mask, size)

    rec(0, list(range(n)), 0, 0)
    return out


def matrix_tree_count(g: SignedPlanarGraph) -> int:
    """Number of spanning trees via an exact determinant of the reduced Laplacian."""
    n = g.n_vertices
    if n == 1:
        return 1
    lap = [[0] * n for _ in range(n)]
    for u, v, _ in g.edges:
        if u == v:
            continue
        lap[u][u] += 1
        lap[v][v] += 1
        lap[u][v] -= 1
        lap[v][u] -= 1
    return _bareiss_det([row[1:] for row in lap[1:]])


def _bareiss_det(a: list[list[int]]) -> int:
    a = [row[:] for row in a]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1] if n else 1


# -- cuts and cycles --------------------------------------------------------

def _tree_components_without(g: SignedPlanarGraph, tree: int, e: int) -> _DSU:
    dsu = _DSU(g.n_vertices)
    for j in mask_edges(tree):
        if j != e:
            dsu.union(g.edges[j][0], g.edges[j][1])
    return dsu


def cut(g: SignedPlanarGraph, tree: int, e: int) -> frozenset[int]:
    """Edges reconnecting the two components of ``tree - e``."""
    if not tree >> e & 1:
        raise TreeError(f"edge {e} is not in the tree")
    dsu = _tree_components_without(g, tree, e)
    return frozenset(j for j, (u, v, _) in enumerate(g.edges) if dsu.find(u) != dsu.find(v))


def cyc(g: SignedPlanarGraph, tree: int, f: int) -> frozenset[int]:
    """Edges of the unique cycle in ``tree + f``."""
    if tree >> f & 1:
        raise TreeError(f"edge {f} is in the tree")
    u, v, _ = g.edges[f]
    if u == v:
        return frozenset({f})
    adj: dict[int, list[tuple[int, int]]] = {}
    for j in mask_edges(tree):
        a, b, _ = g.edges[j]
        adj.setdefault(a, []).append((b, j))
        adj.setdefault(b, []).append((a, j))
    prev = {u: None}
    stack = [u]
    while stack:
        x = stack.pop()
        if x == v:
            break
        for y, j in adj.get(x, ()):
            if y not in prev:
                prev[y] = (x, j)
                stack.append(y)
    path = {f}
    x = v
    while prev[x] is not None:
        x, j = prev[x]
        path.add(j)
    return frozenset(path)


# -- activity words ---------------------------------------------------------

@dataclass(frozen=True)
class ActivityWord:
    """One letter per edge: L, D, ℓ, d, barred (macron) for negative edges."""

    letters: tuple[str, ...]

    def __post_init__(self):
        for x in self.letters:
            if x.rstrip(MACRON) not in _BASE or len(x) > 2:
                raise TreeError(f"bad activity letter {x!r}")

    @classmethod
    def parse(cls, text: str) -> "ActivityWord":
        """Parse e.g. ``"LdD̄ℓ"``; ``l`` is accepted for ℓ and a trailing ``'`` for a bar."""
        letters: list[str] = []
        for ch in text:
            if ch in (MACRON, "'", "¯"):
                if not letters or letters[-1].endswith(MACRON):
                    raise TreeError(f"misplaced bar in {text!r}")
                letters[-1] += MACRON
            elif ch == "l":
                letters.append(LIVE_COTREE)
            elif ch in _BASE:
                letters.append(ch)
            elif ch.isspace():
                continue
            else:
                raise TreeError(f"bad activity letter {ch!r} in {text!r}")
        return cls(tuple(letters))

    def __str__(self) -> str:
        return "".join(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __iter__(self):
        return iter(self.letters)

    @property
    def tree_mask(self) -> int:
        """The tree, read off from the capital letters."""
        return edges_mask(i for i, x in enumerate(self.letters) if x[0] in "LD")

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(-1 if x.endswith(MACRON) else 1 for x in self.letters)

    def is_live(self, i: int) -> bool:
        return self.letters[i][0] in ("L", LIVE_COTREE)

    def counts(self) -> Counter:
        return Counter(self.letters)

    def ascii(self) -> str:
        """ASCII rendering: ``l`` for ℓ and a trailing ``'`` for a bar."""
        return "".join(x.replace(LIVE_COTREE, "l").replace(MACRON, "'") for x in self.letters)


def activity_word(g: SignedPlanarGraph, tree: int) -> ActivityWord:
    letters = []
    for i, (u, v, s) in enumerate(g.edges):
        if tree >> i & 1:
            live = min(cut(g, tree, i)) == i
            x = LIVE_TREE if live else DEAD_TREE
        else:
            live = min(cyc(g, tree, i)) == i
            x = LIVE_COTREE if live else DEAD_COTREE
        letters.append(x + (MACRON if s < 0 else ""))
    return ActivityWord(tuple(letters))


def thistlethwaite_monomial(w: ActivityWord) -> LaurentPoly:
    """``(-1)^(p+r+x+z) A^(-3p+q+3r-s+3x-y-3z+w)`` for the letter counts of ``w``."""
    c = w.counts()
    p, q, r, s = c["L"], c["D"], c["ℓ"], c["d"]
    x, y, z, t = (c[k + MACRON] for k in ("L", "D", "ℓ", "d"))
    sign = -1 if (p + r + x + z) % 2 else 1
    return LaurentPoly.monomial(sign, -3 * p + q + 3 * r - s + 3 * x - y - 3 * z + t, "A")


def bracket_by_trees(g: SignedPlanarGraph) -> LaurentPoly:
    """Kauffman bracket as the sum of Thistlethwaite monomials over spanning trees."""
    total = LaurentPoly.zero("A")
    for t in enumerate_trees(g):
        total = total + thistlethwaite_monomial(activity_word(g, t))
    return total


def writhe_normalization(bracket: LaurentPoly, writhe: int) -> LaurentPoly:
    """``(-A)^(-3w) * bracket`` in the variable A."""
    sign = -1 if writhe % 2 else 1
    return bracket * LaurentPoly.monomial(sign, -3 * writhe, "A")


def jones(d: Diagram) -> LaurentPoly:
    """Jones polynomial in ``t = A^-4`` (half-integer powers for some links)."""
    f = writhe_normalization(bracket_by_trees(canonical_tait_graph(d)), d.writhe)
    return f.substitute(Fraction(-1, 4), "t")


def jones_q(d: Diagram) -> LaurentPoly:
    """``V(q^2)`` as a polynomial in ``q = A^-2`` with integer exponents."""
    f = writhe_normalization(bracket_by_trees(canonical_tait_graph(d)), d.writhe)
    return f.substitute(Fraction(-1, 2), "q")


# -- gradings and smoothings --------------------------------------------------

def grading_u(w: ActivityWord) -> int:
    c = w.counts()
    return c["L"] - c["ℓ"] - c["L" + MACRON] + c["ℓ" + MACRON]


def grading_v(w: ActivityWord) -> int:
    c = w.counts()
    return c["L"] + c["D"]


def partial_smoothing(w: ActivityWord) -> str:
    """``*`` at live positions, A/B at dead positions."""
    return "".join("*" if w.is_live(i) else _SMOOTHING[x] for i, x in enumerate(w.letters))


def fundamental_markers(w: ActivityWord) -> str:
    """Markers of the maximally disconnected state of the twisted unknot."""
    return "".join(_FUNDAMENTAL[x] for x in w.letters)


def sigma(state: str) -> int:
    """#A - #B for a fully smoothed state."""
    if "*" in state:
        raise TreeError("state has unsmoothed positions")
    return state.count("A") - state.count("B")


# -- convenience ------------------------------------------------------------

@dataclass(frozen=True)
class TreeRecord:
    index: int
    mask: int
    word: ActivityWord
    u: int
    v: int
    monomial: LaurentPoly
    smoothing: str

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "edge_mask": self.mask,
            "edges": [e + 1 for e in mask_edges(self.mask)],
            "word": str(self.word),
            "word_ascii": self.word.ascii(),
            "u": self.u,
            "v": self.v,
            "monomial": self.monomial.to_pairs(),
            "smoothing": self.smoothing,
        }


def tree_records(g: SignedPlanarGraph) -> list[TreeRecord]:
    out = []
    for i, t in enumerate(enumerate_trees(g), start=1):
        w = activity_word(g, t)
        out.append(TreeRecord(i, t, w, grading_u(w), grading_v(w),
                              thistlethwaite_monomial(w), partial_smoothing(w)))
    return out


def uv_distribution(words: Sequence[ActivityWord]) -> Counter:
    return Counter((grading_u(w), grading_v(w)) for w in words)
