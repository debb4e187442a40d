"""Signed plane graphs with ordered edges and a rotation system.

A *dart* is a pair ``(edge, end)`` where ``end`` is 0 for the first listed
endpoint of the edge and 1 for the second. The rotation at a vertex is the
counterclockwise cyclic order of darts around it. Loops contribute two darts
to the same vertex; by convention the first occurrence in the rotation is
end 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

Dart = tuple[int, int]


class GraphFormatError(ValueError):
    """Malformed signed-graph text or an inconsistent rotation system."""


@dataclass(frozen=True, eq=False)
class SignedPlanarGraph:
    """Connected signed plane graph.

    ``edges[i] = (u, v, sign)`` with sign in ``{+1, -1}``; the position ``i``
    in this tuple is the edge order used for activities. ``rotation[x]`` is
    the counterclockwise tuple of darts at vertex ``x``. ``outer`` optionally
    names the unbounded region: ``("V", x)`` for the region of vertex ``x``
    (shaded in the diagram) or ``("F", edge, end)`` for the face lying
    counterclockwise of that dart.
    """

    n_vertices: int
    edges: tuple[tuple[int, int, int], ...]
    rotation: tuple[tuple[Dart, ...], ...]
    outer: Optional[tuple] = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n_vertices < 1:
            raise GraphFormatError("graph needs at least one vertex")
        for i, (u, v, s) in enumerate(self.edges):
            if s not in (1, -1):
                raise GraphFormatError(f"edge {i} has sign {s}, expected +1 or -1")
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise GraphFormatError(f"edge {i} has endpoint out of range")
        if len(self.rotation) != self.n_vertices:
            raise GraphFormatError("one rotation entry per vertex is required")
        seen = set()
        for x, rot in enumerate(self.rotation):
            for (e, end) in rot:
                if (e, end) in seen:
                    raise GraphFormatError(f"dart {(e, end)} listed twice")
                seen.add((e, end))
                if self.edges[e][end] != x:
                    raise GraphFormatError(f"dart {(e, end)} is not at vertex {x}")
        if len(seen) != 2 * len(self.edges):
            raise GraphFormatError("rotation system must list every dart exactly once")
        if not self.is_connected():
            raise GraphFormatError("graph is disconnected")

    # -- basic data ---------------------------------------------------------
    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(s for _, _, s in self.edges)

    def endpoints(self, e: int) -> tuple[int, int]:
        u, v, _ = self.edges[e]
        return u, v

    def is_connected(self) -> bool:
        parent = list(range(self.n_vertices))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for u, v, _ in self.edges:
            parent[find(u)] = find(v)
        return len({find(x) for x in range(self.n_vertices)}) == 1

    @cached_property
    def _dart_position(self) -> dict[Dart, tuple[int, int]]:
        return {h: (x, i) for x, rot in enumerate(self.rotation) for i, h in enumerate(rot)}

    def next_ccw(self, h: Dart) -> Dart:
        x, i = self._dart_position[h]
        rot = self.rotation[x]
        return rot[(i + 1) % len(rot)]

    def prev_ccw(self, h: Dart) -> Dart:
        x, i = self._dart_position[h]
        rot = self.rotation[x]
        return rot[i - 1]

    @cached_property
    def faces(self) -> list[tuple[Dart, ...]]:
        """Faces as cycles of darts; the face of dart ``h`` lies ccw of ``h``."""
        # The face counterclockwise of dart h (between h and next_ccw(h)) continues
        # along next_ccw(h) to its far end, and then lies ccw of that reversed dart.
        seen: set[Dart] = set()
        out = []
        for x in range(self.n_vertices):
            for h in self.rotation[x]:
                if h in seen:
                    continue
                cyc = []
                cur = h
                while cur not in seen:
                    seen.add(cur)
                    cyc.append(cur)
                    e, end = self.next_ccw(cur)
                    cur = (e, 1 - end)
                out.append(tuple(cyc))
        if not self.edges:
            out.append(())
        return out

    def face_of(self, h: Dart) -> int:
        for i, f in enumerate(self.faces):
            if h in f:
                return i
        raise KeyError(h)

    def euler_genus(self) -> int:
        """Genus of the surface defined by the rotation system (0 = planar)."""
        chi = self.n_vertices - self.n_edges + len(self.faces)
        return (2 - chi) // 2

    # -- construction helpers ----------------------------------------------
    @classmethod
    def from_edge_rotation(cls, n_vertices: int, edges: Sequence[tuple[int, int, int]],
                           rotation: Sequence[Sequence[int]], outer=None, name: str = "") -> "SignedPlanarGraph":
        """Build from rotation lists of edge indices (loops listed twice)."""
        darts = []
        for x, rot in enumerate(rotation):
            used: dict[int, int] = {}
            out = []
            for e in rot:
                u, v, _ = edges[e]
                if u == v:
                    end = used.get(e, -1) + 1
                    used[e] = end
                    if end > 1:
                        raise GraphFormatError(f"loop {e} listed more than twice at {x}")
                else:
                    if x == u:
                        end = 0
                    elif x == v:
                        end = 1
                    else:
                        raise GraphFormatError(f"edge {e} is not incident to vertex {x}")
                out.append((e, end))
            darts.append(tuple(out))
        return cls(n_vertices, tuple(tuple(t) for t in edges), tuple(darts), outer, name)

    def normalized(self) -> "SignedPlanarGraph":
        """Copy with loop ends renamed so the first occurrence is end 0."""
        return SignedPlanarGraph.from_edge_rotation(
            self.n_vertices, self.edges, [[e for e, _ in rot] for rot in self.rotation],
            self._normalized_outer(), self.name)

    def _normalized_outer(self):
        if self.outer is None or self.outer[0] == "V":
            return self.outer
        _, e, end = self.outer
        u, v, _ = self.edges[e]
        if u != v:
            return self.outer
        rot = self.rotation[u]
        first = [h for h in rot if h[0] == e][0]
        return ("F", e, 0 if first == (e, end) else 1)

    def relabel_edges(self, order: Sequence[int]) -> "SignedPlanarGraph":
        """Reorder edges: new edge ``k`` is old edge ``order[k]``."""
        inv = {old: new for new, old in enumerate(order)}
        edges = [self.edges[old] for old in order]
        rotation = [tuple((inv[e], end) for e, end in rot) for rot in self.rotation]
        outer = self.outer
        if outer is not None and outer[0] == "F":
            outer = ("F", inv[outer[1]], outer[2])
        return SignedPlanarGraph(self.n_vertices, tuple(edges), tuple(rotation), outer, self.name)

    def same_embedding(self, other: "SignedPlanarGraph") -> bool:
        """Equal as signed plane graphs with the same edge labels, up to vertex names."""
        if self.n_edges != other.n_edges or self.n_vertices != other.n_vertices:
            return False
        if self.signs != other.signs:
            return False
        if not self.edges:
            return True

        def canon(g):
            cycles = []
            for rot in g.rotation:
                seq = [e for e, _ in rot]
                if not seq:
                    cycles.append(())
                    continue
                k = len(seq)
                cycles.append(min(tuple(seq[i:] + seq[:i]) for i in range(k)))
            return sorted(cycles)

        return canon(self) == canon(other)

    def plane_isomorphism(self, other: "SignedPlanarGraph", mirror: bool = True) -> Optional[list[int]]:
        """Sign-preserving isomorphism of plane graphs ignoring edge labels.

        Returns ``edge_map`` with edge ``e`` of ``self`` sent to ``edge_map[e]``
        of ``other``.  With ``mirror`` the embedding may also be reflected.
        """
        if (self.n_edges, self.n_vertices) != (other.n_edges, other.n_vertices):
            return None
        if not self.edges:
            return []
        start = next(h for rot in self.rotation for h in rot)
        targets = [h for rot in other.rotation for h in rot]
        for flip in ((False, True) if mirror else (False,)):
            for t in targets:
                dmap = {start: t}
                todo = [start]
                ok = True
                while todo and ok:
                    h = todo.pop()
                    img = dmap[h]
                    if self.edges[h[0]][2] != other.edges[img[0]][2]:
                        ok = False
                        break
                    nxt = other.prev_ccw(img) if flip else other.next_ccw(img)
                    for a, b in ((self.next_ccw(h), nxt), ((h[0], 1 - h[1]), (img[0], 1 - img[1]))):
                        if a in dmap:
                            if dmap[a] != b:
                                ok = False
                                break
                        else:
                            dmap[a] = b
                            todo.append(a)
                if ok and len(set(dmap.values())) == len(dmap) == 2 * self.n_edges:
                    return [dmap[(e, 0)][0] for e in range(self.n_edges)]
        return None

    # -- text format --------------------------------------------------------
    def emit(self) -> str:
        lines = [f"V {self.n_vertices}"]
        for i, (u, v, s) in enumerate(self.edges, start=1):
            lines.append(f"E {i} {u} {v} {'+1' if s > 0 else '-1'}")
        for x, rot in enumerate(self.rotation):
            lines.append(" ".join(["R", str(x)] + [str(e + 1) for e, _ in rot]))
        if self.outer is not None:
            if self.outer[0] == "V":
                lines.append(f"O V {self.outer[1]}")
            else:
                lines.append(f"O F {self.outer[1] + 1} {self.outer[2]}")
        return "\n".join(lines) + "\n"


def parse_graph(text: str, name: str = "") -> SignedPlanarGraph:
    """Parse the signed-graph text format.

    ``V n`` gives the vertex count (vertices ``0..n-1``); ``E i u v s`` adds
    edge ``i`` (1-based, listed in order) with sign ``s``; ``R v e1 e2 ...``
    lists the counterclockwise rotation at ``v`` by edge index (loops twice);
    the optional ``O V x`` / ``O F e end`` marks the unbounded region.
    Lines starting with ``#`` are comments.
    """
    n = None
    edges: dict[int, tuple[int, int, int]] = {}
    rotation: dict[int, list[int]] = {}
    outer = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        try:
            if tok[0] == "V":
                n = int(tok[1])
            elif tok[0] == "E":
                i, u, v, s = int(tok[1]), int(tok[2]), int(tok[3]), int(tok[4])
                if i in edges:
                    raise GraphFormatError(f"line {lineno}: edge {i} defined twice")
                edges[i] = (u, v, s)
            elif tok[0] == "R":
                rotation[int(tok[1])] = [int(t) - 1 for t in tok[2:]]
            elif tok[0] == "O":
                if tok[1] == "V":
                    outer = ("V", int(tok[2]))
                elif tok[1] == "F":
                    outer = ("F", int(tok[2]) - 1, int(tok[3]))
                else:
                    raise GraphFormatError(f"line {lineno}: bad outer marker")
            else:
                raise GraphFormatError(f"line {lineno}: unknown record {tok[0]!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, GraphFormatError):
                raise
            raise GraphFormatError(f"line {lineno}: malformed record {line!r}") from exc
    if n is None:
        raise GraphFormatError("missing 'V n' record")
    if sorted(edges) != list(range(1, len(edges) + 1)):
        raise GraphFormatError("edge indices must be 1..m")
    edge_list = [edges[i] for i in range(1, len(edges) + 1)]
    rot = [rotation.get(x, []) for x in range(n)]
    if set(rotation) - set(range(n)):
        raise GraphFormatError("rotation given for unknown vertex")
    if any(not rotation.get(x) for x in range(n)) and edge_list:
        missing = [x for x in range(n) if not rotation.get(x)]
        raise GraphFormatError(f"missing rotation for vertices {missing}")
    g = SignedPlanarGraph.from_edge_rotation(n, edge_list, rot, outer, name)
    if g.euler_genus() != 0:
        raise GraphFormatError("rotation system is not planar")
    return g


_GRAPH_TOKEN = re.compile(r"^\s*V\s+\d+", re.M)


def looks_like_graph(text: str) -> bool:
    return bool(_GRAPH_TOKEN.search(text))
