"""Link diagrams in PD notation, checkerboard colorings, Tait graphs and medials.

A crossing record ``(a, b, c, d)`` lists arc labels counterclockwise starting
from the incoming under-strand, so the under-strand runs ``a -> c`` and the
over-strand joins ``b`` and ``d``. Slot ``k`` of a crossing is the position
of the ``k``-th label; corner ``k`` is the region between slots ``k`` and
``k+1``.

Kauffman's A-smoothing at a crossing joins slots ``(0,1)`` and ``(2,3)``;
it merges the regions at corners 1 and 3 (the A-regions).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

from .graph import SignedPlanarGraph

Slot = tuple[int, int]
Corner = tuple[int, int]

UNKNOT_TOKEN = "UNKNOT"


class DiagramError(ValueError):
    """Malformed or unsupported diagram input."""


@dataclass(frozen=True, eq=False)
class Diagram:
    """A connected link diagram on the sphere.

    ``crossings`` holds PD records; ``basepoint`` is an arc label; ``outer``
    is a corner ``(crossing, k)`` lying in the unbounded region, or ``None``
    to use the default (the face with most corners, earliest on ties). The
    0-crossing round unknot has ``crossings == ()`` and the single arc 1.
    """

    crossings: tuple[tuple[int, int, int, int], ...]
    basepoint: int = 1
    outer: Optional[Corner] = None
    name: str = field(default="", compare=False)
    explicit_basepoint: bool = field(default=False, compare=False)

    def __post_init__(self):
        self._validate()

    # -- validation ---------------------------------------------------------
    def _validate(self):
        if not self.crossings:
            if self.basepoint != 1:
                raise DiagramError("the round unknot has the single arc 1")
            return
        counts: dict[int, int] = {}
        for rec in self.crossings:
            if len(rec) != 4:
                raise DiagramError(f"crossing record {rec} does not have 4 labels")
            for a in rec:
                counts[a] = counts.get(a, 0) + 1
        bad = sorted(a for a, k in counts.items() if k != 2)
        if bad:
            raise DiagramError(f"arc labels {bad} are not used exactly twice")
        if self.basepoint not in counts:
            raise DiagramError(f"basepoint arc {self.basepoint} is not an arc of the diagram")
        # connectivity of the 4-valent graph
        parent = list(range(len(self.crossings)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for (c1, _), (c2, _) in self._arc_slots.values():
            parent[find(c1)] = find(c2)
        if len({find(c) for c in range(len(self.crossings))}) != 1:
            raise DiagramError("diagram is disconnected")
        n = len(self.crossings)
        if len(self.faces) != n + 2:
            raise DiagramError(f"not a planar diagram: V-E+F = {n - 2 * n + len(self.faces)}")
        if self.outer is not None:
            c, k = self.outer
            if not (0 <= c < n and 0 <= k < 4):
                raise DiagramError(f"outer corner {self.outer} out of range")
        self.orientation  # raises on inconsistent orientation

    # -- incidence structure ------------------------------------------------
    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @cached_property
    def arcs(self) -> tuple[int, ...]:
        if not self.crossings:
            return (1,)
        return tuple(sorted({a for rec in self.crossings for a in rec}))

    @cached_property
    def _arc_slots(self) -> dict[int, tuple[Slot, Slot]]:
        slots: dict[int, list[Slot]] = {}
        for c, rec in enumerate(self.crossings):
            for s, a in enumerate(rec):
                slots.setdefault(a, []).append((c, s))
        return {a: (v[0], v[1]) for a, v in slots.items()}

    def other_end(self, c: int, s: int) -> Slot:
        a = self.crossings[c][s]
        s1, s2 = self._arc_slots[a]
        return s2 if s1 == (c, s) else s1

    # -- faces --------------------------------------------------------------
    @cached_property
    def faces(self) -> tuple[tuple[Corner, ...], ...]:
        """Faces as corner cycles, ordered by their smallest corner."""
        if not self.crossings:
            return ((), ())
        seen: set[Corner] = set()
        out = []
        for c in range(len(self.crossings)):
            for k in range(4):
                if (c, k) in seen:
                    continue
                cyc = []
                cur = (c, k)
                while cur not in seen:
                    seen.add(cur)
                    cyc.append(cur)
                    # the region right of travel along slot k+1 continues at the far end
                    cur = self.other_end(cur[0], (cur[1] + 1) % 4)
                out.append(tuple(cyc))
        return tuple(out)

    @cached_property
    def _face_of_corner(self) -> dict[Corner, int]:
        return {corner: i for i, f in enumerate(self.faces) for corner in f}

    def face_of(self, corner: Corner) -> int:
        return self._face_of_corner[corner]

    @cached_property
    def outer_face(self) -> int:
        if not self.crossings:
            return 1
        if self.outer is not None:
            return self.face_of(self.outer)
        sizes = [len(f) for f in self.faces]
        return sizes.index(max(sizes))

    # -- orientation and writhe --------------------------------------------
    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Oriented components as sequences of arc labels in travel order."""
        return tuple(comp for comp, _ in self._oriented)

    @cached_property
    def orientation(self) -> dict[int, Slot]:
        """Arc label -> the slot through which the arc is entered at its head."""
        heads = {}
        for _, arcs_heads in self._oriented:
            heads.update(arcs_heads)
        return heads

    @cached_property
    def _oriented(self):
        if not self.crossings:
            return [((1,), {})]

        def trace(start: Slot):
            # leave through `start`, arrive at the far end, exit through the opposite slot
            arcs, heads = [], {}
            cur = start
            while True:
                c, s = cur
                a = self.crossings[c][s]
                arcs.append(a)
                arr = self.other_end(c, s)
                heads[a] = arr
                cur = (arr[0], (arr[1] + 2) % 4)
                if cur == start:
                    return arcs, heads

        done: set[int] = set()
        out = []
        for a in self.arcs:
            if a in done:
                continue
            s1, s2 = self._arc_slots[a]
            fwd = trace(s1)
            bwd = trace(s2)
            comp = set(fwd[0])
            # admissible iff every under-passage is entered at slot 0
            choices = [t for t in (fwd, bwd)
                       if all(s != 2 for (_, s) in t[1].values())]
            if not choices:
                raise DiagramError(f"inconsistent under-strand orientation on component of arc {a}")
            if len(choices) == 2:
                # only over-passages: travel from the lowest arc toward the smaller neighbour
                choices.sort(key=lambda t: t[0][1] if len(t[0]) > 1 else 0)
            arcs, heads = choices[0]
            lo = min(arcs)
            i = arcs.index(lo)
            arcs = arcs[i:] + arcs[:i]
            out.append((tuple(arcs), heads))
            done |= comp
        out.sort(key=lambda t: t[0][0])
        return out

    @property
    def component_count(self) -> int:
        return len(self.components)

    def crossing_sign(self, c: int) -> int:
        """+1 for a positive crossing, -1 for a negative one."""
        rec = self.crossings[c]
        # the over-strand is entered at slot 3 (d -> b) for a positive crossing
        if self.orientation[rec[3]] == (c, 3):
            return 1
        if self.orientation[rec[1]] == (c, 1):
            return -1
        raise DiagramError(f"cannot orient over-strand at crossing {c}")

    @cached_property
    def writhe(self) -> int:
        return sum(self.crossing_sign(c) for c in range(len(self.crossings)))

    # -- smoothing ----------------------------------------------------------
    def smoothing_pairs(self, c: int, marker: str) -> tuple[tuple[int, int], tuple[int, int]]:
        """Slot pairs joined by the A or B smoothing of crossing ``c``."""
        if marker == "A":
            return (0, 1), (2, 3)
        if marker == "B":
            return (1, 2), (3, 0)
        raise ValueError(marker)

    # -- text format --------------------------------------------------------
    def emit(self) -> str:
        if not self.crossings:
            return UNKNOT_TOKEN + "\n"
        lines = [" ".join(["X"] + [str(a) for a in rec]) for rec in self.crossings]
        if self.explicit_basepoint:
            lines.append(f"P {self.basepoint}")
        if self.outer is not None:
            lines.append(f"O {self.outer[0] + 1} {self.outer[1]}")
        return "\n".join(lines) + "\n"

    def with_basepoint(self, arc: int) -> "Diagram":
        return Diagram(self.crossings, arc, self.outer, self.name, True)

    def reorder(self, order: Sequence[int]) -> "Diagram":
        """Reorder crossings: new crossing ``k`` is old crossing ``order[k]``."""
        inv = {old: new for new, old in enumerate(order)}
        outer = None if self.outer is None else (inv[self.outer[0]], self.outer[1])
        if self.outer is None and self.crossings:
            # pin the default outer face so it survives the reordering
            c, k = self.faces[self.outer_face][0]
            outer = (inv[c], k)
        return Diagram(tuple(self.crossings[o] for o in order), self.basepoint, outer,
                       self.name, self.explicit_basepoint)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Diagram{label} crossings={len(self.crossings)} basepoint={self.basepoint}>"


_BRACKET = re.compile(r"X?\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]")


def parse_pd(text: str, basepoint: Optional[int] = None, name: str = "") -> Diagram:
    """Parse a PD code.

    Accepts one ``X a b c d`` record per line (``#`` starts a comment), the
    bracketed forms ``X[a,b,c,d]`` / ``[[a,b,c,d], ...]``, or the token
    ``UNKNOT`` for the 0-crossing round unknot. Optional ``P arc`` sets the
    basepoint and ``O crossing corner`` (1-based crossing) pins the outer face.
    """
    records: list[tuple[int, int, int, int]] = []
    outer = None
    explicit = basepoint is not None
    unknot = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.upper() == UNKNOT_TOKEN:
            unknot = True
            continue
        if "[" in line:
            found = _BRACKET.findall(line)
            if not found:
                raise DiagramError(f"line {lineno}: malformed record {line!r}")
            records.extend(tuple(int(x) for x in m) for m in found)
            continue
        tok = line.split()
        try:
            if tok[0] == "X":
                if len(tok) != 5:
                    raise DiagramError(f"line {lineno}: crossing record needs 4 labels")
                records.append(tuple(int(t) for t in tok[1:]))
            elif tok[0] == "P":
                if basepoint is None:
                    basepoint = int(tok[1])
                    explicit = True
            elif tok[0] == "O":
                outer = (int(tok[1]) - 1, int(tok[2]))
            else:
                raise DiagramError(f"line {lineno}: unknown record {tok[0]!r}")
        except ValueError as exc:
            if isinstance(exc, DiagramError):
                raise
            raise DiagramError(f"line {lineno}: malformed record {line!r}") from exc
    if unknot and records:
        raise DiagramError("UNKNOT token cannot be combined with crossings")
    if not unknot and not records:
        raise DiagramError("empty PD code")
    if basepoint is None:
        basepoint = 1 if unknot else min(a for rec in records for a in rec)
    return Diagram(tuple(records), basepoint, outer, name, explicit)


def unknot() -> Diagram:
    return Diagram((), 1, None, "unknot")


def from_braid(word: Sequence[int], strands: Optional[int] = None, name: str = "") -> Diagram:
    """PD code of a braid closure.

    ``k`` in ``word`` is the generator crossing strands ``|k|`` and ``|k|+1``
    (1-based), positive for ``k > 0``.  Strands run upward; a positive
    generator has its over-strand going from lower left to upper right.
    Arc labels are renumbered 1, 2, ... in order of first use.
    """
    if not word:
        raise DiagramError("empty braid word")
    n = strands or (max(abs(k) for k in word) + 1)
    fresh = iter(range(1, 10 ** 9))
    start = [next(fresh) for _ in range(n)]
    cur = list(start)
    raw = []
    for k in word:
        i = abs(k) - 1
        if k == 0 or i + 1 >= n:
            raise DiagramError(f"bad braid generator {k}")
        l_in, r_in = cur[i], cur[i + 1]
        l_out, r_out = next(fresh), next(fresh)
        if k > 0:
            raw.append((r_in, r_out, l_out, l_in))
        else:
            raw.append((l_in, r_in, r_out, l_out))
        cur[i], cur[i + 1] = l_out, r_out
    close = dict(zip(cur, start))
    relabel: dict[int, int] = {}
    records = []
    for rec in raw:
        out = []
        for a in rec:
            a = close.get(a, a)
            if a not in relabel:
                relabel[a] = len(relabel) + 1
            out.append(relabel[a])
        records.append(tuple(out))
    return Diagram(tuple(records), 1, None, name)


# -- checkerboard colorings -------------------------------------------------

@dataclass(frozen=True)
class Coloring:
    """Set of shaded faces of a diagram (indices into ``Diagram.faces``)."""

    shaded: frozenset[int]
    n_faces: int

    @property
    def unshaded(self) -> frozenset[int]:
        return frozenset(range(self.n_faces)) - self.shaded

    def complement(self) -> "Coloring":
        return Coloring(self.unshaded, self.n_faces)

    def split(self) -> tuple[int, int]:
        return len(self.shaded), self.n_faces - len(self.shaded)


def checkerboard(d: Diagram) -> tuple[Coloring, Coloring]:
    """Both checkerboard colorings; the first shades the face of corner (0, 0)."""
    nf = len(d.faces)
    if not d.crossings:
        first = Coloring(frozenset({0}), 2)
        return first, first.complement()
    color = {0: 0}
    stack = [0]
    while stack:
        f = stack.pop()
        for (c, k) in d.faces[f]:
            for nb in ((c, (k + 1) % 4), (c, (k - 1) % 4)):
                g = d.face_of(nb)
                want = 1 - color[f]
                if g not in color:
                    color[g] = want
                    stack.append(g)
                elif color[g] != want:
                    raise DiagramError("faces are not 2-colorable")
    first = Coloring(frozenset(f for f, col in color.items() if col == 0), nf)
    return first, first.complement()


def _shaded_corners(d: Diagram, coloring: Coloring, c: int) -> tuple[int, int]:
    if d.face_of((c, 1)) in coloring.shaded:
        return 1, 3
    return 0, 2


def tait_graph(d: Diagram, coloring: Coloring) -> SignedPlanarGraph:
    """Signed Tait graph: shaded faces become vertices, crossings become edges.

    An edge is positive when the A-smoothing merges its two shaded regions.
    Edge ``i`` is crossing ``i``; its end 0 sits in the shaded corner with the
    smaller index.
    """
    shaded = sorted(coloring.shaded)
    vid = {f: i for i, f in enumerate(shaded)}
    if not d.crossings:
        outer = ("V", 0) if d.outer_face in coloring.shaded else None
        return SignedPlanarGraph(1, (), ((),), outer, d.name)
    edges = []
    low = []
    for c in range(d.n_crossings):
        k1, k2 = _shaded_corners(d, coloring, c)
        low.append(k1)
        sign = 1 if k1 == 1 else -1
        edges.append((vid[d.face_of((c, k1))], vid[d.face_of((c, k2))], sign))
    rotation = []
    for f in shaded:
        darts = [(c, 0 if k == low[c] else 1) for (c, k) in d.faces[f]]
        # faces are walked clockwise around their interior
        rotation.append(tuple(reversed(darts)))
    of = d.outer_face
    if of in coloring.shaded:
        outer = ("V", vid[of])
    else:
        c, k = d.faces[of][0]
        k1 = low[c]
        outer = ("F", c, 0) if k == (k1 + 3) % 4 else ("F", c, 1)
    g = SignedPlanarGraph(len(shaded), tuple(edges), tuple(rotation), outer, d.name)
    return g.normalized()


def canonical_coloring(d: Diagram) -> Coloring:
    """Coloring with more positive Tait edges; on a tie, the unbounded face unshaded."""
    c1, c2 = checkerboard(d)
    p1 = sum(1 for s in tait_graph(d, c1).signs if s > 0)
    p2 = sum(1 for s in tait_graph(d, c2).signs if s > 0)
    if p1 != p2:
        return c1 if p1 > p2 else c2
    return c1 if d.outer_face not in c1.shaded else c2


def canonical_tait_graph(d: Diagram) -> SignedPlanarGraph:
    return tait_graph(d, canonical_coloring(d))


# -- medial construction ----------------------------------------------------

# Quadrants around the midpoint of edge e drawn from end 0 (west) to end 1
# (east), counterclockwise: 0=NE, 1=NW, 2=SW, 3=SE.
_CCW_SIDE = {0: 1, 1: 3}
_CW_SIDE = {0: 2, 1: 0}


def medial(g: SignedPlanarGraph, basepoint_dart=None, name: str = "") -> Diagram:
    """The diagram whose Tait graph (shaded = vertex regions) is ``g``.

    Crossing ``i`` corresponds to edge ``i``. Arcs are labelled consecutively
    along each component. ``basepoint_dart`` optionally places the basepoint
    on the arc passing the corner counterclockwise of that dart; otherwise it
    is arc 1.
    """
    if not g.edges:
        return Diagram((), 1, None, name or g.name)
    # arcs: one per dart h, joining (e(h), ccw slot) with (e(next), cw slot)
    arc_ends: list[tuple[tuple[int, int], tuple[int, int]]] = []
    slot_arc: dict[tuple[int, int], int] = {}
    dart_arc = {}
    for rot in g.rotation:
        for h in rot:
            nxt = g.next_ccw(h)
            a = (h[0], _CCW_SIDE[h[1]])
            b = (nxt[0], _CW_SIDE[nxt[1]])
            idx = len(arc_ends)
            arc_ends.append((a, b))
            slot_arc[a] = idx
            slot_arc[b] = idx
            dart_arc[h] = idx
    # under-strand quadrants: NE-SW for positive edges, NW-SE for negative
    label = {}
    head = {}
    next_label = 1
    for start in range(len(arc_ends)):
        if start in label:
            continue
        cur, tail = start, arc_ends[start][0]
        while cur not in label:
            label[cur] = next_label
            next_label += 1
            a, b = arc_ends[cur]
            arrive = b if a == tail else a
            head[cur] = arrive
            e, q = arrive
            out_slot = (e, (q + 2) % 4)
            cur = slot_arc[out_slot]
            tail = out_slot
    records = []
    q_ins = []
    for e, (_, _, sign) in enumerate(g.edges):
        under = (0, 2) if sign > 0 else (1, 3)
        q_in = next(q for q in under if head[slot_arc[(e, q)]] == (e, q))
        q_ins.append(q_in)
        records.append(tuple(label[slot_arc[(e, (q_in + k) % 4)]] for k in range(4)))
    bp = 1 if basepoint_dart is None else label[dart_arc[tuple(basepoint_dart)]]
    outer = None
    if g.outer is not None:
        outer = _medial_outer_corner(g, q_ins)
    return Diagram(tuple(records), bp, outer, name or g.name, basepoint_dart is not None)


def _medial_outer_corner(g: SignedPlanarGraph, q_ins: list[int]):
    # express the requested region as a (crossing, PD corner) pair
    if g.outer[0] == "V":
        x = g.outer[1]
        if not g.rotation[x]:
            return None
        e, end = g.rotation[x][0]
        quad_lo = 1 if end == 0 else 3  # corner between quadrants (1,2) or (3,0)
    else:
        _, e, end = g.outer
        quad_lo = 0 if end == 0 else 2  # north corner (0,1) or south corner (2,3)
    return (e, (quad_lo - q_ins[e]) % 4)
