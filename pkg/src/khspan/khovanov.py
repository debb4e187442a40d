"""Khovanov complexes from enhanced Kauffman states.

A Kauffman state is stored as an integer mask with bit ``c`` set when
crossing ``c`` carries a B marker.  Loops of a state are sets of arc
labels, listed by increasing minimum label.  An enhancement is a mask over
that loop list with bit ``k`` set when loop ``k`` is enhanced ``+``.

Gradings, with ``sigma = #A - #B`` and ``tau = #(+) - #(-)``::

    i = (w - sigma) / 2          j = (3w - sigma) / 2 - tau

The differential changes one A marker to a B marker, raises ``i`` by one
and keeps ``j``.  It acts on the touched loops by

    merge   (+,-) -> +    (-,-) -> -    (+,+) -> 0
    split   +  -> (+,+)   -  -> (+,-) + (-,+)

with sign ``(-1)^beta``, ``beta`` the number of B markers after the changed
crossing.  The reduced complex keeps the states whose basepoint loop is ``+``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Mapping

from .algebra import BigradedGroups, SparseComplex
from .diagram import Diagram
from .polynomial import LaurentPoly

Gen = tuple[int, int]  # (marker mask, enhancement mask)
Chain = dict[Gen, int]


def markers_to_mask(markers: str) -> int:
    mask = 0
    for c, m in enumerate(markers):
        if m == "B":
            mask |= 1 << c
        elif m != "A":
            raise ValueError(f"marker {m!r} is not A or B")
    return mask


def mask_to_markers(mask: int, n: int) -> str:
    return "".join("B" if mask >> c & 1 else "A" for c in range(n))


class StateSpace:
    """Loop data for the Kauffman states of one diagram, computed lazily."""

    def __init__(self, d: Diagram):
        self.diagram = d
        self.n = d.n_crossings
        self._loops: dict[int, tuple[frozenset[int], ...]] = {}
        self._label_loop: dict[int, dict[int, int]] = {}
        self._differential: dict[Gen, Chain] = {}

    def loops(self, mask: int) -> tuple[frozenset[int], ...]:
        out = self._loops.get(mask)
        if out is None:
            out = self._compute(mask)
            self._loops[mask] = out
        return out

    def label_loop(self, mask: int) -> dict[int, int]:
        out = self._label_loop.get(mask)
        if out is None:
            out = {a: k for k, loop in enumerate(self.loops(mask)) for a in loop}
            self._label_loop[mask] = out
        return out

    def _compute(self, mask: int) -> tuple[frozenset[int], ...]:
        d = self.diagram
        if not d.crossings:
            return (frozenset({1}),)
        parent = {a: a for a in d.arcs}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for c, rec in enumerate(d.crossings):
            for s1, s2 in d.smoothing_pairs(c, "B" if mask >> c & 1 else "A"):
                ra, rb = find(rec[s1]), find(rec[s2])
                if ra != rb:
                    parent[ra] = rb
        groups: dict[int, set[int]] = {}
        for a in d.arcs:
            groups.setdefault(find(a), set()).add(a)
        return tuple(sorted((frozenset(g) for g in groups.values()), key=min))

    def basepoint_loop(self, mask: int) -> int:
        return self.label_loop(mask)[self.diagram.basepoint]

    def sigma(self, mask: int) -> int:
        return self.n - 2 * bin(mask).count("1")

    def grading(self, gen: Gen) -> tuple[int, int]:
        mask, enh = gen
        w = self.diagram.writhe
        sigma = self.sigma(mask)
        tau = 2 * bin(enh).count("1") - len(self.loops(mask))
        return (w - sigma) // 2, (3 * w - sigma) // 2 - tau

    def enhancements(self, mask: int, reduced: bool) -> Iterator[int]:
        k = len(self.loops(mask))
        p = self.basepoint_loop(mask)
        for enh in range(1 << k):
            if not reduced or enh >> p & 1:
                yield enh

    def boundary(self, gen: Gen, c: int) -> list[tuple[Gen, int]]:
        """Terms of ``d(gen)`` that change the marker at crossing ``c`` (A to B)."""
        mask, enh = gen
        if mask >> c & 1:
            return []
        target = mask | (1 << c)
        sign = -1 if bin(mask >> (c + 1)).count("1") % 2 else 1
        rec = self.diagram.crossings[c]
        src_of = self.label_loop(mask)
        dst_of = self.label_loop(target)
        src_loops = self.loops(mask)
        touched_src = sorted({src_of[a] for a in rec})
        touched_dst = sorted({dst_of[a] for a in rec})
        base = 0
        for k, loop in enumerate(src_loops):
            if k in touched_src:
                continue
            if enh >> k & 1:
                base |= 1 << dst_of[min(loop)]
        if len(touched_src) == 2 and len(touched_dst) == 1:
            a, b = (enh >> k & 1 for k in touched_src)
            if a and b:
                return []
            m = touched_dst[0]
            return [((target, base | ((a | b) << m)), sign)]
        if len(touched_src) == 1 and len(touched_dst) == 2:
            p, q = touched_dst
            if enh >> touched_src[0] & 1:
                return [((target, base | (1 << p) | (1 << q)), sign)]
            return [((target, base | (1 << p)), sign), ((target, base | (1 << q)), sign)]
        raise ValueError("smoothing change neither merges nor splits loops; diagram is not planar")

    def differential(self, gen: Gen) -> Chain:
        """``d(gen)``; the returned mapping is cached and must not be modified."""
        out = self._differential.get(gen)
        if out is None:
            acc: Chain = {}
            for c in range(self.n):
                for tgt, v in self.boundary(gen, c):
                    acc[tgt] = acc.get(tgt, 0) + v
            out = {k: v for k, v in acc.items() if v}
            self._differential[gen] = out
        return out

    def differential_chain(self, chain: Mapping[Gen, int]) -> Chain:
        out: Chain = {}
        for g, c in chain.items():
            for t, v in self.differential(g).items():
                out[t] = out.get(t, 0) + c * v
        return {k: v for k, v in out.items() if v}


@dataclass
class KhovanovComplex:
    diagram: Diagram
    reduced: bool
    space: StateSpace
    complex: SparseComplex

    def __len__(self) -> int:
        return len(self.complex)

    def homology(self) -> BigradedGroups:
        return self.complex.homology()

    def check(self) -> None:
        self.complex.check()


def build_complex(d: Diagram, reduced: bool = True, space: StateSpace | None = None) -> KhovanovComplex:
    space = space or StateSpace(d)
    cx = SparseComplex()
    n = d.n_crossings
    for mask in range(1 << n):
        for enh in space.enhancements(mask, reduced):
            cx.add_generator((mask, enh), *space.grading((mask, enh)))
    for gen in list(cx.degree):
        for c in range(n):
            for tgt, v in space.boundary(gen, c):
                cx.add_entry(gen, tgt, v)
    return KhovanovComplex(d, reduced, space, cx)


def homology(d: Diagram, reduced: bool = True) -> BigradedGroups:
    return build_complex(d, reduced).homology()


def euler_characteristic(h: BigradedGroups) -> LaurentPoly:
    """``sum (-1)^i q^j rank H^{i,j}``."""
    return h.euler_characteristic("q")


def loops(d: Diagram, markers: str) -> tuple[frozenset[int], ...]:
    """Loops of the Kauffman state given by an A/B marker string."""
    if len(markers) != d.n_crossings:
        raise ValueError("one marker per crossing is required")
    return StateSpace(d).loops(markers_to_mask(markers))


def bracket_state_sum(d: Diagram) -> LaurentPoly:
    """Kauffman bracket ``sum_s A^sigma(s) (-A^2 - A^-2)^(loops(s) - 1)``."""
    space = StateSpace(d)
    delta = LaurentPoly({2: -1, -2: -1}, "A")
    powers = [LaurentPoly.one("A")]
    total = LaurentPoly.zero("A")
    for mask in range(1 << d.n_crossings):
        k = len(space.loops(mask)) - 1
        while len(powers) <= k:
            powers.append(powers[-1] * delta)
        total = total + powers[k] * LaurentPoly.monomial(1, space.sigma(mask), "A")
    return total


def chain_degree(space: StateSpace, chain: Mapping[Gen, int]) -> set[tuple[int, int]]:
    return {space.grading(g) for g in chain}
