"""Integer linear algebra and sparse bigraded chain complexes.

The differential of every complex here raises the first degree ``i`` by one
and preserves the second degree ``j``.  Homology is computed by eliminating
unit incidences (algebraic Gaussian elimination, which never changes the
homology) and finishing the small remainder with a dense Smith normal form.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Optional

Key = Hashable


class DifferentialError(ArithmeticError):
    """The differential does not square to zero, or a pivot is not a unit."""


# -- dense integer matrices ---------------------------------------------------

def smith_diagonal(matrix: list[list[int]]) -> list[int]:
    """Nonzero invariant factors ``d1 | d2 | ...`` of an integer matrix."""
    a = [list(map(int, row)) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag: list[int] = []
    t = 0
    while t < min(rows, cols):
        # smallest nonzero entry in the remaining block becomes the pivot
        best = None
        for r in range(t, rows):
            for c in range(t, cols):
                v = a[r][c]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), r, c)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, r, c = best
        a[t], a[r] = a[r], a[t]
        for row in a:
            row[t], row[c] = row[c], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for r in range(t + 1, rows):
                if a[r][t]:
                    q = a[r][t] // p
                    if q:
                        rt, rr = a[t], a[r]
                        for c in range(t, cols):
                            rr[c] -= q * rt[c]
                    if a[r][t]:
                        dirty = True
            for c in range(t + 1, cols):
                if a[t][c]:
                    q = a[t][c] // p
                    if q:
                        for r in range(t, rows):
                            a[r][c] -= q * a[r][t]
                    if a[t][c]:
                        dirty = True
            if not dirty:
                # pivot must divide the rest of the block
                bad = next(((r, c) for r in range(t + 1, rows) for c in range(t + 1, cols)
                            if a[r][c] % p), None)
                if bad is None:
                    break
                r, _ = bad
                for c in range(t, cols):
                    a[t][c] += a[r][c]
                continue
            # move the smallest entry of row/column t onto the diagonal
            best = (abs(p), t, t)
            for r in range(t + 1, rows):
                if a[r][t] and abs(a[r][t]) < best[0]:
                    best = (abs(a[r][t]), r, t)
            for c in range(t + 1, cols):
                if a[t][c] and abs(a[t][c]) < best[0]:
                    best = (abs(a[t][c]), t, c)
            _, r, c = best
            if r != t:
                a[t], a[r] = a[r], a[t]
            if c != t:
                for row in a:
                    row[t], row[c] = row[c], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def rank_q(matrix: list[list]) -> int:
    """Exact rank over the rationals (fraction-free elimination)."""
    a = [[Fraction(x) for x in row] for row in matrix]
    rank = 0
    rows = len(a)
    cols = len(a[0]) if rows else 0
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if a[r][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pr = a[rank]
        for r in range(rank + 1, rows):
            if a[r][c]:
                f = a[r][c] / pr[c]
                row = a[r]
                for k in range(c, cols):
                    row[k] -= f * pr[k]
        rank += 1
        if rank == rows:
            break
    return rank


def _prime_powers(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            out.append(q)
        p += 1
    if n > 1:
        out.append(n)
    return out


# -- bigraded groups --------------------------------------------------------

@dataclass(frozen=True)
class BigradedGroups:
    """Free ranks and torsion coefficients per bidegree ``(i, j)``."""

    groups: Mapping[tuple[int, int], tuple[int, tuple[int, ...]]] = field(default_factory=dict)

    @classmethod
    def from_parts(cls, ranks: Mapping, torsion: Mapping | None = None) -> "BigradedGroups":
        torsion = torsion or {}
        out = {}
        for key in set(ranks) | set(torsion):
            r = ranks.get(key, 0)
            tor = tuple(sorted(x for t in torsion.get(key, ()) for x in _prime_powers(t) if x > 1))
            if r or tor:
                out[key] = (r, tor)
        return cls(dict(sorted(out.items())))

    def rank(self, i: int, j: int) -> int:
        return self.groups.get((i, j), (0, ()))[0]

    def torsion(self, i: int, j: int) -> tuple[int, ...]:
        return self.groups.get((i, j), (0, ()))[1]

    def total_rank(self) -> int:
        return sum(r for r, _ in self.groups.values())

    def ranks(self) -> dict[tuple[int, int], int]:
        return {k: r for k, (r, _) in self.groups.items() if r}

    def euler_characteristic(self, var: str = "q"):
        from .polynomial import LaurentPoly
        return LaurentPoly({}, var) + LaurentPoly(
            _accumulate(((j, (-1) ** (i % 2) * r) for (i, j), (r, _) in self.groups.items())), var)

    def shifted(self, di: int, dj: int) -> "BigradedGroups":
        return BigradedGroups({(i + di, j + dj): v for (i, j), v in self.groups.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, BigradedGroups):
            return NotImplemented
        return dict(self.groups) == dict(other.groups)

    def __hash__(self):
        return hash(tuple(sorted(self.groups.items())))

    def to_json(self) -> list[dict]:
        return [{"i": i, "j": j, "rank": r, "torsion": list(t)}
                for (i, j), (r, t) in sorted(self.groups.items())]

    def table(self, row_label: str = "j", col_label: str = "i") -> str:
        """Text table with rows indexed by ``j`` and columns by ``i``."""
        if not self.groups:
            return "(zero)\n"
        i_vals = sorted({i for i, _ in self.groups})
        j_vals = sorted({j for _, j in self.groups}, reverse=True)
        cells = {}
        for (i, j), (r, t) in self.groups.items():
            parts = [str(r)] if r else []
            parts += [f"Z{x}" for x in t]
            cells[(i, j)] = "+".join(parts)
        width = max(4, max(len(c) for c in cells.values()) + 1)
        lines = [f"{row_label}\\{col_label}".rjust(5) + "".join(str(i).rjust(width) for i in i_vals)]
        for j in j_vals:
            lines.append(str(j).rjust(5) + "".join(cells.get((i, j), ".").rjust(width) for i in i_vals))
        return "\n".join(lines) + "\n"


def _accumulate(pairs: Iterable[tuple]) -> dict:
    acc: dict = defaultdict(int)
    for k, v in pairs:
        acc[k] += v
    return acc


# -- sparse complexes -------------------------------------------------------

class SparseComplex:
    """Free bigraded cochain complex over the integers with a sparse differential.

    ``d[x]`` maps a generator to ``{target: coeff}``; ``co[y]`` is the
    transpose.  Generators carry a bidegree ``(i, j)`` and ``d`` must have
    bidegree ``(1, 0)``.
    """

    def __init__(self):
        self.degree: dict[Key, tuple[int, int]] = {}
        self.d: dict[Key, dict[Key, int]] = {}
        self.co: dict[Key, dict[Key, int]] = {}

    # -- construction -------------------------------------------------------
    def add_generator(self, x: Key, i: int, j: int) -> None:
        if x in self.degree:
            raise KeyError(f"duplicate generator {x!r}")
        self.degree[x] = (i, j)
        self.d[x] = {}
        self.co[x] = {}

    def add_entry(self, x: Key, y: Key, coeff: int) -> None:
        if not coeff:
            return
        row = self.d[x]
        v = row.get(y, 0) + coeff
        if v:
            row[y] = v
            self.co[y][x] = v
        else:
            row.pop(y, None)
            self.co[y].pop(x, None)

    def copy(self) -> "SparseComplex":
        out = SparseComplex()
        out.degree = dict(self.degree)
        out.d = {k: dict(v) for k, v in self.d.items()}
        out.co = {k: dict(v) for k, v in self.co.items()}
        return out

    def __len__(self) -> int:
        return len(self.degree)

    def __contains__(self, x) -> bool:
        return x in self.degree

    def generators(self) -> list[Key]:
        return list(self.degree)

    def entry(self, x: Key, y: Key) -> int:
        return self.d[x].get(y, 0)

    def apply(self, chain: Mapping[Key, int]) -> dict[Key, int]:
        out: dict[Key, int] = defaultdict(int)
        for x, c in chain.items():
            for y, v in self.d[x].items():
                out[y] += c * v
        return {k: v for k, v in out.items() if v}

    # -- checks -------------------------------------------------------------
    def check(self) -> None:
        """Raise unless ``d`` has bidegree (1, 0) and squares to zero."""
        for x, row in self.d.items():
            i, j = self.degree[x]
            for y in row:
                if self.degree[y] != (i + 1, j):
                    raise DifferentialError(f"entry {x!r}->{y!r} has wrong bidegree")
            if self.apply(row):
                raise DifferentialError(f"d(d({x!r})) != 0")

    # -- elimination --------------------------------------------------------
    def eliminate(self, a: Key, b: Key) -> None:
        """Gaussian elimination of the unit incidence ``a -> b``.

        Every other ``x -> b`` is rerouted through ``a``:
        ``d'x = dx - (<dx,b>/c) da`` with ``c = <da,b>``.  Generators ``a``
        and ``b`` disappear.
        """
        c = self.d[a].get(b, 0)
        if c not in (1, -1):
            raise DifferentialError(f"pivot {a!r}->{b!r} is {c}, not a unit")
        da = {y: v for y, v in self.d[a].items() if y != b}
        sources = [(x, v) for x, v in self.co[b].items() if x != a]
        for x, v in sources:
            f = v * c  # v / c for c = +-1
            for y, w in da.items():
                self.add_entry(x, y, -f * w)
        self._drop(a)
        self._drop(b)

    def change_basis(self, old: Key, new: Key, vector: Mapping[Key, int], degree=None) -> None:
        """Replace generator ``old`` by ``new = sum vector[k] k``.

        ``vector[old]`` must be a unit so the result is again a basis.
        """
        c = vector.get(old, 0)
        if c not in (1, -1):
            raise DifferentialError("basis change needs a unit coefficient on the replaced generator")
        deg = self.degree[old] if degree is None else degree
        # differential of the new generator, in the old basis
        dnew = self.apply(vector)
        # occurrences of `old` as a target: old = c*(new - sum_{k != old} v_k k)
        incoming = dict(self.co[old])
        for x in incoming:
            self.d[x].pop(old, None)
        self._drop(old)
        self.add_generator(new, *deg)
        for x, v in incoming.items():
            f = v * c
            self.add_entry(x, new, f)
            for k, vk in vector.items():
                if k != old:
                    self.add_entry(x, k, -f * vk)
        for y, v in dnew.items():
            # d has degree (1, 0), so d(new) never involves `old`
            self.add_entry(new, y, v)

    def _drop(self, x: Key) -> None:
        for y in self.d.pop(x):
            self.co[y].pop(x, None)
        for y in self.co.pop(x):
            self.d[y].pop(x, None)
        del self.degree[x]

    def reduce(self, allowed: Optional[Callable[[Key, Key], bool]] = None,
               protected: Iterable[Key] = ()) -> int:
        """Eliminate unit incidences until none remain; returns the pair count.

        ``allowed(a, b)`` restricts which incidences may serve as pivots and
        ``protected`` generators are never removed.
        """
        keep = set(protected)
        count = 0
        order = sorted(self.degree, key=lambda k: (self.degree[k], repr(k)))
        for a in order:
            while a in self.degree and a not in keep:
                best = None
                for b, v in self.d[a].items():
                    if v in (1, -1) and b not in keep and (allowed is None or allowed(a, b)):
                        cost = len(self.co[b])
                        if best is None or cost < best[0]:
                            best = (cost, b)
                            if cost == 1:
                                break
                if best is None:
                    break
                self.eliminate(a, best[1])
                count += 1
        return count

    # -- homology -----------------------------------------------------------
    def blocks(self) -> dict[tuple[int, int], list[Key]]:
        out: dict[tuple[int, int], list[Key]] = defaultdict(list)
        for x, deg in self.degree.items():
            out[deg].append(x)
        return out

    def homology(self, reduce_first: bool = True) -> BigradedGroups:
        work = self.copy() if reduce_first else self
        if reduce_first:
            work.reduce()
        blocks = work.blocks()
        ranks: dict[tuple[int, int], int] = {}
        torsion: dict[tuple[int, int], list[int]] = {}
        diag_cache: dict[tuple[int, int], list[int]] = {}

        def diag(i, j):
            # invariant factors of d: C^{i,j} -> C^{i+1,j}
            if (i, j) not in diag_cache:
                src = blocks.get((i, j), [])
                dst = blocks.get((i + 1, j), [])
                if not src or not dst:
                    diag_cache[(i, j)] = []
                else:
                    pos = {y: k for k, y in enumerate(dst)}
                    mat = [[0] * len(dst) for _ in src]
                    for r, x in enumerate(src):
                        for y, v in work.d[x].items():
                            mat[r][pos[y]] = v
                    diag_cache[(i, j)] = smith_diagonal(mat)
            return diag_cache[(i, j)]

        for (i, j), gens in blocks.items():
            out_rank = len(diag(i, j))
            in_diag = diag(i - 1, j)
            ranks[(i, j)] = len(gens) - out_rank - len(in_diag)
            torsion[(i, j)] = [t for t in in_diag if t > 1]
        return BigradedGroups.from_parts(ranks, torsion)

    def matrix(self, sources: list[Key], targets: list[Key]) -> list[list[int]]:
        pos = {y: k for k, y in enumerate(targets)}
        mat = [[0] * len(targets) for _ in sources]
        for r, x in enumerate(sources):
            for y, v in self.d[x].items():
                if y in pos:
                    mat[r][pos[y]] = v
        return mat
