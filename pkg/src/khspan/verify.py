"""Acceptance drivers shared by ``khspan verify`` and the test suite.

Each check raises :class:`CheckFailure` with a readable message on the first
violation and otherwise returns a one-line summary.  :func:`run_check` adds
timing against the check's budget.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Optional

from . import fixtures
from .diagram import Diagram, canonical_tait_graph, medial
from .khovanov import bracket_state_sum, build_complex
from .matroid import (apply_flip, are_mutants, colored_matroid, compare_E2, conjecture_probe,
                      two_separations)
from .polynomial import LaurentPoly
from .random_graphs import random_graphs, random_planar_graph
from .tree_complex import (TreeData, TreeGen, classify_direct, collapse_to_tree_complex,
                           exchange_structure, filtration, khovanov_filtered, rational_page)
from .trees import bracket_by_trees, jones, jones_q, tree_records, uv_distribution

DEFAULT_SEED = 20240501


class CheckFailure(AssertionError):
    pass


@dataclass
class CheckResult:
    name: str
    passed: bool
    seconds: float
    budget: float
    detail: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name:<14} {self.seconds:7.2f}s (limit {self.budget:g}s)  {self.detail}"

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "seconds": round(self.seconds, 3),
                "budget": self.budget, "detail": self.detail}


def _expect(cond: bool, message: str) -> None:
    if not cond:
        raise CheckFailure(message)


def _load(name: str) -> Diagram:
    try:
        return fixtures.load(name)
    except Exception as exc:
        raise CheckFailure(f"fixture {name}: {exc}") from None


def _knots(max_crossings: int) -> list[tuple[str, Diagram]]:
    names = fixtures.knot_names(max_crossings)
    _expect(bool(names), f"no fixtures found in {fixtures.FIXTURE_DIR}")
    return [(n, _load(n)) for n in names]


# -- figure-8 worked example -----------------------------------------------------

def check_figure8(seed: int) -> str:
    g = fixtures.figure8_graph()
    recs = tree_records(g)
    words = [str(r.word) for r in recs]
    _expect(words == ["LLdd", "LdDd", "ℓDDd", "ℓLdD", "ℓℓDD"], f"activity words {words}")
    weights = sorted(tuple(map(tuple, r.monomial.to_pairs())) for r in recs)
    want = sorted([((-8, 1),), ((-4, -1),), ((4, -1),), ((0, 1),), ((8, 1),)])
    _expect(weights == want, f"weights {weights}")
    bracket = bracket_by_trees(g)
    _expect(bracket == LaurentPoly({-8: 1, -4: -1, 0: 1, 4: -1, 8: 1}, "A"), f"bracket {bracket}")
    d = medial(g)
    _expect(d.writhe == 0, f"writhe {d.writhe}")
    v = jones(d)
    _expect(v == LaurentPoly({-2: 1, -1: -1, 0: 1, 1: -1, 2: 1}, "t"), f"Jones polynomial {v}")
    return f"5 trees; bracket {bracket}; V = {v}"


def check_filtration(seed: int) -> str:
    g = fixtures.figure8_graph()
    td = TreeData(medial(g), graph=g)
    _expect(td.smoothings == ["**BB", "*BAB", "*AAB", "**BA", "**AA"], f"smoothings {td.smoothings}")
    chains = sorted([t + 1 for t in c] for c in td.poset.chains())
    _expect(chains == [[5, 3, 2, 1], [5, 4, 1]], f"chains {chains}")

    def psi(t: int) -> set[int]:
        return {t} | set(td.poset.greater[t])

    want = {1: psi(4), 2: psi(2) | psi(3), 3: psi(1), 4: psi(0)}
    got = {p: set(ts) for p, ts in filtration(td).items()}
    _expect(got == want, f"filtration {got}")
    _expect(want[1] == set(range(5)), "F1 is not the whole complex")
    return "chains T5>T3>T2>T1 and T5>T4>T1; F1..F4 match"


# -- trees versus states ------------------------------------------------------------

def check_thistlethwaite(seed: int) -> str:
    for g in random_graphs(seed, 200, 10):
        b1, b2 = bracket_by_trees(g), bracket_state_sum(medial(g))
        _expect(b1 == b2, f"{g.name}: trees give {b1}, states give {b2}")
    knots = _knots(10)
    for name, d in knots:
        b1, b2 = bracket_by_trees(canonical_tait_graph(d)), bracket_state_sum(d)
        _expect(b1 == b2, f"{name}: trees give {b1}, states give {b2}")
    return f"200 random graphs and {len(knots)} fixtures agree"


def check_euler(seed: int) -> str:
    knots = _knots(10)
    q_sum = LaurentPoly({1: 1, -1: 1}, "q")
    q_inv = LaurentPoly({-1: 1}, "q")
    for name, d in knots:
        v = jones_q(d)
        chi_u = build_complex(d, False).homology().euler_characteristic("q")
        chi_r = build_complex(d, True).homology().euler_characteristic("q")
        _expect(chi_u == q_sum * v, f"{name}: unreduced chi {chi_u}, expected {q_sum * v}")
        _expect(chi_r == q_inv * v, f"{name}: reduced chi {chi_r}, expected {q_inv * v}")
    return f"{len(knots)} fixtures, reduced and unreduced"


# -- tree complex -------------------------------------------------------------------

def check_direct(seed: int) -> str:
    pairs = incident = 0
    for g in random_graphs(seed + 1, 100, 8):
        td = TreeData(medial(g), graph=g)
        for a in range(len(td)):
            for b in range(len(td)):
                pairs += 1
                val = td.direct_incidence(a, b)
                cls = classify_direct(td.words[a], td.words[b])
                _expect(bool(val) == cls,
                        f"{g.name}: T{a + 1}->T{b + 1} incidence {val}, word pattern {cls}")
                if val:
                    incident += 1
                    _expect(val in (1, -1), f"{g.name}: T{a + 1}->T{b + 1} incidence {val}")
                    _expect(exchange_structure(g, td.trees[a], td.trees[b]) is not None,
                            f"{g.name}: T{a + 1}->T{b + 1} lacks the positive/negative exchange")
    return f"{pairs} ordered pairs, {incident} incident, no counterexample"


def check_collapse(seed: int) -> str:
    knots = _knots(10)
    preserved = 0
    for name, d in knots:
        td = TreeData(d)
        for reduced in (True, False):
            kc = build_complex(d, reduced, td.space)
            tc = collapse_to_tree_complex(d, reduced, td, khovanov=kc)
            _expect(tc.homology() == kc.homology(), f"{name}: collapsed homology differs (reduced={reduced})")
            if not reduced:
                continue
            for a in range(len(td)):
                for b in range(len(td)):
                    val = td.direct_incidence(a, b)
                    if val:
                        got = tc.incidence(TreeGen(a), TreeGen(b))
                        _expect(got == val, f"{name}: induced T{a + 1}->T{b + 1} is {got}, direct {val}")
                        preserved += 1
    return f"{len(knots)} fixtures in both theories; {preserved} direct incidences preserved"


def check_spectral(seed: int) -> str:
    knots = _knots(9)
    for name, d in knots:
        td = TreeData(d)
        kc = build_complex(d, True, td.space)
        # E1 computed from the filtered enhanced-state complex, not from tree counts
        by_uv: Counter = Counter()
        for (p, i, j), r in khovanov_filtered(td, kc).page_ranks(1).items():
            by_uv[td.uv_of(i, j)] += r
        want = uv_distribution(td.words)
        _expect(+by_uv == +want, f"{name}: E1 {dict(by_uv)} versus tree counts {dict(want)}")
        tc = collapse_to_tree_complex(d, True, td, khovanov=kc)
        c = max(d.n_crossings, 1)
        ec, ec1 = rational_page(tc, c), rational_page(tc, c + 1)
        _expect(ec.ranks == ec1.ranks, f"{name}: E_c and E_c+1 differ")
        _expect(ec.total_by_degree() == kc.homology().ranks(),
                f"{name}: E_c totals differ from reduced homology ranks")
    return f"{len(knots)} fixtures; E1 matches tree counts; E_c = E_c+1 = homology"


# -- mutation ---------------------------------------------------------------------

def check_mutation(seed: int) -> str:
    kt, conway = _load(fixtures.KT), _load(fixtures.CONWAY)
    rep = are_mutants(kt, conway)
    _expect(rep.mutants and rep.witness is not None, "Kinoshita-Terasaka and Conway not recognised as mutants")
    cmp = compare_E2(kt, conway)
    _expect(cmp.equal, "integral E2 terms differ")
    h1, h2 = build_complex(kt, True).homology(), build_complex(conway, True).homology()
    _expect(h1 == h2, "reduced Khovanov homologies differ")
    return (f"witness {[x + 1 for x in rep.witness]}; E2 equal; "
            f"reduced homology equal (total rank {h1.total_rank()})")


def check_control(seed: int) -> str:
    fig8, trefoil = _load("4_1"), _load("3_1")
    _expect(not are_mutants(fig8, trefoil).mutants, "figure-8 and trefoil reported as mutants")
    _expect(not compare_E2(fig8, trefoil).equal, "figure-8 and trefoil have equal E2 terms")
    return "not mutants; E2 terms differ"


def check_properties(seed: int) -> str:
    counts: Counter = Counter()
    knots = _knots(10)
    extra = [(g.name, medial(g)) for g in random_graphs(seed + 2, 20, 7)]
    for name, d in knots + extra:
        for reduced in (True, False):
            try:
                build_complex(d, reduced).check()
            except ArithmeticError as exc:
                raise CheckFailure(f"{name}: {exc}") from None
            counts["complexes"] += 1
    small = [(n, d) for n, d in knots if d.n_crossings <= 8] + extra
    for name, d in small:
        td = TreeData(d)
        for t in range(len(td)):
            for variant in (1, -1):
                a = td.fundamental_cycle(t, variant, "bfs")
                b = td.fundamental_cycle(t, variant, "dfs")
                _expect(a == b, f"{name} tree {t + 1}: cycle depends on the untwisting order")
                counts["cycles"] += 1
    graphs = [canonical_tait_graph(d) for _, d in knots] + random_graphs(seed + 3, 40, 9)
    for g in graphs:
        m = colored_matroid(g)
        for mv in two_separations(g):
            _expect(colored_matroid(apply_flip(g, mv)) == m, f"{g.name}: flip {mv.to_json()} changed the matroid")
            counts["flips"] += 1
    for name, d in knots:
        if d.n_crossings > 8 or d.component_count != 1:
            continue
        h0 = build_complex(d, True).homology()
        for arc in d.arcs:
            _expect(build_complex(d.with_basepoint(arc), True).homology() == h0,
                    f"{name}: basepoint on arc {arc} changes reduced homology")
            counts["basepoints"] += 1
    return ", ".join(f"{v} {k}" for k, v in sorted(counts.items()))


# -- conjecture evidence ------------------------------------------------------------

def _first_proper_flip(g):
    for mv in two_separations(g):
        h = apply_flip(g, mv)
        if g.plane_isomorphism(h) is None:
            return h
    return None


def mutant_pairs(seed: int = DEFAULT_SEED, random_pairs: int = 2) -> list[tuple[str, Diagram, Diagram]]:
    """Knot diagram pairs related by a 2-flip of the Tait graph.

    The Kinoshita-Terasaka/Conway fixtures come first, then a flip of the
    9_42 Tait graph, then seeded random mixed-sign examples.
    """
    out = [("K11n42/K11n34", _load(fixtures.KT), _load(fixtures.CONWAY))]
    g = canonical_tait_graph(_load("9_42"))
    h = _first_proper_flip(g)
    if h is not None:
        out.append(("9_42/flip", medial(g, (0, 0), "9_42"), medial(h, (0, 0), "9_42 flip")))
    rng = random.Random(seed)
    for _ in range(3000):
        if len(out) >= 2 + random_pairs:
            break
        g = random_planar_graph(rng, rng.randint(8, 10), True)
        if len(set(g.signs)) < 2 or medial(g).component_count != 1:
            continue
        h = _first_proper_flip(g)
        if h is not None:
            label = f"random-{len(out) - 1}"
            out.append((label, medial(g, (0, 0), label), medial(h, (0, 0), label + " flip")))
    return out


def check_probe(seed: int) -> str:
    pairs = mutant_pairs(seed)
    _expect(len(pairs) >= 3, f"only {len(pairs)} mutant pairs found")
    parts = []
    for label, d1, d2 in pairs:
        rep = conjecture_probe(d1, d2)
        parts.append(f"{label} {rep.agreements}/{len(rep.details)}")
    return "entries agreeing: " + ", ".join(parts) + " (evidence only)"


CHECKS: dict[str, tuple[Callable[[int], str], float]] = {
    "figure8": (check_figure8, 1),
    "filtration": (check_filtration, 1),
    "thistlethwaite": (check_thistlethwaite, 60),
    "euler": (check_euler, 300),
    "direct": (check_direct, 120),
    "collapse": (check_collapse, 300),
    "spectral": (check_spectral, 300),
    "mutation": (check_mutation, 600),
    "control": (check_control, 1),
    "properties": (check_properties, 300),
    "probe": (check_probe, 600),
}


def run_check(name: str, seed: int = DEFAULT_SEED) -> CheckResult:
    fn, budget = CHECKS[name]
    start = time.perf_counter()
    try:
        detail, ok = fn(seed), True
    except CheckFailure as exc:
        detail, ok = str(exc), False
    except Exception as exc:  # a crash fails the criterion but not the run
        detail, ok = f"{type(exc).__name__}: {exc}", False
    elapsed = time.perf_counter() - start
    if ok and elapsed > budget:
        ok, detail = False, f"exceeded time limit; {detail}"
    return CheckResult(name, ok, elapsed, budget, detail)


def run_all(only: Optional[list[str]] = None, seed: int = DEFAULT_SEED) -> list[CheckResult]:
    names = only or list(CHECKS)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown check: {', '.join(unknown)}")
    return [run_check(n, seed) for n in names]
