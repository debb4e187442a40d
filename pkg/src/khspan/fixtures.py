"""Bundled example diagrams.

Knot files are PD codes named by their table entry (``3_1`` is the
left-handed trefoil, ``3_1_mirror`` the right-handed one).  ``K11n42`` is
the Kinoshita-Terasaka knot and ``K11n34`` the Conway knot; a ``# flip``
comment records the 2-flip of the Tait graph relating them.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

from .diagram import Diagram, parse_pd
from .graph import SignedPlanarGraph, parse_graph

FIXTURE_DIR = Path(__file__).with_name("data")

KT = "K11n42"
CONWAY = "K11n34"


def path(name: str) -> Path:
    for suffix in (".pd", ".graph"):
        p = FIXTURE_DIR / (name + suffix)
        if p.exists():
            return p
    raise FileNotFoundError(f"no fixture named {name!r}")


def load(name: str) -> Diagram:
    return parse_pd(path(name).read_text(), name=name)


def load_graph(name: str) -> SignedPlanarGraph:
    return parse_graph(path(name).read_text(), name=name)


def figure8_graph() -> SignedPlanarGraph:
    return load_graph("figure8_fig1")


def knot_names(max_crossings: Optional[int] = None) -> list[str]:
    """PD fixture names, smallest crossing number first."""
    out = []
    for p in FIXTURE_DIR.glob("*.pd"):
        d = parse_pd(p.read_text())
        if max_crossings is None or d.n_crossings <= max_crossings:
            out.append((d.n_crossings, p.stem))
    return [name for _, name in sorted(out)]


def recorded_flip(name: str):
    """The flip move stored in a fixture's ``# flip`` comment, if any."""
    from .matroid import FlipMove
    for line in path(name).read_text().splitlines():
        tok = line.lstrip("#").split()
        if line.startswith("#") and tok and tok[0] == "flip":
            kind, u, v = tok[1], int(tok[2]), int(tok[3])
            return FlipMove(kind, u, v, frozenset(int(e) - 1 for e in tok[4:]))
    return None
