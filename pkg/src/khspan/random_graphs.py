"""Seeded random signed plane graphs for property checks."""

from __future__ import annotations

import random
from typing import Optional

from .graph import SignedPlanarGraph


def random_planar_graph(rng: random.Random, n_edges: int, mixed: bool = True,
                        name: str = "") -> SignedPlanarGraph:
    """A connected signed plane graph with ``n_edges`` edges.

    Built by adding pendant edges at random corners and chords inside random
    faces, both of which keep the embedding planar.  Loops and parallel
    edges occur.  With ``mixed=False`` all signs are +1.
    """
    n_vertices = 1
    edges: list[tuple[int, int, int]] = []
    rotation: list[list[tuple[int, int]]] = [[]]

    def sign() -> int:
        return rng.choice((1, -1)) if mixed else 1

    def insert_after(x: int, h: Optional[tuple[int, int]], dart: tuple[int, int]) -> None:
        rot = rotation[x]
        if h is None:
            rot.append(dart)
        else:
            rot.insert(rot.index(h) + 1, dart)

    while len(edges) < n_edges:
        e = len(edges)
        g = SignedPlanarGraph(n_vertices, tuple(edges), tuple(tuple(r) for r in rotation))
        faces = g.faces
        if not edges or rng.random() < 0.45:
            # pendant edge at a random corner
            x = rng.randrange(n_vertices)
            h = rng.choice(rotation[x]) if rotation[x] else None
            edges.append((x, n_vertices, sign()))
            rotation.append([(e, 1)])
            insert_after(x, h, (e, 0))
            n_vertices += 1
        else:
            face = rng.choice([f for f in faces if f])
            h1 = rng.choice(face)
            h2 = rng.choice(face)
            x = edges[h1[0]][h1[1]]
            y = edges[h2[0]][h2[1]]
            edges.append((x, y, sign()))
            if h1 == h2:
                insert_after(x, h1, (e, 0))
                insert_after(x, (e, 0), (e, 1))
            else:
                insert_after(x, h1, (e, 0))
                insert_after(y, h2, (e, 1))
    g = SignedPlanarGraph(n_vertices, tuple(edges), tuple(tuple(r) for r in rotation), None, name)
    if g.euler_genus() != 0:
        raise AssertionError("random construction left the plane")
    return g


def random_graphs(seed: int, count: int, max_edges: int, mixed: bool = True,
                  min_edges: int = 1) -> list[SignedPlanarGraph]:
    rng = random.Random(seed)
    return [random_planar_graph(rng, rng.randint(min_edges, max_edges), mixed, name=f"random-{seed}-{k}")
            for k in range(count)]
