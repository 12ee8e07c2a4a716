"""Named test complexes and involution pairs, plus a seeded random generator."""
from __future__ import annotations

import itertools
import random

from .complex import SimplicialComplex, boundary_of_simplex, from_maximal_simplices
from .embedding import InvolutionPair


def _cx(maximal) -> SimplicialComplex:
    maximal = [list(m) for m in maximal]
    return from_maximal_simplices(sorted({v for m in maximal for v in m}, key=str), maximal)


def point() -> SimplicialComplex:
    return _cx([["p"]])


def two_points() -> SimplicialComplex:
    return _cx([["p"], ["q"]])


def edge() -> SimplicialComplex:
    return _cx([["a", "b"]])


def path(n: int = 3) -> SimplicialComplex:
    return _cx([[i, i + 1] for i in range(n - 1)])


def cycle(n: int) -> SimplicialComplex:
    return _cx([[i, (i + 1) % n] for i in range(n)])


def cone_on_two_points() -> SimplicialComplex:
    return _cx([["p", "c"], ["c", "q"]])


def sphere2() -> SimplicialComplex:
    """Boundary of the 3-simplex."""
    return boundary_of_simplex(range(4))


def octahedron() -> SimplicialComplex:
    return _cx([[a, b, c] for a in (0, 1) for b in (2, 3) for c in (4, 5)])


def rp2_6() -> SimplicialComplex:
    """Six-vertex real projective plane (antipodal quotient of the icosahedron)."""
    return _cx([[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
                [2, 3, 5], [2, 4, 5], [2, 4, 6], [3, 4, 6], [3, 5, 6]])


def solid_triangle() -> SimplicialComplex:
    return _cx([[0, 1, 2]])


def corpus_complexes() -> dict:
    return {"point": point(), "two_points": two_points(), "edge": edge(), "path3": path(3),
            "cycle3": cycle(3), "cycle4": cycle(4), "cone_two_points": cone_on_two_points(),
            "sphere2": sphere2(), "octahedron": octahedron(), "rp2_6": rp2_6(),
            "solid_triangle": solid_triangle()}


def pipeline_corpus() -> dict:
    """Involution pairs exercised end to end."""
    return {
        "point_trivial": InvolutionPair.from_map(point(), {}),
        "edge_swap": InvolutionPair.from_map(edge(), {"a": "b", "b": "a"}),
        "cycle3_reflection": InvolutionPair.from_map(cycle(3), {0: 1, 1: 0}),
        "path3_flip": InvolutionPair.from_map(path(3), {0: 2, 2: 0}),
    }


def random_involution_pair(rng: random.Random, max_vertices: int = 8, max_dim: int = 2,
                           max_seeds: int = 4) -> InvolutionPair:
    """T-invariant complex generated by a few random simplices and their images."""
    n = rng.randint(1, max_vertices)
    order = list(range(n))
    rng.shuffle(order)
    T = {v: v for v in range(n)}
    for k in range(rng.randint(0, n // 2)):
        a, b = order[2 * k], order[2 * k + 1]
        T[a], T[b] = b, a
    candidates = [c for d in range(2, max_dim + 2) for c in itertools.combinations(range(n), d)]
    seeds = set()
    if candidates:
        for _ in range(rng.randint(1, max_seeds)):
            c = frozenset(rng.choice(candidates))
            seeds.add(c)
            seeds.add(frozenset(T[v] for v in c))
    maximal = [sorted(s) for s in seeds] + [[v] for v in range(n)]
    L = from_maximal_simplices(range(n), maximal)
    return InvolutionPair.from_map(L, T)
