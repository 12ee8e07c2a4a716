"""Equivariant embedding of a complex with an involution, and its regular neighbourhood.

A complex ``L`` with involution ``T`` is sent into the barycentric subdivision
of a product cell structure ``A x A`` by ``sigma -> (sigma, T sigma)``.  The
coordinate swap ``S(x, y) = (y, x)`` is simplicial there and restricts to
``T`` on the image.  ``A`` is either ``L`` itself (default: keeps the
computation desk-sized) or the full simplex on the vertices of ``L``.
"""
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from .complex import (ComplexError, FacePoset, GroupAction, SimplicialComplex, SimplicialMap,
                      barycentric_subdivision, induced_action_on_sd, is_full_subcomplex, link,
                      simplex, simplex_key, vertex_label, fixed_subcomplex)
from .homology import HomologyResult, homology, quotient_homology

MAX_SIMPLEX_AMBIENT_VERTICES = 3


@dataclass(frozen=True, eq=False)
class InvolutionPair:
    complex: SimplicialComplex
    involution: SimplicialMap

    def __post_init__(self):
        T = self.involution
        if T.domain is not self.complex and T.domain != self.complex:
            raise ComplexError("involution must act on the complex")
        for v in self.complex.vertices:
            if T(T(v)) != v:
                raise ComplexError(f"map is not an involution: T(T({vertex_label(v)})) != {vertex_label(v)}")
        if not T.is_injective():
            raise ComplexError("involution is not a bijection")

    @classmethod
    def from_map(cls, L: SimplicialComplex, mapping: Mapping) -> "InvolutionPair":
        full = {v: mapping.get(v, v) for v in L.vertices}
        return cls(L, SimplicialMap(L, L, full))

    @classmethod
    def from_action(cls, act: GroupAction) -> "InvolutionPair":
        if act.order > 2:
            raise ComplexError(f"action has order {act.order}, expected an involution")
        g = 1 if act.order == 2 else 0
        return cls.from_map(act.complex, act.vertex_map(g))

    def action(self) -> GroupAction:
        gen = dict(self.involution.vertex_map)
        return GroupAction(self.complex, [gen] if any(k != v for k, v in gen.items()) else [])

    def T(self, s):
        return self.involution(s)


@dataclass(frozen=True, eq=False)
class EmbeddedPair:
    pair: InvolutionPair
    ambient: FacePoset                 # cells (alpha, beta) of A x A
    sd_L: SimplicialComplex
    image: SimplicialComplex
    phi: SimplicialMap                 # Sd(L) -> image, vertex sigma -> (sigma, T sigma)
    swap: GroupAction                  # S restricted to the image

    @cached_property
    def ambient_sd(self) -> SimplicialComplex:
        return barycentric_subdivision(self.ambient)

    @cached_property
    def ambient_swap(self) -> GroupAction:
        K = self.ambient_sd
        gen = {c: (c[1], c[0]) for c in K.vertices}
        return GroupAction(K, [gen] if any(k != v for k, v in gen.items()) else [])

    def equivariance_defects(self) -> list:
        """Vertices sigma of Sd(L) where S(phi(sigma)) != phi(T(sigma))."""
        T = self.pair.involution
        bad = []
        for s in self.sd_L.vertices:
            a, b = self.phi.vertex_map[s]
            if (b, a) != self.phi.vertex_map[T(s)]:
                bad.append(s)
        return bad


def graph_embedding(pair: InvolutionPair, ambient: str = "product") -> EmbeddedPair:
    """Embed Sd(L) into Sd(A x A) by sigma -> (sigma, T sigma)."""
    L = pair.complex
    if ambient == "product":
        P = FacePoset.of_complex(L)
    elif ambient == "simplex":
        if len(L.vertices) > MAX_SIMPLEX_AMBIENT_VERTICES:
            raise ComplexError(
                f"simplex ambient limited to {MAX_SIMPLEX_AMBIENT_VERTICES} vertices "
                f"(got {len(L.vertices)}); use the product ambient")
        P = FacePoset.of_complex(simplex(L.vertices))
    else:
        raise ValueError(f"unknown ambient {ambient!r}")
    A = FacePoset.product(P, P)
    sd_L = barycentric_subdivision(L)
    T = pair.involution
    vmap = {s: (s, T(s)) for s in sd_L.vertices}
    image = sd_L.relabel(vmap)
    phi = SimplicialMap(sd_L, image, vmap)
    swap_gen = {c: (c[1], c[0]) for c in image.vertices}
    swap = GroupAction(image, [swap_gen] if any(k != v for k, v in swap_gen.items()) else [])
    return EmbeddedPair(pair, A, sd_L, image, phi, swap)


@dataclass(frozen=True, eq=False)
class NeighborhoodPair:
    K: SimplicialComplex
    boundary_estimate: SimplicialComplex     # simplices of K missing the image
    image: SimplicialComplex
    swap_on_K: GroupAction
    swap_on_image: GroupAction
    subdivided: bool = False

    def inclusion_ok(self) -> bool:
        return self.image.is_subcomplex_of(self.K)


def _cofacets(P: FacePoset) -> dict:
    up: dict = {p: [] for _, p in P.cells}
    for p, fs in P.facets.items():
        for f in fs:
            up[f].append(p)
    return up


def regular_neighborhood(emb: EmbeddedPair, derived: bool | None = None) -> NeighborhoodPair:
    """Closure of the union of open stars of image vertices in Sd(A x A).

    Only maximal chains through an image cell are generated, so the full
    ambient subdivision is never built.  With ``derived=True`` the star is
    retaken in one more subdivision, which is needed when a single ambient
    cell lies above the whole image (the first star is then a cone).
    ``None`` picks it exactly when the ambient has a single top cell.
    """
    if derived is None:
        derived = len(emb.ambient.maximal_cells()) == 1
    P = emb.ambient
    up = _cofacets(P)
    image_cells = set(emb.image.vertices)

    def chains_down(c):
        fs = P.facets[c]
        if not fs:
            yield (c,)
            return
        for f in fs:
            for ch in chains_down(f):
                yield ch + (c,)

    def chains_up(c):
        us = up[c]
        if not us:
            yield ()
            return
        for u in us:
            for ch in chains_up(u):
                yield (u,) + ch

    tops = set()
    for c in image_cells:
        downs = list(chains_down(c))
        for above in chains_up(c):
            for below in downs:
                tops.add(frozenset(below + above))
    K = SimplicialComplex.build((), tops)
    image = emb.image
    gen = {c: (c[1], c[0]) for c in K.vertices}
    swap_K = GroupAction(K, [gen] if any(k != v for k, v in gen.items()) else [])
    swap_img = emb.swap
    subdivided = False
    if not is_full_subcomplex(image, K):
        # one simultaneous subdivision restores fullness
        swap_K = induced_action_on_sd(swap_K)
        K = swap_K.complex
        swap_img = induced_action_on_sd(swap_img)
        image = swap_img.complex
        subdivided = True
    if derived:
        swap_K, swap_img, K, image = _second_derived(swap_K, swap_img)
        subdivided = True
    frontier = K.full_subcomplex(v for v in K.vertices if v not in set(image.vertices))
    return NeighborhoodPair(K, frontier, image, swap_K, swap_img, subdivided)


def _second_derived(swap_K: GroupAction, swap_img: GroupAction):
    sd_act = induced_action_on_sd(swap_K)
    img_vs = set(swap_img.complex.vertices)
    tops = [m for m in sd_act.complex.maximal_simplices if any(c <= img_vs for c in m)]
    K = SimplicialComplex.build((), tops)
    act_K = sd_act.restrict(K)
    act_img = induced_action_on_sd(swap_img)
    return act_K, act_img, K, act_img.complex


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

@dataclass
class CollapseResult:
    success: bool
    steps: int                      # number of orbit-collapses performed
    remaining: int                  # simplices left outside the target


def equivariant_collapse(act: GroupAction, target: SimplicialComplex) -> CollapseResult:
    """Greedy collapse of whole orbits of free pairs down to ``target``.

    Only pairs whose orbits have equal size are collapsed, so the remaining
    complex stays invariant.  Failure means the greedy order got stuck, not
    that no collapse exists.
    """
    K = act.complex
    current = set(K.simplices)
    protected = target.simplices
    cofaces: dict = {s: set() for s in current}
    for s in current:
        if len(s) > 1:
            for k in range(1, len(s)):
                for f in itertools.combinations(s, k):
                    cofaces[frozenset(f)].add(s)
    heap = []

    def push(t):
        if t not in protected and len(cofaces[t]) == 1:
            heapq.heappush(heap, (-len(t), simplex_key(t), t))

    for s in current:
        push(s)
    steps = 0
    while heap:
        _, _, tau = heapq.heappop(heap)
        if tau not in current or len(cofaces[tau]) != 1:
            continue
        (sigma,) = cofaces[tau]
        pairs = {}
        ok = True
        for g in range(act.order):
            gt, gs = act.apply_simplex(g, tau), act.apply_simplex(g, sigma)
            if gt in pairs and pairs[gt] != gs:
                ok = False
                break
            pairs[gt] = gs
        if not ok or len(set(pairs.values())) != len(pairs):
            continue
        touched = set()
        for t, s in pairs.items():
            for dead in (s, t):
                current.discard(dead)
                for k in range(1, len(dead)):
                    for f in itertools.combinations(dead, k):
                        f = frozenset(f)
                        cofaces[f].discard(dead)
                        touched.add(f)
        steps += 1
        for f in touched:
            if f in current:
                push(f)
    return CollapseResult(current == set(protected), steps, len(current - set(protected)))


@dataclass
class ManifoldReport:
    dimension: int
    interior: int
    boundary: list
    bad: list

    @property
    def ok(self) -> bool:
        return not self.bad


def manifold_certificate(K: SimplicialComplex) -> ManifoldReport:
    """Every vertex link has the homology of S^{d-1} (interior) or of a point (boundary)."""
    d = K.dim
    sphere = HomologyResult(tuple([1] + [0] * (d - 2) + [1]) if d >= 2 else (2,),
                            tuple(() for _ in range(max(d, 1))))
    interior, boundary, bad = 0, [], []
    pure = all(len(m) == d + 1 for m in K.maximal_simplices)
    for v in K.vertices:
        lk = link(K, v)
        if not lk.vertices:
            # an isolated vertex is a 0-manifold point, otherwise a defect
            if d == 0:
                interior += 1
            else:
                bad.append(v)
            continue
        h = homology(lk)
        if pure and lk.dim == d - 1 and h == sphere:
            interior += 1
        elif pure and lk.dim == d - 1 and h.is_acyclic():
            boundary.append(v)
        else:
            bad.append(v)
    return ManifoldReport(d, interior, boundary, bad)


@dataclass
class CertificateReport:
    homology_K: HomologyResult
    homology_image: HomologyResult
    fixed_K: HomologyResult
    fixed_image: HomologyResult
    quotient_K: HomologyResult
    quotient_image: HomologyResult
    collapse: CollapseResult | None = None

    @property
    def homology_match(self) -> bool:
        return self.homology_K == self.homology_image

    @property
    def fixed_match(self) -> bool:
        return self.fixed_K == self.fixed_image

    @property
    def quotient_match(self) -> bool:
        return self.quotient_K == self.quotient_image

    @property
    def all_match(self) -> bool:
        return self.homology_match and self.fixed_match and self.quotient_match

    def to_json(self) -> dict:
        out = {
            "homology_K_eq_image": {"match": self.homology_match,
                                    "K": self.homology_K.lines(), "image": self.homology_image.lines()},
            "fixed_K_eq_fixed_image": {"match": self.fixed_match,
                                       "K": self.fixed_K.lines(), "image": self.fixed_image.lines()},
            "quotient_K_eq_quotient_image": {"match": self.quotient_match,
                                             "K": self.quotient_K.lines(), "image": self.quotient_image.lines()},
        }
        if self.collapse is not None:
            out["equivariant_collapse"] = {"success": self.collapse.success, "steps": self.collapse.steps,
                                           "remaining": self.collapse.remaining}
        return out


def retraction_certificate(nb: NeighborhoodPair, collapse: bool = True) -> CertificateReport:
    """Homology-level evidence that K retracts equivariantly onto the image."""
    return CertificateReport(
        homology(nb.K), homology(nb.image),
        homology(fixed_subcomplex(nb.swap_on_K)), homology(fixed_subcomplex(nb.swap_on_image)),
        quotient_homology(nb.swap_on_K), quotient_homology(nb.swap_on_image),
        equivariant_collapse(nb.swap_on_K, nb.image) if collapse else None,
    )
