"""Reflection-group basic construction on a finite truncation of the Coxeter group.

U(M, N, G) is realised on Sd(M): vertex ``x`` of Sd(M) gets the generator set
``sigma(x)`` of mirrors through it, and chamber ``w`` contributes the vertex
labelled ``(min_coset_rep(w, sigma(x)), x)``.  Two chambers share a vertex
exactly when their labels agree, so gluing is label equality.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .complex import (ComplexError, GroupAction, SimplicialComplex, barycentric_subdivision,
                      closed_star, find_isomorphism, fixed_subcomplex, induced_action_on_sd,
                      is_admissible, is_flag, is_full_subcomplex, is_regular, quotient_complex, vertex_label,
                      vertex_orbits)
from .homology import HomologyResult, homology, quotient_homology
from .racg import CommutationGraph, RacgElement, SemidirectElement, SemidirectProduct

DEFAULT_CLOSURE_CAP = 4096


class ConstructionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Mirror structure
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MirrorStructure:
    M: SimplicialComplex
    N: SimplicialComplex
    sd_M: SimplicialComplex
    sigma: dict                 # Sd(M) vertex -> frozenset of generator indices
    graph: CommutationGraph     # generators are the vertices of N
    action: GroupAction         # G on M
    sd_action: GroupAction      # G on Sd(M), same element indices
    semidirect: SemidirectProduct
    subdivided: bool = False

    def mirror(self, i: int) -> list:
        return [x for x in self.sd_M.vertices if i in self.sigma[x]]

    def sigma_names(self, x) -> list[str]:
        return sorted(self.graph.names[i] for i in self.sigma[x])


def _needs_subdivision(M, N, act) -> bool:
    if not N.vertices:
        return False
    if not is_full_subcomplex(N, M) or not is_flag(N):
        return True
    return not is_admissible(act.restrict(N))


def mirror_structure(M: SimplicialComplex, N: SimplicialComplex, act: GroupAction | None = None,
                     *, ball_cap: int | None = None) -> MirrorStructure:
    """Mirrors are the closed stars of the vertices of N inside Sd(N).

    If N is not a full flag subcomplex of M, or G does not act admissibly on
    N, everything is subdivided once first.
    """
    if N.vertices and not (set(N.vertices) <= set(M.vertices) and N.is_subcomplex_of(M)):
        raise ConstructionError("N is not a subcomplex of M")
    act = act if act is not None else GroupAction.trivial(M)
    if act.complex is not M and act.complex != M:
        raise ConstructionError("group must act on M")
    for g in act.generator_indices():
        for m in N.maximal_simplices:
            if act.apply_simplex(g, m) not in N.simplices:
                raise ConstructionError(f"group does not preserve N (moves {N._fmt(m)})")
    subdivided = False
    if _needs_subdivision(M, N, act):
        act = induced_action_on_sd(act)
        M = act.complex
        N = barycentric_subdivision(N) if N.vertices else N
        subdivided = True
    sd_action = induced_action_on_sd(act)
    sd_M = sd_action.complex
    kw = {} if ball_cap is None else {"ball_cap": ball_cap}
    graph = CommutationGraph.from_complex(N, **kw)
    sigma = {x: set() for x in sd_M.vertices}
    if N.vertices:
        sd_N = barycentric_subdivision(N)
        for i, v in enumerate(graph.generators):
            for x in closed_star(sd_N, frozenset([v])).vertices:
                sigma[x].add(i)
    sigma = {x: frozenset(s) for x, s in sigma.items()}
    for x, s in sigma.items():
        if not graph.is_finite_parabolic(s):
            raise ConstructionError(f"sigma({vertex_label(x)}) is not a clique; N must be flag")
    perms = [tuple(graph.index[act.apply(g, v)] for v in graph.generators) for g in range(act.order)]
    sdp = SemidirectProduct(graph, perms, act.table)
    for g in range(act.order):
        for x in sd_M.vertices:
            if sigma[sd_action.apply(g, x)] != frozenset(perms[g][i] for i in sigma[x]):
                raise ConstructionError("mirror structure is not G-equivariant")
    return MirrorStructure(M, N, sd_M, sigma, graph, act, sd_action, sdp, subdivided)


# ---------------------------------------------------------------------------
# Truncated U
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TruncatedU:
    ms: MirrorStructure
    radius: int
    chambers: tuple             # ball(radius), shortlex
    complex: SimplicialComplex  # vertices (RacgElement, Sd(M) vertex)

    def label(self, w: RacgElement, x) -> tuple:
        return (self.ms.graph.min_coset_rep(w, self.ms.sigma[x]), x)

    def chamber(self, w: RacgElement) -> SimplicialComplex:
        return self.ms.sd_M.relabel({x: self.label(w, x) for x in self.ms.sd_M.vertices})

    @cached_property
    def parities(self) -> dict:
        """rep -> letter-parity mask of ``rep^g`` for each group element g."""
        perms = self.ms.semidirect.perms
        out = {}
        for rep, _ in self.complex.vertices:
            if rep not in out:
                out[rep] = tuple(_parity_word(perm[i] for i in rep.word) for perm in perms)
        return out

    @cached_property
    def by_base(self) -> dict:
        out: dict = {}
        for rep, x in self.complex.vertices:
            out.setdefault(x, []).append(rep)
        return out

    def summary(self) -> dict:
        return {"radius": self.radius, "chambers": len(self.chambers),
                "vertices": len(self.complex.vertices),
                "simplices_by_dim": list(self.complex.f_vector)}


def build_U(ms: MirrorStructure, r: int) -> TruncatedU:
    """Union of the chambers wSd(M), w in ball(r), glued along equal labels."""
    graph = ms.graph
    ball = graph.ball(r)
    groups: dict = {}
    for x in ms.sd_M.vertices:
        groups.setdefault(ms.sigma[x], []).append(x)
    tops = []
    for w in ball:
        lab = {}
        for J, xs in groups.items():
            rep = graph.min_coset_rep(w, J)
            for x in xs:
                lab[x] = (rep, x)
        tops.extend(frozenset(lab[x] for x in m) for m in ms.sd_M.maximal_simplices)
    return TruncatedU(ms, r, tuple(ball), SimplicialComplex.build((), tops))


@dataclass(frozen=True)
class OutOfTruncation:
    label: tuple                # the vertex the element would reach

    def __bool__(self) -> bool:
        return False


def act_on_U(u: TruncatedU, p: SemidirectElement, vertex):
    """(v, g).[w, x] = [v w^g, g.x]; labels outside ball(r) are reported, not added."""
    ms = u.ms
    rep, x = vertex
    gx = ms.sd_action.apply(p.g, x)
    w = ms.graph.multiply(p.w, ms.semidirect.twist(rep, p.g))
    target = (ms.graph.min_coset_rep(w, ms.sigma[gx]), gx)
    if len(target[0]) > u.radius:
        return OutOfTruncation(target)
    return target


def action_axiom_violations(u, elements, vertices) -> int:
    """Count (p, q, x) with p.(q.x) != (pq).x where all three stay in the truncation."""
    sdp = u.ms.semidirect
    bad = 0
    for p in elements:
        for q in elements:
            pq = sdp.multiply(p, q)
            for x in vertices:
                qx = act_on_U(u, q, x)
                if not qx:
                    continue
                lhs = act_on_U(u, p, qx)
                rhs = act_on_U(u, pq, x)
                if lhs and rhs and lhs != rhs:
                    bad += 1
    return bad


def _fixes(u: TruncatedU, p: SemidirectElement, rep: RacgElement, x) -> bool:
    ms = u.ms
    if ms.sd_action.apply(p.g, x) != x:
        return False
    w = ms.graph.multiply(p.w, ms.semidirect.twist(rep, p.g))
    return ms.graph.min_coset_rep(w, ms.sigma[x]) == rep


def _parity_word(word) -> int:
    m = 0
    for i in word:
        m ^= 1 << i
    return m


def fixed_vertices(u: TruncatedU, H) -> set:
    """Vertices fixed by every element of ``H`` (generators suffice).

    Prefilter in the abelianisation: if (v, g) fixes (rep, x) then the letter
    parities of ``rep^-1 v rep^g`` lie in sigma(x).
    """
    H = list(H)
    ms = u.ms
    gparts = {p.g for p in H}
    bases = [x for x in u.by_base if all(ms.sd_action.apply(g, x) == x for g in gparts)]
    smask = {x: sum(1 << i for i in ms.sigma[x]) for x in bases}
    vpar = [(_parity_word(p.w.word), p.g) for p in H]
    par = u.parities
    out = set()
    for x in bases:
        allowed = ~smask[x]
        for rep in u.by_base[x]:
            rp = par[rep]
            if any((rp[0] ^ rp[g] ^ vp) & allowed for vp, g in vpar):
                continue
            if all(_fixes(u, p, rep, x) for p in H):
                out.add((rep, x))
    return out


def fixed_set_U(u: TruncatedU, H) -> SimplicialComplex:
    """Simplices of the truncation fixed pointwise by ``H``.

    The action is admissible, so these are the simplices with every vertex
    fixed.  Fixedness of a vertex is decided inside the truncation.
    """
    return u.complex.full_subcomplex(fixed_vertices(u, H))


# ---------------------------------------------------------------------------
# Finite subgroups and the fixed-set comparison
# ---------------------------------------------------------------------------

def cliques(graph: CommutationGraph, max_size: int | None = None) -> list[frozenset]:
    """All cliques (including the empty one) in size-then-lex order."""
    n = len(graph)
    out = [frozenset()]
    layer = [()]
    k = 0
    while layer and (max_size is None or k < max_size):
        nxt = []
        for c in layer:
            start = c[-1] + 1 if c else 0
            for j in range(start, n):
                if all(graph.commute(i, j) for i in c):
                    nxt.append(c + (j,))
        out.extend(frozenset(c) for c in nxt)
        layer = nxt
        k += 1
    return out


def order_two_subgroups(ms: MirrorStructure, r: int, *, extra_conjugates: int = 0) -> list[SemidirectElement]:
    """Generators of order-two subgroups representable at radius ``r``.

    Every finite subgroup fixes a point, so it is conjugate into some
    ``W_sigma(x) x| G_x``; the involutions ``(w_J, g)`` with J a clique of size
    at most ``r`` therefore meet every conjugacy class that fits.  Up to
    ``extra_conjugates`` further involutions, conjugated by single generators,
    exercise the conjugation step.
    """
    sdp = ms.semidirect
    graph = ms.graph
    reps = []
    for J in cliques(graph, r):
        wJ = graph.element(sorted(J))
        for g in range(sdp.group_order):
            p = SemidirectElement(wJ, g)
            if p != sdp.identity and sdp.multiply(p, p) == sdp.identity:
                reps.append(p)
    out = list(reps)
    seen = set(out)
    if extra_conjugates:
        added = 0
        for p in reps:
            for i in range(len(graph)):
                c = SemidirectElement(graph.generator(i), 0)
                q = sdp.conjugate(p, c)
                if q not in seen and len(q.w) <= r:
                    seen.add(q)
                    out.append(q)
                    added += 1
                    if added >= extra_conjugates:
                        return out
    return out


@dataclass
class Lemma3Result:
    status: str                 # "pass" | "fail" | "inconclusive"
    mode: str | None            # "in_group" (conjugated into G) | "generalized" | None
    subgroup: list
    conjugator: str | None = None
    fixed_vertices: int = 0
    expected_vertices: int = 0
    reflection_generators: list = field(default_factory=list)
    normalizer_quotient_order: int | None = None
    translation_ok: bool | None = None
    witness: list | None = None
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {"status": self.status, "mode": self.mode, "subgroup": self.subgroup,
                "conjugator": self.conjugator, "fixed_vertices": self.fixed_vertices,
                "expected_vertices": self.expected_vertices,
                "reflection_generators": self.reflection_generators,
                "normalizer_quotient_order": self.normalizer_quotient_order,
                "translation_ok": self.translation_ok,
                "witness": self.witness, "note": self.note}


def _label_str(v) -> str:
    return vertex_label(v)


def _fixes_base_of_identity_chamber(ms: MirrorStructure, H, x) -> bool:
    return all(ms.sd_action.apply(p.g, x) == x and ms.graph.min_coset_rep(p.w, ms.sigma[x]).is_identity()
               for p in H)


def lemma3_check(u: TruncatedU, H_gens, *, cap: int = DEFAULT_CLOSURE_CAP) -> Lemma3Result:
    """Compare Fix(H) in the truncation with the smaller basic construction.

    H is first conjugated by some ``(c, 1)`` with ``c`` in the ball so that it
    lies in G (the case covered by the fixed-set lemma) or, failing that, so
    that it fixes a vertex of the identity chamber.  The expected fixed set is
    then the union of the chambers ``w M^H`` for ``w`` in the parabolic
    subgroup on the generators that H fixes; with labels this is decisive at
    the same radius.
    """
    ms, sdp, graph = u.ms, u.ms.semidirect, u.ms.graph
    H = sdp.closure(H_gens, cap)
    if H is None:
        raise ConstructionError("subgroup is infinite or exceeds the closure cap")
    H = sorted(H, key=SemidirectElement.sort_key)
    names = [p.label() for p in H]
    in_group = generalized = None
    for c in u.chambers:
        cc = SemidirectElement(c, 0)
        Hc = [sdp.conjugate(p, cc) for p in H]
        if all(p.w.is_identity() for p in Hc):
            in_group = (c, Hc)
            break
        if generalized is None and any(_fixes_base_of_identity_chamber(ms, Hc, x)
                                       for x in ms.sd_M.vertices):
            generalized = (c, Hc)
    if in_group is None and generalized is None:
        return Lemma3Result("inconclusive", None, names,
                            note=f"no conjugator into a chamber-e stabiliser within radius {u.radius}; "
                                 f"rerun at radius {u.radius + 1}")
    mode = "in_group" if in_group else "generalized"
    c, Hc = in_group or generalized
    got = fixed_vertices(u, Hc)
    got_complex = u.complex.full_subcomplex(got)
    vq = None
    if mode == "in_group":
        expected, I_H, vq = _expected_in_group(u, Hc)
    else:
        expected, I_H = _expected_generalized(u, Hc)
    res = Lemma3Result("pass", mode, names, conjugator=c.label(),
                       fixed_vertices=len(got), expected_vertices=len(expected.vertices),
                       reflection_generators=sorted(graph.names[i] for i in I_H),
                       normalizer_quotient_order=vq)
    if expected != got_complex:
        res.status = "fail"
        diff = (expected.simplices ^ got_complex.simplices)
        bad = min(diff, key=lambda s: (len(s), sorted(map(_label_str, s))))
        res.witness = sorted(map(_label_str, bad))
        res.note = "fixed set differs from the smaller construction"
        return res
    res.translation_ok = _translation_ok(u, c, H, got)
    if not res.translation_ok:
        res.status = "fail"
        res.note = "translating by the conjugator does not match the fixed sets"
    return res


def _expected_in_group(u: TruncatedU, Hc):
    """U(M^H, N^H) built from scratch on the fixed subcomplexes, labels mapped back."""
    ms = u.ms
    Hg = sorted({p.g for p in Hc})
    MH = fixed_subcomplex(ms.action, Hg)
    NH = ms.N.full_subcomplex(v for v in ms.N.vertices if v in set(MH.vertices))
    sub = mirror_structure(MH, NH, ball_cap=ms.graph.ball_cap)
    if sub.subdivided:
        raise ConstructionError("fixed subcomplexes should already be full and flag")
    small = build_U(sub, u.radius)
    g_big, g_small = ms.graph, sub.graph

    def lift(lbl):
        rep, x = lbl
        return (g_big.element(g_big.to_word(g_small.generators[i] for i in rep.word)), x)

    expected = small.complex.relabel({v: lift(v) for v in small.complex.vertices})
    I_H = sorted(g_big.index[v] for v in NH.vertices)
    normalizer = ms.action.normalizer(Hg)
    return expected, I_H, len(normalizer) // len(Hg)


def _expected_generalized(u: TruncatedU, Hc):
    ms, sdp, graph = u.ms, u.ms.semidirect, u.ms.graph
    base = [x for x in ms.sd_M.vertices if _fixes_base_of_identity_chamber(ms, Hc, x)]
    base_set = set(base)
    Hset = set(Hc)
    I_H = []
    for i in range(len(graph)):
        s = SemidirectElement(graph.generator(i), 0)
        if s in Hset:
            continue
        if any(sdp.conjugate(p, s) != p for p in Hc):
            continue
        if any(i in ms.sigma[x] for x in base):
            I_H.append(i)
    allowed = set(I_H)
    words = [w for w in u.chambers if set(w.word) <= allowed]
    MH = ms.sd_M.full_subcomplex(base_set)
    tops = []
    for w in words:
        lab = {x: (graph.min_coset_rep(w, ms.sigma[x]), x) for x in base}
        tops.extend(frozenset(lab[x] for x in m) for m in MH.maximal_simplices)
    return SimplicialComplex.build((), tops), I_H


def _translation_ok(u: TruncatedU, c: RacgElement, H, fixed_conj: set) -> bool:
    """(c,1) carries Fix(c^-1 H c) onto Fix(H) wherever both ends are in the truncation."""
    if c.is_identity():
        return True
    cc = SemidirectElement(c, 0)
    ci = u.ms.semidirect.inverse(cc)
    fixed = fixed_vertices(u, H)
    for y in fixed_conj:
        z = act_on_U(u, cc, y)
        if z and z not in fixed:
            return False
    for z in fixed:
        y = act_on_U(u, ci, z)
        if y and y not in fixed_conj:
            return False
    return True


# ---------------------------------------------------------------------------
# Stabilisers
# ---------------------------------------------------------------------------

@dataclass
class StabilizerReport:
    vertices_scanned: int
    sample_size: int
    max_order: int
    all_finite: bool
    formula_agrees: bool
    interior_trivial: bool      # sigma empty and G_x trivial => stabiliser trivial
    orders: dict                # order -> count of vertices

    @property
    def ok(self) -> bool:
        return self.all_finite and self.formula_agrees and self.interior_trivial

    def to_json(self) -> dict:
        return {"vertices_scanned": self.vertices_scanned, "sample_size": self.sample_size,
                "max_order": self.max_order, "all_finite": self.all_finite,
                "formula_agrees": self.formula_agrees, "interior_trivial": self.interior_trivial,
                "orders": {str(k): v for k, v in sorted(self.orders.items())}}


def stabilizer_scan(u: TruncatedU, sample=None, vertices=None) -> StabilizerReport:
    """Brute-force stabilisers within ``sample``, checked against the closed form.

    The closed form ``(rep,1)(W_sigma(x) x| G_x)(rep,1)^-1`` is enumerated
    independently; the brute-force fixers must be exactly its members that
    lie in the sample, and must generate a group of at most
    ``2^|sigma(x)| |G_x|`` elements.
    """
    ms, sdp, graph = u.ms, u.ms.semidirect, u.ms.graph
    sample = list(sample) if sample is not None else sdp.elements(min(u.radius, 1))
    sample_set = set(sample)
    vertices = list(vertices) if vertices is not None else list(u.complex.vertices)
    orders: dict = {}
    all_finite = formula_agrees = interior_trivial = True
    max_order = 1
    for rep, x in vertices:
        fixers = {p for p in sample if _fixes(u, p, rep, x)}
        Gx = [g for g in range(sdp.group_order) if ms.sd_action.apply(g, x) == x]
        bound = (2 ** len(ms.sigma[x])) * len(Gx)
        cc = SemidirectElement(rep, 0)
        closed = {sdp.conjugate(SemidirectElement(v, g), sdp.inverse(cc))
                  for v in graph.parabolic_elements(ms.sigma[x]) for g in Gx}
        if fixers != closed & sample_set:
            formula_agrees = False
        grp = sdp.closure(fixers, cap=bound)
        if grp is None:
            all_finite = False
            continue
        orders[len(grp)] = orders.get(len(grp), 0) + 1
        max_order = max(max_order, len(grp))
        if not ms.sigma[x] and len(Gx) == 1 and len(grp) != 1:
            interior_trivial = False
    return StabilizerReport(len(vertices), len(sample), max_order, all_finite, formula_agrees,
                            interior_trivial, orders)


# ---------------------------------------------------------------------------
# Cubical model on the cone of N
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CubicalBall:
    graph: CommutationGraph
    radius: int
    vertices: tuple             # ball(radius)
    cubes: tuple                # (min coset rep, clique) pairs

    @cached_property
    def cube_set(self) -> frozenset:
        return frozenset(self.cubes)

    @cached_property
    def cliques(self) -> list:
        return cliques(self.graph)

    def cube_vertices(self, rep: RacgElement, J) -> list:
        return [self.graph.multiply(rep, u) for u in self.graph.parabolic_elements(J)]

    def edges(self) -> set:
        return {frozenset(self.cube_vertices(rep, J)) for rep, J in self.cubes if len(J) == 1}

    def link(self, v: RacgElement) -> SimplicialComplex:
        """Vertex link: one (|J|-1)-simplex per cube through ``v``."""
        g = self.graph
        simplices = []
        for J in self.cliques:
            if not J:
                continue
            if (g.min_coset_rep(v, J), J) in self.cube_set:
                simplices.append(frozenset(g.multiply(v, g.generator(j)) for j in J))
        return SimplicialComplex.build((), simplices)

    def summary(self) -> dict:
        by_dim: dict = {}
        for _, J in self.cubes:
            by_dim[len(J)] = by_dim.get(len(J), 0) + 1
        return {"radius": self.radius, "vertices": len(self.vertices),
                "cubes_by_dim": [by_dim.get(k, 0) for k in range(max(by_dim) + 1)]}


def cubical_ball(N: SimplicialComplex, r: int, *, ball_cap: int | None = None) -> CubicalBall:
    if not is_flag(N):
        raise ConstructionError("N must be a flag complex")
    graph = CommutationGraph.from_complex(N, **({} if ball_cap is None else {"ball_cap": ball_cap}))
    ball = graph.ball(r)
    cubes = []
    for J in cliques(graph):
        for w in ball:
            if graph.min_coset_rep(w, J) == w:
                cubes.append((w, J))
    return CubicalBall(graph, r, tuple(ball), tuple(cubes))


@dataclass
class LinkReport:
    vertices_checked: int
    isomorphic: bool
    flag: bool
    failures: list

    @property
    def ok(self) -> bool:
        return self.isomorphic and self.flag

    def to_json(self) -> dict:
        return {"vertices_checked": self.vertices_checked, "isomorphic": self.isomorphic,
                "flag": self.flag, "failures": self.failures}


def link_check(cb: CubicalBall, N: SimplicialComplex | None = None, *, cap: int = 64) -> LinkReport:
    """Each vertex link is isomorphic to N and flag (Gromov's condition)."""
    g = cb.graph
    if N is None:
        N = SimplicialComplex.build(g.generators, [[g.generators[i] for i in J] for J in cb.cliques if J])
    iso = flag = True
    failures = []
    for v in cb.vertices:
        lk = cb.link(v)
        named = lk.relabel({u: g.generators[graph_letter(g, v, u)] for u in lk.vertices})
        ok_iso = named == N or find_isomorphism(lk, N, cap=cap) is not None
        ok_flag = is_flag(lk)
        if not (ok_iso and ok_flag):
            failures.append(v.label())
        iso &= ok_iso
        flag &= ok_flag
    return LinkReport(len(cb.vertices), iso, flag, failures)


def graph_letter(g: CommutationGraph, v: RacgElement, u: RacgElement) -> int:
    d = g.multiply(g.invert(v), u)
    if len(d) != 1:
        raise ConstructionError("link vertex is not a neighbour")
    return d.word[0]


# ---------------------------------------------------------------------------
# Quotient by W x| G
# ---------------------------------------------------------------------------

@dataclass
class QuotientReport:
    chambers_collapse: bool     # U / W equals Sd(M) on the nose
    isomorphic: bool            # (U / W) / G equals the orbit complex of Sd(M)
    chain_level_match: bool     # orbit complex homology equals the orbit chain complex homology
    homology_quotient: HomologyResult
    homology_target: HomologyResult | None
    homology_match: bool | None

    @property
    def ok(self) -> bool:
        return (self.chambers_collapse and self.isomorphic and self.chain_level_match
                and self.homology_match is not False)

    def to_json(self) -> dict:
        return {"chambers_collapse": self.chambers_collapse, "isomorphic": self.isomorphic,
                "chain_level_match": self.chain_level_match,
                "homology_quotient": self.homology_quotient.lines(),
                "homology_target": None if self.homology_target is None else self.homology_target.lines(),
                "homology_match": self.homology_match}


def quotient_U_check(u: TruncatedU, target: HomologyResult | None = None) -> QuotientReport:
    """U_r / (W x| G) via labels, compared with Sd(M)/G and optionally a target homology.

    Forgetting the coset part of every label collapses all chambers; the
    result must be Sd(M) itself.  Passing to G-orbits of base vertices must
    then give the orbit complex.
    """
    ms = u.ms
    mod_W = SimplicialComplex.build((), (frozenset(x for _, x in m) for m in u.complex.maximal_simplices))
    collapse = mod_W == ms.sd_M
    act = ms.sd_action
    reference = quotient_complex(act)
    if is_regular(act):
        rep = vertex_orbits(act)
        mod_WG = SimplicialComplex.build((), (frozenset(rep[x] for x in m) for m in mod_W.maximal_simplices))
        iso = mod_WG == reference
    else:
        # the orbit complex needs a further subdivision; U / W must still be Sd(M)
        iso = collapse
    h = homology(reference)
    chain = h == quotient_homology(act)
    match = None if target is None else h == target
    return QuotientReport(collapse, iso, chain, h, target, match)
