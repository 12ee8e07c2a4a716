"""Acceptance criteria 1-12.  Each test records a one-line verdict for the summary.

Run alone with ``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
"""
import itertools
import random
import sys
import time

import pytest

from oracles import TitsOracle, all_graphs
from rtk import corpus
from rtk.complex import GroupAction, barycentric_subdivision, from_maximal_simplices
from rtk.construction import (build_U, cubical_ball, lemma3_check, link_check, mirror_structure,
                              stabilizer_scan)
from rtk.embedding import graph_embedding, regular_neighborhood, retraction_certificate
from rtk.homology import homology, is_acyclic, smith_normal_form
from rtk.pipeline import PipelineOptions, run_pipeline
from rtk.racg import CommutationGraph
from rtk.scx import dumps, scx_document

CORPUS = sorted(corpus.pipeline_corpus())


def _trim(lines):
    """Drop trailing zero groups so homology of different dimensions compares."""
    out = list(lines)
    while out and out[-1].endswith("= 0"):
        out.pop()
    return out


def _matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


# -- 1 ---------------------------------------------------------------------

@pytest.mark.criterion(1)
def test_c01_normal_forms_match_cayley_oracle(record):
    t0 = time.perf_counter()
    graphs = mismatches = words = 0
    for n in range(1, 5):
        for edges in all_graphs(n):
            graphs += 1
            g = CommutationGraph(range(n), edges)
            tits = TitsOracle(n, edges)
            nf_to_mat, mat_to_nf = {}, {}
            layer = [((), tits.identity)]
            for length in range(8):
                for w, M in layer:
                    nf = g.normal_form(w).word
                    words += 1
                    if nf_to_mat.setdefault(nf, M) != M or mat_to_nf.setdefault(M, nf) != nf:
                        mismatches += 1
                if length < 7:
                    layer = [(w + (i,), tits.right_multiply(M, i)) for w, M in layer for i in range(n)]
    elapsed = time.perf_counter() - t0
    record(f"{graphs} graphs, {words} words, {mismatches} mismatches, {elapsed:.1f}s")
    assert mismatches == 0
    assert elapsed < 30


# -- 2 ---------------------------------------------------------------------

@pytest.mark.criterion(2)
def test_c02_ball_counts(record):
    dinf = CommutationGraph(["a", "b"], [])
    ball = dinf.ball(6)
    dinf_sizes = [sum(1 for w in ball if len(w) <= r) for r in range(7)]
    c4 = CommutationGraph.from_complex(corpus.cycle(4))
    c4_ball2 = len(c4.ball(2))
    edge_group = CommutationGraph(["a", "b"], [("a", "b")])
    edge_sizes = [len(edge_group.ball(r)) for r in (2, 3, 4)]
    # same numbers from the matrix oracle
    oracle_dinf = list(itertools.accumulate(TitsOracle(2, []).ball_sizes(6)))
    oracle_c4 = sum(TitsOracle(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).ball_sizes(2))
    record(f"Dinf {dinf_sizes}, C4 ball(2)={c4_ball2}, edge group {edge_sizes}")
    assert dinf_sizes == [2 * r + 1 for r in range(7)] == oracle_dinf
    assert c4_ball2 == 13 == oracle_c4
    assert edge_sizes == [4, 4, 4]


# -- 3, 4 ------------------------------------------------------------------

@pytest.mark.criterion(3)
def test_c03_embedding_equivariance(record, random_pairs):
    t0 = time.perf_counter()
    defects = 0
    for pair in random_pairs:
        emb = graph_embedding(pair)
        defects += len(emb.equivariance_defects())
        # direct check on every simplex of Sd(L), not just vertices
        T, phi = pair.involution, emb.phi.vertex_map
        for s in emb.sd_L.simplices:
            lhs = frozenset((phi[x][1], phi[x][0]) for x in s)
            rhs = frozenset(phi[T(x)] for x in s)
            defects += lhs != rhs
    elapsed = time.perf_counter() - t0
    record(f"100 random pairs (max {max(len(p.complex.vertices) for p in random_pairs)} vertices), "
           f"{defects} defects, {elapsed:.2f}s")
    assert defects == 0
    assert elapsed < 10


@pytest.mark.criterion(4)
def test_c04_retraction_certificates(record, random_pairs):
    failures = []
    for k, pair in enumerate(random_pairs):
        cert = retraction_certificate(regular_neighborhood(graph_embedding(pair)), collapse=False)
        if not cert.all_match:
            failures.append(k)
    record(f"100 random pairs, {len(failures)} certificate failures")
    assert not failures


# -- 5 ---------------------------------------------------------------------

@pytest.mark.criterion(5)
def test_c05_fixed_sets_match_smaller_construction(record, pipelines):
    counts = {"pass": 0, "rerun_pass": 0, "other": []}
    for name in CORPUS:
        for r in (1, 2):
            st = pipelines.get(name, r).stage("lemma3")
            for entry in st.outputs["results"]:
                if entry["status"] != "pass":
                    counts["other"].append((name, r, entry["subgroup"], entry["status"]))
                elif "rerun" in entry:
                    counts["rerun_pass"] += 1
                else:
                    counts["pass"] += 1
    # cone on two points with the swap: the fixed set is the single cone-point vertex
    K = corpus.cone_on_two_points()
    act = GroupAction(K, [{"p": "q", "q": "p"}])
    ms = mirror_structure(K, from_maximal_simplices(["p", "q"], [["p"], ["q"]]), act)
    u = build_U(ms, 1)
    swap = ms.semidirect.element(ms.graph.identity, 1)
    res = lemma3_check(u, [swap])
    record(f"{counts['pass']} pass, {counts['rerun_pass']} pass after rerun, "
           f"{len(counts['other'])} other; cone/swap fixed vertices={res.fixed_vertices} ({res.status})")
    assert not counts["other"]
    assert res.ok and res.fixed_vertices == 1


# -- 6 ---------------------------------------------------------------------

@pytest.mark.criterion(6)
def test_c06_quotient_homology_matches_input_quotient(record, pipelines):
    rows = []
    for name in CORPUS:
        outs = []
        for r in (1, 2):
            st = pipelines.get(name, r).stage("quotient")
            outs.append((st.checks["homology_matches_input_quotient"]["status"],
                         _trim(st.outputs["homology_quotient"]), _trim(st.outputs["homology_input_quotient"])))
        rows.append((name, outs))
    bad = [(n, o) for n, o in rows
           if any(s != "pass" or hq != hi for s, hq, hi in o) or o[0][1] != o[1][1]]
    record(f"{len(rows)} pipelines at r=1,2; {len(bad)} mismatches")
    assert not bad


# -- 7 ---------------------------------------------------------------------

def _finite_w_cases():
    tri = corpus.solid_triangle()
    e = corpus.edge()
    c2 = corpus.cone_on_two_points()
    return {
        "point/point": (corpus.point(), corpus.point()),
        "edge/edge": (e, e),
        "edge/vertex": (e, from_maximal_simplices(["a"], [["a"]])),
        "triangle/triangle": (tri, tri),
        "triangle/edge": (tri, from_maximal_simplices([0, 1], [[0, 1]])),
        "cone/apex": (c2, from_maximal_simplices(["c"], [["c"]])),
    }


@pytest.mark.criterion(7)
def test_c07_finite_group_full_construction_acyclic(record):
    results = {}
    for name, (M, N) in _finite_w_cases().items():
        assert is_acyclic(M)
        ms = mirror_structure(M, N)
        if not ms.graph.is_complete():
            continue
        n = len(ms.graph)
        u = build_U(ms, n)            # the longest element has length |I|
        assert len(u.chambers) == 2 ** n
        results[name] = is_acyclic(u.complex)
    record(f"{len(results)} finite cases: " + ", ".join(f"{k}={'ok' if v else 'NOT acyclic'}"
                                                        for k, v in results.items()))
    assert len(results) >= 5 and all(results.values())


# -- 8 ---------------------------------------------------------------------

@pytest.mark.criterion(8)
def test_c08_cubical_links(record):
    cases = {"two_points": corpus.two_points(), "edge": corpus.edge(), "cycle4": corpus.cycle(4),
             "sd_cycle3": barycentric_subdivision(corpus.cycle(3))}
    out = {}
    for name, N in cases.items():
        for r in (0, 1, 2):
            rep = link_check(cubical_ball(N, r), N)
            out[(name, r)] = (rep.ok, rep.vertices_checked)
    checked = sum(v[1] for v in out.values())
    record(f"{len(out)} (N, r) cases, {checked} vertex links, "
           f"{sum(not v[0] for v in out.values())} failures")
    assert all(v[0] for v in out.values())


# -- 9 ---------------------------------------------------------------------

@pytest.mark.criterion(9)
def test_c09_stabilizers_finite(record, pipelines):
    reps = {}
    for name in CORPUS:
        for r in (1, 2):
            st = pipelines.get(name, r).stage("stabilizers")
            reps[(name, r)] = st.outputs
    # a larger sample on one case
    u = pipelines.get("cycle3_reflection", 2).artifacts["U"]
    wide = stabilizer_scan(u, u.ms.semidirect.elements(2), [v for v in u.complex.vertices if len(v[0]) <= 1])
    scanned = sum(o["vertices_scanned"] for o in reps.values()) + wide.vertices_scanned
    ok = all(o["all_finite"] and o["formula_agrees"] and o["interior_trivial"] for o in reps.values())
    record(f"{scanned} vertices scanned, max stabiliser order "
           f"{max(max(o['max_order'] for o in reps.values()), wide.max_order)}")
    assert ok and wide.ok


# -- 10 --------------------------------------------------------------------

@pytest.mark.criterion(10)
def test_c10_homology_backend(record):
    rp2 = homology(corpus.rp2_6())
    s2 = homology(corpus.sphere2())
    invariant = {name: homology(K) == homology(barycentric_subdivision(K))
                 for name, K in corpus.corpus_complexes().items()}
    rng = random.Random(10)
    snf_bad = 0
    for _ in range(1000):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        A = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        D, L, R = smith_normal_form(A)
        diag = [D[i][i] for i in range(min(m, n))]
        off = any(D[i][j] for i in range(m) for j in range(n) if i != j)
        divides = all(b % a == 0 if a else b == 0 for a, b in zip(diag, diag[1:]))
        snf_bad += _matmul(_matmul(L, D), R) != A or off or not divides or any(d < 0 for d in diag)
    record(f"RP2 H1={rp2.torsion[1]}, S2 H2 betti={s2.betti[2]}, "
           f"Sd-invariant on {sum(invariant.values())}/{len(invariant)}, SNF failures {snf_bad}/1000")
    assert rp2.betti == (1, 0, 0) and rp2.torsion[1] == (2,)
    assert s2.betti == (1, 0, 1) and not any(s2.torsion)
    assert all(invariant.values())
    assert snf_bad == 0


# -- 11 --------------------------------------------------------------------

def _abelianization_order(n: int, edges) -> int:
    """|W / [W, W]| by coset enumeration on the abelianised presentation."""
    from sympy.combinatorics.fp_groups import FpGroup
    from sympy.combinatorics.free_groups import free_group
    F, *gens = free_group(" ".join(f"s{i}" for i in range(n)))
    rels = [s ** 2 for s in gens] + [a * b * a ** -1 * b ** -1 for a, b in itertools.combinations(gens, 2)]
    rels += [(gens[i] * gens[j]) ** 2 for i, j in edges]
    return FpGroup(F, rels).order()


def _abelianization_order_snf(n: int, edges) -> int:
    """Product of the invariant factors of the relation matrix (sympy SNF)."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf
    rows = [[2 * (j == i) for j in range(n)] for i in range(n)]
    rows += [[2 * (k in (i, j)) for k in range(n)] for i, j in edges]
    D = sympy_snf(Matrix(rows), domain=ZZ)
    out = 1
    for i in range(min(D.shape)):
        out *= abs(int(D[i, i])) or 0
    return out


@pytest.mark.criterion(11)
def test_c11_commutator_index(record):
    graphs = {}
    for name, K in corpus.corpus_complexes().items():
        g = CommutationGraph.from_complex(K)
        graphs[name] = g
    for name, (M, N) in _finite_w_cases().items():
        graphs["mirror:" + name] = mirror_structure(M, N).graph
    bad, coset_checked = [], 0
    for name, g in graphs.items():
        n = len(g)
        expected = 2 ** n
        if g.commutator_index() != expected or _abelianization_order_snf(n, g.edges) != expected:
            bad.append(name)
        if n <= 3:
            coset_checked += 1
            if _abelianization_order(n, g.edges) != expected:
                bad.append(name + " (coset)")
    record(f"{len(graphs)} graphs, {coset_checked} by coset enumeration, {len(bad)} mismatches")
    assert not bad


# -- 12 --------------------------------------------------------------------

@pytest.mark.criterion(12)
def test_c12_determinism(record, pipelines):
    compared = 0
    diffs = []
    for name in CORPUS:
        for r in (1, 2):
            first = pipelines.get(name, r)
            second = run_pipeline(corpus.pipeline_corpus()[name], PipelineOptions(radius=r), name=name)
            a, b = dumps(first.to_json(timings=False)), dumps(second.to_json(timings=False))
            ua = dumps(scx_document(first.artifacts["U"].complex))
            ub = dumps(scx_document(second.artifacts["U"].complex))
            ka = dumps(scx_document(first.artifacts["neighborhood"].K))
            kb = dumps(scx_document(second.artifacts["neighborhood"].K))
            compared += 1
            if (a, ua, ka) != (b, ub, kb):
                diffs.append((name, r))
    record(f"{compared} pipeline pairs compared byte-for-byte, {len(diffs)} differ")
    assert not diffs


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
