"""End-to-end driver: involution pair -> neighbourhood -> mirrors -> truncated U -> checks."""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field

from .complex import induced_action_on_sd, is_flag, is_full_subcomplex
from .construction import (build_U, lemma3_check, mirror_structure, order_two_subgroups,
                           quotient_U_check, stabilizer_scan)
from .embedding import (InvolutionPair, graph_embedding, manifold_certificate, regular_neighborhood,
                        retraction_certificate)
from .homology import homology, quotient_homology
from .racg import DEFAULT_BALL_CAP

STAGES = ("embed", "neighborhood", "retraction", "manifold", "mirror", "coxeter",
          "build_u", "quotient", "stabilizers", "lemma3")
PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class PipelineOptions:
    radius: int = 2
    ambient: str = "product"
    derived: bool | None = None          # None: only when the ambient has one top cell
    ball_cap: int = DEFAULT_BALL_CAP
    collapse: bool = True                # run the greedy equivariant collapse
    stabilizer_radius: int = 1           # sample and vertices for the stabiliser scan
    lemma3_conjugates: int = 16          # extra conjugated involutions beyond class representatives
    lemma3_rerun: bool = True            # retry inconclusive cases at radius + 1


@dataclass
class StageRecord:
    name: str
    status: str = PASS
    inputs: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    timing_s: float | None = None
    error: str | None = None

    def check(self, name: str, status, **details) -> None:
        if isinstance(status, bool):
            status = PASS if status else FAIL
        self.checks[name] = {"status": status, **details}

    def settle(self) -> None:
        states = {c["status"] for c in self.checks.values()}
        self.status = FAIL if FAIL in states else INCONCLUSIVE if INCONCLUSIVE in states else PASS

    def to_json(self, timings: bool = True) -> dict:
        out = {"name": self.name, "status": self.status, "inputs": self.inputs,
               "outputs": self.outputs, "checks": self.checks}
        if self.error is not None:
            out["error"] = self.error
        if timings and self.timing_s is not None:
            out["timing_s"] = round(self.timing_s, 4)
        return out


@dataclass
class PipelineReport:
    input: dict
    options: dict
    stages: list
    verdict: str
    error: str | None = None
    artifacts: dict = field(default_factory=dict, repr=False)

    @property
    def exit_code(self) -> int:
        return {PASS: 0, FAIL: 1}.get(self.verdict, 2)

    def stage(self, name: str) -> StageRecord:
        return next(s for s in self.stages if s.name == name)

    def to_json(self, timings: bool = True) -> dict:
        out = {"verdict": self.verdict, "input": self.input, "options": self.options,
               "stages": [s.to_json(timings) for s in self.stages]}
        if self.error is not None:
            out["error"] = self.error
        return out


def _hl(h) -> list:
    return h.lines()


def run_pipeline(pair: InvolutionPair, options: PipelineOptions | None = None,
                 name: str = "input") -> PipelineReport:
    opts = options or PipelineOptions()
    r = opts.radius
    L = pair.complex
    records = {s: StageRecord(s) for s in STAGES}
    art: dict = {}
    report = PipelineReport(
        {"name": name, "vertices": len(L.vertices), "f_vector": list(L.f_vector),
         "involution_fixed_vertices": sum(1 for v in L.vertices if pair.involution(v) == v)},
        asdict(opts), [records[s] for s in STAGES], PASS, artifacts=art)

    def stage_embed(rec):
        rec.inputs = {"ambient": opts.ambient}
        emb = graph_embedding(pair, opts.ambient)
        art["embedding"] = emb
        defects = emb.equivariance_defects()
        rec.outputs = {"image_f_vector": list(emb.image.f_vector), "ambient_cells": len(emb.ambient.cells)}
        rec.check("swap_intertwines_involution", not defects, defects=len(defects))

    def stage_neighborhood(rec):
        emb = art["embedding"]
        nb = regular_neighborhood(emb, opts.derived)
        art["neighborhood"] = nb
        rec.outputs = {"K_f_vector": list(nb.K.f_vector),
                       "frontier_f_vector": list(nb.boundary_estimate.f_vector) if nb.boundary_estimate.vertices else [],
                       "subdivided": nb.subdivided}
        rec.check("image_in_K", nb.inclusion_ok())
        rec.check("image_full_in_K", is_full_subcomplex(nb.image, nb.K))

    def stage_retraction(rec):
        nb = art["neighborhood"]
        cert = retraction_certificate(nb, collapse=opts.collapse)
        rec.check("homology_K_eq_image", cert.homology_match,
                  K=_hl(cert.homology_K), image=_hl(cert.homology_image))
        rec.check("fixed_homology_K_eq_image", cert.fixed_match,
                  K=_hl(cert.fixed_K), image=_hl(cert.fixed_image))
        rec.check("quotient_homology_K_eq_image", cert.quotient_match,
                  K=_hl(cert.quotient_K), image=_hl(cert.quotient_image))
        if cert.collapse is not None:
            rec.check("equivariant_collapse", PASS if cert.collapse.success else INCONCLUSIVE,
                      steps=cert.collapse.steps, remaining=cert.collapse.remaining)

    def stage_manifold(rec):
        nb = art["neighborhood"]
        mf = manifold_certificate(nb.K)
        frontier = set(nb.boundary_estimate.vertices)
        rec.outputs = {"dimension": mf.dimension, "interior_vertices": mf.interior,
                       "boundary_vertices": len(mf.boundary), "frontier_vertices": len(frontier)}
        rec.check("vertex_links", PASS if mf.ok else INCONCLUSIVE, bad_vertices=len(mf.bad))
        rec.check("frontier_is_boundary", PASS if set(mf.boundary) == frontier else INCONCLUSIVE,
                  note="" if set(mf.boundary) == frontier else "unverified boundary")

    def stage_mirror(rec):
        nb = art["neighborhood"]
        ms = mirror_structure(nb.K, nb.boundary_estimate, nb.swap_on_K, ball_cap=opts.ball_cap)
        art["mirror"] = ms
        rec.outputs = {"generators": len(ms.graph), "commuting_pairs": len(ms.graph.edges),
                       "subdivided": ms.subdivided, "sd_M_f_vector": list(ms.sd_M.f_vector),
                       "group_order": ms.action.order}
        full_flag = (not ms.N.vertices) or (is_full_subcomplex(ms.N, ms.M) and is_flag(ms.N))
        rec.check("N_full_and_flag", full_flag)
        rec.check("sigma_cliques", all(ms.graph.is_finite_parabolic(s) for s in ms.sigma.values()))

    def stage_coxeter(rec):
        ms = art["mirror"]
        g = ms.graph
        ball = g.ball(r)
        sizes = [sum(1 for w in ball if len(w) <= k) for k in range(r + 1)]
        rec.outputs = {"ball_sizes": sizes, "commutator_index": g.commutator_index(),
                       "finite": g.is_complete()}
        ballset = set(ball)
        rec.check("ball_inverse_closed", all(g.invert(w) in ballset for w in ball))
        perms = ms.semidirect.perms
        rec.check("symmetries_preserve_length",
                  all(len(g.twist(w, p, check=False)) == len(w) for p in perms for w in ball))

    def stage_build_u(rec):
        ms = art["mirror"]
        u = build_U(ms, r)
        art["U"] = u
        rec.inputs = {"radius": r}
        rec.outputs = u.summary()
        rec.check("chamber_count", len(u.chambers) == sum(1 for _ in ms.graph.ball(r)))
        inj = all(len({u.label(w, x) for x in ms.sd_M.vertices}) == len(ms.sd_M.vertices)
                  for w in u.chambers)
        rec.check("chambers_are_copies_of_SdM", inj)
        if ms.M.is_connected():
            rec.check("connected", u.complex.is_connected())

    def stage_quotient(rec):
        u = art["U"]
        target = quotient_homology(induced_action_on_sd(pair.action()))
        q = quotient_U_check(u, target)
        rec.outputs = {"homology_quotient": _hl(q.homology_quotient), "homology_input_quotient": _hl(target)}
        rec.check("U_mod_W_is_SdM", q.chambers_collapse)
        rec.check("orbit_complex_matches", q.isomorphic)
        rec.check("orbit_chain_complex_agrees", q.chain_level_match)
        rec.check("homology_matches_input_quotient", bool(q.homology_match))

    def stage_stabilizers(rec):
        u = art["U"]
        sr = min(r, opts.stabilizer_radius)
        sample = u.ms.semidirect.elements(sr)
        verts = [v for v in u.complex.vertices if len(v[0]) <= sr]
        st = stabilizer_scan(u, sample, verts)
        rec.outputs = st.to_json()
        rec.check("stabilizers_finite", st.all_finite)
        rec.check("stabilizers_match_closed_form", st.formula_agrees)
        rec.check("interior_stabilizers_trivial", st.interior_trivial)

    def stage_lemma3(rec):
        u = art["U"]
        ms = u.ms
        subs = order_two_subgroups(ms, r, extra_conjugates=opts.lemma3_conjugates)
        results, bigger = [], None
        for p in subs:
            res = lemma3_check(u, [p])
            entry = res.to_json()
            if res.status == INCONCLUSIVE and opts.lemma3_rerun and r + 1 <= ms.graph.ball_cap:
                if bigger is None:
                    bigger = build_U(ms, r + 1)
                rerun = lemma3_check(bigger, [p])
                entry["rerun"] = rerun.to_json()
                entry["status"] = rerun.status
            results.append(entry)
        states = {e["status"] for e in results}
        rec.outputs = {"subgroups": len(results), "results": results}
        rec.check("fixed_sets_match_smaller_construction",
                  FAIL if FAIL in states else INCONCLUSIVE if INCONCLUSIVE in states else PASS,
                  passed=sum(e["status"] == PASS for e in results))

    runners = {"embed": stage_embed, "neighborhood": stage_neighborhood, "retraction": stage_retraction,
               "manifold": stage_manifold, "mirror": stage_mirror, "coxeter": stage_coxeter,
               "build_u": stage_build_u, "quotient": stage_quotient, "stabilizers": stage_stabilizers,
               "lemma3": stage_lemma3}
    aborted = False
    for sname in STAGES:
        rec = records[sname]
        if aborted:
            rec.status = "skipped"
            continue
        t0 = time.perf_counter()
        try:
            runners[sname](rec)
            rec.settle()
        except ValueError as exc:
            rec.status = "error"
            rec.error = f"{type(exc).__name__}: {exc}"
            report.error = f"stage {sname}: {rec.error}"
            aborted = True
        rec.timing_s = time.perf_counter() - t0
    if aborted:
        report.verdict = "error"
    elif any(s.status == FAIL for s in report.stages):
        report.verdict = FAIL
    return report

