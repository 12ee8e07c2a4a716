"""``rtk`` command line.  Exit codes: 0 pass, 1 check failure, 2 hard error."""
from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from .complex import (ComplexError, barycentric_subdivision, induced_action_on_sd, is_admissible, is_flag,
                      is_full_subcomplex, vertex_label)
from .construction import (ConstructionError, build_U, cubical_ball, fixed_set_U, lemma3_check, link_check,
                           mirror_structure, order_two_subgroups)
from .embedding import InvolutionPair, graph_embedding, regular_neighborhood, retraction_certificate
from .homology import homology
from .pipeline import PipelineOptions, run_pipeline
from .racg import CommutationGraph, RacgError
from .scx import ScxError, dumps, read_scx, scx_document, write_report, write_scx


def _emit(doc, out: str | None) -> None:
    if out:
        write_report(out, doc)
    else:
        sys.stdout.write(dumps(doc))


def _mirror_from_file(args):
    data = read_scx(args.file)
    N = data.subcomplex(args.sub)
    return mirror_structure(data.complex, N, data.action(args.action), ball_cap=args.ball_cap)


def cmd_validate(args) -> int:
    data = read_scx(args.file)
    K = data.complex
    doc = {"file": args.file, "vertices": len(K.vertices), "f_vector": list(K.f_vector),
           "euler_characteristic": K.euler_characteristic, "flag": is_flag(K),
           "actions": {n: {"order": a.order, "admissible": is_admissible(a)} for n, a in data.actions.items()},
           "subcomplexes": {n: {"f_vector": list(C.f_vector), "full": is_full_subcomplex(C, K),
                                "flag": is_flag(C)} for n, C in data.subcomplexes.items()}}
    _emit(doc, None)
    return 0


def cmd_sd(args) -> int:
    data = read_scx(args.file)
    actions = {n: induced_action_on_sd(a) for n, a in data.actions.items()}
    subs = {n: barycentric_subdivision(C) for n, C in data.subcomplexes.items()}
    sd = barycentric_subdivision(data.complex)
    doc = scx_document(sd, actions, subs)
    _emit(doc, args.out)
    return 0


def cmd_flagcheck(args) -> int:
    data = read_scx(args.file)
    K = data.complex
    doc = {"flag": is_flag(K)}
    if args.sub:
        N = data.subcomplex(args.sub)
        doc["sub"] = {"name": args.sub, "flag": is_flag(N), "full": is_full_subcomplex(N, K)}
    _emit(doc, None)
    ok = doc["flag"] and all(doc.get("sub", {"flag": True, "full": True})[k] for k in ("flag", "full"))
    return 0 if ok else 1


def cmd_embed(args) -> int:
    data = read_scx(args.file)
    pair = InvolutionPair.from_action(data.action(args.action))
    emb = graph_embedding(pair, args.ambient)
    nb = regular_neighborhood(emb)
    cert = retraction_certificate(nb, collapse=not args.no_collapse)
    doc = {"image_f_vector": list(emb.image.f_vector), "K_f_vector": list(nb.K.f_vector),
           "frontier_f_vector": list(nb.boundary_estimate.f_vector), "equivariance_defects":
           len(emb.equivariance_defects()), "certificate": cert.to_json()}
    if args.out:
        write_scx(args.out, nb.K, {"S": nb.swap_on_K}, {"N": nb.boundary_estimate, "image": nb.image})
    _emit(doc, args.report)
    return 0 if cert.all_match and not doc["equivariance_defects"] else 1


def _graph(args) -> CommutationGraph:
    source = args.graph or ""
    if Path(source).is_file():
        data = read_scx(source)
        N = data.subcomplex(args.sub) if args.sub else data.complex
        return CommutationGraph.from_complex(N, ball_cap=args.ball_cap)
    verts, edges = [], []
    for tok in source.split(","):
        tok = tok.strip()
        if not tok:
            continue
        parts = tok.split("-")
        if len(parts) > 2 or not all(parts):
            raise RacgError(f"--graph: bad token {tok!r} (expected 'a-b' or 'a')")
        for p in parts:
            if p not in verts:
                verts.append(p)
        if len(parts) == 2:
            edges.append(tuple(parts))
    return CommutationGraph(sorted(verts), edges, ball_cap=args.ball_cap)


def _word_text(x) -> str:
    return ",".join(x.graph.names[i] for i in x.word)


def cmd_racg(args) -> int:
    g = _graph(args)
    doc = {"generators": [str(n) for n in g.names],
           "edges": sorted(sorted([str(g.names[a]), str(g.names[b])]) for a, b in g.edges),
           "commutator_index": g.commutator_index()}
    if args.reduce is not None:
        doc["normal_form"] = _word_text(g.parse(args.reduce))
    if args.coset is not None:
        word, J = args.coset
        Jw = g.to_word(t for t in re.split(r"[.,\s]+", J) if t)
        doc["min_coset_rep"] = _word_text(g.min_coset_rep(g.parse(word), set(Jw)))
    if args.ball is not None:
        ball = g.ball(args.ball)
        doc["ball_sizes"] = [sum(1 for w in ball if len(w) <= k) for k in range(args.ball + 1)]
        if args.list:
            doc["ball"] = [_word_text(w) for w in ball]
    _emit(doc, None)
    return 0


def parse_subgroup(ms, text: str) -> list:
    """``word|g;word|g`` with ``g`` a group element index (0 is the identity)."""
    out = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        w, sep, g = part.rpartition("|")
        if not sep:
            w, g = part, "0"
        try:
            gi = int(g)
        except ValueError:
            raise RacgError(f"bad group element {g!r} in {part!r}") from None
        out.append(ms.semidirect.element(ms.graph.parse(w), gi))
    return out


def cmd_build_u(args) -> int:
    ms = _mirror_from_file(args)
    u = build_U(ms, args.radius)
    if args.out:
        write_scx(args.out, u.complex, subcomplexes={"chamber_e": u.chamber(ms.graph.identity)})
    doc = {**u.summary(), "generators": ms.graph.names, "subdivided": ms.subdivided,
           "checks": {"connected": u.complex.is_connected()}}
    if args.homology:
        doc["homology"] = homology(u.complex).lines()
    _emit(doc, args.report)
    return 0


def cmd_fixed_sets(args) -> int:
    ms = _mirror_from_file(args)
    u = build_U(ms, args.radius)
    H = parse_subgroup(ms, args.subgroup)
    F = fixed_set_U(u, H)
    doc = {"subgroup": [p.label() for p in H], "vertices": sorted(vertex_label(v) for v in F.vertices),
           "f_vector": list(F.f_vector) if F.vertices else [],
           "homology": homology(F).lines() if F.vertices else []}
    if args.out:
        write_scx(args.out, F)
    _emit(doc, None)
    return 0


def cmd_lemma3(args) -> int:
    ms = _mirror_from_file(args)
    u = build_U(ms, args.radius)
    subs = [parse_subgroup(ms, args.subgroup)] if args.subgroup else \
        [[p] for p in order_two_subgroups(ms, args.radius, extra_conjugates=args.conjugates)]
    results = [lemma3_check(u, H).to_json() for H in subs]
    _emit({"radius": args.radius, "results": results}, None)
    return 1 if any(r["status"] == "fail" for r in results) else 0


def cmd_cubical(args) -> int:
    data = read_scx(args.file)
    N = data.subcomplex(args.sub) if args.sub else data.complex
    cb = cubical_ball(N, args.radius, ball_cap=args.ball_cap)
    lc = link_check(cb, N)
    _emit({**cb.summary(), "link_check": lc.to_json()}, None)
    return 0 if lc.ok else 1


def cmd_homology(args) -> int:
    data = read_scx(args.file)
    h = homology(data.complex, args.mod)
    if args.json:
        _emit(h.to_json(), None)
    else:
        sys.stdout.write("\n".join(h.lines()) + "\n")
    return 0


def cmd_pipeline(args) -> int:
    data = read_scx(args.file)
    pair = InvolutionPair.from_action(data.action(args.action))
    opts = PipelineOptions(radius=args.radius, ambient=args.ambient, ball_cap=args.ball_cap,
                           collapse=not args.no_collapse, lemma3_conjugates=args.conjugates)
    report = run_pipeline(pair, opts, name=args.file)
    doc = report.to_json(timings=not args.no_timings)
    _emit(doc, args.out)
    if args.u_out and "U" in report.artifacts:
        u = report.artifacts["U"]
        write_scx(args.u_out, u.complex, subcomplexes={"chamber_e": u.chamber(u.ms.graph.identity)})
    sys.stderr.write(f"verdict: {report.verdict}\n")
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rtk", description="Equivariant reflection-group construction toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, *, action=False, mirror=False, radius=None):
        p.add_argument("file", help=".scx input")
        if action or mirror:
            p.add_argument("--action", help="name of the action in the file (default: first)")
        if mirror:
            p.add_argument("--sub", default="N", help="subcomplex used as N (default: N)")
        if radius is not None:
            p.add_argument("--radius", type=int, default=radius)
        p.add_argument("--ball-cap", type=int, default=6,
                       help="largest allowed radius; ball sizes grow like (generators)^r")

    p = sub.add_parser("validate", help="parse and summarise an .scx file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("sd", help="barycentric subdivision")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sd)

    p = sub.add_parser("flagcheck", help="flag / full-subcomplex test")
    p.add_argument("file")
    p.add_argument("--sub")
    p.set_defaults(func=cmd_flagcheck)

    p = sub.add_parser("embed", help="equivariant embedding, neighbourhood and retraction certificate")
    common(p, action=True)
    p.add_argument("--ambient", choices=["product", "simplex"], default="product")
    p.add_argument("--no-collapse", action="store_true")
    p.add_argument("--out", help="write K (with swap, frontier N and image) as .scx")
    p.add_argument("--report")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("racg", help="right-angled Coxeter group utilities")
    p.add_argument("--graph", required=True,
                   help=".scx file whose 1-skeleton (or --sub) is the graph, or inline 'a-b,b-c,d'")
    p.add_argument("--sub", help="subcomplex of the .scx file to use")
    p.add_argument("--reduce", metavar="WORD", help="word to normalise, e.g. 'a,b,a'")
    p.add_argument("--coset", nargs=2, metavar=("WORD", "J"),
                   help="minimal representative of WORD in the coset WORD.W_J; J is comma-separated")
    p.add_argument("--ball", type=int)
    p.add_argument("--list", action="store_true", help="list ball elements")
    p.add_argument("--ball-cap", type=int, default=6)
    p.set_defaults(func=cmd_racg)

    p = sub.add_parser("build-u", help="truncated basic construction")
    common(p, mirror=True, radius=1)
    p.add_argument("--out", help="write U as .scx")
    p.add_argument("--report")
    p.add_argument("--homology", action="store_true")
    p.set_defaults(func=cmd_build_u)

    p = sub.add_parser("fixed-sets", help="fixed set of a finite subgroup in the truncation")
    common(p, mirror=True, radius=1)
    p.add_argument("--subgroup", required=True, help="generators 'word|g;word|g' (g = group element index)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_fixed_sets)

    p = sub.add_parser("lemma3", help="compare fixed sets with the smaller construction")
    common(p, mirror=True, radius=1)
    p.add_argument("--subgroup", help="default: all order-two representatives")
    p.add_argument("--conjugates", type=int, default=16)
    p.set_defaults(func=cmd_lemma3)

    p = sub.add_parser("cubical", help="cube complex on the cone of N and its link check")
    common(p, radius=2)
    p.add_argument("--sub", help="subcomplex used as N (default: whole complex)")
    p.set_defaults(func=cmd_cubical)

    p = sub.add_parser("homology", help="integral (or mod p) homology")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--mod", type=int)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("pipeline", help="run every stage and write a JSON report")
    common(p, action=True, radius=2)
    p.add_argument("--ambient", choices=["product", "simplex"], default="product")
    p.add_argument("--out", help="report path (default: stdout)")
    p.add_argument("--u-out", help="write the truncated U as .scx")
    p.add_argument("--no-timings", action="store_true", help="omit timing fields")
    p.add_argument("--no-collapse", action="store_true")
    p.add_argument("--conjugates", type=int, default=16, help="extra conjugated involutions for lemma3")
    p.set_defaults(func=cmd_pipeline)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ScxError, ComplexError, RacgError, ConstructionError) as exc:
        sys.stderr.write(f"rtk {args.command}: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
