"""Growth of the truncated construction with the radius.

For each corpus pipeline the regular neighbourhood and mirror structure are
built once; then ball sizes, chamber counts and U sizes are tabulated per
radius, together with the wall-clock time of ``build_U``.  Output is CSV.
"""
from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import dataclass, field

from rtk.construction import build_U, mirror_structure
from rtk.corpus import pipeline_corpus
from rtk.embedding import graph_embedding, regular_neighborhood


@dataclass
class GrowthConfig:
    max_radius: int = 3
    names: list = field(default_factory=lambda: sorted(pipeline_corpus()))
    max_vertices: int = 200_000        # stop a series once U would exceed this


def main(cfg: GrowthConfig, out=sys.stdout) -> None:
    w = csv.writer(out)
    w.writerow(["input", "generators", "radius", "ball_size", "u_vertices", "u_simplices", "seconds"])
    for name in cfg.names:
        pair = pipeline_corpus()[name]
        nb = regular_neighborhood(graph_embedding(pair))
        ms = mirror_structure(nb.K, nb.boundary_estimate, nb.swap_on_K)
        per_chamber = len(ms.sd_M.vertices)
        for r in range(cfg.max_radius + 1):
            ball = ms.graph.ball(r)
            if len(ball) * per_chamber > cfg.max_vertices:
                break
            t0 = time.perf_counter()
            u = build_U(ms, r)
            dt = time.perf_counter() - t0
            w.writerow([name, len(ms.graph), r, len(ball), len(u.complex.vertices),
                        sum(u.complex.f_vector), f"{dt:.3f}"])
            out.flush()


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-radius", type=int, default=3)
    ap.add_argument("--names", nargs="+")
    ap.add_argument("--max-vertices", type=int, default=200_000)
    a = ap.parse_args()
    cfg = GrowthConfig(max_radius=a.max_radius, max_vertices=a.max_vertices)
    if a.names:
        cfg.names = a.names
    main(cfg)
