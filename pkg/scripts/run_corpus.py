"""Run the full pipeline over the named corpus and write one report per (input, radius)."""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from rtk.corpus import pipeline_corpus
from rtk.pipeline import PipelineOptions, run_pipeline
from rtk.scx import write_report, write_scx


@dataclass
class CorpusRun:
    radii: list = field(default_factory=lambda: [1, 2])
    names: list = field(default_factory=lambda: sorted(pipeline_corpus()))
    out_dir: Path = Path("runs/corpus")
    timings: bool = True
    write_inputs: bool = True


def main(cfg: CorpusRun) -> int:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    corpus = pipeline_corpus()
    worst = 0
    for name in cfg.names:
        pair = corpus[name]
        if cfg.write_inputs:
            write_scx(cfg.out_dir / f"{name}.scx", pair.complex, {"T": pair.action()})
        for r in cfg.radii:
            rep = run_pipeline(pair, PipelineOptions(radius=r), name=name)
            write_report(cfg.out_dir / f"{name}_r{r}.json", rep.to_json(timings=cfg.timings))
            total = sum(s.timing_s or 0 for s in rep.stages)
            soft = [s.name for s in rep.stages if s.status == "inconclusive"]
            print(f"{name:20s} r={r}  {rep.verdict:5s}  {total:6.1f}s"
                  + (f"  inconclusive: {', '.join(soft)}" if soft else ""))
            worst = max(worst, rep.exit_code)
    return worst


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--radii", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--names", nargs="+", default=None)
    ap.add_argument("--out-dir", type=Path, default=Path("runs/corpus"))
    ap.add_argument("--no-timings", action="store_true")
    a = ap.parse_args()
    cfg = CorpusRun(radii=a.radii, out_dir=a.out_dir, timings=not a.no_timings)
    if a.names:
        cfg.names = a.names
    sys.exit(main(cfg))
