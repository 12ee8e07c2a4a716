import json
import subprocess
import sys

import pytest

from rtk import corpus
from rtk.cli import main
from rtk.complex import GroupAction
from rtk.scx import read_scx, write_scx


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, pair in corpus.pipeline_corpus().items():
        out[name] = tmp_path / f"{name}.scx"
        write_scx(out[name], pair.complex, {"T": pair.action()})
    K = corpus.cone_on_two_points()
    out["cone"] = tmp_path / "cone.scx"
    write_scx(out["cone"], K, {"T": GroupAction(K, [{"p": "q", "q": "p"}])}, {"N": K.full_subcomplex("pq")})
    out["c4"] = tmp_path / "c4.scx"
    write_scx(out["c4"], corpus.cycle(4))
    out["c3"] = tmp_path / "c3.scx"
    write_scx(out["c3"], corpus.cycle(3))
    out["rp2"] = tmp_path / "rp2.scx"
    write_scx(out["rp2"], corpus.rp2_6())
    out["dir"] = tmp_path
    return out


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


def test_homology_text_and_json(files, capsys):
    code, out = run(capsys, "homology", files["rp2"])
    assert code == 0 and out.out.splitlines() == ["H_0 = Z", "H_1 = Z/2", "H_2 = 0"]
    code, out = run(capsys, "homology", files["rp2"], "--json", "--mod", "2")
    assert json.loads(out.out)["coefficients"] == "Z/2"


def test_validate_and_flagcheck(files, capsys):
    code, out = run(capsys, "validate", files["cone"])
    doc = json.loads(out.out)
    assert code == 0 and doc["actions"]["T"]["order"] == 2 and doc["subcomplexes"]["N"]["full"]
    assert run(capsys, "flagcheck", files["c4"])[0] == 0
    assert run(capsys, "flagcheck", files["c3"])[0] == 1


def test_sd_writes_loadable_file(files, capsys):
    dst = files["dir"] / "sd.scx"
    assert run(capsys, "sd", files["cycle3_reflection"], "--out", dst)[0] == 0
    data = read_scx(dst)
    assert data.complex.f_vector == (6, 6) and data.action("T").order == 2


def test_racg(files, capsys):
    code, out = run(capsys, "racg", "--graph", files["c4"], "--ball", "2", "--reduce", "0,1,0", "--coset", "0,1", "1")
    doc = json.loads(out.out)
    assert doc["ball_sizes"] == [1, 5, 13] and doc["normal_form"] == "1"
    assert doc["min_coset_rep"] == "0" and doc["commutator_index"] == 16
    code, out = run(capsys, "racg", "--graph", "a-b", "--reduce", "a,b,a")
    assert json.loads(out.out)["normal_form"] == "b"
    code, out = run(capsys, "racg", "--graph", "a,b", "--reduce", "a,c")
    assert code == 2 and "unknown generator" in out.err


def test_build_u_and_fixed_sets(files, capsys):
    dst = files["dir"] / "u.scx"
    code, out = run(capsys, "build-u", files["cone"], "--radius", "1", "--out", dst, "--homology")
    doc = json.loads(out.out)
    assert code == 0 and doc["vertices"] == 13 and doc["chambers"] == 3
    assert doc["homology"] == ["H_0 = Z", "H_1 = 0"]
    assert read_scx(dst).complex.f_vector == (13, 12)
    code, out = run(capsys, "fixed-sets", files["cone"], "--radius", "1", "--subgroup", "e|1")
    assert json.loads(out.out)["vertices"] == ["(e|{c})"]


def test_lemma3_and_cubical(files, capsys):
    code, out = run(capsys, "lemma3", files["cone"], "--radius", "1")
    assert code == 0 and all(r["status"] == "pass" for r in json.loads(out.out)["results"])
    code, out = run(capsys, "cubical", files["c4"], "--radius", "2")
    assert code == 0 and json.loads(out.out)["link_check"]["isomorphic"]


def test_embed(files, capsys):
    dst, rep = files["dir"] / "k.scx", files["dir"] / "emb.json"
    code, _ = run(capsys, "embed", files["edge_swap"], "--out", dst, "--report", rep)
    assert code == 0
    assert json.loads(rep.read_text())["certificate"]["homology_K_eq_image"]["match"]
    data = read_scx(dst)
    assert set(data.subcomplexes) == {"N", "image"} and data.action("S").order == 2


def test_pipeline_exit_codes_and_determinism(files, capsys):
    a, b = files["dir"] / "a.json", files["dir"] / "b.json"
    ua, ub = files["dir"] / "ua.scx", files["dir"] / "ub.scx"
    for rep, u in ((a, ua), (b, ub)):
        code, out = run(capsys, "pipeline", files["cycle3_reflection"], "--radius", "1", "--out", rep,
                        "--u-out", u, "--no-timings")
        assert code == 0 and "verdict: pass" in out.err
    assert a.read_bytes() == b.read_bytes() and ua.read_bytes() == ub.read_bytes()
    assert "timing_s" not in a.read_text()


def test_hard_errors_exit_2(files, capsys):
    bad = files["dir"] / "bad.scx"
    bad.write_text('{"vertices": ["a"], "maximal_simplices": [["a", "b"]]}')
    code, out = run(capsys, "pipeline", bad)
    assert code == 2 and "maximal_simplices[0]" in out.err
    code, out = run(capsys, "homology", files["dir"] / "missing.scx")
    assert code == 2


def test_pipeline_error_verdict_exit_2(files, capsys):
    code, out = run(capsys, "pipeline", files["edge_swap"], "--radius", "9", "--no-timings")
    assert code == 2 and json.loads(out.out)["verdict"] == "error"


def test_console_script_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "rtk.cli", "homology", str(files["c4"])],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.startswith("H_0 = Z")
