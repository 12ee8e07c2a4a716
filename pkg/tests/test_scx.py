import json

import pytest

from rtk import corpus
from rtk.complex import GroupAction, barycentric_subdivision, induced_action_on_sd
from rtk.scx import ScxError, dumps, parse_scx, read_scx, scx_document, write_scx


@pytest.mark.parametrize("name", sorted(corpus.corpus_complexes()))
def test_round_trip_corpus(tmp_path, name):
    K = corpus.corpus_complexes()[name]
    path = tmp_path / f"{name}.scx"
    write_scx(path, K)
    back = read_scx(path).complex
    assert back.vertices == K.vertices and back.maximal_simplices == K.maximal_simplices
    assert path.read_text() == dumps(scx_document(back))


def test_round_trip_with_action_and_subcomplex(tmp_path):
    K = corpus.cone_on_two_points()
    act = GroupAction(K, [{"p": "q", "q": "p"}])
    N = K.full_subcomplex(["p", "q"])
    write_scx(tmp_path / "c.scx", K, {"T": act}, {"N": N})
    data = read_scx(tmp_path / "c.scx")
    assert data.action("T").vertex_map(1) == act.vertex_map(1)
    assert data.subcomplex("N").simplices == N.simplices


def test_derived_vertices_serialise_by_label(tmp_path):
    act = induced_action_on_sd(GroupAction(corpus.edge(), [{"a": "b", "b": "a"}]))
    write_scx(tmp_path / "sd.scx", act.complex, {"T": act})
    data = read_scx(tmp_path / "sd.scx")
    assert data.complex.f_vector == (3, 2)
    assert data.action().order == 2


def test_integer_vertices_referenced_by_string():
    doc = {"vertices": [0, 1, 2], "maximal_simplices": [[0, 1], [1, 2]],
           "actions": {"T": {"generators": [{"0": 2, "2": 0}]}}}
    data = parse_scx(json.dumps(doc))
    assert data.action("T").vertex_map(1)[0] == 2


def test_malformed_json_has_line_and_column():
    with pytest.raises(ScxError, match=r"f\.scx:2:\d+: malformed JSON"):
        parse_scx('{"vertices": [1],\n "maximal_simplices": [[1]],,}', "f.scx")


def test_unknown_vertex_names_location():
    doc = {"vertices": ["a", "b"], "maximal_simplices": [["a", "b"], ["a", "z"]]}
    with pytest.raises(ScxError, match=r"maximal_simplices\[1\]: unknown vertex 'z'"):
        parse_scx(json.dumps(doc))


def test_non_simplicial_generator_names_the_edge():
    doc = {"vertices": ["a", "b", "c"], "maximal_simplices": [["a", "b"], ["c"]],
           "actions": {"T": {"generators": [{"b": "c", "c": "b"}]}}}
    with pytest.raises(ScxError) as exc:
        parse_scx(json.dumps(doc), "bad.scx")
    msg = str(exc.value)
    assert "actions.T" in msg and "a" in msg and "b" in msg and "simplex" in msg


def test_subcomplex_must_lie_in_complex():
    doc = {"vertices": ["a", "b", "c"], "maximal_simplices": [["a", "b"], ["c"]],
           "subcomplexes": {"N": [["a", "c"]]}}
    with pytest.raises(ScxError, match="subcomplexes.N"):
        parse_scx(json.dumps(doc))


def test_missing_file():
    with pytest.raises(ScxError, match="cannot read"):
        read_scx("/nonexistent/file.scx")


def test_output_is_stable():
    K = barycentric_subdivision(corpus.rp2_6())
    assert dumps(scx_document(K)) == dumps(scx_document(K.relabel({v: v for v in reversed(K.vertices)})))
