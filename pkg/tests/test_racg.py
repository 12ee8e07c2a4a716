import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import TitsOracle, all_graphs
from rtk.corpus import cycle
from rtk.racg import CommutationGraph, RacgError, SemidirectProduct

EDGE = CommutationGraph(["a", "b"], [("a", "b")])
DINF = CommutationGraph(["a", "b"], [])
C4 = CommutationGraph(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")])


def w(g, text):
    return g.parse(text).word


def test_reduce_examples():
    assert EDGE.normal_form(w(EDGE, "a,b,a")).label() == "b"
    assert DINF.parse("a,b,a").label() == "a.b.a"
    assert EDGE.parse("b,a").label() == "a.b"
    assert DINF.parse("b,a").label() == "b.a"


def test_multiply_and_invert():
    a = DINF.parse("a")
    assert (a * a).is_identity()
    x = DINF.parse("a,b,a")
    assert x.inverse() == x


def test_parse_separators_and_index_tokens():
    assert C4.parse("a.b c,d") == C4.parse("#0#1#2#3")
    assert C4.parse("e").is_identity() and C4.parse("").is_identity()
    with pytest.raises(RacgError):
        C4.parse("a,z")


def test_finite_parabolic():
    assert EDGE.is_finite_parabolic({0, 1})
    assert not DINF.is_finite_parabolic({0, 1})
    assert len(EDGE.parabolic_elements({0, 1})) == 4


def test_ball_examples():
    assert len(DINF.ball(3)) == 7
    assert sorted(x.label() for x in EDGE.ball(2)) == ["a", "a.b", "b", "e"]
    assert len(C4.ball(2)) == 13
    with pytest.raises(RacgError):
        DINF.ball(DINF.ball_cap + 1)


def test_twist_examples():
    swap = (1, 0)
    x = DINF.parse("a,b,a")
    y = DINF.twist(x, swap)
    assert y.label() == "b.a.b" and y != x and len(y) == len(x)
    assert DINF.twist(x, (0, 1)) == x
    g3 = CommutationGraph(["a", "b", "c"], [("a", "b")])
    with pytest.raises(RacgError):
        g3.twist(g3.identity, (0, 2, 1))        # sends the edge a-b to a non-edge


def test_min_coset_rep_examples():
    assert DINF.min_coset_rep(DINF.parse("a,b"), {1}).label() == "a"
    x = EDGE.parse("a,b")
    assert EDGE.min_coset_rep(x, {0, 1}).is_identity()


def test_commutator_index_examples():
    assert CommutationGraph(["a"]).commutator_index() == 2
    assert C4.commutator_index() == 16
    assert DINF.commutator_index() == 4


def test_c4_classes_match_oracle_length3():
    tits = TitsOracle(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    by_nf, by_mat = {}, {}
    for L in range(4):
        for word in itertools.product(range(4), repeat=L):
            nf, M = C4.normal_form(word).word, tits.matrix(word)
            assert by_nf.setdefault(nf, M) == M
            assert by_mat.setdefault(M, nf) == nf


def test_normal_form_is_reduced_and_shortlex_minimal():
    # length agrees with the Cayley-graph distance
    tits = TitsOracle(4, [(0, 1), (2, 3)])
    g = CommutationGraph(range(4), [(0, 1), (2, 3)])
    for word in itertools.product(range(4), repeat=5):
        assert len(g.normal_form(word)) == tits.length(word)


def test_coset_partition_matches_oracle():
    for n in range(1, 4):
        for edges in all_graphs(n):
            g = CommutationGraph(range(n), edges)
            tits = TitsOracle(n, edges)
            for J in [frozenset(c) for k in range(n + 1) for c in itertools.combinations(range(n), k)]:
                if not g.is_finite_parabolic(J):
                    continue
                parab = g.parabolic_elements(J)
                assert len(parab) == 2 ** len(J)
                for x in g.ball(3):
                    rep = g.min_coset_rep(x, J)
                    # rep lies in x W_J and is no longer than any coset member
                    coset = {tits.matrix(x.word + p.word) for p in parab}
                    assert tits.matrix(rep.word) in coset
                    assert len(rep) == min(tits.length(x.word + p.word) for p in parab)


def test_ball_sizes_match_oracle_all_small_graphs():
    for n in range(1, 5):
        for edges in all_graphs(n):
            g = CommutationGraph(range(n), edges)
            ball = g.ball(3)
            sizes = [sum(1 for x in ball if len(x) == k) for k in range(4)]
            assert sizes == TitsOracle(n, edges).ball_sizes(3)


words4 = st.lists(st.integers(0, 3), max_size=8)


@settings(max_examples=200, deadline=None)
@given(words4, words4, words4)
def test_multiplication_associative_and_faithful(x, y, z):
    tits = TitsOracle(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    X, Y, Z = (C4.normal_form(t) for t in (x, y, z))
    assert (X * Y) * Z == X * (Y * Z)
    assert tits.matrix((X * Y).word) == tits.matrix(tuple(x) + tuple(y))
    assert (X * X.inverse()).is_identity()


@settings(max_examples=200, deadline=None)
@given(words4, words4)
def test_twist_is_a_homomorphism(x, y):
    g = CommutationGraph.from_complex(cycle(4))
    rot = (1, 2, 3, 0)
    X, Y = g.normal_form(x), g.normal_form(y)
    assert g.twist(X * Y, rot) == g.twist(X, rot) * g.twist(Y, rot)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 4), max_size=8))
def test_random_words_five_generators_match_oracle(word):
    edges = [(0, 1), (1, 2), (3, 4), (0, 4)]
    g = CommutationGraph(range(5), edges)
    tits = TitsOracle(5, edges)
    nf = g.normal_form(word)
    assert tits.matrix(nf.word) == tits.matrix(tuple(word))
    assert len(nf) == tits.length(word)


def _dinf_swap():
    return SemidirectProduct(DINF, [(0, 1), (1, 0)], [[0, 1], [1, 0]])


def test_semidirect_identity_inverse_and_associativity():
    sdp = _dinf_swap()
    sample = [sdp.element(x, g) for x in DINF.ball(2) for g in (0, 1)]
    for p in sample:
        assert sdp.multiply(sdp.identity, p) == p
        assert sdp.multiply(p, sdp.inverse(p)) == sdp.identity
    for p, q, r in itertools.product(sample, repeat=3):
        assert sdp.multiply(sdp.multiply(p, q), r) == sdp.multiply(p, sdp.multiply(q, r))


def test_semidirect_law():
    sdp = _dinf_swap()
    p = sdp.element(DINF.parse("a"), 1)
    q = sdp.element(DINF.parse("a"), 0)
    # (a, swap)(a, 1) = (a . b, swap)
    assert sdp.multiply(p, q) == sdp.element(DINF.parse("a,b"), 1)
    assert sdp.order_of(sdp.element(DINF.identity, 1)) == 2
    assert sdp.order_of(sdp.element(DINF.parse("a,b"), 0), cap=50) is None


def test_closure_finite_and_capped():
    sdp = _dinf_swap()
    assert len(sdp.closure([sdp.element(DINF.parse("a"), 0)])) == 2
    assert sdp.closure([sdp.element(DINF.parse("a"), 0), sdp.element(DINF.parse("b"), 0)], cap=100) is None


def test_symmetry_must_preserve_edges():
    g = CommutationGraph(["a", "b", "c"], [("a", "b")])
    with pytest.raises(RacgError):
        SemidirectProduct(g, [(0, 1, 2), (0, 2, 1)], [[0, 1], [1, 0]])
