import random
from collections import Counter

import pytest

from mvcrystals.affine import build_gallery_type
from mvcrystals.crystal import (
    CrystalError,
    character,
    contragredient_node,
    crystal_isomorphic,
    expected_character,
    stable_string,
    string_param_from_c,
    string_param_from_c_tilde,
    string_parameters,
    validate_axioms,
    weyl_dimension,
)
from mvcrystals.gallery import enumerate_ls
from mvcrystals.rootdata import Coweight, build_root_datum

A1 = build_root_datum("A", 1)
A2 = build_root_datum("A", 2)
A3 = build_root_datum("A", 3)
B2 = build_root_datum("B", 2)
G2 = build_root_datum("G", 2)


def ls_graph(datum, coords, word=None):
    return enumerate_ls(build_gallery_type(datum, Coweight(coords), word=word))


@pytest.fixture(scope="module")
def a1_graph():
    return ls_graph(A1, (1,))


@pytest.fixture(scope="module")
def theta_graph():
    return ls_graph(A2, (1, 1))


def test_validate_axioms_clean(a1_graph, theta_graph):
    assert validate_axioms(a1_graph) == []
    assert validate_axioms(theta_graph) == []


def test_validate_axioms_single_node():
    g = ls_graph(A2, (0, 0))
    assert validate_axioms(g) == []
    assert len(g.nodes) == 1


def test_validate_axioms_negative_control(a1_graph):
    import copy

    broken = copy.copy(a1_graph)
    broken.eps = dict(a1_graph.eps)
    node = a1_graph.nodes[1]
    broken.eps[(node, 1)] = a1_graph.eps[(node, 1)] + 1
    assert validate_axioms(broken) != []


def test_character_examples(a1_graph, theta_graph):
    av = A1.simple_coroot(1)
    assert character(a1_graph) == Counter({av: 1, A1.zero_coweight(): 1, -av: 1})
    ch = character(theta_graph)
    assert sum(ch.values()) == 8
    assert ch[A2.zero_coweight()] == 2


def test_expected_character_oracle():
    # sl2: dimension 3 for alpha^vee
    ch = expected_character(A1, Coweight((1,)))
    assert sum(ch.values()) == 3
    # adjoint of sl3: dimension 8, zero weight twice
    ch = expected_character(A2, Coweight((1, 1)))
    assert sum(ch.values()) == 8
    assert ch[A2.zero_coweight()] == 2
    assert ch[Coweight((1, 1))] == 1


def test_weyl_dimensions_known():
    assert weyl_dimension(A2, Coweight((1, 1))) == 8
    assert weyl_dimension(A2, Coweight((2, 2))) == 27
    assert weyl_dimension(A3, Coweight((1, 1, 1))) == 15
    # B2 theta^vee pairs to (0,1) on the dual (C2) side: the 5-dim Sp4 module
    assert weyl_dimension(B2, Coweight((1, 1))) == 5
    assert weyl_dimension(G2, Coweight((1, 2))) == 7
    assert weyl_dimension(G2, Coweight((2, 3))) == 14


def test_character_matches_oracle_small_suite():
    cases = [(A1, (1,)), (A1, (2,)), (A2, (1, 1)), (A2, (2, 1)),
             (A3, (1, 1, 1)), (B2, (1, 1)), (B2, (2, 1))]
    for datum, coords in cases:
        graph = ls_graph(datum, coords)
        assert character(graph) == expected_character(datum, Coweight(coords))


def test_string_parameters_examples(a1_graph):
    low = a1_graph.lowest_node()
    sp = string_parameters(a1_graph, low, (1,))
    assert sp.c == (0,)
    high = a1_graph.highest_node()
    sp = string_parameters(a1_graph, high, (1,))
    assert sp.c == (2,)
    assert sp.c_tilde == (-2,)


def test_string_parameters_weight_bookkeeping(theta_graph):
    w0lam = A2.longest_element().act_coweight(Coweight((1, 1)))
    for node in theta_graph.nodes:
        for word in ((1, 2, 1), (2, 1, 2)):
            sp = string_parameters(theta_graph, node, word)
            drop = A2.zero_coweight()
            for j, i in enumerate(word):
                drop = drop + A2.simple_coroot(i).scale(sp.c[j])
            assert theta_graph.wt[node] - w0lam == drop


def test_string_parameters_injective(theta_graph):
    for word in ((1, 2, 1), (2, 1, 2)):
        seen = {string_parameters(theta_graph, node, word).c
                for node in theta_graph.nodes}
        assert len(seen) == len(theta_graph.nodes)


def test_string_parameters_bad_word(theta_graph):
    with pytest.raises(CrystalError):
        string_parameters(theta_graph, theta_graph.nodes[0], (1, 2))
    with pytest.raises(CrystalError):
        string_parameters(theta_graph, theta_graph.nodes[0], (1, 2, 1, 2))


def test_c_tilde_roundtrip_random():
    rng = random.Random(11)
    for _ in range(1000):
        word = (1, 2, 1) if rng.random() < 0.5 else (2, 1, 2)
        c = tuple(rng.randint(-20, 20) for _ in word)
        sp = string_param_from_c(A2, word, c)
        back = string_param_from_c_tilde(A2, word, sp.c_tilde)
        assert back.c == c and back.c_tilde == sp.c_tilde


def test_stable_string_lowest():
    def selector(graph):
        return graph.lowest_node()

    sp = stable_string(A1, [Coweight((1,)), Coweight((2,))], selector, (1,))
    assert sp.c == (0,)


def test_stable_string_sl2_bound():
    # the node e^k(lowest) has string (k) in every B(lam) with <alpha,lam> >= k
    k = 2

    def selector(graph):
        node = graph.lowest_node()
        for _ in range(k):
            node = graph.e(node, 1)
        return node

    lams = [Coweight((2,)), Coweight((3,)), Coweight((4,))]
    sp = stable_string(A1, lams, selector, (1,))
    assert sp.c == (k,)


def test_stable_string_no_stabilization():
    # the highest node never matches between consecutive levels
    def selector(graph):
        return graph.highest_node()

    with pytest.raises(CrystalError):
        stable_string(A1, [Coweight((1,)), Coweight((2,)), Coweight((3,))],
                      selector, (1,))


def test_isomorphic_self(theta_graph):
    m = crystal_isomorphic(theta_graph, theta_graph)
    assert all(m[b] == b for b in theta_graph.nodes)


def test_isomorphic_two_words_same_wlam():
    # both reduced words of w_lambda for lam = 2 theta^vee give B(lam)
    g1 = ls_graph(A2, (2, 2), word=(0, 1, 2, 1, 0))
    g2 = ls_graph(A2, (2, 2), word=(0, 2, 1, 2, 0))
    m = crystal_isomorphic(g1, g2)
    assert len(m) == 27
    for b, c in m.items():
        assert g1.wt[b] == g2.wt[c]


def test_isomorphic_failure_different_weights(a1_graph):
    g2 = ls_graph(A1, (2,))
    with pytest.raises(CrystalError):
        crystal_isomorphic(a1_graph, g2)


def test_contragredient_node_a1(a1_graph):
    high, low = a1_graph.highest_node(), a1_graph.lowest_node()
    assert contragredient_node(a1_graph, high, a1_graph) == low
    assert contragredient_node(a1_graph, low, a1_graph) == high
    mid = a1_graph.e(low, 1)
    assert contragredient_node(a1_graph, mid, a1_graph) == mid


def test_contragredient_negates_weight(theta_graph):
    # -w0 lam = lam here, so the flip lands in the same crystal
    for node in theta_graph.nodes:
        flip = contragredient_node(theta_graph, node, theta_graph)
        assert theta_graph.wt[flip] == -theta_graph.wt[node]


def test_tensor_shift_bookkeeping(theta_graph):
    # eps_i of the B(-infty) component of iota(x) is eps_i(x) + <alpha_i, w0 lam>
    # and phi is unchanged; realized here through string re-basing: phi values
    # of matching nodes agree between two tower levels.
    g_small = ls_graph(A1, (1,))
    g_big = ls_graph(A1, (2,))
    # low-based matching: nodes with equal strings
    for node in g_small.nodes:
        c = string_parameters(g_small, node, (1,)).c
        matches = [m for m in g_big.nodes
                   if string_parameters(g_big, m, (1,)).c == c]
        assert len(matches) == 1
        m = matches[0]
        assert g_small.phi[(node, 1)] == g_big.phi[(m, 1)]
        shift_small = A1.pairing(A1.simple_root(1),
                                 A1.longest_element().act_coweight(Coweight((1,))))
        shift_big = A1.pairing(A1.simple_root(1),
                               A1.longest_element().act_coweight(Coweight((2,))))
        assert g_small.eps[(node, 1)] + shift_small == g_big.eps[(m, 1)] + shift_big
