import random

import pytest

from mvcrystals.rootdata import Coweight, Root, RootDataError, build_root_datum


A1 = build_root_datum("A", 1)
A2 = build_root_datum("A", 2)
A3 = build_root_datum("A", 3)
B2 = build_root_datum("B", 2)
G2 = build_root_datum("G", 2)


def test_positive_root_counts():
    # frozen from the reflection-closure construction
    assert len(A2.positive_roots) == 3
    assert len(A3.positive_roots) == 6
    assert len(B2.positive_roots) == 4
    assert len(G2.positive_roots) == 6
    assert len(build_root_datum("C", 3).positive_roots) == 9
    assert len(build_root_datum("D", 4).positive_roots) == 12


def test_a2_positive_roots_explicit():
    coords = {rt.coords for rt in A2.positive_roots}
    assert coords == {(1, 0), (0, 1), (1, 1)}


def test_rank1_theta_and_marks():
    assert A1.highest_root == A1.simple_root(1)
    assert A1.marks == (1,)


def test_g2_marks():
    assert G2.highest_root.coords == (3, 2)
    assert G2.marks == (3, 2)


def test_unsupported_series():
    with pytest.raises(RootDataError):
        build_root_datum("E", 6)
    with pytest.raises(RootDataError):
        build_root_datum("A", 5)
    with pytest.raises(RootDataError):
        build_root_datum("D", 3)


def test_cartan_shape_invariants():
    for datum in (A1, A2, A3, B2, G2):
        r = datum.rank
        for i in range(r):
            assert datum.cartan[i][i] == 2
            for j in range(r):
                if i != j:
                    assert datum.cartan[i][j] <= 0
        assert len(datum.positive_roots) == len(datum.positive_coroots)


def test_pairing_values():
    assert A2.pairing(A2.simple_root(1), A2.simple_coroot(1)) == 2
    assert A2.pairing(A2.simple_root(1), A2.simple_coroot(2)) == -1
    # <theta, rho^vee> in A2: theta = alpha1+alpha2, rho^vee = omega1^vee+omega2^vee
    assert A2.pairing(A2.highest_root, A2.rho_coweight()) == 2


def test_pairing_type_discipline():
    with pytest.raises(TypeError):
        A2.pairing(A2.simple_root(1), A2.simple_root(2))
    with pytest.raises(TypeError):
        A2.pairing(A2.simple_coroot(1), A2.simple_coroot(2))


def test_weyl_act_examples():
    s1 = A2.simple_reflection(1)
    assert s1.act_coweight(A2.simple_coroot(1)) == -A2.simple_coroot(1)
    # s1(alpha2^vee) = alpha1^vee + alpha2^vee in A2
    assert s1.act_coweight(A2.simple_coroot(2)) == Coweight((1, 1))
    # w0(rho^vee) = -rho^vee
    for datum in (A2, A3, B2, G2):
        w0 = datum.longest_element()
        assert w0.act_coweight(datum.rho_coweight()) == -datum.rho_coweight()


def test_weyl_lengths():
    assert A2.weyl_length(A2.identity_elt()) == 0
    assert A2.weyl_length(A2.longest_element()) == 3
    assert A3.weyl_length(A3.longest_element()) == 6
    assert len(A2.weyl_elements()) == 6
    assert len(A3.weyl_elements()) == 24
    assert len(B2.weyl_elements()) == 8
    assert len(G2.weyl_elements()) == 12


def test_reduced_words():
    assert A2.enumerate_reduced_words(A2.identity_elt()) == ((),)
    w0 = A2.longest_element()
    assert set(A2.enumerate_reduced_words(w0)) == {(1, 2, 1), (2, 1, 2)}
    assert len(A3.enumerate_reduced_words(A3.longest_element())) == 16


def test_reduced_words_multiply_back():
    for datum in (A2, B2):
        for w in datum.weyl_elements():
            for word in datum.enumerate_reduced_words(w):
                assert datum.word_to_element(word) == w
                assert len(word) == datum.weyl_length(w)


def test_length_changes_by_one():
    for datum in (A2, B2):
        for w in datum.weyl_elements():
            for i in range(1, datum.rank + 1):
                lw = datum.weyl_length(w)
                lwi = datum.weyl_length(w * datum.simple_reflection(i))
                assert abs(lw - lwi) == 1


def test_pairing_invariance():
    for datum in (A2, A3, B2, G2):
        for w in datum.weyl_elements()[:12]:
            for rt in datum.positive_roots:
                for i in range(1, datum.rank + 1):
                    v = datum.simple_coroot(i)
                    assert datum.pairing(w.act_root(rt), w.act_coweight(v)) == \
                        datum.pairing(rt, v)


def test_height_and_dominance():
    x = Coweight((1, 2))
    assert A2.height(x) == 3
    assert A2.dominance_leq(A2.zero_coweight(), Coweight((1, 1)))
    # alpha1^vee vs alpha2^vee incomparable
    a1, a2 = A2.simple_coroot(1), A2.simple_coroot(2)
    assert not A2.dominance_leq(a1, a2)
    assert not A2.dominance_leq(a2, a1)
    with pytest.raises(RootDataError):
        A2.height(A2.fundamental_coweight(1))


def test_height_additive():
    rng = random.Random(1)
    for _ in range(50):
        a = Coweight(tuple(rng.randint(-5, 5) for _ in range(3)))
        b = Coweight(tuple(rng.randint(-5, 5) for _ in range(3)))
        assert A3.height(a + b) == A3.height(a) + A3.height(b)


def test_dominance_partial_order():
    pts = [Coweight((i, j)) for i in range(-1, 3) for j in range(-1, 3)]
    for a in pts:
        assert A2.dominance_leq(a, a)
        for b in pts:
            if A2.dominance_leq(a, b) and A2.dominance_leq(b, a):
                assert a == b
            for c in pts:
                if A2.dominance_leq(a, b) and A2.dominance_leq(b, c):
                    assert A2.dominance_leq(a, c)


def test_coroot_matching_b2():
    # long root theta = alpha1 + 2 alpha2 has short coroot theta^vee = alpha1^vee + alpha2^vee
    theta = B2.highest_root
    assert theta.coords == (1, 2)
    assert B2.coroot_of(theta) == Coweight((1, 1))


def test_reflection_of_nonsimple_root():
    theta = A2.highest_root
    s = A2.reflection(theta)
    assert s.act_root(theta) == -theta
    assert A2.weyl_length(s) == 3  # s_theta = w0 in A2
    assert s * s == A2.identity_elt()


def test_fundamental_coweights_dual_basis():
    for datum in (A2, A3, B2, G2):
        for i in range(1, datum.rank + 1):
            for j in range(1, datum.rank + 1):
                assert datum.pairing(datum.simple_root(j),
                                     datum.fundamental_coweight(i)) == int(i == j)
