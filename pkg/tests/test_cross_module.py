"""Checks that tie the symbolic affine combinatorics to the matrix realization
and the crystal strings to the cone machinery."""

import random
from fractions import Fraction

import pytest

from mvcrystals.affine import (
    AffineRoot,
    build_gallery_type,
    identity_aff,
    simple_affine_reflection,
    translation,
)
from mvcrystals.crystal import stable_string
from mvcrystals.gallery import GalleryError, enumerate_ls
from mvcrystals.looplab import GenericityError, LaurentSeries, LoopGroup
from mvcrystals.looplab.series import set_default_rel_prec, vector_val, PrecisionError
from mvcrystals.rootdata import Coweight, build_root_datum
from mvcrystals.trails import in_string_cone, string_cone_inequalities

A2 = build_root_datum("A", 2)
G2 = LoopGroup(A2)


def test_affine_conjugation_matches_symbolic_action():
    # (t^lam wbar) x_{alpha,n}(a) (t^lam wbar)^{-1} = x_{g(alpha,n)}(+-a)
    # for g = tau_lam w: the matrix conjugation realizes the symbolic action
    rng = random.Random(23)
    roots = [r for r in A2.positive_roots] + [-r for r in A2.positive_roots]
    from mvcrystals.affine import AffWeylElt

    for _ in range(40):
        lam = Coweight((rng.randint(-2, 2), rng.randint(-2, 2)))
        w = rng.choice(A2.weyl_elements())
        g_aff = AffWeylElt(lam, w)
        mat = G2.gen_t(lam) * G2.gen_wbar(A2.reduced_word(w))
        beta = AffineRoot(rng.choice(roots), rng.randint(-2, 2))
        a = Fraction(rng.randint(1, 7))
        lhs = mat * G2.gen_x_affine(beta.root, beta.level, a) * mat.inverse()
        img = g_aff.act_affine_root(A2, beta)
        plus = G2.gen_x_affine(img.root, img.level, a)
        minus = G2.gen_x_affine(img.root, img.level, -a)
        assert lhs.equals_exact(plus) or lhs.equals_exact(minus), \
            (lam.coords, beta, img)


def test_stable_string_lies_in_cone():
    # a stabilized B(-infinity) string always satisfies the cone inequalities
    word = (1, 2, 1)
    rows, _ = string_cone_inequalities(A2, word)
    lams = [Coweight((1, 1)), Coweight((2, 2)), Coweight((3, 3))]

    def selector_factory(steps):
        def selector(graph):
            node = graph.lowest_node()
            for i in steps:
                node = graph.e(node, i)
                if node is None:
                    return None
            return node
        return selector

    for steps in [(), (1,), (1, 2), (2, 1, 1), (1, 2, 1)]:
        sp = stable_string(A2, lams, selector_factory(steps), word)
        assert in_string_cone(sp.c, rows), (steps, sp.c)


def test_enumeration_node_cap_guardrail():
    gtype = build_gallery_type(A2, Coweight((1, 1)))
    with pytest.raises(GalleryError):
        enumerate_ls(gtype, node_cap=3)


def test_precision_setting_bounds():
    with pytest.raises(ValueError):
        set_default_rel_prec(0)
    with pytest.raises(ValueError):
        set_default_rel_prec(10**6)
    set_default_rel_prec(32)


def test_vector_val_uncertified():
    known = LaurentSeries({3: 1})
    unknown_low_cap = LaurentSeries({}, cap=1)
    with pytest.raises(PrecisionError):
        vector_val([known, unknown_low_cap])
    # a cap above the known valuation certifies the minimum
    assert vector_val([known, LaurentSeries({}, cap=5)]) == 3


def test_sqrt_requires_rational_square():
    with pytest.raises(GenericityError):
        LaurentSeries({0: 2, 1: 1}).sqrt()
    with pytest.raises(GenericityError):
        LaurentSeries({0: -1}).sqrt()


def _first_dominant(datum, max_height=6):
    import itertools

    best = None
    for coords in itertools.product(range(0, max_height + 1), repeat=datum.rank):
        if sum(coords) == 0 or sum(coords) > max_height:
            continue
        v = Coweight(coords)
        if datum.is_dominant(v):
            if best is None or sum(coords) < sum(best.coords):
                best = v
    return best


@pytest.mark.parametrize("series,rank,coords", [
    ("C", 2, (1, 1)),
    ("C", 3, (1, 1, 1)),
    ("D", 4, (1, 2, 1, 1)),   # theta^vee: dual so8 adjoint, 28 nodes
    ("B", 3, None),
    ("B", 4, None),
    ("C", 4, None),
])
def test_gallery_character_beyond_required_suites(series, rank, coords):
    from mvcrystals.crystal import character, expected_character, validate_axioms

    datum = build_root_datum(series, rank)
    lam = Coweight(coords) if coords else _first_dominant(datum)
    assert lam is not None and datum.is_dominant(lam)
    graph = enumerate_ls(build_gallery_type(datum, lam))
    assert validate_axioms(graph) == []
    assert character(graph) == expected_character(datum, lam)


def test_readme_quickstart_block():
    # keep the README's library example honest
    import re
    from pathlib import Path

    text = Path(__file__).resolve().parent.parent.joinpath("README.md").read_text()
    block = re.search(r"## Library quickstart\n\n```python\n(.*?)```", text,
                      re.DOTALL).group(1)
    namespace = {}
    exec(compile(block, "README.md", "exec"), namespace)
