"""Randomized valuation sampling: the subsets Y~_{i,c}, gallery cells,
crystal-operator compatibility, tropical evaluation of transition maps, and
the SL_4 counterexample.

Sampling draws exact rational coefficients (small integers over 1) so every
generator matrix is an exact Laurent polynomial; inexactness only enters
through inversions inside the Gauss/factorization steps, where the precision
window is tracked.  Genericity failures raise and are retried a bounded
number of times with derived seeds; valuation-indistinguishability escalates
the relative precision by doubling up to 256.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from mvcrystals.affine import phi_plus_aff
from mvcrystals.crystal import string_param_from_c
from mvcrystals.gallery import Gallery, is_positively_folded
from mvcrystals.looplab.groups import LoopGroup
from mvcrystals.looplab.series import (
    GenericityError,
    LaurentMatrix,
    LaurentSeries,
    PrecisionError,
)
from mvcrystals.rootdata import Coweight, RootDataError

__all__ = [
    "SampleReport",
    "rand_nonzero_int",
    "random_unit_series",
    "sample_ytilde",
    "sample_cell",
    "cell_point",
    "crystal_op_sample",
    "rank_one_identity_check",
    "counterexample_matrix",
    "trop_eval",
    "lusztig_from_string",
    "morier_genoud_check",
    "string_to_lusztig_map",
    "lusztig_to_string_map",
]

_MAX_RETRIES = 5
_MAX_REL_PREC = 256


@dataclass(frozen=True)
class SampleReport:
    """One trial: the stratum pair and orbit parameter of a sampled point."""

    trial: int
    mu_plus: Coweight
    mu_minus: Coweight
    orbit: Coweight | None


def rand_nonzero_int(rng: random.Random, bound=9) -> int:
    x = 0
    while x == 0:
        x = rng.randint(-bound, bound)
    return x


def random_unit_series(rng: random.Random, extra_terms=2) -> LaurentSeries:
    """A random unit polynomial a_0 + a_1 t + ... with a_0 != 0 (exact)."""
    coeffs = {0: Fraction(rand_nonzero_int(rng))}
    for e in range(1, extra_terms + 1):
        c = rng.randint(-9, 9)
        if c:
            coeffs[e] = Fraction(c)
    return LaurentSeries(coeffs, None)


def sample_ytilde(group: LoopGroup, word, c, trials=5, seed=7):
    """Sample points of Y~_{word,c}: products y_{i_j}(p_j) with
    val(p_j) = c~_j, reporting (mu_plus, mu_minus, orbit) per trial."""
    datum = group.datum
    sp = string_param_from_c(datum, word, c)
    reports = []
    for trial in range(trials):
        rng = random.Random(repr((seed, "ytilde", tuple(word), tuple(c), trial)))
        ps = [random_unit_series(rng).shift(ct) for ct in sp.c_tilde]
        g = group.y_product(word, ps)
        reports.append(SampleReport(
            trial=trial,
            mu_plus=group.mu_plus(g),
            mu_minus=group.mu_minus(g),
            orbit=group.orbit_coweight(g),
        ))
    return reports


def cell_point(group: LoopGroup, gallery: Gallery, rng: random.Random) -> LaurentMatrix:
    """One random point of pi(C(delta)): the ordered product of x_beta(a) over
    the positive wall-crossing sets, applied to [t^nu] (a drawn nonzero)."""
    datum = group.datum
    if not is_positively_folded(gallery):
        raise RootDataError("cell sampling requires a positively folded gallery")
    g = LaurentMatrix.identity(group.n)
    for j in range(0, gallery.gtype.p + 1):
        for beta in phi_plus_aff(datum, gallery.facet(j), gallery.alcove(j)):
            a = Fraction(rand_nonzero_int(rng))
            g = g * group.gen_x_affine(beta.root, beta.level, a)
    return g * group.gen_t(gallery.weight)


def sample_cell(group: LoopGroup, gallery: Gallery, trials=5, seed=7):
    reports = []
    for trial in range(trials):
        rng = random.Random(repr((seed, "cell", gallery.delta0.cmat, gallery.flips, trial)))
        g = cell_point(group, gallery, rng)
        reports.append(SampleReport(
            trial=trial,
            mu_plus=group.mu_plus(g),
            mu_minus=group.mu_minus(g),
            orbit=group.orbit_coweight(g),
        ))
    return reports


def crystal_op_sample(group: LoopGroup, points, i, k, eps, seed=7):
    """Left-multiply sampled points by y_i(p) with val(p) = -k + eps and
    report the new stratum data (Prop. on e_i^k acting on cycles)."""
    reports = []
    for trial, g in enumerate(points):
        rng = random.Random(repr((seed, "crysop", i, k, trial)))
        p = random_unit_series(rng).shift(-k + eps)
        moved = group.gen_y(i, p) * g
        reports.append(SampleReport(
            trial=trial,
            mu_plus=group.mu_plus(moved),
            mu_minus=group.mu_minus(moved),
            orbit=None,
        ))
    return reports


def rank_one_identity_check(group: LoopGroup, nu_c: int, n_steps: int,
                            q: LaurentSeries) -> bool:
    """[x_{-alpha}(q^{-1} t^{-<alpha,lam+nu>/2}) t^nu] = [x_alpha(q t^{...}) t^lam]
    in SL_2, where lam = nu + n alpha^vee and q is a unit series."""
    datum = group.datum
    if datum.rank != 1:
        raise RootDataError("rank-one identity lives in SL_2")
    alpha = datum.simple_root(1)
    nu = Coweight((nu_c,))
    lam = Coweight((nu_c + n_steps,))
    half = datum.pairing(alpha, lam + nu) // 2
    if n_steps == 0:
        return group.coset_equal(group.gen_t(nu), group.gen_t(lam))
    u = group.gen_x(-alpha, q.inverse().shift(-half)) * group.gen_t(nu)
    v = group.gen_x(alpha, q.shift(half)) * group.gen_t(lam)
    return group.coset_equal(u, v)


def counterexample_matrix(group: LoopGroup) -> LaurentMatrix:
    """The SL_4 product y_2(-1) y_1(1/t) y_3(1/t) y_2(t) y_1(-1/t) y_3(-1/t);
    asserted exactly equal to its closed form."""
    if group.n != 4:
        raise RootDataError("the counterexample lives in SL_4")
    t = LaurentSeries.t_power(1)
    tinv = LaurentSeries.t_power(-1)
    y = group.gen_y
    g = y(2, LaurentSeries.from_scalar(-1)) * y(1, tinv) * y(3, tinv) * \
        y(2, t) * y(1, -tinv) * y(3, -tinv)
    one, zero = LaurentSeries.one(), LaurentSeries.zero()
    expected = LaurentMatrix([
        [one, zero, zero, zero],
        [zero, one, zero, zero],
        [-one, LaurentSeries({0: -1, 1: 1}), one, zero],
        [-tinv, one, zero, one],
    ])
    assert g.equals_exact(expected), "counterexample product drifted"
    assert g.det().equals_exact(one)
    return g


# -- tropical evaluation ---------------------------------------------------------

def trop_eval(func, m, trials=3, seed=7, arg_tag="trop"):
    """Valuation vector of func at generic inputs with val(p_j) = m_j.

    Inputs are a_j t^{m_j} (1 + random higher terms) with a_j random nonzero
    rationals; the output valuations must agree across all trials (the
    genericity locus is Zariski-open, so disagreement means a bad draw and the
    batch is retried with a derived seed, a bounded number of times).  A
    valuation indistinguishable from zero doubles the working relative
    precision, up to 256."""
    from mvcrystals.looplab.series import default_rel_prec, set_default_rel_prec

    base_prec = default_rel_prec()
    prec = base_prec
    last_exc = None
    try:
        for attempt in range(_MAX_RETRIES):
            set_default_rel_prec(prec)
            try:
                outcomes = []
                for trial in range(trials):
                    rng = random.Random(repr((seed, arg_tag, tuple(m), attempt, trial)))
                    ps = [random_unit_series(rng).shift(mj) for mj in m]
                    out = func(ps)
                    outcomes.append(tuple(s.val() for s in out))
                if len(set(outcomes)) != 1:
                    raise GenericityError(
                        f"tropical valuations disagree: {set(outcomes)}")
                return list(outcomes[0])
            except PrecisionError as exc:
                last_exc = exc
                prec = min(2 * prec, _MAX_REL_PREC)
            except GenericityError as exc:
                last_exc = exc
    finally:
        set_default_rel_prec(base_prec)
    raise GenericityError(
        f"tropical evaluation failed after {_MAX_RETRIES} retries: {last_exc}")


def string_to_lusztig_map(group: LoopGroup, word):
    """The evaluator f = z^{-1} o y on K^N (componentwise series in, series out)."""

    def func(ps):
        g = group.y_product(word, ps)
        return group.factor_z(g, word)

    return func


def lusztig_to_string_map(group: LoopGroup, word):
    """The inverse evaluator g = y^{-1} o z."""

    def func(qs):
        z = group.z_of(word, qs)
        return group.factor_y(z, word)

    return func


def lusztig_from_string(group: LoopGroup, word, c_tilde, trials=3, seed=7):
    """n = f^trop(c~) for f = z^{-1} o y, with the inverse direction
    g^trop(n) = c~ verified; returns the Lusztig parameter vector."""
    n_vec = trop_eval(string_to_lusztig_map(group, word), list(c_tilde),
                      trials=trials, seed=seed, arg_tag="s2l")
    back = trop_eval(lusztig_to_string_map(group, word), n_vec,
                     trials=trials, seed=seed, arg_tag="l2s")
    if tuple(back) != tuple(c_tilde):
        raise GenericityError(
            f"inverse tropical map returned {back}, expected {tuple(c_tilde)}")
    return n_vec


def morier_genoud_check(group: LoopGroup, word, c_tilde_node, c_tilde_flip,
                        lam: Coweight, trials=3, seed=7) -> bool:
    """d_j = <alpha_{i_j}, -w0 lam> + c~_j where d is the Lusztig parameter of
    the contragredient twin (computed tropically from its string)."""
    datum = group.datum
    w0lam = datum.longest_element().act_coweight(lam)
    d = lusztig_from_string(group, word, c_tilde_flip, trials=trials, seed=seed)
    for j, i in enumerate(word):
        shift = datum.pairing(datum.simple_root(i), -w0lam)
        if d[j] != shift + c_tilde_node[j]:
            return False
    return True
