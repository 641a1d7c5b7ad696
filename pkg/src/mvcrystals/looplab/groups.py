"""SL_n loop-group matrices: pinned generators, Kamnitzer valuation formulas
for the mu_+/mu_-/orbit parameters, Gauss decomposition and y-factorization.

The matrix realization is type A only; all other types reach the loop group
purely through the combinatorial modules.  Fundamental-representation data is
the wedge power Lambda^k C^n, whose extremal vectors read off the valuation
formulas: for [g] in S_lambda^+/-, -+<omega_k, lambda> = val(g^{-1} v_{+-omega_k}).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from mvcrystals.looplab.series import (
    GenericityError,
    LaurentMatrix,
    LaurentSeries,
    PrecisionError,
    vector_val,
)
from mvcrystals.rootdata import Coweight, Root, RootDataError, RootDatum

__all__ = [
    "LoopGroup",
    "GrassmannPoint",
]


class LoopGroup:
    """SL_n over the Laurent series field, tied to a type A root datum.

    Construction runs a one-time randomized self-check of the pinned-group
    commutation rules (torus conjugation, the SL_2 relation, and the
    x(a) x(-1/a) x(a) = a^{alpha^vee} sbar identity) against the matrices."""

    _verified = set()

    def __init__(self, datum: RootDatum):
        if datum.series != "A":
            raise RootDataError("loop-group matrices are realized for type A only")
        self.datum = datum
        self.n = datum.rank + 1
        if (datum.series, datum.rank) not in LoopGroup._verified:
            self._self_check()
            LoopGroup._verified.add((datum.series, datum.rank))

    def _self_check(self):
        import random

        rng = random.Random(f"pinning-{self.n}")
        t = LaurentSeries.t_power(1)
        for _ in range(3):
            lam = Coweight(tuple(rng.randint(-2, 2) for _ in range(self.datum.rank)))
            for alpha in self.datum.positive_roots:
                b = Fraction(rng.randint(1, 7))
                k = self.datum.pairing(alpha, lam)
                lhs = self.gen_t(lam) * self.gen_x(alpha, b)
                rhs = self.gen_x(alpha, LaurentSeries.from_scalar(b).shift(k)) * \
                    self.gen_t(lam)
                assert lhs.equals_exact(rhs), "torus commutation rule failed"
        for i in range(1, self.datum.rank + 1):
            alpha = self.datum.simple_root(i)
            a, b = Fraction(rng.randint(1, 5)), Fraction(rng.randint(1, 5))
            lhs = self.gen_x(alpha, a) * self.gen_x(-alpha, b)
            unit = LaurentSeries.from_scalar(1 + a * b)
            rhs = self.gen_x(-alpha, b / (1 + a * b)) * \
                self.gen_torus(self.datum.coroot_of(alpha), unit) * \
                self.gen_x(alpha, a / (1 + a * b))
            assert lhs.equals_exact(rhs), "SL_2 relation failed"
            lhs = self.gen_x(alpha, t) * self.gen_x(-alpha, -t.inverse()) * \
                self.gen_x(alpha, t)
            rhs = self.gen_t(self.datum.coroot_of(alpha)) * self.gen_sbar(i)
            assert lhs.agrees_with(rhs), "sbar torus identity failed"

    # -- coordinates ---------------------------------------------------------

    def coweight_diag(self, v: Coweight):
        """Coroot coordinates -> diagonal exponents: d_j = c_j - c_{j-1} with
        c_0 = c_n = 0, so alpha_i^vee maps to e_i - e_{i+1} and the sum is 0."""
        c = list(v.coords)
        d = [c[0]] + [c[j] - c[j - 1] for j in range(1, self.n - 1)] + [-c[self.n - 2]]
        assert sum(d) == 0
        return tuple(d)

    def root_pair(self, alpha: Root):
        """Root -> (j, k) with alpha = eps_j - eps_k (1-based)."""
        # consecutive support [a, b] means eps_a - eps_{b+1}
        coords = alpha.coords
        if alpha.is_positive:
            support = [i for i, c in enumerate(coords) if c != 0]
            assert all(coords[i] == 1 for i in support)
            a, b = support[0], support[-1]
            assert support == list(range(a, b + 1))
            return a + 1, b + 2
        j, k = self.root_pair(-alpha)
        return k, j

    # -- generators -------------------------------------------------------------

    def elementary(self, j, k, p: LaurentSeries) -> LaurentMatrix:
        rows = [[LaurentSeries.one() if a == b else LaurentSeries.zero()
                 for b in range(self.n)] for a in range(self.n)]
        rows[j - 1][k - 1] = p
        return LaurentMatrix(rows)

    def gen_x(self, alpha: Root, p) -> LaurentMatrix:
        if isinstance(p, (int, Fraction)):
            p = LaurentSeries.from_scalar(p)
        j, k = self.root_pair(alpha)
        return self.elementary(j, k, p)

    def gen_x_affine(self, alpha: Root, level: int, a) -> LaurentMatrix:
        """x_{alpha,n}(a) = x_alpha(a t^n)."""
        if isinstance(a, (int, Fraction)):
            a = LaurentSeries.from_scalar(a)
        return self.gen_x(alpha, a.shift(level))

    def gen_y(self, i: int, p) -> LaurentMatrix:
        return self.gen_x(-self.datum.simple_root(i), p)

    def gen_t(self, v: Coweight) -> LaurentMatrix:
        d = self.coweight_diag(v)
        rows = [[LaurentSeries.t_power(d[a]) if a == b else LaurentSeries.zero()
                 for b in range(self.n)] for a in range(self.n)]
        return LaurentMatrix(rows)

    def gen_torus(self, v: Coweight, a: LaurentSeries) -> LaurentMatrix:
        """a^v for a unit series a: diagonal with entries a^{d_j}."""
        d = self.coweight_diag(v)
        rows = [[LaurentSeries.zero()] * self.n for _ in range(self.n)]
        for j in range(self.n):
            rows[j][j] = a ** d[j]
        return LaurentMatrix(rows)

    def gen_sbar(self, i: int) -> LaurentMatrix:
        """sbar_i = x_i(1) y_i(-1) x_i(1), the SL_2 block [[0,1],[-1,0]]."""
        return self.gen_x(self.datum.simple_root(i), 1) * self.gen_y(i, -1) * \
            self.gen_x(self.datum.simple_root(i), 1)

    def gen_wbar(self, word) -> LaurentMatrix:
        out = LaurentMatrix.identity(self.n)
        for i in word:
            out = out * self.gen_sbar(i)
        return out

    def wbar_w0(self) -> LaurentMatrix:
        return self.gen_wbar(self.datum.reduced_word(self.datum.longest_element()))

    def y_product(self, word, ps) -> LaurentMatrix:
        out = LaurentMatrix.identity(self.n)
        for i, p in zip(word, ps):
            out = out * self.gen_y(i, p)
        return out

    # -- wedge action and valuation formulas ---------------------------------------

    def wedge_column(self, g: LaurentMatrix, cols):
        """Components of g(e_{cols}) in Lambda^k: minors on fixed columns."""
        k = len(cols)
        cols0 = [c - 1 for c in cols]
        out = []
        for rows in combinations(range(self.n), k):
            out.append(g.minor_det(rows, cols0))
        return out

    def mu_plus(self, g: LaurentMatrix) -> Coweight:
        """The stratum parameter of [g] in the S^+ decomposition."""
        ginv = g.inverse()
        coords = []
        for k in range(1, self.n):
            vec = self.wedge_column(ginv, tuple(range(1, k + 1)))
            coords.append(-vector_val(vec))
        return Coweight(tuple(coords))

    def mu_minus(self, g: LaurentMatrix) -> Coweight:
        ginv = g.inverse()
        coords = []
        for k in range(1, self.n):
            vec = self.wedge_column(ginv, tuple(range(k + 1, self.n + 1)))
            coords.append(vector_val(vec))
        return Coweight(tuple(coords))

    def orbit_coweight(self, g: LaurentMatrix) -> Coweight:
        """Antidominant lambda with [g] in the G(O)-orbit of [t^lambda]:
        <omega_k, lambda> = min valuation over all k-minors of g."""
        coords = []
        for k in range(1, self.n):
            vals = []
            for cols in combinations(range(self.n), k):
                for rows in combinations(range(self.n), k):
                    s = g.minor_det(rows, cols)
                    if s.coeffs:
                        vals.append(min(s.coeffs))
                    elif s.cap is not None:
                        vals.append(None)
            known = [v for v in vals if v is not None]
            if not known:
                raise PrecisionError("all k-minors indistinguishable from zero")
            coords.append(min(known))
        lam = Coweight(tuple(coords))
        if not self.datum.is_antidominant(lam):
            raise PrecisionError(
                f"orbit parameter {lam.coords} is not antidominant; "
                "precision too low or matrix not in the group")
        return lam

    def coset_equal(self, u: LaurentMatrix, v: LaurentMatrix) -> bool:
        """[u] = [v] in G(K)/G(O): u^{-1} v has all entries of valuation >= 0."""
        return (u.inverse() * v).all_entries_val_nonneg()

    # -- factorizations --------------------------------------------------------------

    def gauss_decompose(self, g: LaurentMatrix):
        """g = b u with b upper triangular and u lower unitriangular.

        Exists iff the bottom-right principal minors are units; implemented as
        a Crout LU of the row/column-reversed matrix."""
        n = self.n
        rev = LaurentMatrix([[g.rows[n - 1 - i][n - 1 - j] for j in range(n)]
                             for i in range(n)])
        lower = [[LaurentSeries.zero()] * n for _ in range(n)]
        upper = [[LaurentSeries.zero()] * n for _ in range(n)]
        for k in range(n):
            upper[k][k] = LaurentSeries.one()
        for k in range(n):
            for i in range(k, n):
                acc = rev.rows[i][k]
                for m in range(k):
                    acc = acc - lower[i][m] * upper[m][k]
                lower[i][k] = acc
            try:
                pivot_inv = lower[k][k].inverse()
            except PrecisionError as exc:
                raise GenericityError(f"Gauss pivot {k} vanished: {exc}") from exc
            for j in range(k + 1, n):
                acc = rev.rows[k][j]
                for m in range(k):
                    acc = acc - lower[k][m] * upper[m][j]
                upper[k][j] = acc * pivot_inv
        b = LaurentMatrix([[lower[n - 1 - i][n - 1 - j] for j in range(n)]
                           for i in range(n)])
        u = LaurentMatrix([[upper[n - 1 - i][n - 1 - j] for j in range(n)]
                           for i in range(n)])
        return b, u

    def factor_y(self, g: LaurentMatrix, word):
        """Factor a generic lower unitriangular g as y_{i_1}(p_1)...y_{i_N}(p_N).

        Sequential elimination: p_1 is the unique scalar making the residual
        y_{i_1}(-p_1) g drop into the Bruhat cell of s_{i_1} w, detected as the
        vanishing of one exact minor (southwest rank condition); then recurse.
        The full residual is checked to be trivial at the end."""
        n = self.n
        word = tuple(word)
        w0 = self.datum.longest_element()
        if self.datum.word_to_element(word) != w0 or \
                len(word) != len(self.datum.positive_roots):
            raise RootDataError(f"{word} is not a reduced word of w_0")
        perm = tuple(range(n, 0, -1))  # one-line of w0
        cur = g
        ps = []
        for i in word:
            a = perm.index(i) + 1
            b = perm.index(i + 1) + 1
            if a < b:
                raise RootDataError("word does not stay reduced along the peel")
            p = self._peel_parameter(cur, i, perm, b)
            ps.append(p)
            cur = self.gen_y(i, -p) * cur
            perm = tuple(i + 1 if x == i else i if x == i + 1 else x for x in perm)
        # the residual must be the identity within precision
        ident = LaurentMatrix.identity(n)
        if not cur.agrees_with(ident):
            raise GenericityError("factorization residual is not the identity")
        return ps

    def _peel_parameter(self, g: LaurentMatrix, i, perm, b):
        """Solve det = 0 for the southwest minor that must vanish after the peel.

        Rows {i+1..n} x cols {1..b}; rank in the current cell is r, and rows
        {i+2..n} already contribute r-1 independent rows, so the minor is taken
        on an (r-1)-subset plus the modified row i+1 and one extra column."""
        n = self.n
        rows_rest = list(range(i + 1, n))       # 0-based rows i+2..n
        cols = list(range(b))                   # 0-based cols 1..b
        r = sum(1 for k in range(b) if perm[k] >= i + 1)
        rsel, csel = self._independent_square(g, rows_rest, cols, r - 1)
        for cstar in cols:
            if cstar in csel:
                continue
            col_set = sorted(csel + [cstar])
            # det of the modified minor is A - p*B: A on rows {i+1} u R1, B with
            # row i in the same slot; both in matrix row order, signs cancel
            det_a = g.minor_det([i] + rsel, col_set)
            det_b = g.minor_det([i - 1] + rsel, col_set)
            try:
                p = det_a * det_b.inverse()
            except PrecisionError:
                continue
            return p
        raise GenericityError("no usable pivot column for the peel")

    def _independent_square(self, g: LaurentMatrix, rows, cols, size):
        """Greedy row/column selection of a size x size nonsingular submatrix."""
        if size == 0:
            return [], []
        picked_rows = []
        picked_cols = []
        for row in rows:
            if len(picked_rows) == size:
                break
            trial_rows = picked_rows + [row]
            for col in cols:
                if col in picked_cols:
                    continue
                trial_cols = picked_cols + [col]
                d = g.minor_det(trial_rows, sorted(trial_cols))
                if d.coeffs:
                    picked_rows, picked_cols = trial_rows, trial_cols
                    break
        if len(picked_rows) != size:
            raise GenericityError("could not find an independent square submatrix")
        return picked_rows, picked_cols

    def point(self, g: LaurentMatrix) -> "GrassmannPoint":
        return GrassmannPoint(self, g)

    def zmap(self, g: LaurentMatrix) -> LaurentMatrix:
        """z-coordinates carrier: the lower unitriangular Gauss factor of
        g * wbar(w0); z_i(q) is the unique element of U^- cap B^+ y_i(q) wbar^{-1}."""
        _, u = self.gauss_decompose(g * self.wbar_w0())
        return u

    def factor_z(self, g: LaurentMatrix, word):
        """Parameters q with z_word(q) = g for lower unitriangular g:
        invert the zmap and then y-factor."""
        # g in B^+ y(q) wbar^{-1}  <=>  y(q) = lower Gauss factor of g wbar
        _, u = self.gauss_decompose(g * self.wbar_w0())
        return self.factor_y(u, word)

    def z_of(self, word, qs) -> LaurentMatrix:
        """z_word(q) = lower Gauss factor of y_word(q) wbar(w0)^{-1}."""
        y = self.y_product(word, qs)
        _, u = self.gauss_decompose(y * self.wbar_w0().inverse())
        return u


class GrassmannPoint:
    """A point [g] of the affine Grassmannian, up to right multiplication by
    matrices over nonnegative-valuation series.

    The stratum parameters mu_plus/mu_minus and the orbit coweight are derived
    lazily; whenever both strata are known the dominance inequality
    mu_plus >= mu_minus is asserted (nonempty intersections only exist that
    way round)."""

    __slots__ = ("group", "rep", "_mu_plus", "_mu_minus", "_orbit")

    def __init__(self, group: LoopGroup, rep: LaurentMatrix):
        self.group = group
        self.rep = rep
        self._mu_plus = None
        self._mu_minus = None
        self._orbit = None

    @property
    def mu_plus(self) -> Coweight:
        if self._mu_plus is None:
            self._mu_plus = self.group.mu_plus(self.rep)
            self._check_dominance()
        return self._mu_plus

    @property
    def mu_minus(self) -> Coweight:
        if self._mu_minus is None:
            self._mu_minus = self.group.mu_minus(self.rep)
            self._check_dominance()
        return self._mu_minus

    @property
    def orbit(self) -> Coweight:
        if self._orbit is None:
            self._orbit = self.group.orbit_coweight(self.rep)
        return self._orbit

    def _check_dominance(self):
        if self._mu_plus is not None and self._mu_minus is not None:
            assert self.group.datum.dominance_leq(self._mu_minus, self._mu_plus), \
                "mu_plus fails to dominate mu_minus; not a Grassmannian point"

    def same_point(self, other: "GrassmannPoint") -> bool:
        return self.group.coset_equal(self.rep, other.rep)
