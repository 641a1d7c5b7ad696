"""Exact root-system, Weyl-group and lattice arithmetic for small finite types.

Everything is integer or `fractions.Fraction` arithmetic; there is no floating
point anywhere.  Simple roots are indexed 1..rank (the affine node, used in
:mod:`mvcrystals.affine`, gets index 0).  Roots are stored by their integer
coordinates in the simple-root basis, coweights by their coordinates in the
simple-coroot basis; the two carry distinct types so that mismatched pairings
fail loudly instead of silently computing nonsense.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "Root",
    "Coweight",
    "WeylElt",
    "RootDatum",
    "RootDataError",
    "build_root_datum",
]


class RootDataError(ValueError):
    """Unsupported series/rank or malformed lattice data."""


# Cartan matrices C[i][j] = <alpha_i, alpha_j^vee>, 0-based storage.
def _cartan_matrix(series, rank):
    if series == "A" and 1 <= rank <= 4:
        c = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            c[i][i] = 2
            if i + 1 < rank:
                c[i][i + 1] = -1
                c[i + 1][i] = -1
        return c
    if series == "B" and 2 <= rank <= 4:
        c = _cartan_matrix("A", rank)
        # last simple root short: <alpha_{r-1}, alpha_r^vee> = -2
        c[rank - 2][rank - 1] = -2
        return c
    if series == "C" and 2 <= rank <= 4:
        c = _cartan_matrix("A", rank)
        c[rank - 1][rank - 2] = -2
        return c
    if series == "D" and rank == 4:
        # node 2 central (1-based), edges 1-2, 2-3, 2-4
        c = [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]]
        return c
    if series == "G" and rank == 2:
        # alpha_1 short, alpha_2 long; theta = 3*alpha_1 + 2*alpha_2
        return [[2, -1], [-3, 2]]
    raise RootDataError(f"unsupported series/rank: {series}{rank}")


@dataclass(frozen=True)
class Root:
    """A root, as integer coordinates in the simple-root basis."""

    coords: tuple

    def __neg__(self):
        return Root(tuple(-a for a in self.coords))

    def __add__(self, other):
        return Root(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return Root(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, k):
        return Root(tuple(k * a for a in self.coords))

    @property
    def is_positive(self):
        return all(a >= 0 for a in self.coords) and any(a > 0 for a in self.coords)

    def height(self):
        return sum(self.coords)


@dataclass(frozen=True)
class Coweight:
    """An element of Lambda x_Z Q in the simple-coroot basis.

    Lattice coweights have integer coordinates; face sample points are
    rational.  Coordinates are normalised through `Fraction` only when a
    denominator is present, so lattice vectors hash as plain int tuples.
    """

    coords: tuple

    def __neg__(self):
        return Coweight(tuple(-a for a in self.coords))

    def __add__(self, other):
        return Coweight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return Coweight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, k):
        return Coweight(tuple(_norm(k * a) for a in self.coords))

    def is_integral(self):
        return all(isinstance(a, int) or (isinstance(a, Fraction) and a.denominator == 1)
                   for a in self.coords)

    def normalized(self):
        return Coweight(tuple(_norm(a) for a in self.coords))


def _norm(a):
    """Collapse integral Fractions to int so equal vectors hash equal."""
    if isinstance(a, Fraction) and a.denominator == 1:
        return int(a)
    return a


def _matvec(m, v):
    return tuple(_norm(sum(m[i][j] * v[j] for j in range(len(v)))) for i in range(len(m)))


def _matmul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class WeylElt:
    """Finite Weyl group element; canonical form is its matrix on the coroot basis.

    `cmat` acts on coweight coordinates, `rmat` on root coordinates; both are
    integer matrices and `rmat` is determined by `cmat` through invariance of
    the pairing.  Equality and hashing use `cmat` alone.
    """

    cmat: tuple
    rmat: tuple

    def __mul__(self, other):
        return WeylElt(_matmul(self.cmat, other.cmat), _matmul(self.rmat, other.rmat))

    def inverse(self):
        # Weyl matrices are integer with integer inverse; invert by exact Gauss.
        return WeylElt(_int_inverse(self.cmat), _int_inverse(self.rmat))

    def act_coweight(self, v: Coweight) -> Coweight:
        return Coweight(_matvec(self.cmat, v.coords))

    def act_root(self, a: Root) -> Root:
        return Root(_matvec(self.rmat, a.coords))

    def act_point(self, coords: tuple) -> tuple:
        return _matvec(self.cmat, coords)

    @property
    def is_identity(self):
        return self.cmat == _identity(len(self.cmat))

    def __hash__(self):
        return hash(self.cmat)

    def __eq__(self, other):
        return isinstance(other, WeylElt) and self.cmat == other.cmat


def _int_inverse(m):
    n = len(m)
    aug = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    inv = tuple(tuple(_norm(aug[i][n + j]) for j in range(n)) for i in range(n))
    assert all(isinstance(x, int) for row in inv for x in row)
    return inv


class RootDatum:
    """Root system data for one finite series/rank, all fields exact.

    Positive roots and positive coroots are matched lists: ``positive_coroots[k]``
    is the coroot of ``positive_roots[k]``.
    """

    def __init__(self, series, rank):
        self.series = series
        self.rank = rank
        self.cartan = tuple(tuple(row) for row in _cartan_matrix(series, rank))
        self._build_roots()
        self._weyl_cache = None
        self._redword_cache = {}

    # -- construction ------------------------------------------------------

    def _simple_refl_mats(self, i):
        # 1-based i; s_i on coroot coords and on root coords.
        r = self.rank
        i0 = i - 1
        cmat = [[int(k == j) for j in range(r)] for k in range(r)]
        rmat = [[int(k == j) for j in range(r)] for k in range(r)]
        for j in range(r):
            # s_i(alpha_j^vee) = alpha_j^vee - C[i][j] alpha_i^vee
            cmat[i0][j] -= self.cartan[i0][j]
            # s_i(alpha_j) = alpha_j - C[j][i] alpha_i
            rmat[i0][j] -= self.cartan[j][i0]
        return tuple(tuple(row) for row in cmat), tuple(tuple(row) for row in rmat)

    def _build_roots(self):
        r = self.rank
        simples = [(Root(tuple(int(i == j) for j in range(r))),
                    Coweight(tuple(int(i == j) for j in range(r)))) for i in range(r)]
        seen = {}
        frontier = list(simples)
        for rt, co in simples:
            seen[rt] = co
        while frontier:
            nxt = []
            for rt, co in frontier:
                for i in range(1, r + 1):
                    s = self.simple_reflection(i)
                    rt2, co2 = s.act_root(rt), s.act_coweight(co)
                    if rt2 not in seen:
                        seen[rt2] = co2
                        nxt.append((rt2, co2))
                    else:
                        assert seen[rt2] == co2, "root/coroot matching broke"
            frontier = nxt
        pos = sorted((rt for rt in seen if rt.is_positive),
                     key=lambda rt: (rt.height(), rt.coords))
        assert len(seen) == 2 * len(pos), "reflection closure is not symmetric"
        self.positive_roots = tuple(pos)
        self.positive_coroots = tuple(seen[rt] for rt in pos)
        self._coroot_of = {rt: seen[rt] for rt in seen}
        self.highest_root = pos[-1]
        assert all(self.highest_root.height() > rt.height() or self.highest_root == rt
                   for rt in pos), "highest root not unique by height"
        self.marks = self.highest_root.coords
        # theta must dominate every positive root
        assert all(self.pairing(self.highest_root, cov) >= 0
                   for cov in self.simple_coroots())

    # -- basic vectors ------------------------------------------------------

    def simple_root(self, i) -> Root:
        return Root(tuple(int(i - 1 == j) for j in range(self.rank)))

    def simple_coroot(self, i) -> Coweight:
        return Coweight(tuple(int(i - 1 == j) for j in range(self.rank)))

    def simple_roots(self):
        return tuple(self.simple_root(i) for i in range(1, self.rank + 1))

    def simple_coroots(self):
        return tuple(self.simple_coroot(i) for i in range(1, self.rank + 1))

    def zero_coweight(self):
        return Coweight((0,) * self.rank)

    def coroot_of(self, root: Root) -> Coweight:
        return self._coroot_of[root]

    def fundamental_coweight(self, i) -> Coweight:
        """omega_i^vee with <alpha_j, omega_i^vee> = delta_ij; rational in general."""
        r = self.rank
        cinv = _rat_inverse(self.cartan)
        return Coweight(tuple(_norm(cinv[j][i - 1]) for j in range(r)))

    def rho_coweight(self) -> Coweight:
        v = self.zero_coweight()
        for i in range(1, self.rank + 1):
            v = v + self.fundamental_coweight(i)
        return v.normalized()

    # -- pairing and orders --------------------------------------------------

    def pairing(self, root, coweight):
        """<root, coweight>, exact."""
        if not isinstance(root, Root) or not isinstance(coweight, Coweight):
            raise TypeError("pairing takes (Root, Coweight); got "
                            f"({type(root).__name__}, {type(coweight).__name__})")
        return self.pairing_coords(root.coords, coweight.coords)

    def pairing_coords(self, rc, vc):
        assert len(rc) == self.rank and len(vc) == self.rank, \
            f"coordinate length mismatch for rank {self.rank}"
        return _norm(sum(rc[i] * self.cartan[i][j] * vc[j]
                         for i in range(self.rank) for j in range(self.rank)))

    def height(self, x: Coweight):
        """Height of a coroot-lattice element; errors if x is not in Z Phi^vee."""
        if not x.is_integral():
            raise RootDataError(f"{x} is not in the coroot lattice")
        return int(sum(x.coords))

    def dominance_leq(self, mu: Coweight, lam: Coweight) -> bool:
        """mu <= lam iff lam - mu is a nonnegative integer sum of positive coroots."""
        d = lam - mu
        return d.is_integral() and all(a >= 0 for a in d.coords)

    def is_dominant(self, v: Coweight) -> bool:
        return all(self.pairing(self.simple_root(i), v) >= 0
                   for i in range(1, self.rank + 1))

    def is_antidominant(self, v: Coweight) -> bool:
        return all(self.pairing(self.simple_root(i), v) <= 0
                   for i in range(1, self.rank + 1))

    def dominant_conjugate(self, v: Coweight) -> Coweight:
        x = v
        guard = 0
        while not self.is_dominant(x):
            for i in range(1, self.rank + 1):
                if self.pairing(self.simple_root(i), x) < 0:
                    x = self.simple_reflection(i).act_coweight(x)
                    break
            guard += 1
            if guard > 10000:
                raise RootDataError("dominant conjugate did not terminate")
        return x

    # -- Weyl group -----------------------------------------------------------

    @lru_cache(maxsize=None)
    def simple_reflection(self, i) -> WeylElt:
        if not 1 <= i <= self.rank:
            raise RootDataError(f"simple reflection index {i} out of range")
        cmat, rmat = self._simple_refl_mats(i)
        return WeylElt(cmat, rmat)

    def identity_elt(self) -> WeylElt:
        n = self.rank
        return WeylElt(_identity(n), _identity(n))

    def reflection(self, root: Root) -> WeylElt:
        """s_alpha for an arbitrary root alpha."""
        co = self.coroot_of(root)
        n = self.rank
        cmat = []
        rmat = []
        for j in range(n):
            ej_c = Coweight(tuple(int(j == k) for k in range(n)))
            ej_r = Root(tuple(int(j == k) for k in range(n)))
            col_c = (ej_c - co.scale(self.pairing(root, ej_c))).coords
            col_r = (ej_r - root.scale(self.pairing(ej_r, co))).coords
            cmat.append(col_c)
            rmat.append(col_r)
        # built column-wise; transpose
        cmat = tuple(tuple(cmat[j][i] for j in range(n)) for i in range(n))
        rmat = tuple(tuple(rmat[j][i] for j in range(n)) for i in range(n))
        return WeylElt(cmat, rmat)

    def weyl_length(self, w: WeylElt) -> int:
        return sum(1 for rt in self.positive_roots if not w.act_root(rt).is_positive)

    def weyl_elements(self):
        """All of W, BFS from the identity (cached)."""
        if self._weyl_cache is None:
            seen = {self.identity_elt()}
            frontier = [self.identity_elt()]
            while frontier:
                nxt = []
                for w in frontier:
                    for i in range(1, self.rank + 1):
                        w2 = w * self.simple_reflection(i)
                        if w2 not in seen:
                            seen.add(w2)
                            nxt.append(w2)
                frontier = nxt
            self._weyl_cache = tuple(sorted(seen, key=lambda w: (self.weyl_length(w), w.cmat)))
        return self._weyl_cache

    def longest_element(self) -> WeylElt:
        return self.weyl_elements()[-1]

    def enumerate_reduced_words(self, w: WeylElt):
        """All reduced words of w (tuples of 1-based indices), deduplicated."""
        key = w.cmat
        if key in self._redword_cache:
            return self._redword_cache[key]
        lw = self.weyl_length(w)
        if lw == 0:
            words = ((),)
        else:
            words = []
            for i in range(1, self.rank + 1):
                w2 = w * self.simple_reflection(i)
                if self.weyl_length(w2) < lw:
                    for word in self.enumerate_reduced_words(w2):
                        words.append(word + (i,))
            words = tuple(sorted(set(words)))
        self._redword_cache[key] = words
        return words

    def word_to_element(self, word) -> WeylElt:
        w = self.identity_elt()
        for i in word:
            w = w * self.simple_reflection(i)
        return w

    def reduced_word(self, w: WeylElt):
        """One reduced word (greedy left descent, deterministic)."""
        word = []
        cur = w
        while self.weyl_length(cur) > 0:
            for i in range(1, self.rank + 1):
                if self.weyl_length(self.simple_reflection(i) * cur) < self.weyl_length(cur):
                    word.append(i)
                    cur = self.simple_reflection(i) * cur
                    break
        return tuple(word)


def _rat_inverse(m):
    n = len(m)
    aug = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [[aug[i][n + j] for j in range(n)] for i in range(n)]


@lru_cache(maxsize=None)
def build_root_datum(series: str, rank: int) -> RootDatum:
    """Build the root datum for the given series letter and rank (<= 4)."""
    return RootDatum(series, rank)
