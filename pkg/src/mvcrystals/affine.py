"""Affine roots, affine Weyl group, exact alcove/face geometry, wall-crossing
sets and the minimal gallery type gamma_lambda.

Conventions.  An affine root is a pair (alpha, n) with wall
H_{alpha,n} = {x : <alpha,x> = n} and closed half-space
H^-_{alpha,n} = {x : <alpha,x> <= n}.  The affine node has index 0 with
alpha_0 = (-theta, -1); finite simple reflections keep their 1-based index.
W^aff = Z Phi^vee x| W acts by x |-> w(x) + mu.

Faces are stored as (mover, type); all geometric predicates reduce to exact
rational evaluation at the transported qualifying vertices of the model face
phi_J in the closure of the fundamental alcove, so nothing polyhedral is ever
solved.  A face lies in a wall iff every qualifying vertex does; it lies
strictly on one side iff its barycenter does (faces of the arrangement never
straddle walls).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mvcrystals.rootdata import Coweight, Root, RootDataError, RootDatum, WeylElt, _norm

__all__ = [
    "AffineRoot",
    "AffWeylElt",
    "Face",
    "GalleryType",
    "simple_affine_reflection",
    "affine_reflection",
    "translation",
    "aff_length",
    "face_sample_point",
    "face_vertices",
    "wall_relation",
    "face_in_wall",
    "face_sup",
    "phi_plus_aff",
    "fundamentalize",
    "minimal_word",
    "build_gallery_type",
    "enumerate_affine_reduced_words",
    "IN_WALL",
    "STRICTLY_MINUS",
    "STRICTLY_PLUS",
]

IN_WALL = "in_wall"
STRICTLY_MINUS = "strictly_minus"
STRICTLY_PLUS = "strictly_plus"


@dataclass(frozen=True)
class AffineRoot:
    root: Root
    level: int

    def __neg__(self):
        return AffineRoot(-self.root, -self.level)


@dataclass(frozen=True)
class AffWeylElt:
    """Element (translation, finite part) of W^aff acting by x |-> w(x) + mu."""

    translation: Coweight
    finite: WeylElt

    def __mul__(self, other):
        # (mu, w)(nu, v) = (mu + w(nu), wv)
        return AffWeylElt(self.translation + self.finite.act_coweight(other.translation),
                          self.finite * other.finite)

    def inverse(self):
        winv = self.finite.inverse()
        return AffWeylElt(-winv.act_coweight(self.translation), winv)

    def act_point(self, coords):
        moved = self.finite.act_point(coords)
        return tuple(_norm(a + b) for a, b in zip(moved, self.translation.coords))

    def act_coweight(self, v: Coweight) -> Coweight:
        return Coweight(self.act_point(v.coords))

    def act_affine_root(self, datum: RootDatum, beta: AffineRoot) -> AffineRoot:
        # w(alpha, n) = (w alpha, n); tau_mu(alpha, n) = (alpha, n + <alpha, mu>)
        alpha = self.finite.act_root(beta.root)
        return AffineRoot(alpha, beta.level + datum.pairing(alpha, self.translation))

    @property
    def is_identity(self):
        return self.finite.is_identity and not any(self.translation.coords)

    @property
    def is_finite(self):
        return not any(self.translation.coords)


def identity_aff(datum: RootDatum) -> AffWeylElt:
    return AffWeylElt(datum.zero_coweight(), datum.identity_elt())


def translation(datum: RootDatum, mu: Coweight) -> AffWeylElt:
    return AffWeylElt(mu, datum.identity_elt())


def affine_reflection(datum: RootDatum, beta: AffineRoot) -> AffWeylElt:
    """s_{alpha,n}: x |-> x - (<alpha,x> - n) alpha^vee = s_alpha(x) + n alpha^vee."""
    co = datum.coroot_of(beta.root)
    return AffWeylElt(co.scale(beta.level), datum.reflection(beta.root))


def simple_affine_reflection(datum: RootDatum, i: int) -> AffWeylElt:
    """s_i for i in I^aff; i = 0 is the reflection in H_{theta,1}."""
    if i == 0:
        return affine_reflection(datum, AffineRoot(datum.highest_root, 1))
    return AffWeylElt(datum.zero_coweight(), datum.simple_reflection(i))


def simple_affine_wall(datum: RootDatum, i: int) -> AffineRoot:
    """The affine root whose wall is the i-th wall of the fundamental alcove.

    For i >= 1 this is (alpha_i, 0); for i = 0 it is (theta, 1), the wall of
    alpha_0 = (-theta, -1)."""
    if i == 0:
        return AffineRoot(datum.highest_root, 1)
    return AffineRoot(datum.simple_root(i), 0)


# -- faces -------------------------------------------------------------------

@dataclass(frozen=True)
class Face:
    """Face g(phi_J) of the affine Coxeter complex; jtype is a proper subset
    of {0, 1, ..., rank} given as a frozenset."""

    mover: AffWeylElt
    jtype: frozenset


def alcove_face(mover: AffWeylElt) -> Face:
    return Face(mover, frozenset())


@lru_cache(maxsize=None)
def _model_vertices(datum_key, jtype):
    """Qualifying vertices of closure(phi_J): 0 when 0 is not in J, and
    omega_i^vee / m_i for finite i not in J."""
    datum = _DATUM_BY_KEY[datum_key]
    verts = []
    if 0 not in jtype:
        verts.append(tuple(0 for _ in range(datum.rank)))
    for i in range(1, datum.rank + 1):
        if i not in jtype:
            om = datum.fundamental_coweight(i)
            m = datum.marks[i - 1]
            verts.append(tuple(_norm(Fraction(a, m)) for a in om.coords))
    if not verts:
        raise RootDataError("jtype must be a proper subset of I^aff")
    return tuple(verts)


_DATUM_BY_KEY = {}


def _key(datum):
    k = (datum.series, datum.rank)
    _DATUM_BY_KEY[k] = datum
    return k


def face_vertices(datum: RootDatum, face: Face):
    """The transported qualifying vertices of the face (exact rational points)."""
    return _face_vertices_cached(_key(datum), face)


@lru_cache(maxsize=200000)
def _face_vertices_cached(datum_key, face: Face):
    return tuple(face.mover.act_point(v) for v in _model_vertices(datum_key, face.jtype))


def face_sample_point(datum: RootDatum, face: Face):
    """Barycenter of the transported qualifying vertices; an interior point."""
    verts = face_vertices(datum, face)
    n = len(verts)
    return tuple(_norm(Fraction(sum(col), n)) for col in zip(*verts))


def face_sup(datum: RootDatum, face: Face, alpha: Root):
    """f_F(alpha) = sup_{x in F} <alpha, x>, exact (max over closure vertices)."""
    return max(datum.pairing_coords(alpha.coords, v) for v in face_vertices(datum, face))


def face_in_wall(datum: RootDatum, face: Face, beta: AffineRoot) -> bool:
    vals = [datum.pairing_coords(beta.root.coords, v) for v in face_vertices(datum, face)]
    return all(v == beta.level for v in vals)


def wall_relation(datum: RootDatum, face: Face, beta: AffineRoot) -> str:
    """One of in_wall / strictly_minus / strictly_plus.

    Faces of the arrangement never straddle walls, so the vertex values decide:
    all equal to the level means contained; otherwise the open face lies
    strictly on the side of its sample point."""
    vals = [datum.pairing_coords(beta.root.coords, v) for v in face_vertices(datum, face)]
    if all(v == beta.level for v in vals):
        return IN_WALL
    if max(vals) <= beta.level:
        return STRICTLY_MINUS
    if min(vals) >= beta.level:
        return STRICTLY_PLUS
    raise RuntimeError(f"face straddles wall {beta}; not a face of the complex")


def phi_plus_aff(datum: RootDatum, face_small: Face, face_big: Face):
    """Phi_+^aff(F', F): affine roots (alpha, n), alpha positive, with
    F' inside the wall at level n and F strictly beyond it.

    F' in closure(F) is the caller's responsibility."""
    out = []
    for alpha in datum.positive_roots:
        vals = [datum.pairing_coords(alpha.coords, v)
                for v in face_vertices(datum, face_small)]
        n = vals[0]
        if any(v != n for v in vals):
            continue
        if not (isinstance(n, int) or n.denominator == 1):
            continue
        n = int(n)
        if face_sup(datum, face_big, alpha) > n:
            out.append(AffineRoot(alpha, n))
    return tuple(out)


# -- lengths and reduced words -----------------------------------------------

@lru_cache(maxsize=None)
def _fund_alcove_sample_cached(datum_key):
    datum = _DATUM_BY_KEY[datum_key]
    face = alcove_face(identity_aff(datum))
    return face_sample_point(datum, face)


def _fund_alcove_sample(datum: RootDatum):
    return _fund_alcove_sample_cached(_key(datum))


def aff_length(datum: RootDatum, g: AffWeylElt) -> int:
    """Number of walls separating A_fund from g(A_fund)."""
    x0 = _fund_alcove_sample(datum)
    x1 = g.act_point(x0)
    total = 0
    for alpha in datum.positive_roots:
        a = datum.pairing_coords(alpha.coords, x0)
        b = datum.pairing_coords(alpha.coords, x1)
        lo, hi = (a, b) if a <= b else (b, a)
        # integers strictly between lo and hi; alcove interiors avoid walls
        total += max(0, _floor_strict(hi) - _ceil_strict(lo) + 1)
    return total


def _ceil_strict(x):
    f = Fraction(x)
    n = -((-f.numerator) // f.denominator)  # ceil
    return n + 1 if n == f else n


def _floor_strict(x):
    f = Fraction(x)
    n = f.numerator // f.denominator  # floor
    return n - 1 if n == f else n


def aff_descents_right(datum: RootDatum, g: AffWeylElt):
    lg = aff_length(datum, g)
    return tuple(i for i in range(0, datum.rank + 1)
                 if aff_length(datum, g * simple_affine_reflection(datum, i)) < lg)


def enumerate_affine_reduced_words(datum: RootDatum, g: AffWeylElt, _cache=None):
    """All reduced words of g in the alphabet I^aff (tuples over {0,...,rank})."""
    if _cache is None:
        _cache = {}
    key = (g.translation.coords, g.finite.cmat)
    if key in _cache:
        return _cache[key]
    lg = aff_length(datum, g)
    if lg == 0:
        words = ((),)
    else:
        words = []
        for i in aff_descents_right(datum, g):
            shorter = g * simple_affine_reflection(datum, i)
            for word in enumerate_affine_reduced_words(datum, shorter, _cache):
                words.append(word + (i,))
        words = tuple(sorted(set(words)))
    _cache[key] = words
    return words


# -- fundamentalization and the minimal gallery type ---------------------------

def fundamentalize(datum: RootDatum, lam: Coweight):
    """Fold lam into closure(A_fund) across violated simple affine walls.

    Returns (lam_fund, J, g) where J is the type of the folded point and
    g in W^aff satisfies g(lam_fund) = lam.  Termination is guarded by the
    initial wall-distance."""
    x = tuple(lam.coords)
    fold = identity_aff(datum)
    theta = datum.highest_root
    # bound: each reflection strictly reduces the number of separating walls
    bound = int(2 * sum(abs(datum.pairing(a, lam)) for a in datum.positive_roots)
                + 2 * datum.rank + 4)
    for _ in range(bound):
        moved = False
        for i in range(0, datum.rank + 1):
            if i == 0:
                violated = datum.pairing_coords(theta.coords, x) > 1
            else:
                violated = datum.pairing_coords(datum.simple_root(i).coords, x) < 0
            if violated:
                s = simple_affine_reflection(datum, i)
                x = s.act_point(x)
                fold = s * fold
                moved = True
                break
        if not moved:
            break
    else:
        raise RuntimeError("fundamentalize did not terminate within its wall bound")
    jtype = set()
    for i in range(1, datum.rank + 1):
        if datum.pairing_coords(datum.simple_root(i).coords, x) == 0:
            jtype.add(i)
    if datum.pairing_coords(theta.coords, x) == 1:
        jtype.add(0)
    return Coweight(x), frozenset(jtype), fold.inverse()


def minimal_word(datum: RootDatum, lam: Coweight):
    """A reduced word (over I^aff) of w_lambda, the minimal-length element
    with w(lam_fund) = lam; greedy minimal-coset-representative descent."""
    if not datum.is_dominant(lam):
        raise RootDataError(f"{lam} is not dominant")
    lam_fund, jtype, g = fundamentalize(datum, lam)
    changed = True
    while changed:
        changed = False
        for j in sorted(jtype):
            cand = g * simple_affine_reflection(datum, j)
            if aff_length(datum, cand) < aff_length(datum, g):
                g = cand
                changed = True
                break
    word = []
    cur = g
    while aff_length(datum, cur) > 0:
        for i in range(0, datum.rank + 1):
            s = simple_affine_reflection(datum, i)
            if aff_length(datum, s * cur) < aff_length(datum, cur):
                word.append(i)
                cur = s * cur
                break
        else:
            raise RuntimeError("no left descent found; length function broken")
    word = tuple(word)
    w = identity_aff(datum)
    for i in word:
        w = w * simple_affine_reflection(datum, i)
    assert aff_length(datum, w) == len(word)
    assert w.act_coweight(lam_fund) == lam
    return word


@dataclass(frozen=True)
class GalleryType:
    """The type gamma_lambda: dominant lam, its folded vertex, a reduced word
    of w_lambda over I^aff, and the prefix movers s_{i_1}...s_{i_j}."""

    datum_series: str
    datum_rank: int
    lam: Coweight
    lam_fund: Coweight
    lam_jtype: frozenset
    word: tuple
    prefixes: tuple  # AffWeylElt, length p + 1 (prefixes[0] = identity)

    @property
    def p(self):
        return len(self.word)

    def datum(self) -> RootDatum:
        from mvcrystals.rootdata import build_root_datum
        return build_root_datum(self.datum_series, self.datum_rank)

    def fundamental_alcove(self, j) -> Face:
        """Gamma_j = s_{i_1}...s_{i_j}(A_fund)."""
        return Face(self.prefixes[j], frozenset())

    def fundamental_facet(self, j) -> Face:
        """Gamma'_j = s_{i_1}...s_{i_{j-1}}(phi_{i_j}), 1 <= j <= p."""
        return Face(self.prefixes[j - 1], frozenset({self.word[j - 1]}))


def build_gallery_type(datum: RootDatum, lam: Coweight, word=None) -> GalleryType:
    """Construct gamma_lambda for a dominant lam and a reduced word of w_lambda.

    The word defaults to the greedy minimal one; any reduced word of w_lambda
    is accepted and checked (length, image, minimality, dominance of all
    fundamental faces)."""
    if word is None:
        word = minimal_word(datum, lam)
    word = tuple(word)
    lam_fund, lam_jtype, _ = fundamentalize(datum, lam)
    prefixes = [identity_aff(datum)]
    for i in word:
        prefixes.append(prefixes[-1] * simple_affine_reflection(datum, i))
    w = prefixes[-1]
    if aff_length(datum, w) != len(word):
        raise RootDataError(f"word {word} is not reduced")
    if w.act_coweight(lam_fund) != lam:
        raise RootDataError(f"word {word} does not map lam_fund to {lam}")
    if len(word) != len(minimal_word(datum, lam)):
        raise RootDataError(f"word {word} is not minimal for {lam}")
    gt = GalleryType(datum.series, datum.rank, lam, lam_fund, lam_jtype,
                     word, tuple(prefixes))
    # every fundamental face must sit in the closed dominant chamber
    for j in range(gt.p + 1):
        faces = [gt.fundamental_alcove(j)]
        if j >= 1:
            faces.append(gt.fundamental_facet(j))
        for f in faces:
            for v in face_vertices(datum, f):
                for i in range(1, datum.rank + 1):
                    if datum.pairing_coords(datum.simple_root(i).coords, v) < 0:
                        raise RootDataError(
                            f"gallery type face {j} leaves the dominant chamber")
    assert gt.prefixes[-1].act_coweight(lam_fund) == lam
    return gt
