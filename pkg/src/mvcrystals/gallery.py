"""Combinatorial galleries of a fixed minimal type, root operators, positive
folding, dimension, and the LS-gallery crystal.

A gallery is the tuple (delta_0, ..., delta_p) in W x W_{i_1} x ... x W_{i_p};
its faces are derived: Delta_j = delta_0...delta_j(A_fund),
Delta'_j = delta_0...delta_{j-1}(phi_{i_j}), Delta'_{p+1} the end vertex.
Root operators are implemented exactly as face surgery (reflect a window,
translate the tail) followed by tuple recovery; the recovery asserts that the
result is again a tuple of the same type, which is a theorem, so a failing
assertion is an implementation bug and raises.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from mvcrystals.affine import (
    AffineRoot,
    AffWeylElt,
    Face,
    GalleryType,
    affine_reflection,
    build_gallery_type,
    face_vertices,
    identity_aff,
    phi_plus_aff,
    simple_affine_reflection,
    translation,
)
from mvcrystals.rootdata import Coweight, RootDatum, WeylElt

__all__ = [
    "Gallery",
    "minimal_gallery",
    "weight",
    "min_wall_level",
    "crystal_maps",
    "root_e",
    "root_f",
    "is_positively_folded",
    "dimension",
    "is_ls",
    "enumerate_ls",
    "GalleryError",
    "gallery_to_dict",
    "gallery_from_dict",
]


class GalleryError(RuntimeError):
    """Type preservation or enumeration guard failure."""


@dataclass(frozen=True, eq=False)
class Gallery:
    gtype: GalleryType
    delta0: WeylElt
    flips: tuple  # flips[j] True means delta_{j+1} = s_{i_{j+1}}, else identity

    def __post_init__(self):
        assert len(self.flips) == self.gtype.p

    def __eq__(self, other):
        if not isinstance(other, Gallery):
            return NotImplemented
        if self.delta0 != other.delta0 or self.flips != other.flips:
            return False
        return self.gtype is other.gtype or self.gtype == other.gtype

    def __hash__(self):
        return hash((self.delta0, self.flips))

    @cached_property
    def prefixes(self):
        """P_j = delta_0 delta_1 ... delta_j as affine elements, j = 0..p."""
        datum = self.gtype.datum()
        out = [AffWeylElt(datum.zero_coweight(), self.delta0)]
        for j, flip in enumerate(self.flips):
            step = simple_affine_reflection(datum, self.gtype.word[j]) if flip \
                else identity_aff(datum)
            out.append(out[-1] * step)
        return tuple(out)

    def alcove(self, j) -> Face:
        return Face(self.prefixes[j], frozenset())

    def facet(self, j) -> Face:
        """Delta'_j.  j = 0 gives the origin vertex, j = p + 1 the end vertex."""
        datum = self.gtype.datum()
        if j == 0:
            return Face(identity_aff(datum), frozenset(range(1, datum.rank + 1)))
        if j == self.gtype.p + 1:
            return Face(self.prefixes[-1], self.gtype.lam_jtype)
        return Face(self.prefixes[j - 1], frozenset({self.gtype.word[j - 1]}))

    @cached_property
    def weight(self) -> Coweight:
        nu = self.prefixes[-1].act_coweight(self.gtype.lam_fund)
        assert nu.is_integral()
        return nu

    def sort_key(self):
        return (self.delta0.cmat, self.flips)


def minimal_gallery(gtype: GalleryType) -> Gallery:
    """gamma_lambda itself: delta_0 = 1 and every delta_j = s_{i_j}."""
    return Gallery(gtype, gtype.datum().identity_elt(), (True,) * gtype.p)


def weight(g: Gallery) -> Coweight:
    return g.weight


def _facet_wall_levels(g: Gallery, i: int):
    """For each j, the integer n with Delta'_j inside H_{alpha_i, n}, else None."""
    datum = g.gtype.datum()
    alpha = datum.simple_root(i)
    out = []
    for j in range(0, g.gtype.p + 2):
        vals = [datum.pairing_coords(alpha.coords, v)
                for v in face_vertices(datum, g.facet(j))]
        n = vals[0]
        if any(v != n for v in vals) or not (isinstance(n, int) or n.denominator == 1):
            out.append(None)
        else:
            out.append(int(n))
    return tuple(out)


def _levels(g: Gallery, i: int):
    cache = g.__dict__.setdefault("_levels_cache", {})
    if i not in cache:
        cache[i] = _facet_wall_levels(g, i)
    return cache[i]


def min_wall_level(g: Gallery, i: int) -> int:
    """Smallest integer m such that H_{alpha_i, m} contains some face Delta'_j.

    Vertices contribute whenever their pairing is integral; facets only when
    the pairing is constant (wall containment) and integral.  Delta'_0 = {0}
    forces m <= 0."""
    levels = [n for n in _levels(g, i) if n is not None]
    best = min(levels)
    assert best <= 0
    return best


def crystal_maps(g: Gallery, i: int):
    """(wt, eps_i, phi_i) with eps_i = -m and phi_i = <alpha_i, nu> - m."""
    datum = g.gtype.datum()
    m = min_wall_level(g, i)
    nu = g.weight
    pair = datum.pairing(datum.simple_root(i), nu)
    return nu, -m, pair - m


def _facet_levels(g: Gallery, i, level):
    """Indices j with Delta'_j contained in H_{alpha_i, level}."""
    return [j for j, n in enumerate(_levels(g, i)) if n == level]


def _recover_tuple(g: Gallery, movers):
    """Tuple recovery from per-alcove movers g_l (type preservation tripwires)."""
    datum = g.gtype.datum()
    new_prefixes = [movers[l] * g.prefixes[l] for l in range(g.gtype.p + 1)]
    d0_aff = new_prefixes[0]
    if not d0_aff.is_finite:
        raise GalleryError("recovered delta_0 has a translation part")
    delta0 = d0_aff.finite
    flips = []
    for l in range(1, g.gtype.p + 1):
        step = new_prefixes[l - 1].inverse() * new_prefixes[l]
        if step.is_identity:
            flips.append(False)
        elif step == simple_affine_reflection(datum, g.gtype.word[l - 1]):
            flips.append(True)
        else:
            raise GalleryError(f"recovered delta_{l} is not in W_{{i_{l}}}")
    return Gallery(g.gtype, delta0, tuple(flips))


def root_e(g: Gallery, i: int):
    """Raising root operator e_{alpha_i}; None when undefined (m = 0)."""
    datum = g.gtype.datum()
    alpha = datum.simple_root(i)
    m = min_wall_level(g, i)
    if m == 0:
        return None
    p = g.gtype.p
    at_m = _facet_levels(g, i, m)
    ks = [j for j in at_m if 1 <= j <= p + 1]
    k = min(ks)
    js = [j for j in _facet_levels(g, i, m + 1) if j <= k - 1]
    if not js:
        raise GalleryError("no fold point at level m+1; gallery is disconnected")
    j = max(js)
    refl = affine_reflection(datum, AffineRoot(alpha, m + 1))
    shift = translation(datum, datum.coroot_of(alpha))
    movers = [identity_aff(datum) if l < j else refl if l <= k - 1 else shift
              for l in range(p + 1)]
    out = _recover_tuple(g, movers)
    assert out.weight == g.weight + datum.coroot_of(alpha)
    return out


def root_f(g: Gallery, i: int):
    """Lowering root operator f_{alpha_i}; None when undefined (m = <alpha,nu>)."""
    datum = g.gtype.datum()
    alpha = datum.simple_root(i)
    m = min_wall_level(g, i)
    if m == datum.pairing(alpha, g.weight):
        return None
    p = g.gtype.p
    js = [j for j in _facet_levels(g, i, m) if j <= p]
    j = max(js)
    ks = [l for l in _facet_levels(g, i, m + 1) if j + 1 <= l <= p + 1]
    if not ks:
        raise GalleryError("no wall crossing at level m+1; gallery is disconnected")
    k = min(ks)
    refl = affine_reflection(datum, AffineRoot(alpha, m))
    shift = translation(datum, -datum.coroot_of(alpha))
    movers = [identity_aff(datum) if l < j else refl if l <= k - 1 else shift
              for l in range(p + 1)]
    out = _recover_tuple(g, movers)
    assert out.weight == g.weight - datum.coroot_of(alpha)
    return out


def is_positively_folded(g: Gallery) -> bool:
    datum = g.gtype.datum()
    for j in range(1, g.gtype.p + 1):
        if g.prefixes[j - 1] == g.prefixes[j]:  # fold: Delta_{j-1} = Delta_j
            if not phi_plus_aff(datum, g.facet(j), g.alcove(j)):
                return False
    return True


def dimension(g: Gallery) -> int:
    datum = g.gtype.datum()
    return sum(len(phi_plus_aff(datum, g.facet(j), g.alcove(j)))
               for j in range(0, g.gtype.p + 1))


def _dim_gamma(gtype: GalleryType) -> int:
    return dimension(minimal_gallery(gtype))


def is_ls(g: Gallery) -> bool:
    """Positively folded and of maximal dimension for its weight."""
    if not is_positively_folded(g):
        return False
    datum = g.gtype.datum()
    defect = datum.height(g.gtype.lam - g.weight)
    return _dim_gamma(g.gtype) - dimension(g) == defect


def enumerate_ls(gtype: GalleryType, node_cap: int = 10**6):
    """Closure of {gamma_lambda} under the defined root_f operators.

    Asserts every generated gallery is LS and that the set is closed under
    root_e; returns a CrystalGraph whose node payloads are the galleries."""
    from mvcrystals.crystal import CrystalGraph

    datum = gtype.datum()
    start = minimal_gallery(gtype)
    seen = {start}
    order = [start]
    edges = {}
    frontier = [start]
    while frontier:
        nxt = []
        for node in frontier:
            for i in range(1, datum.rank + 1):
                child = root_f(node, i)
                if child is None:
                    continue
                edges[(node, i)] = child
                if child not in seen:
                    if not is_ls(child):
                        raise GalleryError("root_f left the LS set")
                    seen.add(child)
                    nxt.append(child)
        nxt.sort(key=Gallery.sort_key)
        order.extend(nxt)
        if len(seen) > node_cap:
            raise GalleryError(f"LS enumeration exceeded node cap {node_cap}")
        frontier = nxt
    # closure under e, and e/f partial-inverse consistency
    for node in order:
        for i in range(1, datum.rank + 1):
            up = root_e(node, i)
            if up is not None:
                if up not in seen:
                    raise GalleryError("LS set is not closed under root_e")
                if edges.get((up, i)) != node:
                    raise GalleryError("e and f disagree on an edge")
    eps = {}
    phi = {}
    wt = {}
    for node in order:
        wt[node] = node.weight
        for i in range(1, datum.rank + 1):
            _, e_i, p_i = crystal_maps(node, i)
            eps[(node, i)] = e_i
            phi[(node, i)] = p_i
    f_map = {key: val for key, val in edges.items()}
    e_map = {(val, i): key_node for (key_node, i), val in edges.items()}
    return CrystalGraph(
        datum=datum,
        nodes=tuple(order),
        wt=wt,
        f_map=f_map,
        e_map=e_map,
        eps=eps,
        phi=phi,
    )


# -- serialization -------------------------------------------------------------

def gallery_to_dict(g: Gallery) -> dict:
    datum = g.gtype.datum()
    return {
        "lambda": list(g.gtype.lam.coords),
        "word": list(g.gtype.word),
        "deltas": [list(datum.reduced_word(g.delta0))] + [int(b) for b in g.flips],
    }


def gallery_from_dict(datum: RootDatum, data: dict) -> Gallery:
    lam = Coweight(tuple(data["lambda"]))
    gtype = build_gallery_type(datum, lam, word=tuple(data["word"]))
    delta0 = datum.word_to_element(tuple(data["deltas"][0]))
    flips = tuple(bool(b) for b in data["deltas"][1:])
    return Gallery(gtype, delta0, flips)
