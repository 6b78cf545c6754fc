"""Hol(G) as invertible affine maps on a finite abelian p-group.

Elements are stored as (translation, matrix) pairs: x -> a + m(x), with
column j of m the image of the j-th standard generator.  Includes the
embedding of the circle group into Hol(G), both directions of the
structure/regular-subgroup correspondence, and brute-force regular
subgroup enumeration for tiny holomorphs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import abelian, nilring
from .abelian import Elem, GroupSpec
from .errors import CapExceeded, InputError, TheoremViolation
from .nilring import RingStructure

DEFAULT_HOL_CAP = 2000


@dataclass(frozen=True)
class AffineMap:
    """x -> a + m(x); rows of m are reduced modulo the row's factor order."""

    spec: GroupSpec
    a: Elem
    m: tuple  # k x k tuple of rows of ints

    def apply(self, x: Elem) -> Elem:
        spec = self.spec
        spec.check_elem(x)
        k = spec.rank
        coords = [
            self.a[i] + sum(self.m[i][j] * x[j] for j in range(k))
            for i in range(k)
        ]
        return spec.reduce_coords(coords)

    def linear_apply(self, x: Elem) -> Elem:
        k = self.spec.rank
        return self.spec.reduce_coords(
            [sum(self.m[i][j] * x[j] for j in range(k)) for i in range(k)]
        )

    def is_translation(self) -> bool:
        return self.m == _identity_matrix(self.spec)

    def sort_key(self):
        return (self.a, self.m)

    def to_json(self) -> dict:
        return {"a": list(self.a), "m": [list(row) for row in self.m]}


def _identity_matrix(spec: GroupSpec) -> tuple:
    k = spec.rank
    return tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))


def _reduce_matrix(spec: GroupSpec, m) -> tuple:
    return tuple(
        tuple(int(v) % mod for v in row) for row, mod in zip(m, spec.moduli)
    )


def _matrix_well_defined(spec: GroupSpec, m) -> bool:
    """Column j must be killed by p^{e_j} (image of a generator of that order)."""
    k = spec.rank
    for j in range(k):
        for i in range(k):
            if (spec.p ** spec.exponents[j] * m[i][j]) % spec.moduli[i] != 0:
                return False
    return True


def affine_map(spec: GroupSpec, a: Elem, m) -> AffineMap:
    spec.check_elem(a)
    mat = _reduce_matrix(spec, m)
    if len(mat) != spec.rank or any(len(row) != spec.rank for row in mat):
        raise InputError("matrix has wrong shape")
    if not _matrix_well_defined(spec, mat):
        raise InputError(f"matrix {mat} is not a well-defined endomorphism")
    return AffineMap(spec, a, mat)


def identity_map(spec: GroupSpec) -> AffineMap:
    return AffineMap(spec, spec.zero(), _identity_matrix(spec))


def translation(spec: GroupSpec, g: Elem) -> AffineMap:
    """The left regular representation of (G, +): x -> g + x."""
    spec.check_elem(g)
    return AffineMap(spec, g, _identity_matrix(spec))


def is_invertible(f: AffineMap) -> bool:
    """Bijectivity of the linear part, by image enumeration."""
    spec = f.spec
    images = {f.linear_apply(x) for x in spec.elements()}
    return len(images) == spec.order


def compose(f: AffineMap, g: AffineMap) -> AffineMap:
    """(f o g)(x) = f(g(x))."""
    if f.spec != g.spec:
        raise InputError("affine maps over different specs")
    spec = f.spec
    k = spec.rank
    a = f.apply(g.a)
    m = [
        [sum(f.m[i][t] * g.m[t][j] for t in range(k)) for j in range(k)]
        for i in range(k)
    ]
    return AffineMap(spec, a, _reduce_matrix(spec, m))


def inverse(f: AffineMap) -> AffineMap:
    """Inverse map x -> m^{-1}(x - a); requires an invertible linear part."""
    spec = f.spec
    preimage = {}
    for x in spec.elements():
        preimage[f.linear_apply(x)] = x
    if len(preimage) != spec.order:
        raise InputError("linear part is not invertible")
    k = spec.rank
    cols = [preimage[b] for b in spec.basis()]
    minv = tuple(tuple(cols[j][i] for j in range(k)) for i in range(k))
    inv = AffineMap(spec, spec.zero(), _reduce_matrix(spec, minv))
    a_inv = abelian.neg(spec, inv.linear_apply(f.a))
    return AffineMap(spec, a_inv, inv.m)


def tau(A: RingStructure, g: Elem) -> AffineMap:
    """The affine map x -> g o x realizing left circle translation by g."""
    spec = A.spec
    spec.check_elem(g)
    k = spec.rank
    basis = spec.basis()
    cols = [
        abelian.add(spec, basis[j], nilring.mul(A, g, basis[j]))
        for j in range(k)
    ]
    m = tuple(tuple(cols[j][i] for j in range(k)) for i in range(k))
    f = AffineMap(spec, g, _reduce_matrix(spec, m))
    if not is_invertible(f):
        raise InputError(f"circle translation by {g} is not invertible: invalid structure")
    return f


@dataclass(frozen=True)
class RegularSubgroup:
    """A subgroup of Hol(G) of order |G| whose orbit of 0 is all of G."""

    spec: GroupSpec
    elements: tuple  # AffineMaps, canonically sorted by (a, m)

    def element_with_base_image(self, g: Elem) -> AffineMap:
        """The unique member sending 0 to g (t(0) = t.a)."""
        for t in self.elements:
            if t.a == g:
                return t
        raise InputError(f"no element sends 0 to {g}")

    def to_json(self) -> list:
        return [t.to_json() for t in self.elements]


def _regular_from_maps(spec: GroupSpec, maps) -> RegularSubgroup:
    return RegularSubgroup(spec, tuple(sorted(maps, key=AffineMap.sort_key)))


def closure_under_composition(maps, size_limit=None):
    """Subgroup of Perm(G) generated by the maps (as affine maps).

    Returns None if a size_limit is given and exceeded.
    """
    gens = list(maps)
    if not gens:
        return frozenset()
    spec = gens[0].spec
    elems = {identity_map(spec)}
    frontier = list(elems)
    gen_list = gens
    while frontier:
        nxt = []
        for x in frontier:
            for g in gen_list:
                y = compose(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
                    if size_limit is not None and len(elems) > size_limit:
                        return None
        frontier = nxt
    return frozenset(elems)


def is_closed(maps) -> bool:
    maps = set(maps)
    return all(compose(f, g) in maps for f in maps for g in maps)


def is_regular(maps) -> bool:
    """Transitive-plus-order criterion for a composition-closed set."""
    maps = list(maps)
    if not maps:
        return False
    spec = maps[0].spec
    if not is_closed(maps):
        raise InputError("map set is not closed under composition")
    orbit = {t.apply(spec.zero()) for t in maps}
    return len(maps) == spec.order and len(orbit) == spec.order


def is_fixed_point_free(f: AffineMap) -> bool:
    return all(f.apply(x) != x for x in f.spec.elements())


def is_abelian(T: RegularSubgroup) -> bool:
    els = T.elements
    return all(compose(a, b) == compose(b, a) for a in els for b in els)


def regular_subgroup_from_ring(A: RingStructure) -> RegularSubgroup:
    """Image of the circle group inside Hol(G): {x -> g o x : g in G}."""
    spec = A.spec
    maps = [tau(A, g) for g in spec.elements()]
    return _regular_from_maps(spec, maps)


def ring_from_regular_subgroup(T: RegularSubgroup) -> RingStructure:
    """Recover the structure with g * h = t_g(h) - g - h, t_g(0) = g.

    Requires an abelian T: only abelian regular subgroups carry a
    commutative structure (Hol(Z/8) already has dihedral and quaternion
    regular subgroups).  For abelian T a validation failure would
    contradict the correspondence, so it raises TheoremViolation.
    """
    spec = T.spec
    if not is_abelian(T):
        raise InputError("regular subgroup is non-abelian: no commutative structure")
    basis = spec.basis()
    k = spec.rank
    constants = []
    for i in range(k):
        t_i = T.element_with_base_image(basis[i])
        row = []
        for j in range(k):
            prod = abelian.sub(
                spec,
                abelian.sub(spec, t_i.apply(basis[j]), basis[i]),
                basis[j],
            )
            row.append(prod)
        constants.append(tuple(row))
    A = RingStructure(spec, tuple(constants))
    violations = nilring.validate(A)
    if violations:
        raise TheoremViolation(
            "regular subgroup does not induce a valid nilpotent structure",
            witness={
                "subgroup": T.to_json(),
                "violations": [v.to_json() for v in violations],
            },
        )
    return A


def enumerate_automorphisms(spec: GroupSpec) -> list:
    """All additive automorphisms, as matrices (invertibility by image count)."""
    k = spec.rank
    col_ranges = []
    for i in range(k):
        for j in range(k):
            step = spec.p ** max(0, spec.exponents[i] - spec.exponents[j])
            col_ranges.append(range(0, spec.moduli[i], step))
    out = []
    for flat in itertools.product(*col_ranges):
        m = tuple(tuple(flat[i * k + j] for j in range(k)) for i in range(k))
        f = AffineMap(spec, spec.zero(), m)
        if is_invertible(f):
            out.append(m)
    return out


def holomorph_elements(spec: GroupSpec, cap: int = DEFAULT_HOL_CAP) -> list:
    auts = enumerate_automorphisms(spec)
    size = spec.order * len(auts)
    if size > cap:
        raise CapExceeded(f"|Hol(G)| = {size} exceeds holomorph cap {cap}")
    return [
        AffineMap(spec, a, m) for a in spec.elements() for m in auts
    ]


def enumerate_regular_subgroups(
    spec: GroupSpec, cap: int = DEFAULT_HOL_CAP
) -> list:
    """All regular subgroups of Hol(G), by closing candidate generator sets.

    Every non-identity element of a regular subgroup is fixed-point-free
    with p-power order, so the search space is restricted to those
    candidates before the lattice walk.
    """
    hol = holomorph_elements(spec, cap)
    order = spec.order
    ident = identity_map(spec)

    def p_power_order(f):
        count = 1
        g = f
        while g != ident:
            g = compose(g, f)
            count += 1
            if count > order:
                return None
        return count

    candidates = [
        f
        for f in hol
        if f != ident
        and is_fixed_point_free(f)
        and p_power_order(f) is not None
        and order % p_power_order(f) == 0
    ]
    seen = set()
    regulars = []
    frontier = []
    for f in candidates:
        sub = closure_under_composition([f], size_limit=order)
        if sub is None:
            continue
        key = frozenset((t.a, t.m) for t in sub)
        if key not in seen:
            seen.add(key)
            frontier.append(sub)
    while frontier:
        nxt = []
        for sub in frontier:
            if len(sub) == order:
                orbit = {t.apply(spec.zero()) for t in sub}
                if len(orbit) == order:
                    regulars.append(sub)
                continue
            for f in candidates:
                if f in sub:
                    continue
                grown = closure_under_composition(list(sub) + [f], size_limit=order)
                if grown is None:
                    continue
                if any(t != ident and not is_fixed_point_free(t) for t in grown):
                    continue
                key = frozenset((t.a, t.m) for t in grown)
                if key not in seen:
                    seen.add(key)
                    nxt.append(grown)
        frontier = nxt
    out = [_regular_from_maps(spec, sub) for sub in regulars]
    out.sort(key=lambda T: tuple(t.sort_key() for t in T.elements))
    return out
