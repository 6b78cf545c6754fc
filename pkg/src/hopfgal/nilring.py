"""Nilpotent commutative associative ring structures on a GroupSpec.

A structure is stored as a symmetric table of structure constants on the
standard generators and extended bilinearly.  The induced circle
operation a o b = a + b + a*b turns the underlying set into a group,
whose isomorphism type plays the role of the Galois group.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import abelian
from .abelian import Elem, GroupSpec, Subgroup
from .errors import CapExceeded, InputError

DEFAULT_SEARCH_CAP = 1 << 24


@dataclass(frozen=True)
class RingStructure:
    """Commutative multiplication on a GroupSpec via generator products.

    constants[i][j] is the product of the i-th and j-th standard
    generators; validity (symmetry, well-definedness, associativity,
    nilpotency) is checked by `validate`, not by the constructor.
    """

    spec: GroupSpec
    constants: tuple  # k x k tuple of Elem

    def constant(self, i: int, j: int) -> Elem:
        return self.constants[i][j]

    def is_trivial(self) -> bool:
        zero = self.spec.zero()
        return all(c == zero for row in self.constants for c in row)

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "constants": [[list(c) for c in row] for row in self.constants],
        }

    @staticmethod
    def from_json(data: dict) -> "RingStructure":
        spec = GroupSpec.from_json(data["spec"])
        constants = tuple(
            tuple(tuple(c) for c in row) for row in data["constants"]
        )
        return RingStructure(spec, constants)

    def sort_key(self):
        return self.constants


@dataclass(frozen=True)
class Violation:
    axiom: str  # "shape" | "symmetry" | "well-defined" | "associativity" | "nilpotency"
    witness: tuple

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "witness": repr(self.witness)}


def make_structure(spec: GroupSpec, constants) -> RingStructure:
    k = spec.rank
    tab = tuple(tuple(spec.reduce_coords(c) for c in row) for row in constants)
    if len(tab) != k or any(len(row) != k for row in tab):
        raise InputError(f"constants table must be {k}x{k}")
    return RingStructure(spec, tab)


def mul(A: RingStructure, a: Elem, b: Elem) -> Elem:
    """Bilinear extension of the generator products."""
    spec = A.spec
    spec.check_elem(a)
    spec.check_elem(b)
    k = spec.rank
    acc = [0] * k
    for i in range(k):
        if a[i] == 0:
            continue
        for j in range(k):
            if b[j] == 0:
                continue
            c = A.constants[i][j]
            coeff = a[i] * b[j]
            for t in range(k):
                acc[t] += coeff * c[t]
    return spec.reduce_coords(acc)


def _product_span_chain(A: RingStructure):
    """Generating sets of the powers A^2, A^3, ... as additive subgroups."""
    spec = A.spec
    zero = spec.zero()
    basis = spec.basis()
    gens = [c for row in A.constants for c in row if c != zero]
    while True:
        span = abelian.additive_closure(spec, gens)
        yield span
        nxt = {mul(A, b, g) for b in basis for g in span}
        nxt.discard(zero)
        gens = sorted(nxt)


def nilpotency_index(A: RingStructure, bound: int = None) -> int:
    """Least m with every m-fold product zero.

    Valid structures satisfy m <= n + 1; if `bound` is given and the
    chain has not died by A^bound the function returns bound + 1.
    """
    spec = A.spec
    if bound is None:
        bound = spec.n + 1
    zero_set = frozenset({spec.zero()})
    m = 2
    for span in _product_span_chain(A):
        if span == zero_set:
            return m
        if m > bound:
            return bound + 1
        m += 1


def validate(A: RingStructure) -> list:
    """All axiom violations (empty iff A is a valid nilpotent structure).

    Never raises: each violation names the failing axiom and a witness.
    """
    spec = A.spec
    k = spec.rank
    out = []
    if len(A.constants) != k or any(len(row) != k for row in A.constants):
        return [Violation("shape", (len(A.constants),))]
    for i in range(k):
        for j in range(k):
            try:
                spec.check_elem(A.constants[i][j])
            except InputError:
                return [Violation("shape", (i, j, A.constants[i][j]))]
    for i in range(k):
        for j in range(i + 1, k):
            if A.constants[i][j] != A.constants[j][i]:
                out.append(Violation("symmetry", (i, j)))
    # bilinearity must respect the generator orders
    for i in range(k):
        for j in range(k):
            killer = spec.p ** min(spec.exponents[i], spec.exponents[j])
            if abelian.scalar_mul(spec, killer, A.constants[i][j]) != spec.zero():
                out.append(Violation("well-defined", (i, j)))
    if out:
        return out
    basis = spec.basis()
    for i in range(k):
        for j in range(k):
            for l in range(k):
                lhs = mul(A, A.constants[i][j], basis[l])
                rhs = mul(A, basis[i], A.constants[j][l])
                if lhs != rhs:
                    out.append(Violation("associativity", (i, j, l)))
    if out:
        return out
    idx = nilpotency_index(A, bound=spec.n + 1)
    if idx > spec.n + 1:
        witness = next(
            (c for row in A.constants for c in row if c != spec.zero()),
            spec.zero(),
        )
        out.append(Violation("nilpotency", (witness,)))
    return out


def circle(A: RingStructure, a: Elem, b: Elem) -> Elem:
    """a o b = a + b + a*b."""
    spec = A.spec
    return abelian.add(spec, abelian.add(spec, a, b), mul(A, a, b))


def circle_inverse(A: RingStructure, a: Elem) -> Elem:
    """The unique x with a o x = 0, via the truncated geometric series."""
    spec = A.spec
    x = spec.zero()
    power = a  # (-1)^i a^i accumulated with alternating sign
    sign = -1
    for _ in range(spec.n + 1):
        x = abelian.add(spec, x, abelian.scalar_mul(spec, sign, power))
        power = mul(A, power, a)
        if power == spec.zero():
            break
        sign = -sign
    if circle(A, a, x) != spec.zero():
        raise InputError(f"no circle inverse for {a}: structure is not valid")
    return x


@dataclass(frozen=True)
class CircleGroup:
    """The group (G, o) as an explicit table over the canonical element order."""

    spec: GroupSpec
    elements: tuple
    table: tuple  # table[i][j] = index of elements[i] o elements[j]
    invariants: tuple  # nonincreasing cyclic exponents

    def op(self, a: Elem, b: Elem) -> Elem:
        index = {e: i for i, e in enumerate(self.elements)}
        return self.elements[self.table[index[a]][index[b]]]


def circle_group(A: RingStructure, cap: int = abelian.DEFAULT_ENUM_CAP) -> CircleGroup:
    spec = A.spec
    if spec.order > cap:
        raise CapExceeded(f"|G| = {spec.order} exceeds enumeration cap {cap}")
    elements = tuple(spec.elements())
    index = {e: i for i, e in enumerate(elements)}
    table = tuple(
        tuple(index[circle(A, a, b)] for b in elements) for a in elements
    )
    inv = abelian.isomorphism_type(
        list(elements), lambda a, b: elements[table[index[a]][index[b]]]
    )
    return CircleGroup(spec, elements, table, tuple(inv))


def _basis_product_maps(A: RingStructure) -> list:
    """For each generator index i, the map g -> b_i * g over all of G."""
    spec = A.spec
    basis = spec.basis()
    return [
        {g: mul(A, b, g) for g in spec.elements()} for b in basis
    ]


def _extend_subgroup(spec: GroupSpec, elems: set, x) -> set:
    """Subgroup generated by the subgroup `elems` and one extra element."""
    if x in elems:
        return elems
    o = abelian.order_of(spec, x)
    multiples = [abelian.scalar_mul(spec, m, x) for m in range(o)]
    return {abelian.add(spec, s, mx) for s in elems for mx in multiples}


def _ideal_closure_with_maps(A: RingStructure, gens, bmaps) -> frozenset:
    spec = A.spec
    elems = {spec.zero()}
    pending = list(gens)
    while pending:
        x = pending.pop()
        if x in elems:
            continue
        before = elems
        elems = _extend_subgroup(spec, elems, x)
        for s in elems - before:
            for bmap in bmaps:
                prod = bmap[s]
                if prod not in elems:
                    pending.append(prod)
    return frozenset(elems)


def ideal_closure(A: RingStructure, gens) -> frozenset:
    """Smallest additive subgroup containing gens and closed under G-multiplication.

    Closure under products with the standard generators suffices, since
    multiplication is bilinear.
    """
    return _ideal_closure_with_maps(A, gens, _basis_product_maps(A))


def is_ideal(A: RingStructure, sub: Subgroup) -> bool:
    elems = set(sub.elements)
    basis = A.spec.basis()
    return all(mul(A, b, g) in elems for b in basis for g in elems)


def ideals(A: RingStructure, cap: int = abelian.DEFAULT_ENUM_CAP) -> list:
    """All ideals of A, canonically sorted (lattice BFS over ideal closures)."""
    spec = A.spec
    if spec.order > cap:
        raise CapExceeded(f"|G| = {spec.order} exceeds enumeration cap {cap}")
    all_elems = list(spec.elements())
    bmaps = _basis_product_maps(A)
    trivial = frozenset({spec.zero()})
    seen = {trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for ideal_elems in frontier:
            for g in all_elems:
                if g in ideal_elems:
                    continue
                grown = _ideal_closure_with_maps(
                    A, sorted(set(ideal_elems) | {g}), bmaps
                )
                if grown not in seen:
                    seen.add(grown)
                    nxt.append(grown)
        frontier = nxt
    out = [abelian.subgroup_from_elements(spec, e) for e in seen]
    out.sort(key=Subgroup.sort_key)
    return out


def trivial_structure(spec: GroupSpec) -> RingStructure:
    """The structure with all products zero (A^2 = 0)."""
    zero = spec.zero()
    k = spec.rank
    return RingStructure(spec, tuple(tuple(zero for _ in range(k)) for _ in range(k)))


def primitive_structure(p: int, n: int, cap: int = abelian.DEFAULT_ENUM_CAP) -> RingStructure:
    """One-generator structure on F_p^n: basis z, z^2, ..., z^n with z^{n+1} = 0."""
    if n < 1:
        raise InputError("n must be >= 1")
    spec = GroupSpec(p, (1,) * n)
    if spec.order > cap:
        raise CapExceeded(f"p^n = {spec.order} exceeds cap {cap}")
    zero = spec.zero()
    basis = spec.basis()
    constants = []
    for i in range(n):
        row = []
        for j in range(n):
            deg = i + j + 2  # generator index i stands for z^{i+1}
            row.append(basis[deg - 1] if deg <= n else zero)
        constants.append(tuple(row))
    return RingStructure(spec, tuple(constants))


def cyclic_structure(p: int, n: int, d: int) -> RingStructure:
    """Structure A_d on Z/p^n (p odd): r * s = r*s*p*d."""
    if p == 2:
        raise InputError("cyclic family requires an odd prime")
    if n < 1:
        raise InputError("n must be >= 1")
    if not (0 <= d < p ** (n - 1)):
        raise InputError(f"d must lie in [0, p^(n-1)) = [0, {p ** (n - 1)})")
    spec = GroupSpec(p, (n,))
    return RingStructure(spec, ((( (p * d) % p**n ,),),))


def _entry_candidates(spec: GroupSpec, i: int, j: int) -> list:
    """Elems c admissible as the (i, j) structure constant (order condition)."""
    killer = min(spec.exponents[i], spec.exponents[j])
    ranges = []
    for e, m in zip(spec.exponents, spec.moduli):
        step = spec.p ** max(0, e - killer)
        ranges.append(range(0, m, step))
    return [tuple(c) for c in itertools.product(*ranges)]


def enumerate_structures(
    spec: GroupSpec, search_cap: int = DEFAULT_SEARCH_CAP
) -> list:
    """Every valid structure on spec, exactly once, ordered by constants tensor.

    Raw brute force over the free entries (i <= j) of the symmetric
    constants table, with candidates pre-filtered by the order condition
    and each tensor rejected at its first failing axiom.
    """
    k = spec.rank
    free = [(i, j) for i in range(k) for j in range(i, k)]
    candidates = [_entry_candidates(spec, i, j) for i, j in free]
    space = 1
    for c in candidates:
        space *= len(c)
    if space > search_cap:
        raise CapExceeded(f"search space {space} exceeds cap {search_cap}")
    out = []
    for assignment in itertools.product(*candidates):
        table = [[None] * k for _ in range(k)]
        for (i, j), c in zip(free, assignment):
            table[i][j] = c
            table[j][i] = c
        A = RingStructure(spec, tuple(tuple(row) for row in table))
        if not validate(A):
            out.append(A)
    out.sort(key=RingStructure.sort_key)
    return out
