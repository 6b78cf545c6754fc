"""Exact arithmetic and subgroup machinery for finite abelian p-groups.

A group is presented as a direct sum of cyclic p-power factors
(GroupSpec); elements are dense residue vectors, one coordinate per
factor, always reduced modulo the factor order.  Everything here is a
pure function on immutable values; outputs are canonically ordered so
runs are deterministic and diffable.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import reduce

from .errors import CapExceeded, InputError

Elem = tuple  # tuple[int, ...], one residue per cyclic factor

DEFAULT_ENUM_CAP = 10_000

_MAX_ORDER = 2**63 - 1  # order must fit in a signed 64-bit integer


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class GroupSpec:
    """A finite abelian p-group C_{p^e1} x ... x C_{p^ek}, e1 >= ... >= ek."""

    p: int
    exponents: tuple

    def __post_init__(self):
        if not is_prime(self.p):
            raise InputError(f"p = {self.p} is not prime")
        exps = tuple(int(e) for e in self.exponents)
        object.__setattr__(self, "exponents", exps)
        if not exps or any(e < 1 for e in exps):
            raise InputError(f"exponents must be positive: {exps}")
        if list(exps) != sorted(exps, reverse=True):
            raise InputError(f"exponents must be nonincreasing: {exps}")
        if self.p ** sum(exps) > _MAX_ORDER:
            raise InputError("group order exceeds 64-bit range")

    @property
    def rank(self) -> int:
        return len(self.exponents)

    @property
    def n(self) -> int:
        """Total exponent: |G| = p^n."""
        return sum(self.exponents)

    @property
    def moduli(self) -> tuple:
        return tuple(self.p**e for e in self.exponents)

    @property
    def order(self) -> int:
        return reduce(lambda a, b: a * b, self.moduli, 1)

    def zero(self) -> Elem:
        return (0,) * self.rank

    def basis(self) -> list:
        """Standard generators: the unit vector of each cyclic factor."""
        k = self.rank
        return [tuple(1 if j == i else 0 for j in range(k)) for i in range(k)]

    def reduce_coords(self, coords) -> Elem:
        return tuple(int(c) % m for c, m in zip(coords, self.moduli))

    def elements(self):
        """All elements in lexicographic coordinate order."""
        return itertools.product(*[range(m) for m in self.moduli])

    def check_elem(self, a: Elem) -> None:
        if len(a) != self.rank:
            raise InputError(f"element {a} has wrong length for {self}")
        if any(not (0 <= c < m) for c, m in zip(a, self.moduli)):
            raise InputError(f"element {a} not reduced for moduli {self.moduli}")

    def to_json(self) -> dict:
        return {"p": self.p, "exponents": list(self.exponents)}

    @staticmethod
    def from_json(data: dict) -> "GroupSpec":
        return GroupSpec(int(data["p"]), tuple(data["exponents"]))

    def __str__(self):
        return " x ".join(f"C{m}" for m in self.moduli)


def add(spec: GroupSpec, a: Elem, b: Elem) -> Elem:
    spec.check_elem(a)
    spec.check_elem(b)
    return tuple((x + y) % m for x, y, m in zip(a, b, spec.moduli))


def neg(spec: GroupSpec, a: Elem) -> Elem:
    spec.check_elem(a)
    return tuple((-x) % m for x, m in zip(a, spec.moduli))


def sub(spec: GroupSpec, a: Elem, b: Elem) -> Elem:
    return add(spec, a, neg(spec, b))


def scalar_mul(spec: GroupSpec, m: int, a: Elem) -> Elem:
    spec.check_elem(a)
    return tuple((m * x) % mod for x, mod in zip(a, spec.moduli))


def order_of(spec: GroupSpec, a: Elem) -> int:
    """Least m >= 1 with m*a = 0; always a power of p."""
    spec.check_elem(a)
    order = 1
    for x, mod in zip(a, spec.moduli):
        o = mod // math.gcd(x, mod)
        order = order * o // math.gcd(order, o)
    return order


@dataclass(frozen=True)
class Subgroup:
    """An additive subgroup: sorted element list plus a minimal generating list."""

    spec: GroupSpec
    elements: tuple  # sorted, deduplicated tuple of Elem
    generators: tuple

    @property
    def size(self) -> int:
        return len(self.elements)

    def contains(self, a: Elem) -> bool:
        return a in set(self.elements)

    def to_json(self) -> dict:
        return {"generators": [list(g) for g in self.generators], "size": self.size}

    def sort_key(self):
        return (self.size, self.elements)


def additive_closure(spec: GroupSpec, gens) -> frozenset:
    """Closure of gens under addition (a subgroup, since G is finite)."""
    elems = {spec.zero()}
    for g in gens:
        spec.check_elem(g)
        if g in elems:
            continue
        o = order_of(spec, g)
        multiples = [scalar_mul(spec, m, g) for m in range(o)]
        elems = {add(spec, s, mg) for s in elems for mg in multiples}
    return frozenset(elems)


def closure_of_set(spec: GroupSpec, elems) -> frozenset:
    """Closure of an arbitrary element set under addition."""
    return additive_closure(spec, list(elems))


def minimal_generators(spec: GroupSpec, elements: frozenset) -> tuple:
    """Minimal-size generating list for a subgroup given by its elements.

    Picks representatives whose images are independent in J/pJ, which by
    the Burnside basis theorem yields a generating set of minimal size.
    """
    if len(elements) == 1:
        return ()
    p_multiples = frozenset(scalar_mul(spec, spec.p, x) for x in elements)
    gens = []
    span = set(p_multiples)
    for x in sorted(elements):
        if x not in span:
            gens.append(x)
            span = set(additive_closure(spec, list(p_multiples) + gens))
            if len(span) == len(elements):
                break
    return tuple(gens)


def subgroup_from_elements(spec: GroupSpec, elements) -> Subgroup:
    elems = frozenset(elements)
    return Subgroup(spec, tuple(sorted(elems)), minimal_generators(spec, elems))


def subgroup_generated(spec: GroupSpec, gens) -> Subgroup:
    return subgroup_from_elements(spec, additive_closure(spec, gens))


def enumerate_subgroups(spec: GroupSpec, cap: int = DEFAULT_ENUM_CAP) -> list:
    """All additive subgroups, each exactly once, canonically sorted.

    Breadth-first closure over the subgroup lattice: extend each known
    subgroup by each outside element and close.  Requires |G| <= cap.
    """
    if spec.order > cap:
        raise CapExceeded(f"|G| = {spec.order} exceeds enumeration cap {cap}")
    all_elems = list(spec.elements())
    trivial = frozenset({spec.zero()})
    seen = {trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for sub_elems in frontier:
            for g in all_elems:
                if g in sub_elems:
                    continue
                grown = closure_of_set(spec, set(sub_elems) | {g})
                if grown not in seen:
                    seen.add(grown)
                    nxt.append(grown)
        frontier = nxt
    subs = [subgroup_from_elements(spec, e) for e in seen]
    subs.sort(key=Subgroup.sort_key)
    return subs


def _group_table_checks(elements, op):
    """Find the identity of (elements, op); raise if not a closed group table."""
    elem_set = set(elements)
    if len(elem_set) != len(elements):
        raise InputError("duplicate elements in table")
    identity = None
    for e in elements:
        if all(op(e, x) == x for x in elements):
            identity = e
            break
    if identity is None:
        raise InputError("operation table has no identity")
    for x in elements:
        for y in elements:
            if op(x, y) not in elem_set:
                raise InputError(f"table not closed at ({x}, {y})")
    for x in elements:
        if not any(op(x, y) == identity for y in elements):
            raise InputError(f"element {x} has no inverse")
    return identity


def isomorphism_type(elements, op) -> list:
    """Cyclic invariants (nonincreasing exponents) of a finite abelian p-group.

    `op` is the group operation as a callable on pairs of elements.  The
    invariants are read off from the sizes of the iterated p-th power
    subgroups |p^k G|, so no normal-form computation is needed.
    """
    identity = _group_table_checks(elements, op)
    order = len(elements)
    if order == 1:
        return []
    p = next(d for d in range(2, order + 1) if order % d == 0)
    n = 0
    m = order
    while m % p == 0:
        m //= p
        n += 1
    if m != 1:
        raise InputError(f"group order {order} is not a power of a prime")

    def p_power(x):
        y = identity
        for _ in range(p):
            y = op(y, x)
        return y

    layer = set(elements)
    sizes = [len(layer)]
    while len(layer) > 1:
        layer = {p_power(x) for x in layer}
        sizes.append(len(layer))

    def log_p(v):
        k = 0
        while v > 1:
            v //= p
            k += 1
        return k

    # m_k = number of cyclic factors of exponent > k
    counts = [log_p(sizes[k]) - log_p(sizes[k + 1]) for k in range(len(sizes) - 1)]
    invariants = []
    for j in range(1, counts[0] + 1):
        invariants.append(sum(1 for c in counts if c >= j))
    invariants.sort(reverse=True)
    return invariants
