import itertools

import pytest

from hopfgal.abelian import GroupSpec
from hopfgal.errors import CapExceeded, InputError
from hopfgal.holomorph import (
    AffineMap,
    affine_map,
    compose,
    enumerate_automorphisms,
    enumerate_regular_subgroups,
    holomorph_elements,
    identity_map,
    inverse,
    is_abelian,
    is_fixed_point_free,
    is_regular,
    regular_subgroup_from_ring,
    ring_from_regular_subgroup,
    tau,
    translation,
)
from hopfgal.nilring import (
    circle,
    cyclic_structure,
    enumerate_structures,
    make_structure,
    primitive_structure,
    trivial_structure,
)

C2C2 = GroupSpec(2, (1, 1))
Z4 = GroupSpec(2, (2,))
Z9 = GroupSpec(3, (2,))


def test_compose_translations():
    for a in Z9.elements():
        for b in Z9.elements():
            f = translation(Z9, a)
            g = translation(Z9, b)
            assert compose(f, g) == translation(Z9, ((a[0] + b[0]) % 9,))


def test_cyclic_matrix_action():
    # affine pair (m = 1+pd, a = -1) acting on s gives (1+pd)s - 1
    d = 1
    f = affine_map(Z9, (8,), ((1 + 3 * d,),))
    for s in range(9):
        assert f.apply((s,)) == (((1 + 3 * d) * s - 1) % 9,)
    # the same action is circle translation by -1 for the structure with
    # r*s = -rspd, i.e. the member of the stored family at -d
    A = cyclic_structure(3, 2, (-d) % 3)
    for s in range(9):
        assert circle(A, (8,), (s,)) == f.apply((s,))
    # for the stored convention r*s = rspd the matrix is 1 - pd
    B = cyclic_structure(3, 2, d)
    assert tau(B, (8,)).m == (((1 - 3 * d) % 9,),)


def test_inverse_round_trip():
    for f in holomorph_elements(Z4):
        assert compose(f, inverse(f)) == identity_map(Z4)
        assert compose(inverse(f), f) == identity_map(Z4)


def test_affine_map_validation():
    with pytest.raises(InputError):
        affine_map(C2C2, (0,), ((1, 0), (0, 1)))  # bad translation length
    spec = GroupSpec(2, (2, 1))
    with pytest.raises(InputError):
        # image of the order-2 generator must have order dividing 2
        affine_map(spec, spec.zero(), ((1, 1), (0, 1)))


def test_tau_trivial_is_translation():
    A = trivial_structure(C2C2)
    for g in C2C2.elements():
        assert tau(A, g) == translation(C2C2, g)


def test_tau_primitive_matrix():
    A = primitive_structure(2, 2)
    f = tau(A, (1, 0))
    assert f.a == (1, 0)
    assert f.m == ((1, 0), (1, 1))
    assert tau(A, A.spec.zero()) == identity_map(A.spec)


@pytest.mark.parametrize(
    "A",
    [
        trivial_structure(C2C2),
        primitive_structure(2, 2),
        primitive_structure(3, 2),
        cyclic_structure(3, 2, 1),
        make_structure(Z4, (((2,),),)),
    ],
)
def test_tau_is_a_homomorphism(A):
    spec = A.spec
    for g in spec.elements():
        for h in spec.elements():
            assert compose(tau(A, g), tau(A, h)) == tau(A, circle(A, g, h))


def test_holomorph_group_axioms():
    for spec in (C2C2, Z4):
        hol = holomorph_elements(spec)
        ident = identity_map(spec)
        assert ident in hol
        for f in hol:
            assert compose(f, inverse(f)) == ident
        for f, g, h in itertools.product(hol, repeat=3):
            assert compose(compose(f, g), h) == compose(f, compose(g, h))


def test_holomorph_sizes():
    assert len(holomorph_elements(C2C2)) == 24
    assert len(holomorph_elements(Z4)) == 8
    assert len(holomorph_elements(Z9)) == 54
    assert len(holomorph_elements(GroupSpec(2, (3,)))) == 32
    assert len(enumerate_automorphisms(GroupSpec(3, (1, 1)))) == 48


def test_holomorph_cap():
    with pytest.raises(CapExceeded):
        holomorph_elements(C2C2, cap=10)


def test_is_regular_cases():
    translations = [translation(C2C2, g) for g in C2C2.elements()]
    assert is_regular(translations)
    stabilizer = [
        AffineMap(C2C2, C2C2.zero(), m)
        for m in enumerate_automorphisms(C2C2)
    ]
    assert not is_regular(stabilizer)
    with pytest.raises(InputError):
        is_regular(translations[1:])  # not closed


def test_regular_subgroup_from_ring():
    T = regular_subgroup_from_ring(trivial_structure(C2C2))
    assert set(T.elements) == {translation(C2C2, g) for g in C2C2.elements()}
    P = regular_subgroup_from_ring(primitive_structure(2, 2))
    assert is_regular(P.elements)
    F = regular_subgroup_from_ring(make_structure(Z4, (((2,),),)))
    assert is_regular(F.elements)
    # every non-identity element of a regular subgroup is fixed-point-free
    for t in F.elements:
        assert t == identity_map(Z4) or is_fixed_point_free(t)


@pytest.mark.parametrize(
    "spec", [C2C2, Z4, Z9, GroupSpec(2, (3,)), GroupSpec(3, (1, 1))]
)
def test_round_trip_ring_to_subgroup_to_ring(spec):
    for A in enumerate_structures(spec):
        T = regular_subgroup_from_ring(A)
        assert is_regular(T.elements)
        assert ring_from_regular_subgroup(T) == A


@pytest.mark.parametrize("spec", [C2C2, Z4, Z9])
def test_round_trip_subgroup_to_ring_to_subgroup(spec):
    for T in enumerate_regular_subgroups(spec):
        A = ring_from_regular_subgroup(T)
        assert regular_subgroup_from_ring(A).elements == T.elements


def test_regular_subgroup_counts():
    assert len(enumerate_regular_subgroups(C2C2)) == 4
    assert len(enumerate_regular_subgroups(Z4)) == len(enumerate_structures(Z4))
    regs9 = enumerate_regular_subgroups(Z9)
    assert len(regs9) >= 3
    assert len(regs9) == len(enumerate_structures(Z9))
    # the d-family images all appear
    for d in range(3):
        T = regular_subgroup_from_ring(cyclic_structure(3, 2, d))
        assert T in regs9


def test_cyclic_two_group_has_nonabelian_regular_subgroups():
    # Hol(Z/8) contains dihedral and quaternion regular subgroups; only
    # the abelian ones correspond to commutative nilpotent structures.
    spec = GroupSpec(2, (3,))
    regs = enumerate_regular_subgroups(spec)
    abelian_regs = [T for T in regs if is_abelian(T)]
    assert len(regs) == 6
    assert len(abelian_regs) == len(enumerate_structures(spec)) == 4
    nonabelian = next(T for T in regs if not is_abelian(T))
    with pytest.raises(InputError):
        ring_from_regular_subgroup(nonabelian)


def test_nontrivial_regular_subgroups_of_klein_four():
    # the three cyclic-4 regular subgroups each recover a distinct
    # structure with a nonzero product
    regs = enumerate_regular_subgroups(C2C2)
    translations = regular_subgroup_from_ring(trivial_structure(C2C2))
    nontrivial = [T for T in regs if T != translations]
    assert len(nontrivial) == 3
    recovered = {ring_from_regular_subgroup(T) for T in nontrivial}
    assert len(recovered) == 3
    assert all(not A.is_trivial() for A in recovered)


def test_regular_subgroup_enumeration_cap():
    with pytest.raises(CapExceeded):
        enumerate_regular_subgroups(C2C2, cap=10)
