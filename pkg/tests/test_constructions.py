import random

import pytest

from macdual.apolarity import PartialFiltration, annihilator, hilbert_function
from macdual.constructions import (ExtensionSpec, allowed_component_indices,
                                   ancestor_data, annihilator_order,
                                   connected_sum, connected_sum_hilbert,
                                   is_a_modification, lift_to_modification,
                                   linear_extension, noncyclic_extension,
                                   nonubiquity_instance_check,
                                   relatively_compressed_modification,
                                   restricted_components, simple_deformation)
from macdual.decomposition import (component_dual_dims, max_continuation,
                                   symmetric_decomposition)
from macdual.errors import DomainError, GenericityError
from macdual.fields import Field
from macdual.io import parse_poly
from macdual.poly import RingSpec, contract


def mk(vars, src, char=0):
    R = RingSpec(tuple(vars.split(",")), Field(char))
    return R, parse_poly(src, R)


# -- a-modifications ---------------------------------------------------------

def test_modification_examples():
    R, f = mk("X,Y", "X^[4]+Y^[2]")
    _, g = mk("X,Y", "X^[4]+X^[2]*Y")
    assert not is_a_modification(f, g, 2)
    assert is_a_modification(f, g, 0)
    R, f = mk("X,Y,Z", "X^[6]+X^[3]*Y^[2]+Z^[4]")
    _, g = mk("X,Y,Z", "X^[6]+X^[3]*Y^[2]+Y^[4]")
    assert is_a_modification(f, g, 2)
    assert is_a_modification(g, f, 2)
    with pytest.raises(DomainError):
        is_a_modification(f, parse_poly("X^[5]", R), 1)


def test_lift_to_modification():
    # the head of the generic-modification example: h reaches the level-2
    # filtration ideal and lifts to a 2-modification it annihilates
    R, f = mk("X,Y,Z", "X^[5]+X^[3]*Z+X^[2]*Y^[2]+Y^[4]")
    h = R.ps("z-x^2+y^2-x^3", 7)
    g = lift_to_modification(h, f, 2)
    assert contract(h, g).is_zero
    assert is_a_modification(f, g, 2)
    # h already annihilating leaves f unchanged
    R, f = mk("X,Y", "X^[3]+Y^[4]")
    assert lift_to_modification(R.ps("x*y", 6), f, 1) == f
    with pytest.raises(DomainError):
        lift_to_modification(R.ps("x", 6), f, 3)  # x o f has degree 2 > 0


def test_lift_to_modification_random():
    rng = random.Random(99)
    from macdual.constructions import random_poly
    from macdual.decomposition import filtration_ideal
    from macdual.poly import PSElement
    for char in (0, 101):
        ring = RingSpec(("X", "Y"), Field(char))
        for _ in range(6):
            f = random_poly(ring, 5, rng, terms=4)
            data = filtration_ideal(f, 1)
            # pick a degree with a fresh initial form and lift it
            for d in range(1, 5):
                rows = data.space_rows(d)
                if not rows:
                    continue
                mons = ring.monomials(d)
                h = PSElement(ring, {mons[c]: v for c, v in rows[0].items()},
                              7)
                if contract(h, f).is_zero:
                    continue
                g = lift_to_modification(h, f, 1)
                assert contract(h, g).is_zero
                assert is_a_modification(f, g, 1)
                break


# -- relatively compressed modifications ------------------------------------------

def test_rcm_curvilinear_tower():
    R = RingSpec(("X", "Y", "Z", "W"), Field(0))
    f = parse_poly("X^[5]", R)
    F, D = relatively_compressed_modification(f, 1, seed=11)
    assert D.hilbert == (1, 4, 10, 4, 1, 1)
    assert D.components[1] == (0, 3, 9, 3, 0)
    F, D = relatively_compressed_modification(f, 2, seed=11)
    assert D.hilbert == (1, 4, 4, 1, 1, 1)
    assert D.components[2] == (0, 3, 3, 0)
    F, D = relatively_compressed_modification(f, 3, seed=11)
    assert D.hilbert == (1, 4, 1, 1, 1, 1)
    assert D.components[3] == (0, 3, 0)


def test_rcm_on_quartic_head():
    R = RingSpec(("X", "Y", "Z", "W"), Field(0))
    head = parse_poly("X^[5]+X*Y^[2]*Z", R)
    F, D = relatively_compressed_modification(head, 2, seed=5)
    assert D.hilbert == (1, 4, 6, 3, 1, 1)
    assert D.components[2] == (0, 1, 1, 0)
    # the magic-square generator is itself a 3-RCM of its head
    full = parse_poly("X^[5]+X*Y^[2]*Z+W^[2]", R)
    Dfull = symmetric_decomposition(full)
    target = max_continuation(
        [component_dual_dims(PartialFiltration(head), u) for u in range(3)],
        3, 4, 5)
    assert Dfull.components[3] == target == (0, 1, 0)


def test_rcm_already_maximal_two_variables():
    R, g = mk("X,Y", "X^[7]+Y^[5]+(X+Y)^[5]")
    D = symmetric_decomposition(g)
    P = PartialFiltration(g)
    target = max_continuation(
        [component_dual_dims(P, u) for u in range(2)], 2, 2, 7)
    assert D.components[2] == target == (0, 1, 2, 2, 1, 0)
    assert D.hilbert == (1, 2, 3, 3, 2, 1, 1, 1)


def test_rcm_genericity_failure_small_field():
    # over F_2 a dense draw cannot be generic enough for the curvilinear tower
    R = RingSpec(("X", "Y", "Z", "W"), Field(2))
    f = parse_poly("X^[5]", R)
    with pytest.raises(GenericityError):
        relatively_compressed_modification(f, 1, seed=0, retries=3)


# -- extensions linear in fresh variables -------------------------------------------

def test_extension_spec_validation():
    R, f = mk("X,Y", "X^[3]*Y^[3]")
    h = parse_poly("X^[4]+Y^[4]", R)
    spec = ExtensionSpec(f, [h], ("Z",))
    assert spec.indices == [1]
    assert allowed_component_indices(spec) == {0, 1, 2}
    with pytest.raises(DomainError):
        ExtensionSpec(f, [parse_poly("X^[6]", R)], ("Z",))  # degree too big
    with pytest.raises(DomainError):
        ExtensionSpec(f, [h, parse_poly("X^[5]", R)], ("Z1", "Z2"))  # ordering
    with pytest.raises(DomainError):
        ExtensionSpec(parse_poly("X^[3]+Y", R), [h], ("Z",))  # inhomogeneous


def test_extension_reproduces_compressed_quadric_example():
    R, f = mk("X,Y", "X^[3]*Y^[3]")
    spec = ExtensionSpec(f, [parse_poly("X^[4]+Y^[4]", R)], ("Z",))
    F = linear_extension(spec)
    D = symmetric_decomposition(F)
    assert D.hilbert == (1, 3, 5, 4, 4, 2, 1)
    assert D.components[1] == (0, 1, 0, 0, 1, 0)
    assert D.components[2] == (0, 0, 2, 0, 0)
    assert D.nonzero_indices() <= allowed_component_indices(spec)


def test_extension_pairwise_only():
    R, f = mk("X,Y", "X^[3]*Y^[3]")
    spec = ExtensionSpec(
        f, [parse_poly("X^[3]*Y", R), parse_poly("X*Y^[2]", R)],
        ("Z1", "Z2"))
    assert spec.indices == [1, 2]
    F = linear_extension(spec)
    D = symmetric_decomposition(F)
    assert D.hilbert == (1, 4, 5, 4, 3, 2, 1)
    assert D.nonzero_indices() == {0, 3}
    assert D.components[3] == (0, 2, 2, 0)


def test_restricted_components_worked_example():
    R = RingSpec(("X", "Y"), Field(0))
    f = parse_poly("X^[4]*Y^[7]", R)
    spec = ExtensionSpec(
        f, [parse_poly("X^[5]*Y^[3]", R), parse_poly("X^[6]+Y^[6]", R)],
        ("Z1", "Z2"))
    assert spec.indices == [2, 4]
    data = restricted_components(spec)  # part-(c) identity asserted inside
    assert data["B_pairs"][(1, 2)] == {2: 1, 3: 1}   # <X Z1, X Y Z1>
    assert data["B_pairs"][(2, 1)] == {2: 1, 3: 1}   # <Y Z2, Y^[2] Z2>
    assert data["B_pairs"][(1, 1)] == {}
    assert data["B_pairs"][(2, 2)] == {}


def test_restricted_components_partial_summand_vanishes():
    # a summand that is already a partial of f contributes nothing
    R = RingSpec(("X", "Y"), Field(0))
    f = parse_poly("X^[3]*Y^[3]", R)
    spec = ExtensionSpec(f, [parse_poly("X^[2]*Y^[2]", R)], ("Z",))
    data = restricted_components(spec)
    assert data["B"][1] == {}
    D = data["components"]
    total_B = sum(sum(d.values()) for d in data["B"].values()) \
        + sum(sum(d.values()) for d in data["B_pairs"].values())
    nonzero = sum(sum(row) for a, row in enumerate(D.components) if a > 0)
    assert total_B == nonzero


# -- the non-cyclic construction -----------------------------------------------------

def test_noncyclic_extension_prop_path():
    R, f = mk("X,Y", "X^[6]+X^[2]*Y^[3]")
    assert annihilator_order(f) == 3
    F = noncyclic_extension(f, [parse_poly("Y^[3]", R)])
    D = symmetric_decomposition(F)
    assert D.hilbert == (1, 3, 3, 4, 2, 1, 1)
    assert D.components[2] == (0, 1, 0, 1, 0)


def test_noncyclic_extension_validation():
    R, f = mk("X,Y", "X^[6]+X^[2]*Y^[3]")
    with pytest.raises(DomainError):
        noncyclic_extension(f, [parse_poly("Y^[4]", R)])   # degree mismatch
    with pytest.raises(DomainError):
        noncyclic_extension(f, [parse_poly("X^[3]", R)])   # not disjoint
    with pytest.raises(DomainError):
        noncyclic_extension(f, [parse_poly("Y^[3]", R),
                                parse_poly("Y^[3]+X^[3]", R)])  # dependent


def test_noncyclic_inhomogeneous_base_gains_component():
    R = RingSpec(("X", "Y", "U"), Field(0))
    f = parse_poly("X^[7]+Y^[6]+U^[6]+X^[2]*Y^[2]*U^[2]", R)
    assert annihilator_order(f) == 4
    F = noncyclic_extension(f, [parse_poly("Y^[3]*U", R)], z_names=("Z",))
    D = symmetric_decomposition(F)
    assert D.hilbert == (1, 4, 7, 10, 7, 3, 1, 1)
    assert D.components[2] == (0, 1, 0, 0, 1, 0)
    assert D.components[3] == (0, 0, 1, 0, 0)   # only without homogeneity


def test_noncyclic_special_case_bound():
    # compressed even-socle case: the doubled index may appear, within r*s
    R, f = mk("X,Y", "X^[3]*Y^[3]")
    F = noncyclic_extension(f, [parse_poly("X^[4]+Y^[4]", R)])
    D = symmetric_decomposition(F)
    a = 1
    assert D.components[a] == (0, 1, 0, 0, 1, 0)
    assert 0 <= D.components[2 * a][2] <= 2 * 1
    assert D.nonzero_indices() <= {0, a, 2 * a}


# -- the simple deformation -----------------------------------------------------------

def test_simple_deformation():
    R, f = mk("X,Y", "X^[3]*Y^[4]")
    F, s, a = simple_deformation(f, parse_poly("X^[5]", R))
    assert (s, a) == (1, 1)
    D = symmetric_decomposition(F)
    assert D.components[0] == tuple(
        x + y for x, y in zip(hilbert_function(f), (0, 1, 1, 1, 1, 1, 1, 0)))
    row = D.components[a]
    # width-s walls sit in degrees 2 and k = 4 (row has length j-a+1 = 7)
    assert row == (0, 0, 1, 0, 1, 0, 0)
    assert all(not any(r) for u, r in enumerate(D.components) if u not in (0, a))


def test_simple_deformation_width_two():
    R, f = mk("X,Y", "X^[6]*Y^[6]")
    F, s, a = simple_deformation(f, parse_poly("X^[8]+Y^[8]", R))
    assert s == 2 and a == 12 - 7 - 2
    D = symmetric_decomposition(F)
    row = D.components[a]
    assert row[2] == 2 and row[7] == 2
    assert sum(row) == 4


def test_simple_deformation_validation():
    R, f = mk("X,Y", "X^[3]*Y^[4]")
    with pytest.raises(DomainError):
        simple_deformation(f, parse_poly("X^[3]*Y^[2]", R))  # a partial of f
    with pytest.raises(DomainError):
        simple_deformation(parse_poly("X^[2]*Y^[2]", R),
                           parse_poly("X^[4]", R))  # order out of range


# -- connected sums ---------------------------------------------------------------------

def test_connected_sum_examples():
    Ra = RingSpec(("X",), Field(0))
    Rb = RingSpec(("Y",), Field(0))
    F, big = connected_sum(parse_poly("X^[3]", Ra), parse_poly("Y^[3]", Rb))
    assert hilbert_function(F) == (1, 2, 2, 1)
    assert connected_sum_hilbert((1, 1, 1, 1), (1, 1, 1, 1)) == (1, 2, 2, 1)

    Rxy = RingSpec(("X", "Y"), Field(0))
    Rz = RingSpec(("Z",), Field(0))
    f1 = parse_poly("X^[5]+Y^[5]+(X+Y)^[4]", Rxy)
    F, big = connected_sum(f1, parse_poly("Z^[2]", Rz))
    H = hilbert_function(F)
    assert H == (1, 3, 3, 2, 2, 1)
    assert H == connected_sum_hilbert(hilbert_function(f1), (1, 1, 1))
    # cross products of the variable blocks annihilate
    I = annihilator(F)
    for mon in ("x*z", "y*z"):
        assert I.contains(big.ps(mon, F.degree + 1))
    with pytest.raises(DomainError):
        connected_sum(f1, parse_poly("X^[2]", Ra))


# -- the two-variable ancestor invariant ----------------------------------------------

def test_ancestor_examples():
    R = RingSpec(("X", "Y"), Field(0))
    V = [R.ps("x^4"), R.ps("x^3*y"), R.ps("y^4")]
    data = ancestor_data(V, 4)
    assert data.tau == 2
    full = [R.ps("x^2"), R.ps("x*y"), R.ps("y^2")]
    assert ancestor_data(full, 2).tau == 1
    with pytest.raises(DomainError):
        ancestor_data([RingSpec(("X", "Y", "Z"), Field(0)).ps("x^2")], 2)


def test_ancestor_two_formulas_random():
    rng = random.Random(6)
    R = RingSpec(("X", "Y"), Field(0))
    for _ in range(20):
        j = rng.randint(2, 6)
        mons = R.monomials(j)
        k = rng.randint(1, j)
        polys = []
        for _ in range(k):
            coeffs = {m: rng.randint(-3, 3) for m in rng.sample(mons, 2)}
            from macdual.poly import PSElement
            p = PSElement(R, {m: c for m, c in coeffs.items() if c}, j)
            if not p.is_zero:
                polys.append(p)
        if polys:
            ancestor_data(polys, j)  # both tau routes agree or it raises


# -- non-ubiquity -------------------------------------------------------------------------

def test_nonubiquity_instance():
    rep = nonubiquity_instance_check()
    assert rep["ok"], rep
