import random

import pytest

from macdual.errors import DomainError, RingMismatchError
from macdual.fields import Field
from macdual.io import parse_poly, parse_ps
from macdual.poly import (DPPoly, PSElement, RingSpec, contract,
                          dp_mul, dp_power_of_linear,
                          linear_substitute, pairing, ps_compose,
                          ps_compose_inverse, variable_series)


def ring2(char=0):
    return RingSpec(("X", "Y"), Field(char))


def random_dp(ring, rng, maxdeg=4, terms=4):
    mons = [m for d in range(maxdeg + 1) for m in ring.monomials(d)]
    coeffs = {}
    for m in rng.sample(mons, min(terms, len(mons))):
        c = rng.randint(-4, 4)
        if ring.field.char:
            c %= ring.field.char
        if c:
            coeffs[m] = c
    return DPPoly(ring, coeffs)


def random_ps(ring, rng, maxdeg=3, terms=3, trunc=8):
    mons = [m for d in range(maxdeg + 1) for m in ring.monomials(d)]
    coeffs = {}
    for m in rng.sample(mons, min(terms, len(mons))):
        c = rng.randint(-4, 4)
        if ring.field.char:
            c %= ring.field.char
        if c:
            coeffs[m] = c
    return PSElement(ring, coeffs, trunc)


# -- contraction ---------------------------------------------------------------

def test_contract_worked_lines():
    R = ring2()
    f = parse_poly("X^[6]+X^[4]*Y+X^[2]*Y^[2]", R)
    assert contract(R.ps("x^2"), f) == parse_poly("X^[4]+X^[2]*Y+Y^[2]", R)
    assert contract(R.ps("x^2-y"), f) == parse_poly("Y^[2]", R)
    assert contract(R.ps("y"), parse_poly("X^[3]", R)).is_zero


def test_contract_module_axiom_and_bilinearity():
    rng = random.Random(2024)
    for char in (0, 101):
        R = ring2(char)
        for _ in range(40):
            f = random_dp(R, rng)
            phi, psi = random_ps(R, rng), random_ps(R, rng)
            assert contract(phi.mul(psi, 10), f) == contract(phi, contract(psi, f))
            g = random_dp(R, rng)
            assert contract(phi, f + g) == contract(phi, f) + contract(phi, g)
            assert contract(phi + psi, f) == contract(phi, f) + contract(psi, f)


def test_monomial_dual_bases_pairing():
    R = RingSpec(("X", "Y", "Z"), Field(5))
    mons = [m for d in range(4) for m in R.monomials(d)]
    for a in mons:
        for b in mons:
            g = DPPoly(R, {b: R.field.one})
            assert pairing(PSElement(R, {a: R.field.one}, 9), g) == (1 if a == b else 0)


def test_contract_ring_mismatch():
    with pytest.raises(RingMismatchError):
        contract(ring2().ps("x"), parse_poly("X", ring2(7)))


# -- divided power products -------------------------------------------------------

def test_dp_mul_examples():
    R = ring2()
    X2 = parse_poly("X^[2]", R)
    assert dp_mul(X2, X2) == parse_poly("6*X^[4]", R)
    one = parse_poly("1", R)
    f = parse_poly("X^[3]+2*X*Y", R)
    assert dp_mul(one, f) == f


def test_dp_mul_chardep_product():
    # (X+bY)^[2] * (X+cY)^[2] keeps only its X^[2]Y^[2] term in char 3; the
    # cross term XY*XY = 4 X^[2]Y^[2] survives as bc, so the coefficient is
    # b^2 + bc + c^2 (nonzero whenever the two linear forms are independent)
    R = ring2(3)
    for b in (0, 1, 2):
        for c in (0, 1, 2):
            lhs = dp_mul(dp_power_of_linear(parse_poly("X+%d*Y" % b, R), 2),
                         dp_power_of_linear(parse_poly("X+%d*Y" % c, R), 2))
            assert lhs == parse_poly(
                "%d*X^[2]*Y^[2]" % ((b * b + b * c + c * c) % 3), R)
            if b != c:
                assert not lhs.is_zero


def test_dp_mul_commutative_associative_random():
    rng = random.Random(77)
    for char in (0, 101):
        R = ring2(char)
        for _ in range(25):
            a, b, c = (random_dp(R, rng, 3, 3) for _ in range(3))
            assert dp_mul(a, b) == dp_mul(b, a)
            assert dp_mul(dp_mul(a, b), c) == dp_mul(a, dp_mul(b, c))


def test_dp_power_of_linear_examples():
    R = ring2()
    L = parse_poly("X+Y", R)
    p5 = dp_power_of_linear(L, 5)
    assert p5 == parse_poly("+".join("X^[%d]*Y^[%d]" % (i, 5 - i) for i in range(6)), R)
    aX = parse_poly("3*X", R)
    assert dp_power_of_linear(aX, 4) == parse_poly("81*X^[4]", R)
    assert dp_power_of_linear(parse_poly("X+2*Y", R), 2) == \
        parse_poly("X^[2]+2*X*Y+4*Y^[2]", R)
    with pytest.raises(DomainError):
        dp_power_of_linear(parse_poly("X^[2]", R), 2)


def test_dp_power_matches_iterated_product_char0():
    R = ring2()
    rng = random.Random(5)
    for _ in range(10):
        L = DPPoly(R, {(1, 0): rng.randint(-3, 3), (0, 1): rng.randint(1, 3)})
        for k in (2, 3, 4):
            prod = L
            for _ in range(k - 1):
                prod = dp_mul(prod, L)
            fact = R.field.factorial(k)
            assert dp_power_of_linear(L, k).scale(fact) == prod


def test_linear_substitute():
    R = ring2()
    f = parse_poly("X^[2]", R)
    ident = [[1, 0], [0, 1]]
    assert linear_substitute(f, ident) == f
    # X -> X + Y
    M = [[1, 0], [1, 1]]
    assert linear_substitute(f, M) == parse_poly("X^[2]+X*Y+Y^[2]", R)
    with pytest.raises(DomainError):
        linear_substitute(f, [[1, 1], [1, 1]])


def test_linear_substitute_roundtrip_random():
    rng = random.Random(31)
    for char in (0, 101):
        R = ring2(char)
        F = R.field
        for _ in range(15):
            while True:
                M = [[F.from_int(rng.randint(-3, 3)) for _ in range(2)]
                     for _ in range(2)]
                try:
                    from macdual.linalg import matrix_inverse
                    Minv = matrix_inverse(M, F)
                    break
                except DomainError:
                    continue
            f = random_dp(R, rng, 4, 4)
            assert linear_substitute(linear_substitute(f, M), Minv) == f


# -- power series substitution -----------------------------------------------------

def test_ps_compose_inverse_involution_like():
    R = ring2()
    N = 8
    images = [R.ps("x-y^2", N), R.ps("y", N)]
    taus = ps_compose_inverse(images, N)
    assert taus[0] == R.ps("x+y^2", N)
    assert taus[1] == R.ps("y", N)
    ident = ps_compose_inverse([variable_series(R, i, N) for i in range(2)], N)
    assert ident == [variable_series(R, i, N) for i in range(2)]


def test_ps_compose_inverse_random_composition():
    rng = random.Random(13)
    for char in (0, 101):
        R = RingSpec(("X", "Y", "Z"), Field(char))
        N = 6
        for _ in range(8):
            images = []
            perm = rng.sample(range(3), 3)
            for i in range(3):
                coeffs = {tuple(1 if t == perm[i] else 0 for t in range(3)):
                          R.field.one}
                hi = random_ps(R, rng, 3, 2, N)
                img = PSElement(R, coeffs, N) + PSElement(
                    R, {m: c for m, c in hi.coeffs.items() if sum(m) >= 2}, N)
                images.append(img)
            taus = ps_compose_inverse(images, N)
            for i in range(3):
                assert ps_compose(taus[i], images, N) == variable_series(R, i, N)
                assert ps_compose(images[i], taus, N) == variable_series(R, i, N)


def test_ps_compose_inverse_dependent_parts():
    R = ring2()
    with pytest.raises(DomainError):
        ps_compose_inverse([R.ps("x+y", 5), R.ps("x+y+x^2", 5)], 5)


def test_poly_structure_helpers():
    R = ring2()
    f = parse_poly("X^[4]+X^[2]*Y+3", R)
    assert f.degree == 4
    assert f.drop_constant() == parse_poly("X^[4]+X^[2]*Y", R)
    assert f.part_from(4) == parse_poly("X^[4]", R)
    assert f.leading_form() == parse_poly("X^[4]", R)
    assert DPPoly(R).degree is None
    assert parse_ps("x^2*y-x^4", R).order == 3
    assert parse_ps("x^2*y-x^4", R).initial_form() == parse_ps("x^2*y", R)
