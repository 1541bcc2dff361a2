import numpy as np
import pytest

from fflab.errors import FactoredFormRequired, PreconditionViolated, ZeroPolynomial
from fflab.field import build_field
from fflab.polynomials import (
    PolyBi,
    PolyUni,
    gcd_uni,
    irreducible_over,
    linear_form_remainder,
    x_poly,
)


@pytest.fixture(scope="module")
def f7():
    return build_field(7)


@pytest.fixture(scope="module")
def f9():
    return build_field(3, 2, modulus=(1, 0, 1))


def test_make_strips_trailing_zeros():
    f = PolyUni.make((1, 2, 0, 0))
    assert f.coeffs == (1, 2)
    assert f.degree == 1
    assert PolyUni.make(()).degree == -1


def test_eval_matches_naive(f7):
    f = PolyUni.make((3, 0, 1, 5))  # 3 + x^2 + 5x^3
    for x in range(7):
        naive = (3 + x**2 + 5 * x**3) % 7
        assert f.eval(f7, x) == naive
    assert list(f.eval_all(f7)) == [f.eval(f7, x) for x in range(7)]


def test_eval_extension(f9):
    f = PolyUni.make((1, 1))  # 1 + x
    for x in range(9):
        assert f.eval(f9, x) == f9.add(1, x)
    assert list(f.eval_all(f9)) == [f9.add(1, x) for x in range(9)]


def test_ring_ops_against_integer_oracle(f7):
    rng = np.random.default_rng(3)
    for _ in range(30):
        a = PolyUni.make(rng.integers(0, 7, size=rng.integers(0, 6)))
        b = PolyUni.make(rng.integers(0, 7, size=rng.integers(0, 6)))
        prod = a.mul(b, f7)
        for x in range(7):
            assert prod.eval(f7, x) == (a.eval(f7, x) * b.eval(f7, x)) % 7
            assert a.add(b, f7).eval(f7, x) == (a.eval(f7, x) + b.eval(f7, x)) % 7
            assert a.sub(b, f7).eval(f7, x) == (a.eval(f7, x) - b.eval(f7, x)) % 7


def test_divmod_roundtrip(f7):
    rng = np.random.default_rng(4)
    for _ in range(40):
        a = PolyUni.make(rng.integers(0, 7, size=rng.integers(0, 8)))
        b = PolyUni.make(rng.integers(0, 7, size=rng.integers(1, 5)))
        if b.is_zero:
            continue
        q, r = a.divmod(b, f7)
        assert r.degree < b.degree
        assert q.mul(b, f7).add(r, f7).coeffs == a.coeffs
    with pytest.raises(ZeroPolynomial):
        PolyUni.make((1,)).divmod(PolyUni.make(()), f7)


def test_gcd(f7):
    # (x-1)(x-2) and (x-1)(x-3) share exactly (x-1)
    a = PolyUni.make((2, 4, 1))  # x^2 - 3x + 2
    b = PolyUni.make((3, 3, 1))  # x^2 - 4x + 3
    g = gcd_uni(a, b, f7)
    assert g.coeffs == (6, 1)  # x - 1


def test_irreducible_over_f7(f7):
    # x^2 + 1 over F_7: -1 is not a square mod 7 -> irreducible
    assert irreducible_over(f7, PolyUni.make((1, 0, 1)))
    # x^2 - 2: 2 = 3^2 mod 7 -> reducible
    assert not irreducible_over(f7, PolyUni.make((5, 0, 1)))
    assert irreducible_over(f7, x_poly())
    assert not irreducible_over(f7, PolyUni.make((4,)))


def test_irreducible_over_extension(f9):
    # x^2 - g is irreducible over F_9 iff g is a non-square in F_9*
    gen = f9.gen
    assert irreducible_over(f9, PolyUni.make((f9.neg(gen), 0, 1)))
    sq = f9.mul(gen, gen)
    assert not irreducible_over(f9, PolyUni.make((f9.neg(sq), 0, 1)))


def test_factored_form_validation(f7):
    x = x_poly()
    xp1 = PolyUni.make((1, 1))
    f = x.mul(xp1, f7)  # x^2 + x
    ok = PolyUni.make(f.coeffs, factors=((x, 1), (xp1, 1)))
    ok.validate_factors(f7)
    assert ok.distinct_root_count(f7) == 2
    bad = PolyUni.make(f.coeffs, factors=((x, 2),))
    with pytest.raises(PreconditionViolated):
        bad.validate_factors(f7)
    with pytest.raises(FactoredFormRequired):
        PolyUni.make((0, 1)).require_factors()
    # non-monic expansion with a unit
    g = x.mul(xp1, f7).scale(3, f7)
    withunit = PolyUni.make(g.coeffs, factors=((x, 1), (xp1, 1)), unit=3)
    withunit.validate_factors(f7)


def test_polybi_eval_and_degree(f7):
    P = PolyBi.make({(2, 0): 1, (0, 2): 1, (0, 0): 6})  # x^2 + y^2 - 1
    assert P.total_degree == 2
    for x in range(7):
        for y in range(7):
            assert P.eval(f7, x, y) == (x * x + y * y - 1) % 7
    grid = P.eval_grid(f7)
    assert grid.shape == (7, 7)
    assert grid[2, 3] == (4 + 9 - 1) % 7


def test_polybi_eval_extension_grid(f9):
    P = PolyBi.make({(1, 1): 1, (1, 0): 1})  # xy + x
    grid = P.eval_grid(f9)
    for x in range(9):
        for y in range(9):
            assert grid[x, y] == f9.add(f9.mul(x, y), x)


def test_polybi_sub_const(f7):
    P = PolyBi.make({(1, 1): 1})
    Q = P.sub_const(f7, 3)
    assert Q.eval(f7, 2, 4) == (8 - 3) % 7


def test_linear_form_remainder_is_division_remainder(f7):
    # oracle: multiply the form by a random quotient, add a remainder that
    # is a unit times a polynomial missing the solved variable
    rng = np.random.default_rng(9)
    for _ in range(60):
        alpha, beta = 0, 0
        while alpha == 0 and beta == 0:
            alpha, beta = int(rng.integers(0, 7)), int(rng.integers(0, 7))
        gamma = int(rng.integers(0, 7))
        P = PolyBi.make({(int(i), int(j)): int(rng.integers(0, 7))
                         for i in range(3) for j in range(3)})
        rem = linear_form_remainder(f7, P, alpha, beta, gamma)
        # the remainder agrees with P on the zero set of the form
        for x in range(7):
            for y in range(7):
                if (alpha * x + beta * y + gamma) % 7 == 0:
                    t = x if beta != 0 else y
                    assert P.eval(f7, x, y) == rem.eval(f7, t)


def test_linear_form_divides_iff_remainder_zero(f7):
    # (x + 2y + 3) * (x + y) has both forms as divisors
    P = PolyBi.make({(2, 0): 1, (1, 1): 3, (0, 2): 2, (1, 0): 3, (0, 1): 3})
    assert linear_form_remainder(f7, P, 1, 2, 3).is_zero
    assert linear_form_remainder(f7, P, 1, 1, 0).is_zero
    assert not linear_form_remainder(f7, P, 1, 0, 0).is_zero
