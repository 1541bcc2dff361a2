import numpy as np
import pytest

from fflab.errors import CapExceeded, DivisionByZero, NotIrreducible, NotPrime
from fflab.field import FieldCtx, build_field, field_arith, is_irreducible, is_prime, prime_factors


def exhaustive_order(ctx, a):
    """Multiplicative order by repeated multiplication (independent oracle)."""
    x, n = a, 1
    while x != 1:
        x = ctx.mul(x, a)
        n += 1
    return n


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 101, 997, 1009, 104729}
    for n in range(2, 120):
        assert is_prime(n) == all(n % d for d in range(2, n))
    for n in primes:
        assert is_prime(n)


def test_prime_factors():
    assert prime_factors(12) == [2, 3]
    assert prime_factors(104728) == [2, 13, 19, 53]  # 104728 = 2^3 * 13 * 19 * 53
    assert prime_factors(1) == []


def test_build_prime_field():
    ctx = build_field(7)
    assert (ctx.p, ctx.k, ctx.q) == (7, 1, 7)
    assert ctx.modulus == (0, 1)
    # trace is the identity on a prime field
    assert [ctx.trace(c) for c in range(7)] == list(range(7))


def test_build_f9_defaults():
    ctx = build_field(3, 2)
    assert ctx.q == 9
    assert exhaustive_order(ctx, ctx.gen) == 8
    assert ctx.pow(ctx.gen, 8) == 1


def test_build_f9_explicit_modulus():
    # t^2 + 1 is irreducible over F_3; with it, Tr(1) = 1 + 1^3 = 2
    ctx = build_field(3, 2, modulus=(1, 0, 1))
    assert ctx.trace(1) == 2
    # t has index 3; t*t = -1 = 2
    assert ctx.mul(3, 3) == 2
    # Tr(t) = t + t^3 = t - t = 0
    assert ctx.trace(3) == 0


def test_trace_frobenius_sum_oracle():
    # oracle: Tr(c) = sum of Frobenius iterates, computed with ctx.pow only
    for (p, k) in [(3, 2), (2, 3), (5, 2)]:
        ctx = build_field(p, k)
        for c in range(ctx.q):
            acc, x = c, c
            for _ in range(k - 1):
                x = ctx.pow(x, p)
                acc = ctx.add(acc, x)
            assert ctx.trace(c) == acc
            assert acc < p  # lies in the prime subfield


def test_trace_additive():
    ctx = build_field(3, 2)
    for a in range(9):
        for b in range(9):
            s = (ctx.trace(a) + ctx.trace(b)) % 3
            assert ctx.trace(ctx.add(a, b)) == s


def test_scalar_arithmetic_f7():
    ctx = build_field(7)
    assert ctx.mul(3, 5) == 1
    assert ctx.inv(3) == 5
    assert field_arith(ctx, "add", 4, 5) == 2
    assert field_arith(ctx, "pow", 3, 6) == 1
    with pytest.raises(DivisionByZero):
        ctx.inv(0)
    with pytest.raises(DivisionByZero):
        ctx.div(1, 0)


def test_field_axioms_exhaustive_f9():
    ctx = build_field(3, 2)
    els = range(9)
    for a in els:
        assert ctx.add(a, 0) == a
        assert ctx.mul(a, 1) == a
        assert ctx.add(a, ctx.neg(a)) == 0
        if a:
            assert ctx.mul(a, ctx.inv(a)) == 1
    for a in els:
        for b in els:
            assert ctx.add(a, b) == ctx.add(b, a)
            assert ctx.mul(a, b) == ctx.mul(b, a)
            for c in els:
                assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
                assert ctx.add(ctx.add(a, b), c) == ctx.add(a, ctx.add(b, c))
                assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))


def test_frobenius_additive():
    for (p, k) in [(3, 2), (2, 4), (5, 2)]:
        ctx = build_field(p, k)
        rng = np.random.default_rng(5)
        for _ in range(50):
            a, b = rng.integers(0, ctx.q, size=2)
            lhs = ctx.pow(ctx.add(int(a), int(b)), p)
            rhs = ctx.add(ctx.pow(int(a), p), ctx.pow(int(b), p))
            assert lhs == rhs


def test_generator_minimality():
    # gen is the smallest index with full order (exhaustive oracle)
    for (p, k, expected) in [(7, 1, 3), (5, 1, 2)]:
        ctx = build_field(p, k)
        assert ctx.gen == expected
        orders = {a: exhaustive_order(ctx, a) for a in range(2, ctx.q)}
        smallest = min(a for a, o in orders.items() if o == ctx.q - 1)
        assert ctx.gen == smallest


def test_dlog_inverse_bijection():
    for (p, k) in [(7, 1), (3, 2), (11, 1)]:
        ctx = build_field(p, k)
        assert ctx.dlog(ctx.gen) == 1
        assert ctx.dlog(1) == 0
        for m in range(ctx.q - 1):
            assert ctx.dlog(int(ctx.exp_table[m])) == m
        # g^m != 1 for every maximal proper divisor of q-1
        for r in prime_factors(ctx.q - 1):
            assert ctx.pow(ctx.gen, (ctx.q - 1) // r) != 1


def test_trace_fixed_by_frobenius():
    ctx = build_field(2, 3)
    for c in range(ctx.q):
        t = ctx.trace(c)
        assert ctx.pow(t, ctx.p) == t


def test_vectorized_matches_scalar():
    for (p, k) in [(7, 1), (3, 2)]:
        ctx = build_field(p, k)
        rng = np.random.default_rng(11)
        a = rng.integers(0, ctx.q, size=40)
        b = rng.integers(0, ctx.q, size=40)
        assert list(ctx.add_arr(a, b)) == [ctx.add(int(x), int(y)) for x, y in zip(a, b)]
        assert list(ctx.sub_arr(a, b)) == [ctx.sub(int(x), int(y)) for x, y in zip(a, b)]
        assert list(ctx.mul_arr(a, b)) == [ctx.mul(int(x), int(y)) for x, y in zip(a, b)]
        nz = a[a != 0]
        assert list(ctx.inv_arr(nz)) == [ctx.inv(int(x)) for x in nz]


def test_build_determinism():
    a = build_field(3, 2)
    b = build_field(3, 2)
    assert a.modulus == b.modulus and a.gen == b.gen
    assert np.array_equal(a.exp_table, b.exp_table)
    assert np.array_equal(a.trace_table, b.trace_table)


def test_build_errors():
    with pytest.raises(NotPrime):
        build_field(6)
    with pytest.raises(NotIrreducible):
        build_field(3, 2, modulus=(0, 0, 1))  # t^2 is reducible
    with pytest.raises(CapExceeded):
        build_field(2, 25)
    with pytest.raises(CapExceeded):
        build_field(1009, 1, order_cap=1000)


def test_irreducibility_against_root_oracle():
    # degree-2/3 irreducibility over F_p equals "has no root" (oracle)
    for p in (2, 3, 5):
        for deg in (2, 3):
            for packed in range(p**deg):
                coeffs = []
                t = packed
                for _ in range(deg):
                    coeffs.append(t % p)
                    t //= p
                coeffs.append(1)
                has_root = any(
                    sum(c * pow(x, i, p) for i, c in enumerate(coeffs)) % p == 0
                    for x in range(p)
                )
                assert is_irreducible(coeffs, p) == (not has_root)


def test_tables_read_only():
    ctx = build_field(5)
    with pytest.raises(ValueError):
        ctx.exp_table[0] = 9
