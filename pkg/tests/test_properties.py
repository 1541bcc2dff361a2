"""Property-based checks of the structural invariants."""

import numpy as np
from hypothesis import given, settings, strategies as st

from fflab.expanders import dfold, op_set
from fflab.field import build_field
from fflab.harmonics import ADDITIVE, MULTIPLICATIVE, GroupSpec, convolve, indicator, translate, uniformity_norm

FIELDS = {(5, 1): build_field(5), (7, 1): build_field(7), (3, 2): build_field(3, 2)}

field_key = st.sampled_from(sorted(FIELDS))


@given(field_key, st.data())
@settings(max_examples=60, deadline=None)
def test_field_axioms_on_random_triples(key, data):
    ctx = FIELDS[key]
    a, b, c = (data.draw(st.integers(0, ctx.q - 1)) for _ in range(3))
    assert ctx.add(a, ctx.add(b, c)) == ctx.add(ctx.add(a, b), c)
    assert ctx.mul(a, ctx.mul(b, c)) == ctx.mul(ctx.mul(a, b), c)
    assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
    assert ctx.add(a, ctx.neg(a)) == 0
    if a:
        assert ctx.mul(a, ctx.inv(a)) == 1
    assert ctx.pow(ctx.add(a, b), ctx.p) == ctx.add(ctx.pow(a, ctx.p), ctx.pow(b, ctx.p))


@given(field_key, st.data())
@settings(max_examples=40, deadline=None)
def test_sumset_size_bounds(key, data):
    ctx = FIELDS[key]
    els = st.integers(0, ctx.q - 1)
    A = sorted(set(data.draw(st.lists(els, min_size=1, max_size=8))))
    B = sorted(set(data.draw(st.lists(els, min_size=1, max_size=8))))
    s = op_set(ctx, A, B, "+")
    assert len(A) <= s.size <= len(A) * len(B)
    # commutative and associative through a third set
    assert np.array_equal(s, op_set(ctx, B, A, "+"))
    C = sorted(set(data.draw(st.lists(els, min_size=1, max_size=6))))
    left = op_set(ctx, s, C, "+")
    right = op_set(ctx, A, op_set(ctx, B, C, "+"), "+")
    assert np.array_equal(left, right)


@given(st.integers(2, 4), st.data())
@settings(max_examples=25, deadline=None)
def test_dfold_monotone(d, data):
    ctx = FIELDS[(7, 1)]
    A = sorted(set(data.draw(st.lists(st.integers(0, 6), min_size=1, max_size=5))))
    assert dfold(ctx, A, "+", d).size <= dfold(ctx, A, "+", d + 1).size


_SPECS = [
    GroupSpec(FIELDS[(5, 1)], (ADDITIVE,)),
    GroupSpec(FIELDS[(7, 1)], (MULTIPLICATIVE,)),
    GroupSpec(FIELDS[(5, 1)], (ADDITIVE, MULTIPLICATIVE)),
]


@given(st.sampled_from(range(len(_SPECS))), st.data())
@settings(max_examples=30, deadline=None)
def test_uniformity_norm_translation_invariant(spec_idx, data):
    spec = _SPECS[spec_idx]
    size = data.draw(st.integers(1, spec.size))
    flats = data.draw(st.sets(st.integers(0, spec.size - 1), min_size=size, max_size=size))
    points = spec.flat_to_points(np.array(sorted(flats)))
    z = spec.flat_to_points(np.array([data.draw(st.integers(0, spec.size - 1))]))[0]
    f = indicator(spec, points)
    assert abs(uniformity_norm(f).value - uniformity_norm(translate(f, z)).value) <= 1e-9


@given(st.sampled_from(range(len(_SPECS))), st.data())
@settings(max_examples=20, deadline=None)
def test_convolution_commutes(spec_idx, data):
    spec = _SPECS[spec_idx]
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    from fflab.harmonics import DenseFn

    f = DenseFn.make(spec, rng.standard_normal(spec.size))
    g = DenseFn.make(spec, rng.standard_normal(spec.size))
    assert np.max(np.abs(convolve(f, g).values - convolve(g, f).values)) <= 1e-9 * (1 + spec.size)
