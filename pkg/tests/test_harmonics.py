import numpy as np
import pytest

from fflab.errors import CapExceeded, PointOutsideCarrier, SpecMismatch
from fflab.field import build_field
from fflab.harmonics import (
    ADDITIVE,
    MULTIPLICATIVE,
    DenseFn,
    GroupSpec,
    Spectrum,
    convolve,
    convolve_direct,
    fourier_forward,
    fourier_inverse,
    full_carrier,
    indicator,
    plancherel_residual,
    random_subset,
    sum_tolerance,
    translate,
    uniformity_norm,
)


def spec_for(p, k, axes):
    return GroupSpec(build_field(p, k), tuple(axes))


SPECS = [
    (5, 1, (ADDITIVE,)),
    (7, 1, (MULTIPLICATIVE,)),
    (3, 2, (ADDITIVE,)),
    (5, 1, (ADDITIVE, MULTIPLICATIVE)),
    (7, 1, (MULTIPLICATIVE, MULTIPLICATIVE)),
    (3, 2, (ADDITIVE, MULTIPLICATIVE)),
]


def random_fn(spec, rng):
    vals = rng.standard_normal(spec.size) + 1j * rng.standard_normal(spec.size)
    return DenseFn.make(spec, vals)


@pytest.mark.parametrize("p,k,axes", SPECS)
def test_character_orthogonality(p, k, axes):
    spec = spec_for(p, k, axes)
    tol = sum_tolerance(spec)
    for flat in range(spec.size):
        char = tuple(int(t) for t in np.unravel_index(flat, spec.axis_sizes))
        total = spec.char_values(char).sum()
        if flat == 0:
            assert abs(total - spec.size) <= tol
        else:
            assert abs(total) <= tol


@pytest.mark.parametrize("p,k,axes", SPECS)
def test_forward_inverse_roundtrip(p, k, axes):
    spec = spec_for(p, k, axes)
    rng = np.random.default_rng(42)
    for _ in range(5):
        f = random_fn(spec, rng)
        back = fourier_inverse(fourier_forward(f))
        assert np.max(np.abs(back.values - f.values)) <= 1e-9


def test_forward_of_constant():
    spec = spec_for(7, 1, (ADDITIVE,))
    S = fourier_forward(DenseFn.make(spec, np.ones(7)))
    assert abs(S.flat[0] - 1.0) <= 1e-12
    assert np.max(np.abs(S.flat[1:])) <= 1e-12


def test_forward_of_singleton_flat_spectrum():
    spec = spec_for(5, 1, (ADDITIVE, MULTIPLICATIVE))
    f = indicator(spec, [(2, 3)])
    S = fourier_forward(f)
    assert np.allclose(np.abs(S.flat), 1.0 / spec.size, atol=1e-12)


def test_inverse_of_delta_spectrum_is_character():
    spec = spec_for(7, 1, (MULTIPLICATIVE,))
    coeffs = np.zeros(spec.size, dtype=complex)
    coeffs[3] = 1.0
    f = fourier_inverse(Spectrum.make(spec, coeffs))
    expected = spec.char_values((3,)).reshape(-1)
    assert np.max(np.abs(f.flat - expected)) <= 1e-12


def test_indicator_carrier_errors():
    spec = spec_for(5, 1, (ADDITIVE, MULTIPLICATIVE))
    with pytest.raises(PointOutsideCarrier):
        indicator(spec, [(1, 0)])  # 0 not on a multiplicative axis
    with pytest.raises(PointOutsideCarrier):
        indicator(spec, [(7, 1)])  # out of range
    full = full_carrier(spec)
    f = indicator(spec, full)
    assert f.flat.sum() == spec.size
    assert indicator(spec, []).flat.sum() == 0


@pytest.mark.parametrize("p,k,axes", SPECS)
def test_convolution_theorem_and_direct_route(p, k, axes):
    spec = spec_for(p, k, axes)
    rng = np.random.default_rng(7)
    f, g = random_fn(spec, rng), random_fn(spec, rng)
    # spectral route equals the defining double sum
    via_spectra = convolve(f, g)
    direct = convolve_direct(f, g)
    assert np.max(np.abs(via_spectra.values - direct.values)) <= 1e-9 * (1 + spec.size)
    # pointwise transform identity
    lhs = fourier_forward(via_spectra).flat
    rhs = spec.size * fourier_forward(f).flat * fourier_forward(g).flat
    assert np.max(np.abs(lhs - rhs)) <= 1e-9 * (1 + spec.size)


def test_convolution_with_identity_delta():
    spec = spec_for(5, 1, (ADDITIVE, MULTIPLICATIVE))
    rng = np.random.default_rng(3)
    f = random_fn(spec, rng)
    delta = indicator(spec, [(0, 1)])  # group identity: 0 additively, 1 multiplicatively
    out = convolve(f, delta)
    assert np.max(np.abs(out.values - f.values)) <= 1e-9


def test_convolution_counts_pair_representations():
    spec = spec_for(7, 1, (ADDITIVE,))
    rng = np.random.default_rng(11)
    A = random_subset(spec, 4, rng)
    B = random_subset(spec, 3, rng)
    conv = convolve(indicator(spec, A), indicator(spec, B))
    for z in range(7):
        count = sum(1 for a in A for b in B if (a[0] + b[0]) % 7 == z)
        assert abs(conv.flat[z] - count) <= 1e-9


def test_spec_mismatch():
    f = DenseFn.make(spec_for(5, 1, (ADDITIVE,)), np.ones(5))
    g = DenseFn.make(spec_for(7, 1, (ADDITIVE,)), np.ones(7))
    with pytest.raises(SpecMismatch):
        convolve(f, g)


@pytest.mark.parametrize("p,k,axes", SPECS)
def test_plancherel(p, k, axes):
    spec = spec_for(p, k, axes)
    rng = np.random.default_rng(13)
    f, g = random_fn(spec, rng), random_fn(spec, rng)
    assert plancherel_residual(f, g) <= sum_tolerance(spec)
    # indicator self-pairing: |G| sum |Ahat|^2 = |A|
    A = random_subset(spec, min(4, spec.size), rng)
    fa = indicator(spec, A)
    S = fourier_forward(fa)
    assert abs(spec.size * np.vdot(S.flat, S.flat).real - len(A)) <= sum_tolerance(spec)
    # disjoint supports pair to zero
    vals = np.zeros(spec.size)
    vals[0] = 1.0
    other = np.zeros(spec.size)
    other[-1] = 1.0
    assert plancherel_residual(DenseFn.make(spec, vals), DenseFn.make(spec, other)) <= 1e-9


def test_uniformity_norm_trivial_cases():
    spec = spec_for(7, 1, (ADDITIVE,))
    assert uniformity_norm(indicator(spec, full_carrier(spec))).value <= 1e-12
    res = uniformity_norm(indicator(spec, [(3,)]))
    assert abs(res.value - 1.0 / 7) <= 1e-12


def test_parabola_bias_equals_gauss_sum():
    # oracle: |sum_x e(2 pi i (b1 x + b2 x^2)/p)| computed by direct summation
    for p in (5, 7, 11, 13):
        ctx = build_field(p)
        spec = GroupSpec(ctx, (ADDITIVE, ADDITIVE))
        parabola = [(x, (x * x) % p) for x in range(p)]
        got = uniformity_norm(indicator(spec, parabola)).value
        direct_max = 0.0
        for b1 in range(p):
            for b2 in range(p):
                if b1 == 0 and b2 == 0:
                    continue
                s = sum(np.exp(2j * np.pi * ((b1 * x + b2 * x * x) % p) / p) for x in range(p))
                direct_max = max(direct_max, abs(s) / p**2)
        assert abs(got - direct_max) <= 1e-9
        assert abs(got - np.sqrt(p) / p**2) <= 1e-9


@pytest.mark.parametrize("p,k,axes", SPECS)
def test_uniformity_translation_invariant(p, k, axes):
    spec = spec_for(p, k, axes)
    rng = np.random.default_rng(17)
    A = random_subset(spec, max(2, spec.size // 3), rng)
    f = indicator(spec, A)
    z = random_subset(spec, 1, rng)[0]
    g = translate(f, z)
    # translate really moves the support
    moved = {tuple(pt) for pt in full_carrier(spec) if g.values[tuple(spec.points_to_pos([pt])[0])]}
    assert len(moved) == len(A)
    assert abs(uniformity_norm(f).value - uniformity_norm(g).value) <= 1e-9


def test_conjugate_symmetry_for_real_functions():
    spec = spec_for(7, 1, (ADDITIVE,))
    rng = np.random.default_rng(23)
    f = DenseFn.make(spec, rng.standard_normal(7))
    S = fourier_forward(f).flat
    for b in range(7):
        assert abs(S[(-b) % 7] - np.conj(S[b])) <= 1e-12


def test_axis_cap():
    spec = GroupSpec(build_field(5), (ADDITIVE,))
    assert spec.char_matrix(0).shape == (5, 5)
    big = GroupSpec(build_field(4099), (ADDITIVE,))
    with pytest.raises(CapExceeded):
        big.char_matrix(0)
