import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from perfasym.exceptions import ValidationError
from perfasym.wm import (
    ConditioningContext,
    apply_denoiser,
    clamp,
    dyn_loss,
    gaussian_denoiser,
    gaussian_raw_network,
    precondition_coeffs,
    sequence_dyn_loss,
)

SIGMAS = np.logspace(-3, 3, 61)


def zero_raw(x, ctx):
    return np.zeros_like(x)


def test_coeffs_zero_sigma():
    assert precondition_coeffs(0.0, 1.0) == (1.0, 0.0, 1.0, None)


def test_coeffs_unit():
    c_skip, c_out, c_in, c_noise = precondition_coeffs(1.0, 1.0)
    assert c_skip == 0.5 and c_noise == 0.0
    assert c_out == pytest.approx(1 / math.sqrt(2), rel=1e-15)
    assert c_in == pytest.approx(1 / math.sqrt(2), rel=1e-15)


def test_coeffs_large_sigma_limit():
    c_skip, _, c_in, _ = precondition_coeffs(1e8, 1.0)
    assert c_skip < 1e-15 and c_in < 1e-7


@pytest.mark.parametrize("sigma_data", [0.5, 1.0, 2.0])
def test_coeff_identities(sigma_data):
    for s in SIGMAS:
        c_skip, c_out, c_in, c_noise = precondition_coeffs(s, sigma_data)
        total = s * s + sigma_data * sigma_data
        assert c_in * c_in * total == pytest.approx(1.0, rel=1e-12)
        assert c_skip * total == pytest.approx(sigma_data ** 2, rel=1e-12)
        assert c_out == pytest.approx(s * sigma_data * c_in, rel=1e-12)
        assert c_skip + c_out * c_in * s / sigma_data == pytest.approx(1.0, rel=1e-12)
        assert c_noise == pytest.approx(math.log(s) / 4, rel=1e-12, abs=1e-15)


def test_coeff_errors():
    with pytest.raises(ValidationError):
        precondition_coeffs(-1.0)
    with pytest.raises(ValidationError):
        precondition_coeffs(1.0, 0.0)


def test_clamp_examples():
    assert clamp(0.0) == 0.0
    assert clamp(3.0, 3.0) == pytest.approx(3 * math.tanh(1), abs=1e-12)
    assert clamp(3.0) == pytest.approx(2.28478, abs=1e-5)


@given(st.floats(-1e6, 1e6), st.floats(0.1, 10))
def test_clamp_bounded_and_odd(x, s):
    y = float(clamp(x, s))
    assert abs(y) <= s
    assert float(clamp(-x, s)) == -y


@given(st.floats(-1e3, 1e3), st.floats(1e-3, 10))
def test_clamp_increasing(x, dx):
    assert float(clamp(x + dx)) >= float(clamp(x))


@given(st.floats(-0.3, 0.3))
def test_clamp_near_identity(x):
    s = 3.0
    # two ulps of slack for rounding when x is tiny
    assert abs(float(clamp(x, s)) - x) <= abs(x) ** 3 / (3 * s * s) * 1.01 + 2 * np.spacing(abs(x))


def test_denoiser_zero_sigma_passthrough():
    z = np.array([0.5, 5.0, -7.0])
    np.testing.assert_array_equal(apply_denoiser(lambda x, c: x * 100, z, 0.0), clamp(z))


def test_denoiser_zero_raw():
    z = np.array([[0.3, -4.0], [2.0, 9.0]])
    c_skip = precondition_coeffs(0.7)[0]
    np.testing.assert_allclose(apply_denoiser(zero_raw, z, 0.7), clamp(c_skip * z), rtol=1e-15)


def test_gaussian_raw_reproduces_posterior():
    rng = np.random.default_rng(0)
    mu = rng.normal(size=(16, 8, 8)) * 0.3
    z = rng.normal(size=(16, 8, 8))
    out = apply_denoiser(gaussian_raw_network(mu), z, 1.0, clamp_scale=None)
    np.testing.assert_allclose(out, (z + mu) / 2, rtol=1e-12, atol=1e-14)
    clamped = apply_denoiser(gaussian_raw_network(mu), z, 1.0)
    np.testing.assert_allclose(clamped, clamp((z + mu) / 2), rtol=1e-12, atol=1e-14)


def test_context_passed_with_c_noise():
    seen = []

    def raw(x, ctx):
        seen.append(ctx)
        return np.zeros_like(x)

    ctx = ConditioningContext([np.zeros(3)] * 4, [0, 1, 2, 3])
    apply_denoiser(raw, np.ones(3), math.e ** 4, ctx)
    assert seen[0].c_noise == pytest.approx(1.0) and seen[0].past_actions == (0, 1, 2, 3)
    with pytest.raises(ValidationError):
        ConditioningContext([np.zeros(3)], [0, 1])
    with pytest.raises(ValidationError):
        apply_denoiser(raw, np.ones(4), 1.0, ctx)


def test_raw_shape_checked():
    with pytest.raises(ValidationError):
        apply_denoiser(lambda x, c: np.zeros(2), np.ones(3), 1.0)


def test_dyn_loss_zero_when_exact():
    z0, zs, sigma = np.array([0.2, -0.4]), np.array([1.0, 0.1]), 0.8
    c_skip, c_out, _, _ = precondition_coeffs(sigma)
    target = (z0 - c_skip * zs) / c_out
    assert dyn_loss(lambda x, c: target, z0, zs, sigma) == 0.0


def test_dyn_loss_zero_raw():
    z0, zs, sigma = np.array([0.2, -0.4]), np.array([1.0, 0.1]), 0.8
    c_skip, c_out, _, _ = precondition_coeffs(sigma)
    assert dyn_loss(zero_raw, z0, zs, sigma) == pytest.approx(np.sum(((z0 - c_skip * zs) / c_out) ** 2), rel=1e-14)


def test_dyn_loss_elementwise_oracle():
    rng = np.random.default_rng(11)
    z0 = rng.normal(size=(2, 2, 1))
    zs = z0 + 0.5 * rng.normal(size=(2, 2, 1))
    weights = rng.normal(size=(2, 2, 1))

    def raw(x, ctx):
        return np.tanh(weights * x)

    sigma = 0.5
    total = sigma ** 2 + 1.0
    expected = 0.0
    for idx in np.ndindex(z0.shape):
        f = math.tanh(weights[idx] * zs[idx] / math.sqrt(total))
        tgt = (z0[idx] - zs[idx] / total) / (sigma / math.sqrt(total))
        expected += (f - tgt) ** 2
    assert dyn_loss(raw, z0, zs, sigma) == pytest.approx(expected, rel=1e-12)


def test_dyn_loss_errors():
    with pytest.raises(ValidationError):
        dyn_loss(zero_raw, np.ones(2), np.ones(2), 0.0)
    with pytest.raises(ValidationError):
        dyn_loss(zero_raw, np.ones(2), np.ones(3), 1.0)


@given(st.floats(1e-3, 1e3), st.floats(0.2, 5), st.integers(0, 2**32 - 1))
def test_loss_denoiser_identity(sigma, sigma_data, seed):
    rng = np.random.default_rng(seed)
    z0 = rng.normal(size=(4, 2, 2))
    zs = z0 + sigma * rng.normal(size=z0.shape)
    w = rng.normal(size=z0.shape)

    def raw(x, ctx):
        return np.sin(w * x) + ctx.c_noise

    c_out = precondition_coeffs(sigma, sigma_data)[1]
    d = apply_denoiser(raw, zs, sigma, sigma_data=sigma_data, clamp_scale=None)
    lhs = float(np.sum((d - z0) ** 2))
    rhs = c_out ** 2 * dyn_loss(raw, z0, zs, sigma, sigma_data=sigma_data)
    assert lhs == pytest.approx(rhs, rel=1e-9)


def test_sequence_reductions():
    rng = np.random.default_rng(3)
    steps = [(rng.normal(size=3), rng.normal(size=3), s, None) for s in (0.3, 1.0, 4.0)]
    per_step = [dyn_loss(zero_raw, c, n, s) for c, n, s, _ in steps]
    assert sequence_dyn_loss(zero_raw, steps) == pytest.approx(sum(per_step), rel=1e-14)
    resid = sum(-(c - precondition_coeffs(s)[0] * n) / precondition_coeffs(s)[1] for c, n, s, _ in steps)
    assert sequence_dyn_loss(zero_raw, steps, reduction="norm_of_sum") == pytest.approx(np.sum(resid ** 2), rel=1e-12)
    with pytest.raises(ValidationError):
        sequence_dyn_loss(zero_raw, steps, reduction="max")


def test_gaussian_denoiser_formula():
    d = gaussian_denoiser(2.0, 0.5)
    assert d(np.array([1.0]), 1.0)[0] == pytest.approx((0.25 * 1.0 + 1.0 * 2.0) / 1.25)
