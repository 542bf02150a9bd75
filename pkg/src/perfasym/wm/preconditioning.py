"""EDM-style denoiser preconditioning, latent clamping and the dynamics loss.

Networks are abstract here.  A *raw network* is any callable
``raw(x, ctx) -> array`` standing in for the inner network F; the
preconditioned denoiser is

    D(z, sigma) = c_skip * z + c_out * F(c_in * z, ctx)

with ``ctx.c_noise`` set from sigma before F is called.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from .._validation import check_positive
from ..exceptions import ValidationError

LATENT_SHAPE = (16, 8, 8)
CONTEXT_LENGTH = 4
DEFAULT_CLAMP_SCALE = 3.0


@dataclass(frozen=True)
class ConditioningContext:
    """Conditioning passed to the raw network: recent clean latents and actions plus c_noise."""

    past_latents: Tuple[np.ndarray, ...] = ()
    past_actions: Tuple[int, ...] = ()
    c_noise: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "past_latents", tuple(np.asarray(z, float) for z in self.past_latents))
        object.__setattr__(self, "past_actions", tuple(int(a) for a in self.past_actions))
        if len(self.past_latents) != len(self.past_actions):
            raise ValidationError(
                f"context needs one action per latent, got {len(self.past_latents)} latents "
                f"and {len(self.past_actions)} actions"
            )

    __hash__ = None


RawNetwork = Callable[[np.ndarray, ConditioningContext], np.ndarray]
Denoiser = Callable[[np.ndarray, float, ConditioningContext], np.ndarray]


def precondition_coeffs(sigma: float, sigma_data: float = 1.0):
    """Return ``(c_skip, c_out, c_in, c_noise)``; ``c_noise`` is None at sigma = 0."""
    sigma = check_positive(sigma, "sigma", strict=False)
    sigma_data = check_positive(sigma_data, "sigma_data")
    total = sigma * sigma + sigma_data * sigma_data
    c_skip = sigma_data * sigma_data / total
    c_out = sigma * sigma_data / math.sqrt(total)
    c_in = 1.0 / math.sqrt(total)
    c_noise = math.log(sigma) / 4.0 if sigma > 0 else None
    return c_skip, c_out, c_in, c_noise


def clamp(z, s: float = DEFAULT_CLAMP_SCALE):
    """Smooth clamp ``s * tanh(z / s)`` into (-s, s)."""
    s = check_positive(s, "s")
    return s * np.tanh(np.asarray(z, dtype=float) / s)


def _raw_output(raw, x, ctx, shape):
    out = np.asarray(raw(x, ctx), dtype=float)
    if out.shape != shape:
        raise ValidationError(f"raw network returned shape {out.shape}, expected {shape}")
    return out


def apply_denoiser(
    raw: RawNetwork,
    z_noised,
    sigma: float,
    ctx: Optional[ConditioningContext] = None,
    sigma_data: float = 1.0,
    clamp_scale: Optional[float] = DEFAULT_CLAMP_SCALE,
):
    """Preconditioned denoiser output, clamped unless ``clamp_scale`` is None."""
    z = np.asarray(z_noised, dtype=float)
    ctx = ctx or ConditioningContext()
    for past in ctx.past_latents:
        if past.shape != z.shape:
            raise ValidationError(f"context latent shape {past.shape} differs from {z.shape}")
    c_skip, c_out, c_in, c_noise = precondition_coeffs(sigma, sigma_data)
    if c_out == 0.0:
        denoised = z
    else:
        denoised = c_skip * z + c_out * _raw_output(raw, c_in * z, replace(ctx, c_noise=c_noise), z.shape)
    return denoised if clamp_scale is None else clamp(denoised, clamp_scale)


def dyn_loss(
    raw: RawNetwork,
    clean_next,
    noised_next,
    sigma: float,
    ctx: Optional[ConditioningContext] = None,
    sigma_data: float = 1.0,
) -> float:
    """Squared error between F's output and the re-parameterized target.

    The target ``(z0 - c_skip * z_sigma) / c_out`` makes this equal to
    ``||D_unclamped - z0||^2 / c_out^2``.  Targets are plain values (stop-grad).
    """
    z0 = np.asarray(clean_next, dtype=float)
    zs = np.asarray(noised_next, dtype=float)
    if z0.shape != zs.shape:
        raise ValidationError(f"shape mismatch: clean {z0.shape} vs noised {zs.shape}")
    if not sigma > 0:
        raise ValidationError("dyn_loss needs sigma > 0 (c_out vanishes at sigma = 0)")
    c_skip, c_out, c_in, c_noise = precondition_coeffs(sigma, sigma_data)
    ctx = ctx or ConditioningContext()
    pred = _raw_output(raw, c_in * zs, replace(ctx, c_noise=c_noise), zs.shape)
    target = (z0 - c_skip * zs) / c_out
    return float(np.sum((pred - target) ** 2))


def sequence_dyn_loss(raw: RawNetwork, steps: Sequence[tuple], sigma_data: float = 1.0, reduction: str = "sum") -> float:
    """Dynamics loss over a trajectory of ``(clean, noised, sigma, ctx)`` steps.

    ``reduction="sum"`` adds the per-step squared norms; ``"norm_of_sum"``
    squares the norm of the summed per-step residuals instead.
    """
    if reduction == "sum":
        return math.fsum(dyn_loss(raw, c, n, s, ctx, sigma_data) for c, n, s, ctx in steps)
    if reduction == "norm_of_sum":
        total = None
        for clean, noised, sigma, ctx in steps:
            c_skip, c_out, c_in, c_noise = precondition_coeffs(sigma, sigma_data)
            zs = np.asarray(noised, float)
            ctx = ctx or ConditioningContext()
            resid = _raw_output(raw, c_in * zs, replace(ctx, c_noise=c_noise), zs.shape) - (
                np.asarray(clean, float) - c_skip * zs
            ) / c_out
            total = resid if total is None else total + resid
        if total is None:
            raise ValidationError("no steps given")
        return float(np.sum(total ** 2))
    raise ValidationError(f"unknown reduction: {reduction!r}")


# -- analytic networks for data ~ Normal(mu, sigma_data^2 I) ------------------


def gaussian_denoiser(mu, data_std: float = 1.0) -> Denoiser:
    """Optimal denoiser (posterior mean) for Gaussian data with mean ``mu`` and std ``data_std``."""
    mu = np.asarray(mu, dtype=float)
    var = check_positive(data_std, "data_std") ** 2

    def denoise(z, sigma, ctx=None):
        return (var * np.asarray(z, float) + sigma * sigma * mu) / (var + sigma * sigma)

    return denoise


def gaussian_raw_network(mu, data_std: float = 1.0, sigma_data: float = 1.0) -> RawNetwork:
    """Inner network F whose preconditioned output is :func:`gaussian_denoiser`.

    Reads sigma back from ``ctx.c_noise``.
    """
    denoise = gaussian_denoiser(mu, data_std)

    def raw(x, ctx):
        if ctx.c_noise is None:
            raise ValidationError("raw network needs c_noise (sigma > 0)")
        sigma = math.exp(4.0 * ctx.c_noise)
        c_skip, c_out, c_in, _ = precondition_coeffs(sigma, sigma_data)
        z = np.asarray(x, float) / c_in
        return (denoise(z, sigma) - c_skip * z) / c_out

    return raw
