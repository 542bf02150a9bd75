"""Noise-level sampling, the rho-spaced sigma schedule and reverse-diffusion sampling."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

import numpy as np

from .._validation import check_finite_scalar
from ..exceptions import ValidationError
from .preconditioning import LATENT_SHAPE, ConditioningContext, Denoiser, clamp


@dataclass(frozen=True)
class DiffusionConfig:
    sigma_data: float = 1.0
    p_mean: Optional[float] = None
    p_std: Optional[float] = None
    steps: int = 3
    sigma_min: float = 0.002
    sigma_max: float = 80.0
    rho: float = 7.0
    s_churn: float = 0.0
    clamp_scale: float = 3.0

    def __post_init__(self):
        problems = []
        if not self.sigma_data > 0:
            problems.append("sigma_data must be > 0")
        if self.p_std is not None and not self.p_std > 0:
            problems.append("p_std must be > 0")
        if self.p_mean is not None and not math.isfinite(self.p_mean):
            problems.append("p_mean must be finite")
        if not isinstance(self.steps, (int, np.integer)) or self.steps < 1:
            problems.append("steps must be an integer >= 1")
        if not 0 < self.sigma_min < self.sigma_max or not math.isfinite(self.sigma_max):
            problems.append("need 0 < sigma_min < sigma_max < inf")
        if not self.rho > 0:
            problems.append("rho must be > 0")
        if not self.s_churn >= 0:
            problems.append("s_churn must be >= 0")
        if not self.clamp_scale > 0:
            problems.append("clamp_scale must be > 0")
        if problems:
            raise ValidationError("invalid diffusion config: " + "; ".join(problems))

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        unknown = set(d) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValidationError(f"unknown config field(s): {', '.join(sorted(unknown))}")
        return cls(**d)


def sample_sigma(p_mean: float, p_std: float, rng: np.random.Generator, size=None):
    """Draw sigma with ``ln(sigma) ~ Normal(p_mean, p_std^2)``; diffusion time is sigma itself."""
    p_mean = check_finite_scalar(p_mean, "p_mean")
    p_std = check_finite_scalar(p_std, "p_std")
    if p_std < 0:
        raise ValidationError("p_std must be >= 0")
    out = np.exp(rng.normal(p_mean, p_std, size))
    return float(out) if size is None else out


def build_sigma_schedule(cfg: DiffusionConfig) -> np.ndarray:
    """``steps`` rho-spaced noise levels from sigma_max down to sigma_min, then a final 0."""
    if cfg.steps == 1:
        return np.array([cfg.sigma_max, 0.0])
    ramp = np.arange(cfg.steps) / (cfg.steps - 1)
    hi = cfg.sigma_max ** (1.0 / cfg.rho)
    lo = cfg.sigma_min ** (1.0 / cfg.rho)
    sigmas = (hi + ramp * (lo - hi)) ** cfg.rho
    return np.append(sigmas, 0.0)


def reverse_sample(
    denoiser: Denoiser,
    ctx: Optional[ConditioningContext],
    cfg: DiffusionConfig,
    rng: np.random.Generator,
    shape: Sequence[int] = LATENT_SHAPE,
    n: Optional[int] = None,
    clamp_output: bool = True,
):
    """Euler sampler with optional churn.

    Starts from ``Normal(0, sigma_max^2 I)`` (a batch of ``n`` when given) and
    integrates the probability-flow ODE down the sigma schedule.  The final
    latent is clamped to ``(-clamp_scale, clamp_scale)`` unless
    ``clamp_output=False``.
    """
    shape = tuple(shape) if n is None else (int(n), *shape)
    sigmas = build_sigma_schedule(cfg)
    gamma = min(cfg.s_churn / cfg.steps, math.sqrt(2.0) - 1.0)
    z = rng.standard_normal(shape) * sigmas[0]
    for sigma, sigma_next in zip(sigmas[:-1], sigmas[1:]):
        sigma_hat = sigma * (1.0 + gamma)
        if gamma > 0:
            z = z + rng.standard_normal(shape) * math.sqrt(sigma_hat ** 2 - sigma ** 2)
        denoised = np.asarray(denoiser(z, sigma_hat, ctx), dtype=float)
        if denoised.shape != z.shape:
            raise ValidationError(f"denoiser returned shape {denoised.shape}, expected {z.shape}")
        if sigma_next == 0:
            # an Euler step to sigma = 0 lands exactly on the denoised estimate
            z = denoised
        else:
            z = z + (sigma_next - sigma_hat) * (z - denoised) / sigma_hat
    return clamp(z, cfg.clamp_scale) if clamp_output else z


def dyn_input_switch(predicted, encoded, rng: np.random.Generator):
    """Pick the predicted or the encoded latent with probability 1/2 each."""
    predicted = np.asarray(predicted, dtype=float)
    encoded = np.asarray(encoded, dtype=float)
    if predicted.shape != encoded.shape:
        raise ValidationError(f"shape mismatch: {predicted.shape} vs {encoded.shape}")
    return predicted if rng.random() < 0.5 else encoded
