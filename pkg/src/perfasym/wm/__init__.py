"""Deterministic numerics of a latent diffusion world model, networks abstracted as callables."""

from .preconditioning import (
    CONTEXT_LENGTH,
    LATENT_SHAPE,
    ConditioningContext,
    apply_denoiser,
    clamp,
    dyn_loss,
    gaussian_denoiser,
    gaussian_raw_network,
    precondition_coeffs,
    sequence_dyn_loss,
)
from .rl import Trajectory, actor_critic_losses, lambda_returns, reward_class, reward_term_loss
from .sampling import DiffusionConfig, build_sigma_schedule, dyn_input_switch, reverse_sample, sample_sigma

__all__ = [
    "CONTEXT_LENGTH",
    "LATENT_SHAPE",
    "ConditioningContext",
    "DiffusionConfig",
    "Trajectory",
    "actor_critic_losses",
    "apply_denoiser",
    "build_sigma_schedule",
    "clamp",
    "dyn_input_switch",
    "dyn_loss",
    "gaussian_denoiser",
    "gaussian_raw_network",
    "lambda_returns",
    "precondition_coeffs",
    "reverse_sample",
    "reward_class",
    "reward_term_loss",
    "sample_sigma",
    "sequence_dyn_loss",
]
