"""Reward/termination loss, lambda-returns and REINFORCE actor-critic losses."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Tuple

import numpy as np
from scipy.special import log_softmax

from ..exceptions import ValidationError

DEFAULT_GAMMA = 0.985
DEFAULT_LAMBDA = 0.95
DEFAULT_HORIZON = 15
DEFAULT_ENTROPY_WEIGHT = 0.001


@dataclass(frozen=True)
class Trajectory:
    """An imagined rollout: ``values`` has one more entry than ``rewards`` (the bootstrap)."""

    rewards: Tuple[float, ...]
    values: Tuple[float, ...]
    terminations: Tuple[int, ...] = ()
    gamma: float = DEFAULT_GAMMA
    lam: float = DEFAULT_LAMBDA
    horizon: int = DEFAULT_HORIZON
    entropy_weight: float = DEFAULT_ENTROPY_WEIGHT

    def __post_init__(self):
        object.__setattr__(self, "rewards", tuple(float(r) for r in self.rewards))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        dones = self.terminations or (0,) * len(self.rewards)
        object.__setattr__(self, "terminations", tuple(int(d) for d in dones))
        if len(self.values) != len(self.rewards) + 1:
            raise ValidationError(
                f"need len(values) == len(rewards) + 1, got {len(self.values)} and {len(self.rewards)}"
            )
        if len(self.terminations) != len(self.rewards):
            raise ValidationError("terminations must align with rewards")
        if any(d not in (0, 1) for d in self.terminations):
            raise ValidationError("terminations must be 0 or 1")
        if not 0 < self.gamma <= 1:
            raise ValidationError("gamma must lie in (0, 1]")
        if not 0 <= self.lam <= 1:
            raise ValidationError("lambda must lie in [0, 1]")

    def to_dict(self):
        d = asdict(self)
        d["lambda"] = d.pop("lam")
        return d

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        if "lambda" in d:
            d["lam"] = d.pop("lambda")
        return cls(**d)


def reward_class(r: float) -> int:
    """Class index of sign(r): -1 -> 0, 0 -> 1, +1 -> 2."""
    return int(np.sign(r)) + 1


def _cross_entropy(logits, targets):
    logp = log_softmax(np.asarray(logits, dtype=float), axis=-1)
    return -logp[np.arange(len(targets)), targets]


def reward_term_loss(reward_logits, done_logits, rewards, dones) -> float:
    """Summed cross-entropy of the 3-way reward-sign head and the 2-way termination head."""
    reward_logits = np.asarray(reward_logits, dtype=float).reshape(-1, 3)
    done_logits = np.asarray(done_logits, dtype=float).reshape(-1, 2)
    rewards = np.asarray(rewards, dtype=float).ravel()
    dones = np.asarray(dones).ravel()
    t = len(rewards)
    if not (len(reward_logits) == len(done_logits) == len(dones) == t):
        raise ValidationError("reward logits, done logits, rewards and dones must have equal length")
    if np.any((dones != 0) & (dones != 1)):
        raise ValidationError("dones must be 0 or 1")
    r_cls = np.sign(rewards).astype(int) + 1
    return float(np.sum(_cross_entropy(reward_logits, r_cls)) + np.sum(_cross_entropy(done_logits, dones.astype(int))))


def lambda_returns(traj: Trajectory) -> np.ndarray:
    """Backward recursion ``R_t = r_t + gamma (1 - d_t) ((1 - lam) V_{t+1} + lam R_{t+1})``, ``R_T = V_T``."""
    out = np.empty(len(traj.rewards))
    nxt = traj.values[-1]
    for t in range(len(traj.rewards) - 1, -1, -1):
        cont = traj.gamma * (1 - traj.terminations[t])
        nxt = traj.rewards[t] + cont * ((1 - traj.lam) * traj.values[t + 1] + traj.lam * nxt)
        out[t] = nxt
    return out


def actor_critic_losses(log_probs, entropies, returns, values, entropy_weight: float = DEFAULT_ENTROPY_WEIGHT):
    """REINFORCE policy loss with a value baseline, and the squared-error value loss.

    Advantages and return targets enter as constants; gradient routing is up to the caller.
    """
    arrays = [np.asarray(a, dtype=float).ravel() for a in (log_probs, entropies, returns, values)]
    if len({a.size for a in arrays}) != 1:
        raise ValidationError("log_probs, entropies, returns and values must have equal length")
    log_probs, entropies, returns, values = arrays
    advantage = returns - values
    policy_loss = -np.sum(log_probs * advantage) - entropy_weight * np.sum(entropies)
    value_loss = np.sum((values - returns) ** 2)
    return float(policy_loss), float(value_loss)
