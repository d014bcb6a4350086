"""Threshold-gated step rewards and cumulative-reward bookkeeping.

Branch semantics, in order:

1. accuracy degradation above its threshold: reward = -R (no termination);
2. otherwise, if the most approximate adder and multiplier are in use and
   every variable is selected: reward = +R and the run terminates;
3. otherwise, +1 when BOTH the power and the time reduction clear their
   thresholds, else -1.

The cumulative reward is the running sum of step rewards; exploration also
stops once it reaches the configured target.

In signed accuracy mode (see kernels.mae) the degradation can be negative,
which passes the threshold comparison trivially; prefer the default
absolute mode unless deliberately reproducing the signed formula.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .environment import EnvState
from .errors import DegenerateBaseline
from .kernels import BaselineRecord


@dataclass(frozen=True)
class RewardConfig:
    max_reward: float = 100.0
    acc_th: float = 0.0
    p_th: float = 0.0
    t_th: float = 0.0
    max_cumulative: float | None = None  # None: stop target equals max_reward

    def __post_init__(self):
        if self.max_reward <= 0:
            raise ValueError("max_reward must be > 0")
        if self.acc_th < 0 or self.p_th < 0 or self.t_th < 0:
            raise ValueError("thresholds must be >= 0")

    @property
    def cumulative_target(self) -> float:
        return self.max_reward if self.max_cumulative is None else self.max_cumulative


@dataclass(frozen=True)
class RewardOutcome:
    reward: float
    terminate: bool
    cumulative: float


def evaluate(
    state: EnvState,
    cfg: RewardConfig,
    r_cum: float,
    catalog_sizes: tuple[int, int, int],
) -> RewardOutcome:
    """Score one state per the branch table above and update the cumulative
    reward. Total over all valid states; reward is always one of
    {+R, +1, -1, -R} and terminate is set only on +R."""
    n_add, n_mul, n_vars = catalog_sizes
    terminate = False
    if state.d_acc <= cfg.acc_th:
        maximal = (
            state.adder_idx == n_add - 1
            and state.mul_idx == n_mul - 1
            and all(bit == 1 for bit in state.selection)
        )
        if maximal:
            reward = cfg.max_reward
            terminate = True
        elif state.d_power >= cfg.p_th and state.d_time >= cfg.t_th:
            reward = 1.0
        else:
            reward = -1.0
    else:
        reward = -cfg.max_reward
    return RewardOutcome(reward=reward, terminate=terminate, cumulative=r_cum + reward)


def make_thresholds(
    baseline: BaselineRecord,
    *,
    max_reward: float = 100.0,
    max_cumulative: float | None = None,
) -> RewardConfig:
    """Derive thresholds from a precise-run baseline: power and time
    thresholds at 50% of the precise totals, accuracy threshold at 0.4 times
    the average output. A zero average output degenerates the accuracy
    threshold to 0, which is surfaced as a warning while the run proceeds."""
    if baseline.avg_output == 0:
        warnings.warn(
            "baseline average output is 0, so the accuracy threshold degenerates to 0",
            DegenerateBaseline,
            stacklevel=2,
        )
    return RewardConfig(
        max_reward=max_reward,
        acc_th=0.4 * baseline.avg_output,
        p_th=0.5 * baseline.power_precise,
        t_th=0.5 * baseline.time_precise,
        max_cumulative=max_cumulative,
    )
