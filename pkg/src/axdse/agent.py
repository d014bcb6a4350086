"""Tabular Q-learning with epsilon-greedy exploration.

Unvisited table entries read as 0 (neutral initialization). With rewards
bounded by R and a discount below 1, every stored value stays within
R / (1 - gamma) + R, so the table never needs clipping.

Exploration follows a per-step multiplicative epsilon decay with a floor;
all hyperparameters live on the table object and are logged by the harness,
keeping runs reproducible from (seed, config) alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .environment import ApproxEnv
from .errors import NoValidAction
from .reward import RewardConfig, evaluate

STOP_TERMINAL = "terminal"
STOP_CUMULATIVE = "cumulative_target"
STOP_STEP_CAP = "step_cap"


@dataclass
class QTable:
    n_actions: int
    alpha: float = 0.1
    gamma: float = 0.95
    epsilon: float = 0.3
    epsilon_decay: float = 0.999
    epsilon_floor: float = 0.05
    values: dict[tuple[int, int], float] = field(default_factory=dict)

    def __post_init__(self):
        if not 0 < self.alpha <= 1:
            raise ValueError("alpha must be in (0, 1]")
        if not 0 <= self.gamma <= 1:
            raise ValueError("gamma must be in [0, 1]")
        if not 0 <= self.epsilon <= 1:
            raise ValueError("epsilon must be in [0, 1]")

    def q(self, state_key: int, action: int) -> float:
        return self.values.get((state_key, action), 0.0)

    def best_action(self, state_key: int) -> int:
        """Greedy action; ties break toward the lowest action index."""
        best, best_q = 0, self.q(state_key, 0)
        for a in range(1, self.n_actions):
            qa = self.q(state_key, a)
            if qa > best_q:
                best, best_q = a, qa
        return best

    def max_q(self, state_key: int) -> float:
        return max(self.q(state_key, a) for a in range(self.n_actions))

    def select_action(self, state_key: int, rng: np.random.Generator) -> int:
        """Epsilon-greedy: explore uniformly with probability epsilon, else
        exploit the greedy action."""
        if self.n_actions < 1:
            raise NoValidAction("no actions available")
        if rng.random() < self.epsilon:
            return int(rng.integers(self.n_actions))
        return self.best_action(state_key)

    def update(self, state_key: int, action: int, reward: float, next_state_key: int) -> None:
        old = self.q(state_key, action)
        target = reward + self.gamma * self.max_q(next_state_key)
        self.values[(state_key, action)] = old + self.alpha * (target - old)

    def decay_epsilon(self) -> None:
        self.epsilon = max(self.epsilon_floor, self.epsilon * self.epsilon_decay)

    # -- persistence (flat text map, one entry per line) ----------------------

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"# n_actions={self.n_actions} alpha={self.alpha!r} gamma={self.gamma!r} "
                     f"epsilon={self.epsilon!r} epsilon_decay={self.epsilon_decay!r} "
                     f"epsilon_floor={self.epsilon_floor!r}\n")
            for (s, a), v in sorted(self.values.items()):
                fh.write(f"{s}\t{a}\t{v!r}\n")

    @classmethod
    def load(cls, path: str | Path) -> "QTable":
        with open(path, "r", encoding="utf-8") as fh:
            header = fh.readline().strip()
            if not header.startswith("# "):
                raise ValueError(f"{path}: not a Q-table snapshot")
            params = dict(kv.split("=", 1) for kv in header[2:].split())
            table = cls(
                n_actions=int(params["n_actions"]),
                alpha=float(params["alpha"]),
                gamma=float(params["gamma"]),
                epsilon=float(params["epsilon"]),
                epsilon_decay=float(params["epsilon_decay"]),
                epsilon_floor=float(params["epsilon_floor"]),
            )
            for line in fh:
                s, a, v = line.split("\t")
                table.values[(int(s), int(a))] = float(v)
        return table


@dataclass(frozen=True)
class TraceStep:
    step: int
    action_kind: str
    action_index: int
    adder: str
    multiplier: str
    selection: tuple[int, ...]
    d_acc: float
    d_power: float
    d_time: float
    reward: float
    cumulative: float
    epsilon: float

    def to_record(self) -> dict:
        rec = self.__dict__.copy()
        rec["selection"] = list(self.selection)
        return rec


@dataclass(frozen=True)
class EpisodeResult:
    steps: list[TraceStep]
    stop_cause: str
    cumulative: float


def run_episode(
    env: ApproxEnv,
    q: QTable,
    reward_cfg: RewardConfig,
    step_cap: int,
    rng: np.random.Generator,
    *,
    initial_cumulative: float = 0.0,
    reset_on_violation: bool = False,
    decay_epsilon: bool = True,
) -> EpisodeResult:
    """Drive select -> step -> evaluate -> update until the terminal reward
    fires, the cumulative reward reaches its target, or the step cap runs
    out. Returns the full per-step trace.

    After a -R accuracy violation the exploration continues from the
    violating state by default; ``reset_on_violation`` restarts from the
    precise configuration instead (the Q-table keeps learning either way).
    """
    state = env.reset()
    r_cum = initial_cumulative
    steps: list[TraceStep] = []
    stop = STOP_STEP_CAP
    sizes = env.sizes

    for i in range(step_cap):
        s_key = env.encode_state(state)
        a_idx = q.select_action(s_key, rng)
        action = env.action_from_index(a_idx)
        next_state, obs = env.step(action)
        outcome = evaluate(next_state, reward_cfg, r_cum, sizes)
        q.update(s_key, a_idx, outcome.reward, env.encode_state(next_state))
        r_cum = outcome.cumulative
        steps.append(
            TraceStep(
                step=i,
                action_kind=action.kind,
                action_index=action.index,
                adder=env.adder_name(next_state.adder_idx),
                multiplier=env.multiplier_name(next_state.mul_idx),
                selection=next_state.selection,
                d_acc=obs.d_acc,
                d_power=obs.d_power,
                d_time=obs.d_time,
                reward=outcome.reward,
                cumulative=r_cum,
                epsilon=q.epsilon,
            )
        )
        if decay_epsilon:
            q.decay_epsilon()
        if outcome.terminate:
            stop = STOP_TERMINAL
            break
        if r_cum >= reward_cfg.cumulative_target:
            stop = STOP_CUMULATIVE
            break
        if reset_on_violation and outcome.reward == -reward_cfg.max_reward:
            state = env.reset()
        else:
            state = next_state

    return EpisodeResult(steps=steps, stop_cause=stop, cumulative=r_cum)
