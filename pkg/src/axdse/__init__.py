"""Design-space exploration of approximate arithmetic configurations with
tabular Q-learning.

The pipeline: a catalog of characterized approximate adders/multipliers
(`operators`), instrumented benchmark kernels whose variables can be routed
through them (`kernels`), an RL environment over (adder, multiplier,
variable-selection) configurations (`environment`), threshold-gated rewards
(`reward`), an epsilon-greedy Q-learning agent (`agent`), and a CLI harness
that runs explorations and emits traces, summaries, and plots (`harness`).
"""

from . import agent, environment, errors, harness, kernels, operators, reward

__all__ = ["agent", "environment", "errors", "harness", "kernels", "operators", "reward"]
__version__ = "0.1.0"
