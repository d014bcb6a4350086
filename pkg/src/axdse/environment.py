"""RL environment over (adder, multiplier, variable-selection) configurations.

A state is the current configuration plus the observations produced by the
most recent execution of that configuration: accuracy degradation and the
power/time reductions relative to the precise baseline. Observations are
embedded in the state but deliberately excluded from the discrete state key,
so tabular learning stays well-posed.

Each step re-executes the benchmark under the new configuration. Execution
is deterministic, so an optional configuration-keyed cache can skip repeat
executions without changing any observable behavior.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from . import operators as ops
from .errors import BaselineMissing, InvalidAction, StateSpaceTooLarge

SET_ADDER = "set_adder"
SET_MULTIPLIER = "set_multiplier"
TOGGLE_VARIABLE = "toggle_variable"

#: default cap on the discrete state space a tabular agent may index
DEFAULT_MAX_TABLE_STATES = 1 << 20


@dataclass(frozen=True)
class Action:
    kind: str
    index: int


@dataclass(frozen=True)
class Observation:
    d_acc: float
    d_power: float
    d_time: float


@dataclass(frozen=True)
class EnvState:
    adder_idx: int
    mul_idx: int
    selection: tuple[int, ...]
    d_acc: float = 0.0
    d_power: float = 0.0
    d_time: float = 0.0

    @property
    def observation(self) -> Observation:
        return Observation(self.d_acc, self.d_power, self.d_time)


class ApproxEnv:
    """Sequential environment; independent instances share only immutable
    catalogs, models, and baselines."""

    def __init__(
        self,
        program: kernels.BenchmarkProgram,
        catalog: ops.OperatorCatalog,
        add_models: list[ops.FunctionalModel],
        mul_models: list[ops.FunctionalModel],
        *,
        mae_mode: str = kernels.MAE_ABSOLUTE,
        cache_executions: bool = False,
        max_table_states: int = DEFAULT_MAX_TABLE_STATES,
        baseline: kernels.BaselineRecord | None = None,
    ):
        self.program = program
        self.catalog = catalog
        self.add_specs = catalog.width_class(ops.ADDER, program.width)
        self.mul_specs = catalog.width_class(ops.MULTIPLIER, program.width)
        if len(add_models) != len(self.add_specs) or len(mul_models) != len(self.mul_specs):
            raise ValueError("model lists must match the catalog width classes one-to-one")
        for model, spec in zip(list(add_models) + list(mul_models), self.add_specs + self.mul_specs):
            if model.spec != spec:
                raise ValueError(f"model for {model.spec.name!r} out of order, expected {spec.name!r}")
        self.add_models = list(add_models)
        self.mul_models = list(mul_models)
        self.mae_mode = mae_mode
        self._baseline = baseline
        self._cache: dict | None = {} if cache_executions else None
        self._state: EnvState | None = None

        n_states = self.n_adders * self.n_multipliers * (1 << self.n_vars)
        if n_states > max_table_states:
            raise StateSpaceTooLarge(
                f"{n_states} configurations exceed the table capacity {max_table_states}; "
                "reduce the number of variables or raise max_table_states"
            )

    # -- sizes ---------------------------------------------------------------

    @property
    def n_adders(self) -> int:
        return len(self.add_specs)

    @property
    def n_multipliers(self) -> int:
        return len(self.mul_specs)

    @property
    def n_vars(self) -> int:
        return self.program.n_vars

    @property
    def sizes(self) -> tuple[int, int, int]:
        return (self.n_adders, self.n_multipliers, self.n_vars)

    @property
    def baseline(self) -> kernels.BaselineRecord:
        if self._baseline is None:
            raise BaselineMissing("baseline not computed yet; call reset() first")
        return self._baseline

    @property
    def state(self) -> EnvState:
        if self._state is None:
            raise BaselineMissing("environment not reset yet; call reset() first")
        return self._state

    # -- actions -------------------------------------------------------------

    @property
    def n_actions(self) -> int:
        return self.n_adders + self.n_multipliers + self.n_vars

    def action_from_index(self, index: int) -> Action:
        if not 0 <= index < self.n_actions:
            raise InvalidAction(f"action index {index} outside [0, {self.n_actions})")
        if index < self.n_adders:
            return Action(SET_ADDER, index)
        index -= self.n_adders
        if index < self.n_multipliers:
            return Action(SET_MULTIPLIER, index)
        return Action(TOGGLE_VARIABLE, index - self.n_multipliers)

    def action_index(self, action: Action) -> int:
        if action.kind == SET_ADDER:
            base, limit = 0, self.n_adders
        elif action.kind == SET_MULTIPLIER:
            base, limit = self.n_adders, self.n_multipliers
        elif action.kind == TOGGLE_VARIABLE:
            base, limit = self.n_adders + self.n_multipliers, self.n_vars
        else:
            raise InvalidAction(f"unknown action kind {action.kind!r}")
        if not 0 <= action.index < limit:
            raise InvalidAction(f"{action.kind} index {action.index} outside [0, {limit})")
        return base + action.index

    # -- dynamics ------------------------------------------------------------

    def reset(self, seed: int | None = None) -> EnvState:
        """Return the precise configuration with all-zero observations.

        The environment itself is deterministic; ``seed`` is accepted for
        interface symmetry and ignored.
        """
        if self._baseline is None:
            self._baseline = kernels.baseline(self.program, self.catalog)
        self._state = EnvState(0, 0, (0,) * self.n_vars)
        return self._state

    def step(self, action: Action) -> tuple[EnvState, Observation]:
        state = self.state  # raises if reset() never ran
        adder_idx, mul_idx = state.adder_idx, state.mul_idx
        selection = list(state.selection)
        kind, idx = action.kind, action.index
        if kind == SET_ADDER:
            if not 0 <= idx < self.n_adders:
                raise InvalidAction(f"adder index {idx} outside [0, {self.n_adders})")
            adder_idx = idx
        elif kind == SET_MULTIPLIER:
            if not 0 <= idx < self.n_multipliers:
                raise InvalidAction(f"multiplier index {idx} outside [0, {self.n_multipliers})")
            mul_idx = idx
        elif kind == TOGGLE_VARIABLE:
            if not 0 <= idx < self.n_vars:
                raise InvalidAction(f"variable index {idx} outside [0, {self.n_vars})")
            selection[idx] = 1 - selection[idx]
        else:
            raise InvalidAction(f"unknown action kind {kind!r}")

        obs = self.evaluate_config(adder_idx, mul_idx, tuple(selection))
        self._state = EnvState(adder_idx, mul_idx, tuple(selection), obs.d_acc, obs.d_power, obs.d_time)
        return self._state, obs

    def evaluate_config(self, adder_idx: int, mul_idx: int, selection: tuple[int, ...]) -> Observation:
        """Execute one configuration and return its observations. Public so
        enumeration-style oracles can sweep the configuration space."""
        base = self.baseline
        key = (adder_idx, mul_idx, selection)
        cached = self._cache.get(key) if self._cache is not None else None
        if cached is not None:
            return cached

        report = kernels.run(
            self.program, selection, self.add_models[adder_idx], self.mul_models[mul_idx]
        )
        add0, add_spec = self.add_specs[0], self.add_specs[adder_idx]
        mul0, mul_spec = self.mul_specs[0], self.mul_specs[mul_idx]
        d_power = report.approx_add_ops * (add0.power_mw - add_spec.power_mw) + report.approx_mul_ops * (
            mul0.power_mw - mul_spec.power_mw
        )
        d_time = report.approx_add_ops * (add0.latency_ns - add_spec.latency_ns) + report.approx_mul_ops * (
            mul0.latency_ns - mul_spec.latency_ns
        )
        obs = Observation(
            d_acc=kernels.mae(base.outputs, report.outputs, self.mae_mode),
            d_power=d_power,
            d_time=d_time,
        )
        # cost tables guarantee savings only when the in-use operators are no
        # more expensive than the precise ones (true for power on every
        # shipped row; one shipped multiplier is slower than precise)
        if add_spec.power_mw <= add0.power_mw and mul_spec.power_mw <= mul0.power_mw:
            assert obs.d_power >= 0.0
        if add_spec.latency_ns <= add0.latency_ns and mul_spec.latency_ns <= mul0.latency_ns:
            assert obs.d_time >= 0.0

        if self._cache is not None:
            self._cache[key] = obs
        return obs

    # -- state encoding --------------------------------------------------------

    def encode_state(self, state: EnvState | None = None) -> int:
        """Bijective key over (adder_idx, mul_idx, selection); observations
        are excluded on purpose."""
        s = state if state is not None else self.state
        bits = 0
        for i, bit in enumerate(s.selection):
            bits |= (bit & 1) << i
        return (s.adder_idx * self.n_multipliers + s.mul_idx) << self.n_vars | bits

    def adder_name(self, idx: int) -> str:
        return self.add_specs[idx].name

    def multiplier_name(self, idx: int) -> str:
        return self.mul_specs[idx].name
