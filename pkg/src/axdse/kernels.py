"""Instrumented benchmark kernels with selectable approximate arithmetic.

Instrumentation model: each kernel exposes a short list of named variables.
Every addition/multiplication in the kernel touches a fixed subset of those
variables (its operands plus the variable receiving the result), and an
operation executes on the approximate operator exactly when its touch set
intersects the selected-variable set. With no variables selected, execution
is bit-for-bit the precise reference.

Quantization convention: all values live in the unsigned bit-width domain of
the operators. Additions are modular at the width. Each product keeps the
top half of the double-width result (right shift by the width), the usual
fixed-point reading of truncating a product back to its operand width.
Accumulation order is ascending loop index; approximate addition is not
associative, so the order is part of the contract.

Power/time accounting is per-operation table cost summed over executed
operations, reported in "mW-units" and "ns-units".
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from . import operators as ops
from .errors import (
    EmptyOutput,
    KindMismatch,
    LengthMismatch,
    SelectionLengthMismatch,
    WidthMismatch,
)

MAE_ABSOLUTE = "absolute"
MAE_SIGNED = "signed"  # the formula exactly as printed: mean of signed differences


@dataclass(frozen=True)
class ExecutionReport:
    """Outputs plus operation accounting for one kernel execution."""

    outputs: np.ndarray
    add_counts: dict[str, int]  # per variable: additions touching it
    mul_counts: dict[str, int]
    approx_add_ops: int
    approx_mul_ops: int

    def __post_init__(self):
        self.outputs.setflags(write=False)


@dataclass(frozen=True)
class BaselineRecord:
    """Reference run with zero approximation; anchor for all deltas."""

    outputs: np.ndarray
    power_precise: float
    time_precise: float
    avg_output: float

    def __post_init__(self):
        self.outputs.setflags(write=False)


class BenchmarkProgram:
    """Base class: fixed variable list, deterministic seeded inputs, and a
    vectorized execution template parameterized by the two operator models."""

    name: str = ""
    variables: tuple[str, ...] = ()
    #: variables touched by every multiplication / addition in the kernel
    mul_vars: frozenset[str] = frozenset()
    add_vars: frozenset[str] = frozenset()

    def __init__(self, width: int, input_seed: int, size_params: dict):
        self.width = width
        self.input_seed = input_seed
        self.size_params = dict(size_params)
        self._rng = np.random.default_rng(input_seed)

    @property
    def n_vars(self) -> int:
        return len(self.variables)

    @property
    def n_outputs(self) -> int:
        raise NotImplementedError

    @property
    def n_add_ops(self) -> int:
        raise NotImplementedError

    @property
    def n_mul_ops(self) -> int:
        raise NotImplementedError

    def _execute(self, mul_fn, add_fn) -> np.ndarray:
        raise NotImplementedError

    def _quantize_product(self, products: np.ndarray) -> np.ndarray:
        return products >> self.width


class MatMulProgram(BenchmarkProgram):
    """Square matrix multiplication; entries drawn uniformly from the operand
    range. Variables: the two input matrices and the output accumulator."""

    name = "matmul"
    variables = ("a", "b", "acc")
    mul_vars = frozenset({"a", "b", "acc"})
    add_vars = frozenset({"acc"})

    def __init__(self, width: int, input_seed: int, size_params: dict):
        super().__init__(width, input_seed, size_params)
        self.n = int(size_params["n"])
        if self.n < 1:
            raise ValueError("matmul size n must be >= 1")
        hi = 1 << width
        self.a = self._rng.integers(0, hi, size=(self.n, self.n), dtype=np.uint64)
        self.b = self._rng.integers(0, hi, size=(self.n, self.n), dtype=np.uint64)

    @property
    def n_outputs(self) -> int:
        return self.n * self.n

    @property
    def n_mul_ops(self) -> int:
        return self.n**3

    @property
    def n_add_ops(self) -> int:
        return self.n * self.n * (self.n - 1)

    def _execute(self, mul_fn, add_fn) -> np.ndarray:
        # terms[i, j, k] = quantized a[i, k] * b[k, j]
        terms = self._quantize_product(mul_fn(self.a[:, None, :], self.b.T[None, :, :]))
        acc = terms[:, :, 0]
        for k in range(1, self.n):
            acc = add_fn(acc, terms[:, :, k])
        return acc.reshape(-1)


class FirProgram(BenchmarkProgram):
    """Low-pass FIR over seeded white noise, valid-region convolution.

    Coefficients are a Hamming-windowed sinc quantized to the operand width;
    the default cutoff (1/16 of the sample rate) keeps every tap of the
    default 16-tap design non-negative, as required by unsigned arithmetic.
    Taps are scaled to a DC gain of one after product quantization.
    """

    name = "fir"
    variables = ("samples", "coefficients", "acc")
    mul_vars = frozenset({"samples", "coefficients", "acc"})
    add_vars = frozenset({"acc"})

    def __init__(self, width: int, input_seed: int, size_params: dict):
        super().__init__(width, input_seed, size_params)
        self.samples = int(size_params["samples"])
        self.taps = int(size_params.get("taps", 16))
        self.cutoff = float(size_params.get("cutoff", 1.0 / 16.0))
        if self.samples < 1 or self.taps < 2:
            raise ValueError("fir needs samples >= 1 and taps >= 2")
        hi = 1 << width
        self.x = self._rng.integers(0, hi, size=self.samples + self.taps - 1, dtype=np.uint64)
        self.h = self._design_taps()

    def _design_taps(self) -> np.ndarray:
        n = np.arange(self.taps) - (self.taps - 1) / 2.0
        h = np.sinc(2.0 * self.cutoff * n) * np.hamming(self.taps)
        h = np.clip(h, 0.0, None)  # unsigned domain cannot hold negative lobes
        h = h / h.sum()
        q = np.round(h * (1 << self.width)).astype(np.uint64)
        return np.minimum(q, (1 << self.width) - 1)

    @property
    def n_outputs(self) -> int:
        return self.samples

    @property
    def n_mul_ops(self) -> int:
        return self.samples * self.taps

    @property
    def n_add_ops(self) -> int:
        return self.samples * (self.taps - 1)

    def _execute(self, mul_fn, add_fn) -> np.ndarray:
        # windows[n, k] = x[n + taps - 1 - k]
        idx = np.arange(self.samples)[:, None] + (self.taps - 1 - np.arange(self.taps))[None, :]
        terms = self._quantize_product(mul_fn(self.x[idx], self.h[None, :]))
        acc = terms[:, 0]
        for k in range(1, self.taps):
            acc = add_fn(acc, terms[:, k])
        return acc


class DotProgram(BenchmarkProgram):
    """Tiny dot product against fixed seeded weights; two named variables.
    Mainly useful for enumerable-MDP tests and quick smoke runs."""

    name = "dot"
    variables = ("x", "acc")
    mul_vars = frozenset({"x", "acc"})
    add_vars = frozenset({"acc"})

    def __init__(self, width: int, input_seed: int, size_params: dict):
        super().__init__(width, input_seed, size_params)
        self.length = int(size_params.get("length", 4))
        if self.length < 2:
            raise ValueError("dot length must be >= 2")
        hi = 1 << width
        self.x = self._rng.integers(0, hi, size=self.length, dtype=np.uint64)
        self.w = self._rng.integers(0, hi, size=self.length, dtype=np.uint64)

    @property
    def n_outputs(self) -> int:
        return 1

    @property
    def n_mul_ops(self) -> int:
        return self.length

    @property
    def n_add_ops(self) -> int:
        return self.length - 1

    def _execute(self, mul_fn, add_fn) -> np.ndarray:
        terms = self._quantize_product(mul_fn(self.x, self.w))
        acc = reduce(add_fn, [terms[k] for k in range(1, self.length)], terms[0])
        return np.asarray([acc], dtype=np.uint64)


BENCHMARKS = {
    "matmul": MatMulProgram,
    "fir": FirProgram,
    "dot": DotProgram,
}


def make_program(name: str, size_params: dict, width: int = 8, input_seed: int = 1234) -> BenchmarkProgram:
    if name not in BENCHMARKS:
        raise ValueError(f"unknown benchmark {name!r}; choose from {sorted(BENCHMARKS)}")
    return BENCHMARKS[name](width=width, input_seed=input_seed, size_params=size_params)


def _check_model(model: ops.FunctionalModel, kind: str, width: int):
    if model.kind != kind:
        raise KindMismatch(f"expected a {kind} model, got {model.kind}")
    if model.width != width:
        raise WidthMismatch(f"{kind} model is {model.width}-bit but the program is {width}-bit")


def run(
    program: BenchmarkProgram,
    selection,
    add_model: ops.FunctionalModel,
    mul_model: ops.FunctionalModel,
) -> ExecutionReport:
    """Execute the kernel with the given variable selection and models.

    An operation runs approximately exactly when its touch set intersects
    the selected variables; everything else uses precise arithmetic.
    """
    selection = tuple(int(bool(s)) for s in selection)
    if len(selection) != program.n_vars:
        raise SelectionLengthMismatch(
            f"selection has {len(selection)} bits, program exposes {program.n_vars} variables"
        )
    _check_model(add_model, ops.ADDER, program.width)
    _check_model(mul_model, ops.MULTIPLIER, program.width)

    selected = {v for v, bit in zip(program.variables, selection) if bit}
    approx_mul = bool(selected & program.mul_vars)
    approx_add = bool(selected & program.add_vars)

    mask = (1 << program.width) - 1
    exact_add = lambda a, b: ops.exact_batch(ops.ADDER, program.width, a, b)
    exact_mul = lambda a, b: ops.exact_batch(ops.MULTIPLIER, program.width, a, b)
    approx_add_fn = lambda a, b: add_model.batch(a, b) & mask  # back to the width domain
    outputs = program._execute(
        mul_model.batch if approx_mul else exact_mul,
        approx_add_fn if approx_add else exact_add,
    )

    return ExecutionReport(
        outputs=outputs.astype(np.int64),
        add_counts={v: (program.n_add_ops if v in program.add_vars else 0) for v in program.variables},
        mul_counts={v: (program.n_mul_ops if v in program.mul_vars else 0) for v in program.variables},
        approx_add_ops=program.n_add_ops if approx_add else 0,
        approx_mul_ops=program.n_mul_ops if approx_mul else 0,
    )


def mae(exact, approx, mode: str = MAE_ABSOLUTE) -> float:
    """Mean absolute error between output vectors.

    ``mode="signed"`` reproduces the mean of plain (exact - approx)
    differences instead; under it, over-estimates and under-estimates cancel
    and the result can be negative.
    """
    exact = np.asarray(exact, dtype=np.float64).reshape(-1)
    approx = np.asarray(approx, dtype=np.float64).reshape(-1)
    if exact.size != approx.size:
        raise LengthMismatch(f"exact has {exact.size} outputs, approx has {approx.size}")
    if exact.size == 0:
        raise EmptyOutput("output vectors are empty")
    diff = exact - approx
    if mode == MAE_SIGNED:
        return float(diff.mean())
    if mode != MAE_ABSOLUTE:
        raise ValueError(f"unknown mae mode {mode!r}")
    return float(np.abs(diff).mean())


def baseline(program: BenchmarkProgram, catalog: ops.OperatorCatalog) -> BaselineRecord:
    """Precise run plus per-operation cost totals for the precise operators."""
    add0 = catalog.width_class(ops.ADDER, program.width)[0]
    mul0 = catalog.width_class(ops.MULTIPLIER, program.width)[0]
    report = run(
        program,
        (0,) * program.n_vars,
        ops.exact_model(add0),
        ops.exact_model(mul0),
    )
    avg = float(report.outputs.mean())
    return BaselineRecord(
        outputs=report.outputs,
        power_precise=program.n_add_ops * add0.power_mw + program.n_mul_ops * mul0.power_mw,
        time_precise=program.n_add_ops * add0.latency_ns + program.n_mul_ops * mul0.latency_ns,
        avg_output=avg,
    )
