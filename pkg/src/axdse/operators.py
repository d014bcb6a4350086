"""Catalog of characterized approximate adders/multipliers and functional models.

Conventions used throughout:

* Arithmetic is unsigned. A model's raw (batch) output is the operator's
  natural-width result: adders keep the carry out (width+1 bits), multipliers
  return the full double-width product. The scalar entry points apply_add /
  apply_mul expose the declared-width contract: sums reduce modulo 2^width,
  products pass through for the caller to quantize.
* ``mred`` values are percentages: ``100 * mean(|exact - approx| / exact)``
  over the operator's input space in the natural-width domain, where input
  pairs whose exact result is zero are excluded from the mean (no other
  convention avoids dividing by zero on an exhaustive sweep).
* ``mae`` is the plain mean of ``|exact - approx|`` over all input pairs.
* Exhaustive characterization is the default up to 8-bit operands and is
  available on request up to 16-bit. Wider operators are characterized on
  10**6 uniformly random pairs drawn with the fixed seed ``SAMPLING_SEED``.

Catalogs and models are immutable after construction and safe to share
across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np
import yaml

from .errors import (
    CalibrationOutOfRange,
    CatalogError,
    DuplicateOperator,
    KindMismatch,
    MissingField,
    OperandOutOfRange,
    UnsortedCatalog,
    UnsupportedFamily,
    WidthTooLargeForExhaustive,
)

ADDER = "adder"
MULTIPLIER = "multiplier"
KINDS = (ADDER, MULTIPLIER)
WIDTHS = (8, 16, 32)

MODE_EXACT = "exact"
MODE_TRUNCATE = "truncate"
MODE_LOWER_PART_OR = "lower_part_or"
MODE_TABLE = "table"

FAMILY_AUTO = "auto"
FAMILIES = (MODE_TRUNCATE, MODE_LOWER_PART_OR, FAMILY_AUTO)

#: pair count and seed for sampled characterization of wide operators
SAMPLED_PAIRS = 10**6
SAMPLING_SEED = 271828

#: calibration accepts a family member whose measured error is within this
#: multiplicative factor of the catalog target
CALIBRATION_FACTOR = 4.0

_CATALOG_FIELDS = ("kind", "width", "name", "mred", "power_mw", "latency_ns")


@dataclass(frozen=True)
class OperatorSpec:
    """One characterized operator: error statistic plus per-operation costs."""

    kind: str
    width: int
    name: str
    mred: float
    power_mw: float
    latency_ns: float

    def __post_init__(self):
        if self.kind not in KINDS:
            raise CatalogError(f"operator {self.name!r}: kind must be one of {KINDS}, got {self.kind!r}")
        if self.width not in WIDTHS:
            raise CatalogError(f"operator {self.name!r}: width must be one of {WIDTHS}, got {self.width}")
        if self.mred < 0:
            raise CatalogError(f"operator {self.name!r}: mred must be >= 0")
        if self.power_mw <= 0:
            raise CatalogError(f"operator {self.name!r}: power_mw must be > 0")
        if self.latency_ns <= 0:
            raise CatalogError(f"operator {self.name!r}: latency_ns must be > 0")


@dataclass(frozen=True)
class OperatorCatalog:
    """Ordered operator lists, grouped by kind; within each (kind, width)
    class the entries are sorted by non-decreasing mred and start at the
    precise (mred = 0) operator."""

    adders: tuple[OperatorSpec, ...]
    multipliers: tuple[OperatorSpec, ...]

    def width_class(self, kind: str, width: int) -> tuple[OperatorSpec, ...]:
        """All operators of one kind and bit width, in catalog order."""
        pool = self.adders if kind == ADDER else self.multipliers
        return tuple(op for op in pool if op.width == width)

    def widths(self, kind: str) -> tuple[int, ...]:
        pool = self.adders if kind == ADDER else self.multipliers
        seen: list[int] = []
        for op in pool:
            if op.width not in seen:
                seen.append(op.width)
        return tuple(seen)


def _spec_from_record(record: dict, where: str) -> OperatorSpec:
    if not isinstance(record, dict):
        raise CatalogError(f"{where}: operator entry must be a mapping, got {type(record).__name__}")
    for f in _CATALOG_FIELDS:
        if f not in record:
            raise MissingField(f"{where}: missing field {f!r}")
    extra = set(record) - set(_CATALOG_FIELDS)
    if extra:
        raise CatalogError(f"{where}: unknown fields {sorted(extra)}")
    name = record["name"]
    if not isinstance(name, str):
        # YAML resolves unquoted names like 000 or 067 to integers; require quoting
        raise CatalogError(f"{where}: operator name must be a quoted string, got {name!r}")
    return OperatorSpec(
        kind=str(record["kind"]),
        width=int(record["width"]),
        name=name,
        mred=float(record["mred"]),
        power_mw=float(record["power_mw"]),
        latency_ns=float(record["latency_ns"]),
    )


def load_catalog(source: str | Path | dict) -> OperatorCatalog:
    """Load and validate an operator catalog from a YAML file or parsed dict.

    Rejects documents with missing/unknown fields, duplicate
    (kind, width, name) triples, width classes not sorted by mred, or width
    classes that do not start at a precise (mred = 0) operator.
    """
    if isinstance(source, (str, Path)):
        label = str(source)
        with open(source, "r", encoding="utf-8") as fh:
            doc = yaml.safe_load(fh)
    else:
        label = "<dict>"
        doc = source
    if not isinstance(doc, dict) or "operators" not in doc:
        raise CatalogError(f"{label}: catalog document must contain an 'operators' list")
    rows = doc["operators"]
    if not isinstance(rows, list) or not rows:
        raise CatalogError(f"{label}: 'operators' must be a non-empty list")

    specs = [_spec_from_record(r, f"{label} entry {i}") for i, r in enumerate(rows)]

    seen: set[tuple[str, int, str]] = set()
    for op in specs:
        key = (op.kind, op.width, op.name)
        if key in seen:
            raise DuplicateOperator(f"{label}: duplicate operator {op.kind} {op.width}-bit {op.name!r}")
        seen.add(key)

    catalog = OperatorCatalog(
        adders=tuple(op for op in specs if op.kind == ADDER),
        multipliers=tuple(op for op in specs if op.kind == MULTIPLIER),
    )
    for kind in KINDS:
        for width in catalog.widths(kind):
            group = catalog.width_class(kind, width)
            if group[0].mred != 0:
                raise UnsortedCatalog(
                    f"{label}: first {width}-bit {kind} must be precise (mred = 0), got "
                    f"{group[0].name!r} with mred {group[0].mred}"
                )
            for prev, cur in zip(group, group[1:]):
                if cur.mred < prev.mred:
                    raise UnsortedCatalog(
                        f"{label}: {width}-bit {kind} {cur.name!r} (mred {cur.mred}) listed after "
                        f"{prev.name!r} (mred {prev.mred}); classes must be sorted by mred"
                    )
    return catalog


def bundled_catalog() -> OperatorCatalog:
    """The catalog shipped with the package (24 characterized operators)."""
    from importlib.resources import files

    return load_catalog(Path(str(files("axdse") / "data" / "catalog.yaml")))


# ---------------------------------------------------------------------------
# functional models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FunctionalModel:
    """Executable stand-in for a characterized operator.

    ``mode`` selects the arithmetic family:

    * ``exact``: precise unsigned arithmetic.
    * ``truncate``: for adders, the k low result bits are forced to zero and
      carries from the low k bits are dropped; for multipliers, the k low
      partial-product columns are dropped.
    * ``lower_part_or``: adders only; the k low result bits become the
      bitwise OR of the operands' low bits, the upper part adds precisely
      with no carry in.
    * ``table``: result looked up from a user-provided (2^w, 2^w) array of
      natural-width outputs.

    ``batch`` produces natural-width results (carry out / full product kept);
    deterministic pure functions of the inputs.
    """

    spec: OperatorSpec
    mode: str = MODE_EXACT
    k: int = 0
    table: np.ndarray | None = None
    achieved_mred: float | None = None

    def __post_init__(self):
        if self.mode not in (MODE_EXACT, MODE_TRUNCATE, MODE_LOWER_PART_OR, MODE_TABLE):
            raise UnsupportedFamily(f"unknown model mode {self.mode!r}")
        if self.mode == MODE_LOWER_PART_OR and self.kind == MULTIPLIER:
            raise UnsupportedFamily("lower_part_or is defined for adders only")
        if self.mode == MODE_TABLE:
            side = 1 << self.width
            if self.table is None or self.table.shape != (side, side):
                raise UnsupportedFamily(f"table mode needs a ({side}, {side}) lookup array")
            self.table.setflags(write=False)
        max_k = self.width if self.kind == ADDER else 2 * self.width
        if not 0 <= self.k <= max_k:
            raise UnsupportedFamily(f"k = {self.k} outside [0, {max_k}] for {self.kind}")

    @property
    def kind(self) -> str:
        return self.spec.kind

    @property
    def width(self) -> int:
        return self.spec.width

    def batch(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Vectorized application; operands must already be uint64 arrays in
        [0, 2^width). Returns natural-width results: adders keep the carry
        out, multipliers the full product."""
        if self.kind == ADDER:
            return _add_batch(a, b, self.mode, self.k, self.table)
        return _mul_batch(a, b, self.width, self.mode, self.k, self.table)


def _add_batch(a, b, mode, k, table):
    if mode == MODE_TABLE:
        return table[a, b]
    if mode == MODE_EXACT or k == 0:
        return a + b
    high = ((a >> k) + (b >> k)) << k
    if mode == MODE_TRUNCATE:
        return high
    # lower_part_or
    return high | ((a | b) & ((1 << k) - 1))


def _mul_batch(a, b, width, mode, k, table):
    if mode == MODE_TABLE:
        return table[a, b]
    if mode == MODE_EXACT or k == 0:
        return a * b
    # drop the k low partial-product columns: keep terms a_i * b_j * 2^(i+j)
    # with i + j >= k, accumulated row by row over the bits of b
    out = np.zeros(np.broadcast_shapes(np.shape(a), np.shape(b)), dtype=np.uint64)
    for j in range(width):
        row_bit = (b >> j) & np.uint64(1)
        drop = k - j
        if drop <= 0:
            pp = a << j
        elif drop >= width:
            continue  # the whole row sits below column k
        else:
            pp = (a >> drop) << (drop + j)
        out = out + pp * row_bit
    return out


def exact_model(spec: OperatorSpec) -> FunctionalModel:
    return FunctionalModel(spec=spec, mode=MODE_EXACT, achieved_mred=0.0)


def _check_operand(value: int, width: int, label: str):
    if not 0 <= int(value) < (1 << width):
        raise OperandOutOfRange(f"{label} = {value} outside [0, 2^{width}) unsigned range")


def apply_add(model: FunctionalModel, a: int, b: int) -> int:
    """Scalar approximate addition at the declared width (sum modulo 2^width);
    validates kind and operand ranges."""
    if model.kind != ADDER:
        raise KindMismatch(f"apply_add needs an adder model, got {model.kind}")
    _check_operand(a, model.width, "a")
    _check_operand(b, model.width, "b")
    return int(model.batch(np.uint64(a), np.uint64(b))) & ((1 << model.width) - 1)


def apply_mul(model: FunctionalModel, a: int, b: int) -> int:
    """Scalar approximate multiplication returning the full-width product."""
    if model.kind != MULTIPLIER:
        raise KindMismatch(f"apply_mul needs a multiplier model, got {model.kind}")
    _check_operand(a, model.width, "a")
    _check_operand(b, model.width, "b")
    return int(model.batch(np.uint64(a), np.uint64(b)))


# ---------------------------------------------------------------------------
# characterization and calibration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ErrorStats:
    mred: float  # percent
    mae: float


def _error_stats(exact: np.ndarray, approx: np.ndarray) -> ErrorStats:
    diff = np.where(exact >= approx, exact - approx, approx - exact).astype(np.float64)
    exact_f = exact.astype(np.float64)
    nonzero = exact_f != 0
    if nonzero.any():
        mred = 100.0 * float(np.mean(diff[nonzero] / exact_f[nonzero]))
    else:
        mred = 0.0
    return ErrorStats(mred=mred, mae=float(diff.mean()))


def exact_batch(kind: str, width: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Precise arithmetic in the kernel domain: modular sums, full products."""
    if kind == ADDER:
        return (a + b) & ((1 << width) - 1)
    return a * b


def _natural_exact(kind: str, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Precise arithmetic in the operator's natural output domain."""
    return a + b if kind == ADDER else a * b


def characterize(
    model: FunctionalModel,
    *,
    method: str = "auto",
    samples: int = SAMPLED_PAIRS,
    seed: int = SAMPLING_SEED,
) -> ErrorStats:
    """Measure empirical MRED (percent) and MAE against precise arithmetic.

    ``method``: "exhaustive" sweeps every input pair (widths up to 16 bits
    only), "sampled" uses ``samples`` seeded uniform pairs, "auto" picks
    exhaustive for widths up to 8 bits and sampled beyond.
    """
    w = model.width
    if method == "auto":
        method = "exhaustive" if w <= 8 else "sampled"
    if method == "exhaustive":
        if w > 16:
            raise WidthTooLargeForExhaustive(
                f"{w}-bit exhaustive sweep has 2^{2 * w} pairs; use method='sampled'"
            )
        return _characterize_exhaustive(model)
    if method != "sampled":
        raise ValueError(f"unknown characterization method {method!r}")
    rng = np.random.default_rng(seed)
    a = rng.integers(0, 1 << w, size=samples, dtype=np.uint64)
    b = rng.integers(0, 1 << w, size=samples, dtype=np.uint64)
    return _error_stats(_natural_exact(model.kind, a, b), model.batch(a, b))


def _characterize_exhaustive(model: FunctionalModel) -> ErrorStats:
    # sweep in row chunks so 16-bit runs stay within memory; 8-bit fits in one
    w = model.width
    side = 1 << w
    b = np.arange(side, dtype=np.uint64)[None, :]
    chunk = max(1, (1 << 24) // side)
    rel_sum = 0.0
    rel_n = 0
    abs_sum = 0.0
    total = 0
    for start in range(0, side, chunk):
        a = np.arange(start, min(start + chunk, side), dtype=np.uint64)[:, None]
        exact = _natural_exact(model.kind, a, b)
        approx = model.batch(a, b)
        diff = np.where(exact >= approx, exact - approx, approx - exact).astype(np.float64)
        exact_f = exact.astype(np.float64)
        nonzero = exact_f != 0
        rel_sum += float(np.sum(diff[nonzero] / exact_f[nonzero]))
        rel_n += int(nonzero.sum())
        abs_sum += float(diff.sum())
        total += diff.size
    mred = 100.0 * rel_sum / rel_n if rel_n else 0.0
    return ErrorStats(mred=mred, mae=abs_sum / total)


def _family_members(spec: OperatorSpec, family: str):
    """Yield (mode, k) candidates for calibration, cheapest error first."""
    max_k = spec.width if spec.kind == ADDER else 2 * spec.width
    if family == MODE_TRUNCATE:
        modes = [MODE_TRUNCATE]
    elif family == MODE_LOWER_PART_OR:
        if spec.kind == MULTIPLIER:
            raise UnsupportedFamily("lower_part_or is defined for adders only")
        modes = [MODE_LOWER_PART_OR]
    elif family == FAMILY_AUTO:
        modes = [MODE_TRUNCATE] if spec.kind == MULTIPLIER else [MODE_TRUNCATE, MODE_LOWER_PART_OR]
    else:
        raise UnsupportedFamily(f"unknown model family {family!r}")
    for mode in modes:
        for k in range(1, max_k + 1):
            yield mode, k


def calibrate(
    spec: OperatorSpec,
    family: str = FAMILY_AUTO,
    *,
    method: str = "auto",
) -> FunctionalModel:
    """Pick the family member whose measured MRED is closest to the catalog
    target; ties break toward smaller k. A spec with mred = 0 calibrates to
    the exact model. Raises CalibrationOutOfRange when the best member is off
    by more than a factor of 4."""
    if spec.mred == 0:
        return exact_model(spec)

    best: tuple[float, int, str, float] | None = None  # (|diff|, k, mode, achieved)
    for mode, k in _family_members(spec, family):
        stats = characterize(FunctionalModel(spec=spec, mode=mode, k=k), method=method)
        cand = (abs(stats.mred - spec.mred), k, mode, stats.mred)
        if best is None or cand[:2] < best[:2]:
            best = cand
    assert best is not None
    _, k, mode, achieved = best
    if achieved == 0 or max(achieved / spec.mred, spec.mred / achieved) > CALIBRATION_FACTOR:
        raise CalibrationOutOfRange(
            f"{spec.width}-bit {spec.kind} {spec.name!r}: best {family} member (mode={mode}, k={k}) "
            f"measures mred {achieved:.4g} vs target {spec.mred:.4g}, beyond factor "
            f"{CALIBRATION_FACTOR:g}; supply a table-driven model instead"
        )
    return FunctionalModel(spec=spec, mode=mode, k=k, achieved_mred=achieved)


def calibrate_width_class(
    catalog: OperatorCatalog,
    kind: str,
    width: int,
    family: str = FAMILY_AUTO,
    *,
    method: str = "auto",
) -> list[FunctionalModel]:
    """Calibrated models for every operator of one kind/width, catalog order."""
    group = catalog.width_class(kind, width)
    if not group:
        raise CatalogError(f"catalog has no {width}-bit {kind} entries")
    return [calibrate(spec, family, method=method) for spec in group]


def table_model(spec: OperatorSpec, table: np.ndarray) -> FunctionalModel:
    """Escape hatch for users holding real operator truth tables."""
    return FunctionalModel(spec=spec, mode=MODE_TABLE, table=np.asarray(table, dtype=np.uint64))
