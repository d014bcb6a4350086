import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from axdse import operators as ops
from axdse.errors import (
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

# frozen expected values, computed by an independent pure-python sweep over
# every 8-bit input pair (see oracle helpers at the bottom of this file)
TRUNC3_ADD_MRED = 3.7481394902460923
TRUNC3_ADD_MAE = 7.0
TRUNC4_MUL_MRED = 0.5640907009890397
LOA2_ADD_MRED = 0.4007630937502603


def _row(kind, width, name, mred, power, latency):
    return {"kind": kind, "width": width, "name": name, "mred": mred,
            "power_mw": power, "latency_ns": latency}


def _doc(rows):
    return {"schema_version": 1, "operators": rows}


def _adder_spec(mred=0.0, name="X"):
    return ops.OperatorSpec(ops.ADDER, 8, name, mred, 0.033, 0.63)


def _mul_spec(mred=0.0, name="Y"):
    return ops.OperatorSpec(ops.MULTIPLIER, 8, name, mred, 0.391, 1.43)


# ---------------------------------------------------------------------------
# catalog loading
# ---------------------------------------------------------------------------


class TestLoadCatalog:
    def test_bundled_catalog_has_all_24_rows(self, catalog):
        assert len(catalog.adders) == 12
        assert len(catalog.multipliers) == 12

    def test_table1_last_8bit_adder(self, catalog):
        group = catalog.width_class(ops.ADDER, 8)
        assert group[-1] == ops.OperatorSpec(ops.ADDER, 8, "02Y", 24.87, 0.0015, 0.11)

    def test_table2_precise_multiplier_heads_class(self, catalog):
        group = catalog.width_class(ops.MULTIPLIER, 8)
        assert group[0] == ops.OperatorSpec(ops.MULTIPLIER, 8, "1JJQ", 0.0, 0.391, 1.43)

    def test_width_class_order_property(self, catalog):
        for kind in ops.KINDS:
            for width in catalog.widths(kind):
                group = catalog.width_class(kind, width)
                mreds = [s.mred for s in group]
                assert mreds == sorted(mreds)
                assert group[0].mred == 0

    def test_unsorted_class_rejected(self):
        rows = [
            _row("adder", 8, "1HG", 0.0, 0.033, 0.63),
            _row("adder", 8, "6R6", 2.93, 0.012, 0.27),
            _row("adder", 8, "6PT", 0.14, 0.029, 0.55),
        ]
        with pytest.raises(UnsortedCatalog, match="6PT"):
            ops.load_catalog(_doc(rows))

    def test_missing_precise_head_rejected(self):
        rows = [_row("adder", 8, "6PT", 0.14, 0.029, 0.55)]
        with pytest.raises(UnsortedCatalog, match="precise"):
            ops.load_catalog(_doc(rows))

    def test_duplicate_rejected(self):
        rows = [
            _row("adder", 8, "1HG", 0.0, 0.033, 0.63),
            _row("adder", 8, "1HG", 0.0, 0.033, 0.63),
        ]
        with pytest.raises(DuplicateOperator, match="1HG"):
            ops.load_catalog(_doc(rows))

    def test_missing_field_named(self):
        rows = [{"kind": "adder", "width": 8, "name": "1HG", "mred": 0.0, "power_mw": 0.033}]
        with pytest.raises(MissingField, match="latency_ns"):
            ops.load_catalog(_doc(rows))

    def test_unknown_field_rejected(self):
        rows = [_row("adder", 8, "1HG", 0.0, 0.033, 0.63)]
        rows[0]["area"] = 12
        with pytest.raises(CatalogError, match="area"):
            ops.load_catalog(_doc(rows))

    def test_unquoted_numeric_name_rejected(self):
        rows = [_row("adder", 8, 67, 0.0, 0.033, 0.63)]
        with pytest.raises(CatalogError, match="quoted"):
            ops.load_catalog(_doc(rows))

    def test_invalid_costs_rejected(self):
        with pytest.raises(CatalogError):
            ops.load_catalog(_doc([_row("adder", 8, "Z", 0.0, 0.0, 0.63)]))
        with pytest.raises(CatalogError):
            ops.load_catalog(_doc([_row("adder", 8, "Z", -1.0, 0.033, 0.63)]))


# ---------------------------------------------------------------------------
# scalar application
# ---------------------------------------------------------------------------


class TestApply:
    def test_exact_add_identity(self):
        model = ops.exact_model(_adder_spec())
        assert ops.apply_add(model, 7, 0) == 7

    def test_exact_add_wraps_at_width(self):
        model = ops.exact_model(_adder_spec())
        assert ops.apply_add(model, 255, 2) == 1

    def test_truncate_add_drops_low_bits(self):
        model = ops.FunctionalModel(spec=_adder_spec(), mode=ops.MODE_TRUNCATE, k=2)
        assert ops.apply_add(model, 3, 1) == 0

    def test_exact_mul_identity(self):
        model = ops.exact_model(_mul_spec())
        assert ops.apply_mul(model, 5, 1) == 5

    def test_mul_absorbing_zero_all_modes(self):
        for model in [
            ops.exact_model(_mul_spec()),
            ops.FunctionalModel(spec=_mul_spec(), mode=ops.MODE_TRUNCATE, k=5),
            ops.table_model(_mul_spec(), np.arange(256)[:, None] * np.arange(256)[None, :]),
        ]:
            for x in (0, 1, 17, 255):
                assert ops.apply_mul(model, 0, x) == 0
                assert ops.apply_mul(model, x, 0) == 0

    def test_mul_returns_full_product(self):
        model = ops.exact_model(_mul_spec())
        assert ops.apply_mul(model, 255, 255) == 255 * 255

    def test_operand_out_of_range(self):
        model = ops.exact_model(_adder_spec())
        with pytest.raises(OperandOutOfRange):
            ops.apply_add(model, 256, 0)
        with pytest.raises(OperandOutOfRange):
            ops.apply_add(model, 0, -1)

    def test_kind_mismatch(self):
        with pytest.raises(KindMismatch):
            ops.apply_add(ops.exact_model(_mul_spec()), 1, 1)
        with pytest.raises(KindMismatch):
            ops.apply_mul(ops.exact_model(_adder_spec()), 1, 1)

    def test_lower_part_or_rejected_for_multipliers(self):
        with pytest.raises(UnsupportedFamily):
            ops.FunctionalModel(spec=_mul_spec(), mode=ops.MODE_LOWER_PART_OR, k=1)

    @given(a=st.integers(0, 255), b=st.integers(0, 255), k=st.integers(0, 8))
    @settings(max_examples=60)
    def test_add_determinism_and_scalar_batch_agreement(self, a, b, k):
        model = ops.FunctionalModel(spec=_adder_spec(mred=1.0), mode=ops.MODE_TRUNCATE, k=k)
        first = ops.apply_add(model, a, b)
        assert first == ops.apply_add(model, a, b)
        batched = model.batch(np.uint64([a]), np.uint64([b]))
        assert first == (int(batched[0]) & 0xFF)

    @given(a=st.integers(0, 255), b=st.integers(0, 255), k=st.integers(0, 16))
    @settings(max_examples=60)
    def test_mul_truncate_drops_only_low_columns(self, a, b, k):
        model = ops.FunctionalModel(spec=_mul_spec(mred=1.0), mode=ops.MODE_TRUNCATE, k=k)
        got = ops.apply_mul(model, a, b)
        expected = _oracle_trunc_mul(a, b, k)
        assert got == expected


# ---------------------------------------------------------------------------
# characterization
# ---------------------------------------------------------------------------


class TestCharacterize:
    def test_exact_adder_measures_zero(self):
        stats = ops.characterize(ops.exact_model(_adder_spec()))
        assert stats.mred == 0.0
        assert stats.mae == 0.0

    def test_truncate3_add_matches_frozen_oracle(self):
        stats = ops.characterize(
            ops.FunctionalModel(spec=_adder_spec(mred=3.0), mode=ops.MODE_TRUNCATE, k=3)
        )
        assert stats.mred == pytest.approx(TRUNC3_ADD_MRED, rel=1e-12)
        assert stats.mae == pytest.approx(TRUNC3_ADD_MAE, rel=1e-12)

    def test_truncate4_mul_matches_frozen_oracle(self):
        stats = ops.characterize(
            ops.FunctionalModel(spec=_mul_spec(mred=0.5), mode=ops.MODE_TRUNCATE, k=4)
        )
        assert stats.mred == pytest.approx(TRUNC4_MUL_MRED, rel=1e-12)

    def test_lower_part_or_matches_frozen_oracle(self):
        stats = ops.characterize(
            ops.FunctionalModel(spec=_adder_spec(mred=0.4), mode=ops.MODE_LOWER_PART_OR, k=2)
        )
        assert stats.mred == pytest.approx(LOA2_ADD_MRED, rel=1e-12)

    def test_table_driven_exact_function_measures_zero(self):
        grid = np.arange(256, dtype=np.uint64)
        table = grid[:, None] + grid[None, :]
        stats = ops.characterize(ops.table_model(_adder_spec(), table))
        assert stats.mred == 0.0

    def test_truncate_knob_monotone_for_8bit_adders(self):
        mreds = [
            ops.characterize(
                ops.FunctionalModel(spec=_adder_spec(mred=1.0), mode=ops.MODE_TRUNCATE, k=k)
            ).mred
            for k in range(0, 9)
        ]
        assert mreds[0] == 0.0
        assert all(lo <= hi for lo, hi in zip(mreds, mreds[1:]))

    def test_sampled_matches_exhaustive_roughly(self):
        model = ops.FunctionalModel(spec=_mul_spec(mred=5.0), mode=ops.MODE_TRUNCATE, k=7)
        full = ops.characterize(model, method="exhaustive")
        sampled = ops.characterize(model, method="sampled", samples=200_000)
        assert sampled.mred == pytest.approx(full.mred, rel=0.05)

    def test_exhaustive_refused_beyond_16_bits(self):
        spec = ops.OperatorSpec(ops.MULTIPLIER, 32, "W", 0.0, 10.76, 4.565)
        with pytest.raises(WidthTooLargeForExhaustive):
            ops.characterize(ops.exact_model(spec), method="exhaustive")

    def test_32bit_exact_sampled_measures_zero(self):
        spec = ops.OperatorSpec(ops.MULTIPLIER, 32, "W", 0.0, 10.76, 4.565)
        stats = ops.characterize(ops.exact_model(spec), samples=10**6)
        assert stats.mred == 0.0
        assert stats.mae == 0.0


# ---------------------------------------------------------------------------
# calibration
# ---------------------------------------------------------------------------


class TestCalibrate:
    def test_zero_target_yields_exact_model(self):
        model = ops.calibrate(_adder_spec(mred=0.0))
        assert model.mode == ops.MODE_EXACT
        assert model.achieved_mred == 0.0

    def test_target_6pt_calibrates_close(self, catalog):
        spec = catalog.width_class(ops.ADDER, 8)[1]  # target mred 0.14
        model = ops.calibrate(spec)
        assert model.achieved_mred == pytest.approx(0.14, abs=0.05)
        measured = ops.characterize(model).mred
        assert measured == model.achieved_mred

    def test_target_02y_picks_smallest_diff(self, catalog):
        spec = catalog.width_class(ops.ADDER, 8)[-1]  # target mred 24.87
        model = ops.calibrate(spec)
        sweep = {
            (mode, k): ops.characterize(ops.FunctionalModel(spec=spec, mode=mode, k=k)).mred
            for mode in (ops.MODE_TRUNCATE, ops.MODE_LOWER_PART_OR)
            for k in range(1, 9)
        }
        best = min(abs(v - spec.mred) for v in sweep.values())
        assert abs(model.achieved_mred - spec.mred) == pytest.approx(best)

    def test_all_8bit_entries_within_factor_4(self, models8):
        add_models, mul_models = models8
        for model in add_models + mul_models:
            target = model.spec.mred
            if target == 0:
                assert model.mode == ops.MODE_EXACT
                continue
            achieved = model.achieved_mred
            assert achieved is not None and achieved > 0
            assert max(achieved / target, target / achieved) <= ops.CALIBRATION_FACTOR

    def test_unreachable_target_raises(self):
        # an 8-bit adder cannot get anywhere near 0.001% with either family
        spec = _adder_spec(mred=0.001)
        with pytest.raises(CalibrationOutOfRange):
            ops.calibrate(spec)

    def test_single_family_restriction_respected(self, catalog):
        spec = catalog.width_class(ops.MULTIPLIER, 8)[3]
        model = ops.calibrate(spec, ops.MODE_TRUNCATE)
        assert model.mode == ops.MODE_TRUNCATE


# ---------------------------------------------------------------------------
# independent oracle helpers
# ---------------------------------------------------------------------------


def _oracle_trunc_mul(a: int, b: int, k: int) -> int:
    """Partial-product enumeration: keep a_i * b_j * 2^(i+j) iff i + j >= k."""
    total = 0
    for i in range(8):
        if not (a >> i) & 1:
            continue
        for j in range(8):
            if not (b >> j) & 1:
                continue
            if i + j >= k:
                total += 1 << (i + j)
    return total


def test_frozen_constants_reproduce_from_oracle():
    """Recompute the frozen MRED constants from scratch on a subsample grid
    and exhaustively, guarding against drift in either oracle or model."""
    rel_sum = 0.0
    rel_n = 0
    abs_sum = 0
    for a in range(256):
        for b in range(256):
            exact = a + b
            approx = ((a >> 3) + (b >> 3)) << 3
            d = abs(exact - approx)
            abs_sum += d
            if exact:
                rel_sum += d / exact
                rel_n += 1
    assert 100.0 * rel_sum / rel_n == pytest.approx(TRUNC3_ADD_MRED, rel=1e-12)
    assert abs_sum / 65536 == pytest.approx(TRUNC3_ADD_MAE, rel=1e-12)
