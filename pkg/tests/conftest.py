import numpy as np
import pytest

from axdse import kernels
from axdse import operators as ops


def toy_catalog() -> ops.OperatorCatalog:
    """Three adders and three multipliers, all zero-error but with strictly
    decreasing costs: a fully enumerable MDP whose terminal branch is
    reachable because approximation never hurts accuracy."""
    rows = []
    for i, (p, t) in enumerate([(0.03, 0.6), (0.02, 0.4), (0.01, 0.2)]):
        rows.append({"kind": "adder", "width": 8, "name": f"A{i}", "mred": 0.0,
                     "power_mw": p, "latency_ns": t})
    for i, (p, t) in enumerate([(0.4, 1.5), (0.3, 1.0), (0.2, 0.5)]):
        rows.append({"kind": "multiplier", "width": 8, "name": f"M{i}", "mred": 0.0,
                     "power_mw": p, "latency_ns": t})
    return ops.load_catalog({"schema_version": 1, "operators": rows})


def toy_setup():
    """(program, catalog, add_models, mul_models) for the 2-variable toy."""
    catalog = toy_catalog()
    program = kernels.make_program("dot", {"length": 4}, input_seed=7)
    add_models = [ops.exact_model(s) for s in catalog.width_class(ops.ADDER, 8)]
    mul_models = [ops.exact_model(s) for s in catalog.width_class(ops.MULTIPLIER, 8)]
    return program, catalog, add_models, mul_models


@pytest.fixture(scope="session")
def catalog():
    return ops.bundled_catalog()


@pytest.fixture(scope="session")
def models8(catalog):
    """Calibrated 8-bit adder and multiplier model lists (exhaustive sweeps)."""
    return (
        ops.calibrate_width_class(catalog, ops.ADDER, 8),
        ops.calibrate_width_class(catalog, ops.MULTIPLIER, 8),
    )


@pytest.fixture(scope="session")
def matmul10(catalog):
    program = kernels.make_program("matmul", {"n": 10})
    return program, kernels.baseline(program, catalog)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240811)
