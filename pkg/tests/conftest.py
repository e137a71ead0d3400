import numpy as np
import pytest

from lifshitz import dielectric


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def catalog_models():
    """Every built-in model, for catalog-wide property tests."""
    return [dielectric.resolve_model(mid) for mid in dielectric.list_model_ids()]
