import numpy as np
import pytest

from bikegeo.integrate import canonical_vertex_state, integrate_geodesic


@pytest.fixture(scope="session")
def geodesic_cache():
    """Canonical geodesics keyed by (a, t_end), integrated once per run."""
    cache = {}

    def get(a, t_end=30.0, step=1e-3):
        key = (a, t_end, step)
        if key not in cache:
            cache[key] = integrate_geodesic(canonical_vertex_state(a), t_end, step)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
