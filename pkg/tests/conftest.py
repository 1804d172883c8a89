import numpy as np
import pytest
from hypothesis import HealthCheck, settings

import thzharq as tz

settings.register_profile(
    "ci",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")

# 55 dBi antennas, 275 GHz carrier, 20 m, no absorption
H_L = 1.3716652914552292


@pytest.fixture(scope="session")
def h_l():
    return H_L


@pytest.fixture(scope="session")
def params_low_phi():
    """w_e = 1, sigma_s = 1 regime: phi = 0.25 < alpha*mu."""
    return tz.FadingPointingParams(
        alpha=2.0, mu=1.0, h_f_hat=1.0, s0=tz.DEFAULT_S0, phi=0.25
    )


@pytest.fixture(scope="session")
def params_high_phi():
    """w_e = 3, sigma_s = 1 regime: phi = 2.25 > alpha*mu."""
    return tz.FadingPointingParams(
        alpha=2.0, mu=1.0, h_f_hat=1.0, s0=tz.DEFAULT_S0, phi=2.25
    )


@pytest.fixture(scope="session")
def both_regimes(params_low_phi, params_high_phi):
    return {"low": params_low_phi, "high": params_high_phi}


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed))
