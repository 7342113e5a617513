import numpy as np
import pytest

from hybridcast import (
    ChannelSpec,
    EngineConfig,
    HybridCastEngine,
    PowerSplit,
    SourceSpec,
)


@pytest.fixture
def desk_source() -> SourceSpec:
    return SourceSpec(sigma2=1.0, rho=0.0)


@pytest.fixture
def correlated_source() -> SourceSpec:
    return SourceSpec(sigma2=1.0, rho=0.5)


@pytest.fixture
def desk_channel() -> ChannelSpec:
    return ChannelSpec(power=1.0, n1=1.0, n2=2.0)


@pytest.fixture
def half_split() -> PowerSplit:
    return PowerSplit(alpha1=0.5)


@pytest.fixture
def engine(tmp_path):
    with HybridCastEngine(EngineConfig(output_dir=str(tmp_path))) as eng:
        yield eng


@pytest.fixture
def random_draws():
    """10^4 random (sigma2, rho, P, N1, N2, alpha1) parameter draws."""
    rng = np.random.default_rng(20240611)
    size = 10_000
    n1 = rng.uniform(0.1, 10.0, size)
    return {
        "sigma2": rng.uniform(0.1, 10.0, size),
        "rho": rng.uniform(0.01, 0.99, size),
        "power": rng.uniform(0.1, 10.0, size),
        "n1": n1,
        "n2": n1 * (1.0 + rng.uniform(0.01, 5.0, size)),
        "alpha1": rng.uniform(0.0, 1.0, size),
    }
