import numpy as np
import pytest

from mfrac import GridSpec, constant, simulate_fbm, simulate_ghbmp

#: The 30 closing prices of the worked RSI example.
RSI_PRICES = [
    100.70, 100.76, 101.61, 103.33, 103.30, 103.26, 105.04, 106.01, 105.74,
    106.48, 106.22, 105.95, 106.39, 104.68, 103.16, 102.79, 101.98, 102.49,
    101.79, 100.57, 102.24, 102.21, 102.48, 101.26, 100.91, 101.22, 100.27,
    100.85, 100.45, 100.36,
]

RSI_EXPECTED = [
    61.53846, 59.32109, 54.67637, 56.96133, 53.01101, 46.90549, 54.61171,
    54.45880, 55.66208, 49.32085, 47.64392, 49.28855, 44.65883, 47.87783,
    45.89514, 45.43918,
]


@pytest.fixture(scope="session")
def fbm_paths_16k():
    """Exact fBm paths on 2^14+1 points, keyed by (H, seed)."""
    cache = {}

    def get(H: float, seed: int):
        key = (H, seed)
        if key not in cache:
            cache[key] = simulate_fbm(GridSpec.uniform(0.0, 1.0, 2**14 + 1), H, seed=seed)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def ghbmp_small():
    """One small multifractional path for reuse in serialization/stat tests."""
    return simulate_ghbmp(GridSpec.uniform(0.0, 1.0, 513), constant(0.4), J=8, seed=11)


def rng_for(test_name: str) -> np.random.Generator:
    """Deterministic per-test generator for fuzz inputs."""
    import hashlib

    digest = hashlib.sha256(test_name.encode()).digest()
    ss = np.random.SeedSequence(int.from_bytes(digest[:8], "little"))
    return np.random.Generator(np.random.PCG64(ss))
