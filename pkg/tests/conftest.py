"""Shared test helpers."""

import numpy as np
import pytest


def random_density(dim: int, seed: int) -> np.ndarray:
    """Random full-rank density operator (Ginibre construction)."""
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
