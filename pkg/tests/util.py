"""Shared helpers for the test suite."""

from __future__ import annotations

import numpy as np


def rng_for(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_complex(rng: np.random.Generator, rows: int, cols: int | None = None) -> np.ndarray:
    cols = rows if cols is None else cols
    return rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(random_complex(rng, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    g = random_complex(rng, n)
    return (g + g.conj().T) / 2


def random_real_spectrum(rng: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Non-normal matrix with known real eigenvalues: V diag(lam) V^-1 with a
    well-conditioned random V."""
    lam = rng.uniform(-1.0, 1.0, size=n)
    v = np.eye(n) + 0.3 * rng.normal(size=(n, n))
    return v @ np.diag(lam) @ np.linalg.inv(v), np.sort(lam)
