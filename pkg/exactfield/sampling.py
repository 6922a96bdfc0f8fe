import numpy as np

from exactfield.forms import PointP
from exactfield.linalg import rank


def random_point(rng: np.random.Generator, nvars: int, p: int) -> PointP:
    while True:
        coords = rng.integers(0, p, size=nvars)
        if coords.any():
            return PointP(tuple(int(c) for c in coords), p)


def random_points(seed: int, nvars: int, p: int, count: int) -> list[PointP]:
    rng = np.random.default_rng(seed)
    return [random_point(rng, nvars, p) for _ in range(count)]


def random_invertible(rng: np.random.Generator, size: int, p: int) -> np.ndarray:
    while True:
        mat = rng.integers(0, p, size=(size, size)).astype(np.int64)
        if rank(mat, p) == size:
            return mat
