import numpy as np
import pytest


@pytest.fixture
def rng():
    import random

    return random.Random(1234)


def assert_close(a, b, tol=1e-12):
    a = np.asarray(a)
    b = np.asarray(b)
    assert a.shape == b.shape, f"shape {a.shape} != {b.shape}"
    dev = float(np.max(np.abs(a - b))) if a.size else 0.0
    assert dev <= tol, f"max deviation {dev:.3e} exceeds {tol:.1e}"
