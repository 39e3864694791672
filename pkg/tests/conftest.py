import numpy as np
import pytest

from hbezier.backend import kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Pay any one-off JIT compilation before tests assert on behavior or time."""
    kernels.casteljau_point(np.array([0.0, 1.0]), 0.5)
    kernels.casteljau_grid(np.array([0.0, 1.0, 0.0]), np.array([0.0, 0.5, 1.0]))
    kernels.bernstein_apply(np.array([1.0, 2.0, 3.0]), 0.25)
    kernels.power_sum_grid(
        np.array([1.0 + 0j, -1.0 + 0j]), np.array([0.5 + 0j, -0.5 + 0j]), np.array([0.25]), 4
    )
    kernels.pascal_poly_grid(np.array([1.0, 0.5]), np.array([0.5, 1.0]), np.array([0.25, 0.75]))
    kernels.aberth(np.array([-1.0 + 0j, 0.0 + 0j, 1.0 + 0j]), 1e-13, 50)
