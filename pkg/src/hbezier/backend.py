"""Kernel backend selection.

The per-point evaluation loops live in two interchangeable modules: a
numba-jitted one (default when numba imports) and a vectorized pure-numpy
one. Set ``HBEZIER_BACKEND=numpy`` to force the numpy path, or
``HBEZIER_BACKEND=numba`` to require the jitted path (ImportError if numba
is missing). Unset or ``auto`` picks numba when available.
"""

import os

BACKEND_ENV = "HBEZIER_BACKEND"


def _load(name):
    if name == "numpy":
        from . import _kernels_numpy

        return _kernels_numpy
    if name == "numba":
        from . import _kernels_numba

        return _kernels_numba
    raise ValueError(f"unknown kernel backend {name!r} (use 'numba' or 'numpy')")


def _select():
    choice = os.environ.get(BACKEND_ENV, "auto").strip().lower() or "auto"
    if choice != "auto":
        return _load(choice), choice
    try:
        return _load("numba"), "numba"
    except ImportError:
        return _load("numpy"), "numpy"


kernels, BACKEND = _select()


def available_backends():
    """Names of the kernel backends importable in this environment."""
    names = []
    try:
        import numba  # noqa: F401

        names.append("numba")
    except ImportError:
        pass
    names.append("numpy")
    return names
