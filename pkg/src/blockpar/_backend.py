"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``BLOCKPAR_PURE_PYTHON=1`` to force the fallback.
"""

import importlib
import os

from . import _pykernels


def _load(name):
    return importlib.import_module(f"blockpar._{name}kernels")


def available_backends() -> list[str]:
    names = []
    try:
        _load("c")
        names.append("cython")
    except ImportError:
        pass
    names.append("python")
    return names


def get_kernels(backend=None):
    """Kernel module for ``backend`` ("cython", "python" or None for default)."""
    if backend is None:
        return kernels
    if backend == "python":
        return _pykernels
    if backend == "cython":
        return _load("c")
    raise ValueError(f"unknown backend {backend!r}")


if os.environ.get("BLOCKPAR_PURE_PYTHON"):
    kernels = _pykernels
else:
    try:
        kernels = _load("c")
    except ImportError:
        kernels = _pykernels

BACKEND = kernels.BACKEND
