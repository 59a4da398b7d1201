"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``NMMG_PURE_PYTHON`` is set to a non-empty value, the
pure-Python module is used. ``BACKEND`` names the active one.
"""

import os

from . import _kernels_py as python_backend

compiled_backend = None
if not os.environ.get("NMMG_PURE_PYTHON"):
    try:
        from . import _kernels as compiled_backend
    except ImportError:
        compiled_backend = None

if compiled_backend is not None:
    BACKEND = "cython"
    min_norm_simplex = compiled_backend.min_norm_simplex
    nondominated_mask = compiled_backend.nondominated_mask
else:
    BACKEND = "python"
    min_norm_simplex = python_backend.min_norm_simplex
    nondominated_mask = python_backend.nondominated_mask



def set_backend(name: str) -> str:
    """Switch backends at runtime; returns the previously active name."""
    global BACKEND, min_norm_simplex, nondominated_mask
    if name == "cython":
        if compiled_backend is None:
            raise RuntimeError("compiled extension nmmg._kernels is not available")
        mod = compiled_backend
    elif name == "python":
        mod = python_backend
    else:
        raise ValueError(f"unknown backend {name!r}")
    previous = BACKEND
    BACKEND = name
    min_norm_simplex = mod.min_norm_simplex
    nondominated_mask = mod.nondominated_mask
    return previous


__all__ = ["BACKEND", "min_norm_simplex", "nondominated_mask", "set_backend",
           "python_backend", "compiled_backend"]
