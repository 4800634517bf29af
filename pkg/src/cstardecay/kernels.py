"""Hot-loop kernels with a compiled backend and a NumPy fallback.

The compiled module ``cstardecay._kernels`` is used when it was built at
install time; otherwise the functions from ``_kernels_py`` are used. The
active backend name is in :data:`BACKEND`; :func:`use_backend` switches it
(for benchmarks and cross-checks).
"""

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_NAMES = ("quat_matmul", "bfs_distances", "power_iteration")
BACKEND = None


def available_backends():
    return ["cython", "python"] if _compiled is not None else ["python"]


def use_backend(name):
    """Select ``"cython"`` or ``"python"`` kernels for the whole package."""
    global BACKEND
    if name == "cython":
        if _compiled is None:
            raise ImportError("compiled kernels are not built")
        mod = _compiled
    elif name == "python":
        mod = _kernels_py
    else:
        raise ValueError(f"unknown backend {name!r}")
    for fname in _NAMES:
        globals()[fname] = getattr(mod, fname)
    BACKEND = name


def get(name, backend):
    """Return kernel ``name`` from an explicit backend, without switching."""
    return getattr(_compiled if backend == "cython" else _kernels_py, name)


use_backend("cython" if _compiled is not None else "python")
