"""Selects the compiled eigen kernels, or the pure-Python ones if unavailable.

Set ``CONFOSC_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("CONFOSC_PURE_PYTHON"):
    _ext = None
else:
    try:
        from . import _kernels_ext as _ext
    except ImportError:  # extension not built
        _ext = None

HAVE_EXTENSION = _ext is not None
BACKEND = "cython" if HAVE_EXTENSION else "python"


def jacobi_eigh_f64(A, max_sweeps: int = 60, skip_after: int = 4):
    """Float64 cyclic Jacobi through the fastest available backend.

    Rotations with an off-diagonal element negligible against both diagonal
    entries are skipped once ``skip_after`` sweeps have run.
    """
    if _ext is not None:
        return _ext.jacobi_eigh(A, max_sweeps, skip_after)
    return _kernels_py.jacobi_eigh(A, max_sweeps, skip_after)


def tridiag_ql_eigh_f64(A, max_iter: int = 60):
    """Float64 Householder + implicit QL through the fastest available backend."""
    if _ext is not None:
        return _ext.tridiag_ql_eigh(A, max_iter)
    return _kernels_py.tridiag_ql_eigh(A, max_iter)


def jacobi_eigh_obj(A, max_sweeps: int = 60, skip_after: int = 4):
    """Cyclic Jacobi on an object array of mpmath numbers (current precision)."""
    return _kernels_py.jacobi_eigh(A, max_sweeps, skip_after)
