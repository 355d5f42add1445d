"""Kernel backend selection.

The hot loops (n! enumeration, simulation trials) exist twice: a Cython
extension and a pure-Python reference with identical outputs.  The compiled
backend is used when importable; set KSEC_PURE_PYTHON=1 to force the Python
one.  `backend_name()` reports which is active.
"""

from __future__ import annotations

import os

_force_pure = os.environ.get("KSEC_PURE_PYTHON", "").strip().lower() in {"1", "true", "yes"}

if _force_pure:
    from . import pyref as _impl
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import pyref as _impl

SINGLE_REF = _impl.SINGLE_REF
OPTIMISTIC = _impl.OPTIMISTIC

count_table_chunk = _impl.count_table_chunk
count_delta_chunk = _impl.count_delta_chunk
mc_chunk = _impl.mc_chunk
xoshiro_outputs = _impl.xoshiro_outputs


def backend_name() -> str:
    return _impl.NAME


def load_backend(name: str):
    """Explicitly load one backend module ("python" or "cython")."""
    if name == "python":
        from . import pyref

        return pyref
    if name == "cython":
        from . import _ckernels  # type: ignore[attr-defined]

        return _ckernels
    raise ValueError(f"unknown kernel backend {name!r}")
