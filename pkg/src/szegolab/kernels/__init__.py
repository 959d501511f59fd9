"""Backend selection for the tridiagonal eigensolver kernel.

The compiled extension is preferred when importable; the pure-NumPy
implementation of the same algorithm is the fallback.  Set
``SZEGO_LAB_BACKEND=python`` (or ``cython``) to force a choice.
"""

from __future__ import annotations

import os

from . import _tridiag_py

_FORCED = os.environ.get("SZEGO_LAB_BACKEND", "").strip().lower()

_cy = None
if _FORCED != "python":
    try:
        from . import _tridiag_cy as _cy
    except ImportError:
        _cy = None
        if _FORCED == "cython":
            raise ImportError(
                "SZEGO_LAB_BACKEND=cython but the compiled extension is not available"
            )

_active = _cy if _cy is not None else _tridiag_py

BACKEND = _active.BACKEND_NAME
tridiag_eigh_smallest = _active.tridiag_eigh_smallest


def available_backends():
    """Mapping of backend name to its `tridiag_eigh_smallest`."""
    out = {"python": _tridiag_py.tridiag_eigh_smallest}
    if _cy is not None:
        out["cython"] = _cy.tridiag_eigh_smallest
    return out
