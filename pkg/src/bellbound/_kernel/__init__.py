"""Kernel backend selection.

The enumeration kernel exists twice: a compiled Cython extension
(``_ckernel``) and a pure-Python fallback (``pykernel``) with an identical
contract and bit-identical output.  The compiled one is picked when
importable; set BELLBOUND_BACKEND=python or BELLBOUND_BACKEND=c to force a
choice (forcing ``c`` raises if the extension was not built).
"""

from __future__ import annotations

import os


def _select():
    forced = os.environ.get("BELLBOUND_BACKEND", "").strip().lower()
    if forced in ("py", "python", "pure"):
        from . import pykernel
        return pykernel
    if forced in ("c", "cython", "compiled"):
        from . import _ckernel  # type: ignore[attr-defined]
        return _ckernel
    if forced:
        raise ValueError(f"unknown BELLBOUND_BACKEND {forced!r}")
    try:
        from . import _ckernel  # type: ignore[attr-defined]
        return _ckernel
    except ImportError:
        from . import pykernel
        return pykernel


_impl = _select()

BACKEND = _impl.BACKEND
run_enumeration = _impl.run_enumeration


def get_backend(name: str | None = None):
    """Return a kernel module: the selected one, or an explicit backend."""
    if name is None:
        return _impl
    if name in ("python", "py", "pure"):
        from . import pykernel
        return pykernel
    if name in ("c", "cython", "compiled"):
        from . import _ckernel  # type: ignore[attr-defined]
        return _ckernel
    raise ValueError(f"unknown kernel backend {name!r}")
