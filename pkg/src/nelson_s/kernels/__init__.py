"""Hot loops with a compiled backend and a numpy fallback.

The compiled extension is used when it imports; setting ``NELSON_S_PURE=1``
forces the fallback.  Both backends expose the same two functions.
"""
from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels

PURE_ENV = "NELSON_S_PURE"


def _load_compiled() -> ModuleType | None:
    try:
        from . import _ckernels  # type: ignore[attr-defined]
    except ImportError:
        return None
    return _ckernels


_compiled = None if os.environ.get(PURE_ENV, "") not in ("", "0") else _load_compiled()
_active: ModuleType = _compiled or _pykernels

BACKEND = "compiled" if _compiled is not None else "python"
scan_valuations = _active.scan_valuations
enumerate_fusions = _active.enumerate_fusions


def backend(name: str) -> ModuleType:
    """The kernel module called ``name`` ("compiled" or "python")."""
    if name == "python":
        return _pykernels
    if name == "compiled":
        mod = _compiled or _load_compiled()
        if mod is None:
            raise ImportError("compiled kernels are not built")
        return mod
    raise ValueError(f"unknown backend {name!r}")
