"""Backend selection for the enumeration kernels.

The compiled module ``_kernels`` is used when it imports; otherwise (or when
``KERBINOM_PURE=1`` is set) the interpreted ``_kernels_py`` takes over.  Both
expose the same functions with the same results.
"""

from __future__ import annotations

import importlib
import os

from . import _kernels_py

BACKENDS = {"python": _kernels_py}
try:
    BACKENDS["cython"] = importlib.import_module("kerbinom._kernels")
except ImportError:  # no compiler at install time
    pass

if os.environ.get("KERBINOM_PURE") or "cython" not in BACKENDS:
    BACKEND = "python"
else:
    BACKEND = "cython"

impl = BACKENDS[BACKEND]


def get(name: str | None = None):
    """Return the kernel module for ``name`` (default: the active backend)."""
    return BACKENDS[name or BACKEND]


def available() -> list[str]:
    return sorted(BACKENDS)


def use(name: str) -> None:
    """Switch the active backend for this process and for worker processes it starts."""
    global BACKEND, impl
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} is not available")
    BACKEND, impl = name, BACKENDS[name]
    if name == "python":
        os.environ["KERBINOM_PURE"] = "1"
    else:
        os.environ.pop("KERBINOM_PURE", None)
