"""Kernel backend selection.

The hot loops (FD time stepping, Monte Carlo paths) exist twice: a
compiled Cython extension (``gheat._kernels``) and a pure-numpy fallback
(``gheat._kernels_py``) with bit-identical output.  The extension is
optional at build time; ``get_kernels("auto")`` quietly falls back when
it is missing.
"""

from __future__ import annotations

from types import ModuleType

from . import _kernels_py

_native: ModuleType | None
try:
    from . import _kernels as _native  # type: ignore[attr-defined]
except ImportError:
    _native = None


def available_backends() -> list[str]:
    return (["native"] if _native is not None else []) + ["python"]


def get_kernels(name: str = "auto") -> ModuleType:
    """Return the kernel module: 'auto' prefers the compiled extension."""
    if name == "auto":
        return _native if _native is not None else _kernels_py
    if name == "native":
        if _native is None:
            raise ImportError("compiled kernel extension is not available")
        return _native
    if name == "python":
        return _kernels_py
    raise ValueError(f"unknown backend {name!r} (use 'auto', 'native' or 'python')")


def default_backend_name() -> str:
    return "native" if _native is not None else "python"
