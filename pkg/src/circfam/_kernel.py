"""Search-kernel backend selection.

The compiled Cython kernel (circfam._speedups) is preferred when it imported
cleanly and the instance fits its fixed-size limits; the pure-Python kernel is
the reference implementation and the fallback. Set CIRCFAM_PURE=1 to force the
pure backend.
"""

from __future__ import annotations

import os

from . import _purekernel

_FORCE_PURE = os.environ.get("CIRCFAM_PURE", "") not in ("", "0")

try:
    from . import _speedups as _compiled
except ImportError:  # pragma: no cover - depends on how the package was built
    _compiled = None

# Fixed-size limits of the compiled kernel.
COMPILED_MAX_SUBSETS = 4096
COMPILED_MAX_K = 64
COMPILED_MAX_N = 16

DEFAULT_BACKEND = "pure" if (_FORCE_PURE or _compiled is None) else "compiled"


def available_backends() -> tuple[str, ...]:
    return ("pure", "compiled") if _compiled is not None else ("pure",)


def resolve_backend_name(name: str, *, nsub: int, k: int, n: int = 0) -> str:
    """Pick the backend for an instance; 'auto' prefers the compiled kernel."""
    if name == "auto":
        name = DEFAULT_BACKEND
    if name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernel requested but circfam._speedups is not built")
        if nsub > COMPILED_MAX_SUBSETS or k > COMPILED_MAX_K or n > COMPILED_MAX_N:
            name = "pure"  # instance exceeds the compiled kernel's fixed sizes
    elif name != "pure":
        raise ValueError(f"unknown backend {name!r}; expected auto, pure or compiled")
    return name


def get_kernel(name: str):
    if name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernel requested but circfam._speedups is not built")
        return _compiled
    if name in ("pure", "auto"):
        return _purekernel
    raise ValueError(f"unknown backend {name!r}")
