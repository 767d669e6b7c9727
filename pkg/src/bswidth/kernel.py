"""Backend selection: compiled Cython kernel when present, pure Python otherwise.

Set BSWIDTH_BACKEND=pure|compiled to force a choice (compiled raises if the
extension is missing).
"""

from __future__ import annotations

import os

from . import _pure

_choice = os.environ.get("BSWIDTH_BACKEND", "auto")

if _choice == "pure":
    _impl = _pure
elif _choice in ("auto", "compiled"):
    try:
        from . import _ckernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _choice == "compiled":
            raise
        _impl = _pure
else:
    raise ValueError(f"BSWIDTH_BACKEND={_choice!r} (want auto, pure or compiled)")

BACKEND = _impl.BACKEND_NAME
MatOps = _impl.MatOps
PermOps = _impl.PermOps


def get_backend(name: str):
    """Return the named kernel module (for benchmarks and parity tests)."""
    if name == "pure":
        return _pure
    if name == "compiled":
        from . import _ckernel  # type: ignore[attr-defined]

        return _ckernel
    raise ValueError(f"unknown backend {name!r}")
