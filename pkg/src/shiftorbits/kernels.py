"""Backend selection for the log-domain kernels.

Imports the compiled extension when available, otherwise the numpy fallback.
Set ``SHIFTORBITS_BACKEND=python`` (or ``compiled``) to force a choice; forcing
``compiled`` raises if the extension was not built.
"""

import os

_forced = os.environ.get("SHIFTORBITS_BACKEND", "")
if _forced not in ("", "compiled", "python"):
    raise RuntimeError(f"SHIFTORBITS_BACKEND must be 'compiled' or 'python', got {_forced!r}")

if _forced == "python":
    from . import _core_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        if _forced == "compiled":
            raise
        from . import _core_py as _impl  # type: ignore[no-redef]

        BACKEND = "python"

krein_log_weights = _impl.krein_log_weights
geometric_log_weights = _impl.geometric_log_weights
mixed_log_weights = _impl.mixed_log_weights
logsumexp = _impl.logsumexp


def get_backend():
    """Name of the active kernel backend: 'compiled' or 'python'."""
    return BACKEND
