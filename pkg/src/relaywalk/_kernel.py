"""Walk-kernel selection.

The compiled extension is used when importable; otherwise the
pure-Python twin takes over.  Both produce identical walks for the same
seed.  Set RELAYWALK_PURE_PYTHON=1 to force the fallback (used by the
benchmark and the kernel-parity tests).
"""

from __future__ import annotations

import os

if os.environ.get("RELAYWALK_PURE_PYTHON", "") not in ("", "0"):
    from . import _walk_py as _impl

    KERNEL = "python"
else:
    try:
        from . import _walk_core as _impl  # type: ignore[no-redef]

        KERNEL = "compiled"
    except ImportError:
        from . import _walk_py as _impl  # type: ignore[no-redef]

        KERNEL = "python"

next_u64 = _impl.next_u64
prepare_table = _impl.prepare_table
hitting_walk_table = _impl.hitting_walk_table
hitting_walk_uniform = _impl.hitting_walk_uniform
