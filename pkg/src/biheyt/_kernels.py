"""Kernel selection: compiled extension when available, fallback otherwise.

Set BIHEYT_PURE=1 (before import) to force the fallback; the chosen
implementation is reported in IMPLEMENTATION. Both implementations
produce identical outputs, so everything above this module is oblivious
to the choice.
"""

import os

if os.environ.get("BIHEYT_PURE"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

IMPLEMENTATION: str = _impl.IMPLEMENTATION
find_homs = _impl.find_homs
close_subset = _impl.close_subset
congruence_closure = _impl.congruence_closure
free_closure = _impl.free_closure
free_tables = _impl.free_tables
poset_enum_keys = _impl.poset_enum_keys
