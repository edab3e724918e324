"""Hot-kernel selection: compiled Cython when built, pure Python otherwise.

Set FACTFOREST_PURE=1 to force the Python implementation.
"""

import os

from . import pyimpl as _py

if os.environ.get("FACTFOREST_PURE"):
    _impl = _py
else:
    try:
        from . import _cyimpl as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _py

IMPL_NAME = _impl.IMPL_NAME
assoc_witness = _impl.assoc_witness
span_match = _impl.span_match
min_ramseyan_height = _impl.min_ramseyan_height

PY = _py
ACTIVE = _impl
