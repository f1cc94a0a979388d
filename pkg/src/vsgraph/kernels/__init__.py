"""Hot-loop kernels with selectable backend.

``VSGRAPH_BACKEND=numba`` (default when numba imports) or
``VSGRAPH_BACKEND=numpy`` picks the implementation at import time; the
active choice is exposed as :data:`BACKEND`. Both implementation
modules stay importable directly for parity tests and benchmarks.
"""

from __future__ import annotations

import os
import warnings

_requested = os.environ.get("VSGRAPH_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise ValueError(
        f"VSGRAPH_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

if _requested == "numpy":
    from . import numpy_impl as _impl
    BACKEND = "numpy"
else:
    try:
        from . import numba_impl as _impl
        BACKEND = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        warnings.warn("numba unavailable, falling back to NumPy kernels",
                      RuntimeWarning, stacklevel=2)
        from . import numpy_impl as _impl
        BACKEND = "numpy"

popcount64 = _impl.popcount64
diffuse = _impl.diffuse
dense_ranks = _impl.dense_ranks
rank_states = _impl.rank_states
aggregate_max = _impl.aggregate_max
aggregate_binary_or = _impl.aggregate_binary_or
blend = _impl.blend
message_pass = _impl.message_pass
encode_states = _impl.encode_states
encode_embedding = _impl.encode_embedding
readout_mean = _impl.readout_mean
pagerank = _impl.pagerank
graphhd_encode = _impl.graphhd_encode

__all__ = [
    "BACKEND", "popcount64", "diffuse", "dense_ranks", "rank_states",
    "aggregate_max", "aggregate_binary_or", "blend", "message_pass",
    "encode_states", "encode_embedding", "readout_mean", "pagerank",
    "graphhd_encode",
]
