"""Hot integer kernels with a compiled fast path.

The compiled extension (``fflab._kernels._ckernels``) and the vectorized
numpy fallback implement identical contracts; the backend is selected once
at import.  Set ``FFLAB_BACKEND=numpy`` to force the fallback or
``FFLAB_BACKEND=c`` to require the extension (ImportError if absent).
Dense transforms are not here on purpose: BLAS already owns them.
"""

import os

import numpy as np

from . import numpy_impl

_requested = os.environ.get("FFLAB_BACKEND", "auto").lower()
if _requested in ("auto", "c", "compiled"):
    try:
        from . import _ckernels as _impl

        BACKEND = "compiled"
    except ImportError:
        if _requested != "auto":
            raise
        _impl = numpy_impl
        BACKEND = "numpy"
elif _requested in ("numpy", "python", "pure"):
    _impl = numpy_impl
    BACKEND = "numpy"
else:
    raise ValueError(f"FFLAB_BACKEND={_requested!r}; expected 'auto', 'c' or 'numpy'")


def line_value_stats(values, lines, impl=None):
    """Distinct constant-line values and direction-degeneracy per polynomial.

    values: (B, npoints) grid evaluations, entries in [0, q) with q <= 64.
    lines:  (ndir, q, q) point indices; lines[d, i] is one full line.

    Returns (counts, degenerate): counts[b] is the number of distinct values
    v for which some line of values[b] is constant equal to v; degenerate[b]
    is True when some direction has every one of its q lines constant.
    """
    values = np.ascontiguousarray(values, dtype=np.uint8)
    lines = np.ascontiguousarray(lines, dtype=np.int32)
    return (impl or _impl).line_value_stats(values, lines)


def incidence_count(xpos, ypos, combine, pmask, impl=None):
    """Exact |{(x, y) : combine[x, y] in P}| for flat group positions."""
    xpos = np.ascontiguousarray(xpos, dtype=np.int64)
    ypos = np.ascontiguousarray(ypos, dtype=np.int64)
    combine = np.ascontiguousarray(combine, dtype=np.int32)
    pmask = np.ascontiguousarray(pmask, dtype=np.uint8)
    return int((impl or _impl).incidence_count(xpos, ypos, combine, pmask))


def pairwise_zp(a, b, p, op, impl=None):
    """Sorted {x op y mod p : x in a, y in b}; op is 0:+, 1:-, 2:*."""
    a = np.ascontiguousarray(a, dtype=np.int64)
    b = np.ascontiguousarray(b, dtype=np.int64)
    if op not in (0, 1, 2):
        raise ValueError(f"op must be 0, 1 or 2, got {op}")
    return (impl or _impl).pairwise_zp(a, b, int(p), int(op))
