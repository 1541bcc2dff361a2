"""Vectorized fallback implementations of the hot kernels."""

import numpy as np

# keep broadcast intermediates under ~32 MB
_CHUNK_CELLS = 1 << 22


def line_value_stats(values, lines):
    nbatch = values.shape[0]
    ndir, q, _ = lines.shape
    masks = np.zeros(nbatch, dtype=np.uint64)
    degenerate = np.zeros(nbatch, dtype=bool)
    one = np.uint64(1)
    for d in range(ndir):
        lv = values[:, lines[d]]  # (B, q, q): batch x line x point
        const = (lv == lv[:, :, :1]).all(axis=2)
        first = lv[:, :, 0].astype(np.uint64)
        bits = np.where(const, one << first, np.uint64(0))
        masks |= np.bitwise_or.reduce(bits, axis=1)
        degenerate |= const.all(axis=1)
    counts = np.zeros(nbatch, dtype=np.int64)
    for bit in range(int(values.max(initial=0)) + 1):
        counts += ((masks >> np.uint64(bit)) & one).astype(np.int64)
    return counts, degenerate


def incidence_count(xpos, ypos, combine, pmask):
    if xpos.size == 0 or ypos.size == 0:
        return 0
    total = 0
    rows = max(1, _CHUNK_CELLS // max(1, ypos.size))
    for start in range(0, xpos.size, rows):
        z = combine[xpos[start:start + rows, None], ypos[None, :]]
        total += int(pmask[z].sum(dtype=np.int64))
    return total


def pairwise_zp(a, b, p, op):
    if a.size == 0 or b.size == 0:
        return np.empty(0, dtype=np.int64)
    marks = np.zeros(p, dtype=bool)
    rows = max(1, _CHUNK_CELLS // max(1, b.size))
    for start in range(0, a.size, rows):
        chunk = a[start:start + rows, None]
        if op == 0:
            z = (chunk + b[None, :]) % p
        elif op == 1:
            z = (chunk - b[None, :]) % p
        else:
            z = (chunk * b[None, :]) % p
        marks[z.ravel()] = True
    return np.nonzero(marks)[0].astype(np.int64)
