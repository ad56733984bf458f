"""Pure-Python product kernel; the reference twin of ``_ckernels``.

A generator is packed into an integer code.  For a diagram with ``n``
points, nibble ``p`` (bits ``4p..4p+3``) holds ``e + 1`` when a moving
strand runs from point index ``p`` to point index ``e``, and 0 otherwise.
The bits above ``4n`` hold the mask of horizontally occupied match classes.
``cls[p]`` is the 0-based class index of point ``p``.  A product that
vanishes is reported as ``-1``.
"""
from __future__ import annotations

import numpy as np

ZERO = -1
OUTSIDE = -2


def _unpack(code, cls, n, by_end):
    low = code & ((1 << (4 * n)) - 1)
    mask = code >> (4 * n)
    table = {}
    p = 0
    while low:
        nib = low & 15
        if nib:
            e = nib - 1
            c = cls[e] if by_end else cls[p]
            mask |= 1 << c
            table[c] = (p, e)
        low >>= 4
        p += 1
    return mask, table


def mul_code(a: int, b: int, cls: bytes, n: int) -> int:
    shift = 4 * n
    ra, a_end = _unpack(a, cls, n, True)
    lb, b_start = _unpack(b, cls, n, False)
    if ra != lb:
        return ZERO
    strands = []
    horiz = 0
    c = 0
    m = ra
    while m:
        if m & 1:
            ae = a_end.get(c)
            bs = b_start.get(c)
            if ae is not None and bs is not None:
                if ae[1] != bs[0]:
                    return ZERO
                strands.append((ae[0], ae[1], bs[1]))
            elif ae is not None:
                strands.append((ae[0], ae[1], ae[1]))
            elif bs is not None:
                strands.append((bs[0], bs[0], bs[1]))
            else:
                horiz |= 1 << c
        m >>= 1
        c += 1
    for i in range(len(strands)):
        x1, y1, z1 = strands[i]
        for j in range(i + 1, len(strands)):
            x2, y2, z2 = strands[j]
            if (x1 - x2) * (y1 - y2) < 0 and (y1 - y2) * (z1 - z2) < 0:
                return ZERO
    code = horiz << shift
    for x, _, z in strands:
        code |= (z + 1) << (4 * x)
    return code


def mul_index_table(codes, cls: bytes, n: int) -> np.ndarray:
    """Products of all ordered pairs, as indices into ``codes``."""
    index = {c: i for i, c in enumerate(codes)}
    size = len(codes)
    out = np.full((size, size), ZERO, dtype=np.int32)
    for i, a in enumerate(codes):
        row = out[i]
        for j, b in enumerate(codes):
            r = mul_code(a, b, cls, n)
            if r != ZERO:
                row[j] = index.get(r, OUTSIDE)
    return out


def associativity_violations(table: np.ndarray, limit: int = 10) -> list[tuple[int, int, int]]:
    """Triples (i, j, k) with (ij)k != i(jk), read off an index table."""
    size = table.shape[0]
    if (table == OUTSIDE).any():
        raise ValueError("product table leaves the basis")
    ext = np.full((size + 1, size + 1), size, dtype=np.int64)
    ext[:size, :size] = np.where(table < 0, size, table)
    found: list[tuple[int, int, int]] = []
    for i in range(size):
        lhs = ext[ext[i, :], :]
        rhs = ext[i, ext]
        bad = np.argwhere(lhs[:size, :size] != rhs[:size, :size])
        for j, k in bad[: max(0, limit - len(found))]:
            found.append((i, int(j), int(k)))
        if len(found) >= limit:
            break
    return found
