"""Pure-Python kernels.

The ``*_mod`` functions mirror the compiled ``_kernels`` module exactly and
are used when the extension is unavailable.  The ``*_exact`` functions work
on Python integers and are always pure Python.
"""

import numpy as np

_INT64_MAX = np.iinfo(np.int64).max


def _safe_terms(m):
    sq = (m - 1) * (m - 1)
    return _INT64_MAX if sq == 0 else (_INT64_MAX - (m - 1)) // sq


def mul_sparse_mod(dense, idx, val, order, m):
    out = np.zeros(order + 1, dtype=np.int64)
    limit = _safe_terms(m)
    pending = 0
    for j, v in zip(idx.tolist(), val.tolist()):
        if j > order:
            break
        if v == 0:
            continue
        if pending == limit:
            np.mod(out, m, out=out)
            pending = 0
        out[j:] += v * dense[: order + 1 - j]
        pending += 1
    np.mod(out, m, out=out)
    return out


def div_sparse_mod(num, idx, val, inv_a0, order, m):
    terms = [(j, (m - v) % m) for j, v in zip(idx.tolist(), val.tolist())]
    num = num.tolist()
    b = [0] * (order + 1)
    for n in range(order + 1):
        acc = num[n]
        for j, v in terms:
            if j > n:
                break
            acc += v * b[n - j]
        b[n] = (acc % m) * inv_a0 % m
    return np.array(b, dtype=np.int64)


def mul_sparse_exact(dense, idx, val, order):
    out = np.zeros(order + 1, dtype=object)
    out[:] = 0
    for j, v in zip(idx.tolist(), val.tolist()):
        if j > order:
            break
        out[j:] += v * dense[: order + 1 - j]
    return out


def div_sparse_exact(num, idx, val, a0, order):
    # a0 is +1 or -1, so it is its own inverse
    terms = list(zip(idx.tolist(), val.tolist()))
    b = [0] * (order + 1)
    for n in range(order + 1):
        acc = num[n]
        for j, v in terms:
            if j > n:
                break
            acc -= v * b[n - j]
        b[n] = acc * a0
    out = np.empty(order + 1, dtype=object)
    out[:] = b
    return out
