"""Dense kernels for the running power ``P^n * Q``.

Sequence sweeps spend nearly all their time multiplying a dense box of
coefficients by the few terms of ``P``.  Two interchangeable backends exist:

* ``numba``: an ``@njit`` loop over the flattened box, skipping zero cells.
* ``numpy``: one shifted slice-add per term of ``P``.

Set ``CTLUCAS_DISABLE_NUMBA=1`` to force the numpy path.  Exact integers and
moduli of 2**31 or more always use numpy object arrays, since int64 products
would overflow.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

__all__ = ["DEFAULT_BACKEND", "HAVE_NUMBA", "INT64_MODULUS_LIMIT", "constant_terms", "resolve_backend"]

HAVE_NUMBA = numba is not None
# residues below this bound keep acc + c * a inside int64
INT64_MODULUS_LIMIT = 2**31

_disabled = os.environ.get("CTLUCAS_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}
DEFAULT_BACKEND = "numba" if HAVE_NUMBA and not _disabled else "numpy"


def resolve_backend(backend: str | None) -> str:
    if backend is None:
        return DEFAULT_BACKEND
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    return backend


def _mul_mod_kernel_py(cur, cur_shape, out_strides, offsets, coeffs, m, out):
    d = cur_shape.shape[0]
    idx = np.zeros(d, np.int64)
    base = 0
    for i in range(cur.shape[0]):
        a = cur[i]
        if a != 0:
            for t in range(offsets.shape[0]):
                j = base + offsets[t]
                out[j] = (out[j] + coeffs[t] * a) % m
        # advance the C-order multi-index of cur and track its flat position in out
        k = d - 1
        while k >= 0:
            idx[k] += 1
            base += out_strides[k]
            if idx[k] < cur_shape[k]:
                break
            base -= out_strides[k] * idx[k]
            idx[k] = 0
            k -= 1


if HAVE_NUMBA:
    _mul_mod_kernel = numba.njit(cache=True, nogil=True)(_mul_mod_kernel_py)
else:  # pragma: no cover
    _mul_mod_kernel = None


class _Box:
    """Dense coefficient box with the exponent of cell ``(0, ..., 0)`` in ``lo``."""

    __slots__ = ("data", "lo")

    def __init__(self, data: np.ndarray, lo: np.ndarray):
        self.data = data
        self.lo = lo

    def at(self, v) -> int:
        idx = np.asarray(v, dtype=np.int64) - self.lo
        if np.any(idx < 0) or np.any(idx >= self.data.shape):
            return 0
        return int(self.data[tuple(idx)])


def _box_from_terms(terms: dict, dim: int, dtype, modulus: int | None) -> _Box:
    exps = np.array(list(terms), dtype=np.int64).reshape(-1, dim)
    lo = exps.min(axis=0)
    hi = exps.max(axis=0)
    data = np.zeros(tuple(hi - lo + 1), dtype=dtype)
    for e, c in terms.items():
        c = int(c)
        if modulus is not None:
            c %= modulus
        data[tuple(np.asarray(e) - lo)] = c
    return _Box(data, lo)


def _shifts(P_terms: dict, dim: int, modulus: int | None):
    exps = np.array(list(P_terms), dtype=np.int64).reshape(-1, dim)
    p_lo = exps.min(axis=0)
    span = exps.max(axis=0) - p_lo
    coeffs = [int(c) % modulus if modulus is not None else int(c) for c in P_terms.values()]
    keep = [i for i, c in enumerate(coeffs) if c]
    return exps[keep] - p_lo, [coeffs[i] for i in keep], p_lo, span


def _step_slices(box: _Box, shifts, coeffs, p_lo, span, modulus) -> _Box:
    cur = box.data
    out = np.zeros(tuple(np.asarray(cur.shape) + span), dtype=cur.dtype)
    if modulus is None or cur.dtype == object:
        batch = len(coeffs)
    else:
        # terms that can be accumulated before int64 overflow: m + batch * (m - 1)**2 < 2**63
        batch = max(1, (2**63 - 1 - modulus) // max(1, (modulus - 1) ** 2))
    pending = 0
    for s, c in zip(shifts, coeffs):
        sl = tuple(slice(int(a), int(a) + n) for a, n in zip(s, cur.shape))
        out[sl] += c * cur
        pending += 1
        if modulus is not None and pending >= batch:
            np.remainder(out, modulus, out=out)
            pending = 0
    if modulus is not None and pending:
        np.remainder(out, modulus, out=out)
    return _Box(out, box.lo + p_lo)


def _step_numba(box: _Box, shifts, coeffs, p_lo, span, modulus) -> _Box:
    cur = box.data
    out = np.zeros(tuple(np.asarray(cur.shape) + span), dtype=np.int64)
    strides = np.array(out.strides, dtype=np.int64) // out.itemsize
    offsets = (shifts * strides).sum(axis=1).astype(np.int64)
    _mul_mod_kernel(cur.reshape(-1), np.array(cur.shape, dtype=np.int64), strides,
                    offsets, np.array(coeffs, dtype=np.int64), np.int64(modulus), out.reshape(-1))
    return _Box(out, box.lo + p_lo)


def constant_terms(P_terms: dict, Q_terms: dict, dim: int, N: int,
                   modulus: int | None = None, backend: str | None = None) -> list[int]:
    """Return ``[ct(P^n Q) for n in 0..N]`` as Python ints (residues if ``modulus``).

    ``P_terms`` and ``Q_terms`` map exponent tuples to integer coefficients.
    Only the current power is kept in memory.
    """
    backend = resolve_backend(backend)
    origin = (0,) * dim
    if not Q_terms:
        return [0] * (N + 1)
    native = modulus is not None and modulus < INT64_MODULUS_LIMIT
    dtype = np.int64 if native else object
    shifts, coeffs, p_lo, span = _shifts(P_terms, dim, modulus)
    box = _box_from_terms(Q_terms, dim, dtype, modulus)
    out = [box.at(origin)]
    if not coeffs:
        return out + [0] * N
    step = _step_numba if native and backend == "numba" else _step_slices
    for _ in range(N):
        box = step(box, shifts, coeffs, p_lo, span, modulus)
        out.append(box.at(origin))
    return out
