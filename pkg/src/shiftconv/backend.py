"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

Backend selection: SHIFTCONV_BACKEND=numba|numpy (default: numba when
importable).  Worker count: SHIFTCONV_THREADS (default: logical cores).
Every kernel writes disjoint output ranges per chunk and chunk contents
do not depend on the worker count, so results are bit-identical for any
thread setting.
"""

from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


def backend_name() -> str:
    """Active kernel backend, resolved from the environment at call time."""
    forced = os.environ.get("SHIFTCONV_BACKEND", "").strip().lower()
    if forced == "numpy":
        return "numpy"
    if forced == "numba":
        if not HAS_NUMBA:
            raise RuntimeError("SHIFTCONV_BACKEND=numba but numba is not importable")
        return "numba"
    return "numba" if HAS_NUMBA else "numpy"


def thread_count() -> int:
    raw = os.environ.get("SHIFTCONV_THREADS", "").strip()
    if raw:
        n = int(raw)
        if n < 1:
            raise ValueError("SHIFTCONV_THREADS must be >= 1")
        return n
    return os.cpu_count() or 1


def _run_chunks(fn, chunk_args):
    """Run fn over chunk argument tuples, threaded when allowed.

    Chunks write to disjoint slices, so scheduling order is irrelevant.
    """
    workers = min(thread_count(), len(chunk_args))
    if workers <= 1 or backend_name() == "numpy":
        for args in chunk_args:
            fn(*args)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        list(pool.map(lambda a: fn(*a), chunk_args))


def _chunk_ranges(lo: int, hi: int, pieces: int):
    """Split [lo, hi) into at most `pieces` contiguous ranges."""
    n = hi - lo
    pieces = max(1, min(pieces, n))
    step = (n + pieces - 1) // pieces
    return [(s, min(s + step, hi)) for s in range(lo, hi, step)]


# ---------------------------------------------------------------------------
# divisor sieve: out[m] += coef[d] for every d | m, m in [lo, hi)
# ---------------------------------------------------------------------------


@njit(nogil=True, cache=True)
def _sieve_range_numba(out, coef, lo, hi):  # pragma: no cover - jitted
    for d in range(1, hi):
        m = d * max(1, (lo + d - 1) // d)
        if m < d:
            m = d
        for mm in range(m, hi, d):
            out[mm] += coef[d]


def _sieve_range_numpy(out, coef, lo, hi):
    for d in range(1, hi):
        m = d * max(1, (lo + d - 1) // d)
        out[m:hi:d] += coef[d]


def divisor_sieve(coef: np.ndarray, size: int) -> np.ndarray:
    """Accumulate sum_{d|m} coef[d] for m in [0, size); out[0] stays 0.

    coef must have length >= size.  Chunking over the output range keeps
    each index owned by exactly one worker.
    """
    out = np.zeros(size, dtype=np.complex128)
    kern = _sieve_range_numba if backend_name() == "numba" else _sieve_range_numpy
    pieces = thread_count() * 4 if size > 1 << 15 else 1
    chunks = [(out, coef, lo, hi) for lo, hi in _chunk_ranges(1, size, pieces)]
    _run_chunks(kern, chunks)
    return out


# ---------------------------------------------------------------------------
# K-Bessel by trapezoid on the paper's integral after t = e^x:
#   K_u(y) = (1/2) integral_R exp(-y cosh x + u x) dx.
# For |Im u| <= 3 the even fold integral_0^inf exp(-y cosh x) cosh(ux) dx
# suffices.  For larger |Im u| the value is exponentially smaller than the
# real-axis integrand, so the line is shifted to x + i*beta inside the
# analyticity strip |beta| < pi/2: up to the oscillation-suppression
# height pi/2 - min(0.9, 9/|Im u|) when y < |Im u|, and to the
# steepest-descent height arcsin(|Im u| / y) when y >= |Im u|.  On those
# lines the node magnitudes track the result, which keeps the trapezoid
# sum relatively accurate in double precision.
# ---------------------------------------------------------------------------

_FOLD_IMAG_LIMIT = 3.0


@njit(nogil=True, cache=True)
def _k_one(y, u, refine):  # pragma: no cover - jitted
    theta = u.imag
    if theta <= _FOLD_IMAG_LIMIT:
        h = min(0.14, 2.0 * math.pi / (2.0 * theta + 48.0))
        if y > 1.0:
            h = min(h, 0.7 / math.sqrt(y))
        h /= refine
        q = 55.0
        x0 = math.acosh(1.0 + (q + 5.0) / y)
        xmax = math.acosh(1.0 + (q + abs(u.real) * x0 + 5.0) / y)
        n = int(xmax / h) + 1
        acc = 0.5 * math.exp(-y) + 0.0j
        for i in range(1, n + 1):
            x = i * h
            w = math.exp(-y * math.cosh(x))
            if w == 0.0:
                break
            acc += w * cmath.cosh(u * x)
        return acc * h
    if y < theta:
        beta = math.pi / 2.0 - min(0.9, 9.0 / theta)
        h = min(2.0 * math.pi * (math.pi / 2.0 - beta) / 34.0, 0.1)
    else:
        beta = min(math.asin(theta / y), 1.45)
        h = min(0.1, 2.0 * math.pi / (2.0 * theta + 48.0), (math.pi / 2.0 - beta) / 6.0)
    if y > 1.0:
        h = min(h, 0.7 / math.sqrt(y))
    h /= refine
    y_eff = y * math.cos(beta)
    q = 55.0
    x0 = math.acosh(1.0 + (q + 5.0) / y_eff)
    xmax = math.acosh(1.0 + (q + abs(u.real) * x0 + 5.0) / y_eff)
    n = int(xmax / h) + 1
    acc = 0.0 + 0.0j
    for i in range(-n, n + 1):
        z = complex(i * h, beta)
        acc += cmath.exp(-y * cmath.cosh(z) + u * z)
    return 0.5 * acc * h


@njit(nogil=True, cache=True)
def _kbessel_numba(out, ys, ur, ui, refine):  # pragma: no cover - jitted
    u = complex(ur, ui)
    for j in range(out.shape[0]):
        out[j] = _k_one(ys[j], u, refine)


def _k_one_numpy(y, u, refine):
    theta = u.imag
    if theta <= _FOLD_IMAG_LIMIT:
        h = min(0.14, 2.0 * math.pi / (2.0 * theta + 48.0))
        if y > 1.0:
            h = min(h, 0.7 / math.sqrt(y))
        h /= refine
        q = 55.0
        x0 = math.acosh(1.0 + (q + 5.0) / y)
        xmax = math.acosh(1.0 + (q + abs(u.real) * x0 + 5.0) / y)
        n = int(xmax / h) + 1
        x = np.arange(n + 1) * h
        vals = np.exp(-y * np.cosh(x)) * np.cosh(u * x)
        vals[0] *= 0.5
        return h * vals.sum()
    if y < theta:
        beta = math.pi / 2.0 - min(0.9, 9.0 / theta)
        h = min(2.0 * math.pi * (math.pi / 2.0 - beta) / 34.0, 0.1)
    else:
        beta = min(math.asin(theta / y), 1.45)
        h = min(0.1, 2.0 * math.pi / (2.0 * theta + 48.0), (math.pi / 2.0 - beta) / 6.0)
    if y > 1.0:
        h = min(h, 0.7 / math.sqrt(y))
    h /= refine
    y_eff = y * math.cos(beta)
    q = 55.0
    x0 = math.acosh(1.0 + (q + 5.0) / y_eff)
    xmax = math.acosh(1.0 + (q + abs(u.real) * x0 + 5.0) / y_eff)
    n = int(xmax / h) + 1
    z = np.arange(-n, n + 1) * h + 1j * beta
    return 0.5 * h * np.sum(np.exp(-y * np.cosh(z) + u * z))


def _kbessel_numpy(out, ys, ur, ui, refine):
    u = complex(ur, ui)
    for j in range(out.shape[0]):
        out[j] = _k_one_numpy(ys[j], u, refine)


def kbessel_many(u: complex, ys: np.ndarray, refine: int = 1) -> np.ndarray:
    """K_u evaluated at each positive y in ys; refine shrinks the step."""
    ys = np.asarray(ys, dtype=np.float64)
    out = np.empty(ys.shape[0], dtype=np.complex128)
    if ys.shape[0] == 0:
        return out
    if u.imag < 0:
        u = -u  # K_u = K_{-u}; keep the shifted contour on one side
    kern = _kbessel_numba if backend_name() == "numba" else _kbessel_numpy
    pieces = thread_count() if ys.shape[0] >= 256 else 1
    chunks = [
        (out[lo:hi], ys[lo:hi], u.real, u.imag, float(refine))
        for lo, hi in _chunk_ranges(0, ys.shape[0], pieces)
    ]
    _run_chunks(kern, chunks)
    return out


# ---------------------------------------------------------------------------
# Dirichlet-series sweep: out[j] = sum_i coeffs[i] * exp(-(sigma0 + i*t_j) * logn[i])
# ---------------------------------------------------------------------------


@njit(nogil=True, cache=True)
def _sweep_numba(out, coeffs, logn, sigma0, ts):  # pragma: no cover - jitted
    for j in range(out.shape[0]):
        s = complex(sigma0, ts[j])
        acc = 0.0 + 0.0j
        for i in range(coeffs.shape[0]):
            acc += coeffs[i] * cmath.exp(-s * logn[i])
        out[j] = acc


def _sweep_numpy(out, coeffs, logn, sigma0, ts):
    base = coeffs * np.exp(-sigma0 * logn)
    block = max(1, (1 << 22) // max(1, logn.shape[0]))
    for lo in range(0, out.shape[0], block):
        hi = min(lo + block, out.shape[0])
        phase = np.exp(-1j * np.outer(ts[lo:hi], logn))
        out[lo:hi] = phase @ base


def dirichlet_sweep(
    coeffs: np.ndarray, logn: np.ndarray, sigma0: float, ts: np.ndarray
) -> np.ndarray:
    """Evaluate a finite Dirichlet series along the line Re(s) = sigma0."""
    out = np.empty(ts.shape[0], dtype=np.complex128)
    if ts.shape[0] == 0:
        return out
    kern = _sweep_numba if backend_name() == "numba" else _sweep_numpy
    pieces = thread_count() if ts.shape[0] >= 64 else 1
    chunks = [
        (out[lo:hi], coeffs, logn, sigma0, ts[lo:hi])
        for lo, hi in _chunk_ranges(0, ts.shape[0], pieces)
    ]
    _run_chunks(kern, chunks)
    return out
