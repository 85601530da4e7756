"""Hot numeric kernels with numba acceleration.

Set ``BERGKREIN_DISABLE_NUMBA=1`` to force the pure-numpy fallback path
(useful for debugging and for the benchmark in ``benchmarks/``).
Both paths are exported so they can be compared directly:
``split_sum`` / ``split_sum_numpy`` and
``hermitian_eigenvalues`` / ``hermitian_eigenvalues_numpy``.
"""
from __future__ import annotations

import math
import os

import numpy as np

NUMBA_ENABLED = os.environ.get("BERGKREIN_DISABLE_NUMBA", "").lower() not in (
    "1", "true", "yes",
)
if NUMBA_ENABLED:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        NUMBA_ENABLED = False


def _split_sum_loop(x, y, n_max):
    """Partial sums of the even/odd binomial halves of sum_n (x - y)^n.

    Returns (k_plus, k_minus) truncated at outer index n_max; the closed
    form of the full series is 1/(1 - (x - y)).
    """
    kp = 1.0 + 0.0j
    km = 0.0 + 0.0j
    xpow = np.empty(n_max + 1, np.complex128)
    ypow = np.empty(n_max + 1, np.complex128)
    xpow[0] = 1.0 + 0.0j
    ypow[0] = 1.0 + 0.0j
    for j in range(1, n_max + 1):
        xpow[j] = xpow[j - 1] * x
        ypow[j] = ypow[j - 1] * y
    row = np.zeros(n_max + 1, np.float64)
    row[0] = 1.0
    for n in range(1, n_max + 1):
        for k in range(n, 0, -1):
            row[k] = row[k] + row[k - 1]
        for k in range(0, n + 1):
            term = row[k] * xpow[n - k] * ypow[k]
            if k % 2 == 0:
                kp += term
            else:
                km += term
    return kp, km


def _split_sum_numpy(x, y, n_max):
    """Vectorized fallback for _split_sum_loop (same contract)."""
    xpow = np.power(complex(x), np.arange(n_max + 1))
    ypow = np.power(complex(y), np.arange(n_max + 1))
    kp = 1.0 + 0.0j
    km = 0.0 + 0.0j
    row = np.zeros(n_max + 1, np.float64)
    row[0] = 1.0
    for n in range(1, n_max + 1):
        row[1:n + 1] = row[1:n + 1] + row[0:n]
        terms = row[:n + 1] * xpow[n::-1] * ypow[:n + 1]
        kp += terms[0::2].sum()
        km += terms[1::2].sum()
    return kp, km


def _jacobi_eigs_loop(a, tol):
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi sweeps.

    Sweeps until the off-diagonal Frobenius norm drops below tol
    (or 100 sweeps). Returns sorted real eigenvalues.
    """
    n = a.shape[0]
    a = a.copy()
    for _sweep in range(100):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += abs(a[i, j]) ** 2
        if math.sqrt(off) <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r < 1e-300:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                # phase that makes the pivot real, then a real rotation
                ph = apq.conjugate() / r
                tau = (aqq - app) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # columns: B = A @ G with G[p,p]=c, G[p,q]=s,
                # G[q,p]=-s*ph, G[q,q]=c*ph
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * ph * akq
                    a[k, q] = s * akp + c * ph * akq
                # rows: A = G^H @ B
                phc = ph.conjugate()
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * phc * aqk
                    a[q, k] = s * apk + c * phc * aqk
    eigs = np.empty(n, np.float64)
    for i in range(n):
        eigs[i] = a[i, i].real
    return np.sort(eigs)


split_sum_numpy = _split_sum_numpy
hermitian_eigenvalues_numpy = _jacobi_eigs_loop

if NUMBA_ENABLED:
    split_sum = njit(cache=True)(_split_sum_loop)
    hermitian_eigenvalues = njit(cache=True)(_jacobi_eigs_loop)
else:
    split_sum = _split_sum_loop
    hermitian_eigenvalues = _jacobi_eigs_loop
