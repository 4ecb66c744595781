"""Compiled inner loops for the eigenvalue and singular value solvers.

Each kernel reports failure through a status value instead of raising, so
the Python wrappers in :mod:`speclab.numkernel.eigen` and
:mod:`speclab.numkernel.svd` own all error handling.
"""

import numpy as np
from numba import njit

DEFLATION_TOL = 1e-14
_TINY = np.finfo(np.float64).tiny


@njit(cache=True, nogil=True)
def _wilkinson_shift(a, b, c, d):
    # eigenvalue of [[a, b], [c, d]] closest to d
    t = 0.5 * (a - d)
    disc = np.sqrt(t * t + b * c)
    den_p = t + disc
    den_m = t - disc
    den = den_p if abs(den_p) >= abs(den_m) else den_m
    if den == 0:
        return d
    return d - (b * c) / den


@njit(cache=True, nogil=True)
def hessenberg_qr(H, budget):
    """Eigenvalues of the upper Hessenberg matrix ``H`` (overwritten).

    Complex single-shift QR with Wilkinson shifts and an exceptional shift
    every 10 stalled iterations. Returns ``(w, iterations, max_neglected,
    stuck)`` where ``stuck`` is -1 on success, else the index that failed to
    deflate within ``budget`` iterations.
    """
    n = H.shape[0]
    w = np.zeros(n, np.complex128)
    hnorm = 0.0
    for r in range(n):
        for c in range(max(0, r - 1), n):
            hnorm += abs(H[r, c])
    if hnorm == 0.0:
        return w, 0, 0.0, -1
    total = 0
    max_neglected = 0.0
    i = n - 1
    while i >= 0:
        done = False
        its = 0
        while True:
            # locate the bottom of the active unreduced block
            lo = i
            while lo > 0:
                h = abs(H[lo, lo - 1])
                tst = abs(H[lo - 1, lo - 1]) + abs(H[lo, lo])
                if tst == 0.0:
                    tst = hnorm
                if h <= DEFLATION_TOL * tst or h <= _TINY:
                    if h > max_neglected:
                        max_neglected = h
                    H[lo, lo - 1] = 0.0
                    break
                lo -= 1
            if lo == i:
                w[i] = H[i, i]
                done = True
                break
            if its >= budget:
                break
            its += 1
            total += 1
            if its % 10 == 0:
                mu = H[i, i] + 0.75 * abs(H[i, i - 1])
            else:
                mu = _wilkinson_shift(H[i - 1, i - 1], H[i - 1, i], H[i, i - 1], H[i, i])
            x = H[lo, lo] - mu
            y = H[lo + 1, lo]
            for k in range(lo, i):
                if k > lo:
                    x = H[k, k - 1]
                    y = H[k + 1, k - 1]
                ax = abs(x)
                r = np.hypot(ax, abs(y))
                if r == 0.0:
                    continue
                if ax == 0.0:
                    c = 0.0
                    s = 1.0 + 0.0j
                else:
                    c = ax / r
                    s = (x / ax) * np.conj(y) / r
                cs = np.conj(s)
                j0 = k - 1 if k > lo else lo
                for j in range(j0, i + 1):
                    t1 = H[k, j]
                    t2 = H[k + 1, j]
                    H[k, j] = c * t1 + s * t2
                    H[k + 1, j] = -cs * t1 + c * t2
                if k > lo:
                    H[k + 1, k - 1] = 0.0
                rmax = k + 2 if k + 2 < i else i
                for rr in range(lo, rmax + 1):
                    t1 = H[rr, k]
                    t2 = H[rr, k + 1]
                    H[rr, k] = c * t1 + cs * t2
                    H[rr, k + 1] = -s * t1 + c * t2
        if not done:
            return w, total, max_neglected, i
        i -= 1
    return w, total, max_neglected, -1


@njit(cache=True, nogil=True)
def symmetric_tridiagonal_ql(d, e, budget):
    """Eigenvalues of the real symmetric tridiagonal matrix (d, e).

    Implicit QL with Wilkinson-type shifts. ``d`` (length n) and ``e``
    (length n, last entry ignored) are overwritten; on return ``d`` holds the
    unsorted eigenvalues. Returns ``(iterations, max_neglected, stuck)``.
    """
    n = d.shape[0]
    e[n - 1] = 0.0
    anorm = 0.0
    for j in range(n):
        anorm = max(anorm, abs(d[j]) + abs(e[j]))
    total = 0
    max_neglected = 0.0
    for lo in range(n):
        its = 0
        while True:
            m = lo
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if dd == 0.0:
                    dd = anorm
                if abs(e[m]) <= DEFLATION_TOL * dd or abs(e[m]) <= _TINY:
                    if abs(e[m]) > max_neglected:
                        max_neglected = abs(e[m])
                    e[m] = 0.0
                    break
                m += 1
            if m == lo:
                break
            if its >= budget:
                return total, max_neglected, lo
            its += 1
            total += 1
            g = (d[lo + 1] - d[lo]) / (2.0 * e[lo])
            r = np.hypot(g, 1.0)
            g = d[m] - d[lo] + e[lo] / (g + (r if g >= 0.0 else -r))
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            i = m - 1
            while i >= lo:
                f = s * e[i]
                b = c * e[i]
                r = np.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if underflow:
                continue
            d[lo] -= p
            e[lo] = g
            e[m] = 0.0
    return total, max_neglected, -1


@njit(cache=True, nogil=True)
def one_sided_jacobi(A, sine_tol, max_sweeps):
    """Column norms of ``A`` after cyclic one-sided Jacobi orthogonalization.

    ``A`` is overwritten. Returns ``(sigma, sweeps, converged)`` with sigma
    unsorted.
    """
    n_rows, n = A.shape
    norms2 = np.empty(n)
    for j in range(n):
        acc = 0.0
        for r in range(n_rows):
            v = A[r, j]
            acc += v.real * v.real + v.imag * v.imag
        norms2[j] = acc
    sweeps = 0
    converged = False
    while sweeps < max_sweeps:
        sweeps += 1
        max_sine = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = norms2[p]
                beta = norms2[q]
                if alpha == 0.0 or beta == 0.0:
                    continue
                gamma = 0.0j
                for r in range(n_rows):
                    gamma += np.conj(A[r, p]) * A[r, q]
                g = abs(gamma)
                if g <= 1e-15 * np.sqrt(alpha * beta) or g == 0.0:
                    continue
                # rotate column q by a phase so the inner product is real
                phase = np.conj(gamma) / g
                zeta = (beta - alpha) / (2.0 * g)
                t = 1.0 / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
                if zeta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                if s > max_sine:
                    max_sine = s
                elif -s > max_sine:
                    max_sine = -s
                for r in range(n_rows):
                    ap = A[r, p]
                    aq = A[r, q] * phase
                    A[r, p] = c * ap - s * aq
                    A[r, q] = s * ap + c * aq
                norms2[p] = alpha - t * g
                norms2[q] = beta + t * g
        # refresh norms to limit drift from the incremental updates
        for j in range(n):
            acc = 0.0
            for r in range(n_rows):
                v = A[r, j]
                acc += v.real * v.real + v.imag * v.imag
            norms2[j] = acc
        if max_sine <= sine_tol:
            converged = True
            break
    sigma = np.sqrt(norms2)
    return sigma, sweeps, converged
