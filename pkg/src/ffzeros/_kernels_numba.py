"""numba-jitted kernel implementations.

Twin of _kernels_numpy with identical signatures and semantics.  The
float kernels use compensated (Kahan) summation, so fastmath stays off;
cache=True persists the compiled artifacts next to the package and
nogil=True lets the chunked thread pool overlap compute.
"""

from __future__ import annotations

import numpy as np
from numba import njit

BACKEND_NAME = "numba"

# keep in sync with _kernels_numpy.CLUSTER_REL
CLUSTER_REL = 1e-5


@njit(cache=True, nogil=True)
def _cluster_refine(a, M, m, x0, tau):
    L = M - m + 1
    d = np.empty(L + 1, dtype=np.complex128)
    for t in range(L + 1):
        f = 1.0
        for u in range(t + 1, t + m):
            f *= u
        d[t] = a[t + m - 1] * f
    x = x0
    for _ in range(64):
        p = d[L]
        dp = complex(0.0, 0.0)
        for idx in range(L - 1, -1, -1):
            dp = dp * x + p
            p = p * x + d[idx]
        if dp.real == 0.0 and dp.imag == 0.0:
            break
        step = p / dp
        xn = x - step
        if abs(xn - x0) > 4.0 * tau:
            return x0
        x = xn
        if abs(step) <= 1e-15 * (abs(x) + 1e-300):
            break
    return x


@njit(cache=True, nogil=True)
def _collapse_clusters(z, a, M, tau):
    cl = np.full(M, -1, dtype=np.int64)
    ncl = 0
    for j in range(M):
        if cl[j] >= 0:
            continue
        cl[j] = ncl
        changed = True
        while changed:
            changed = False
            for i in range(M):
                if cl[i] != ncl:
                    continue
                for t in range(M):
                    if cl[t] < 0 and abs(z[t] - z[i]) < tau:
                        cl[t] = ncl
                        changed = True
        ncl += 1
    for c in range(ncl):
        m = 0
        ssum = complex(0.0, 0.0)
        for j in range(M):
            if cl[j] == c:
                ssum += z[j]
                m += 1
        if m < 2:
            continue
        x = _cluster_refine(a, M, m, ssum / m, tau)
        for j in range(M):
            if cl[j] == c:
                z[j] = x


@njit(cache=True, nogil=True)
def residue_mul_perm(q, d, g_digits, red_digits, add_t, mul_t):
    qd = q**d
    width = 2 * d - 1
    out = np.empty(qd, dtype=np.int64)
    dig = np.empty(d, dtype=np.int64)
    acc = np.empty(width, dtype=np.int64)
    for code in range(qd):
        c = code
        for i in range(d):
            dig[i] = c % q
            c //= q
        for m in range(width):
            acc[m] = 0
        for i in range(d):
            a = dig[i]
            if a != 0:
                for j in range(d):
                    b = g_digits[j]
                    if b != 0:
                        acc[i + j] = add_t[acc[i + j], mul_t[a, b]]
        for m in range(width - 1, d - 1, -1):
            h = acc[m]
            if h != 0:
                for i in range(d):
                    r = red_digits[i]
                    if r != 0:
                        acc[m - d + i] = add_t[acc[m - d + i], mul_t[h, r]]
        enc = 0
        for i in range(d - 1, -1, -1):
            enc = enc * q + acc[i]
        out[code] = enc
    return out


@njit(cache=True, nogil=True)
def cycle_dlog(perm, one_code, order):
    dlog = np.full(perm.shape[0], -1, dtype=np.int64)
    x = one_code
    dlog[x] = 0
    for t in range(1, order):
        x = perm[x]
        dlog[x] = t
    return dlog


@njit(cache=True, nogil=True)
def char_sums(weights, ks, omega):
    N = omega.shape[0]
    M = weights.shape[0]
    out = np.empty((ks.shape[0], M), dtype=np.complex128)
    for t in range(ks.shape[0]):
        k = ks[t] % N
        for m in range(M):
            sr = 0.0
            si = 0.0
            cr = 0.0
            ci = 0.0
            idx = 0
            for j in range(N):
                w = weights[m, j]
                if w != 0.0:
                    om = omega[idx]
                    yr = w * om.real - cr
                    tr = sr + yr
                    cr = (tr - sr) - yr
                    sr = tr
                    yi = w * om.imag - ci
                    ti = si + yi
                    ci = (ti - si) - yi
                    si = ti
                idx += k
                if idx >= N:
                    idx -= N
            out[t, m] = complex(sr, si)
    return out


@njit(cache=True, nogil=True)
def conv_sparse_acc(acc, x, shifts, wts):
    N = acc.shape[0]
    for t in range(shifts.shape[0]):
        s = shifts[t] % N
        w = wts[t]
        if w == 0:
            continue
        for j in range(N - s):
            acc[s + j] += w * x[j]
        for j in range(N - s, N):
            acc[s + j - N] += w * x[j]
    return acc


@njit(cache=True, nogil=True)
def aberth_batch(coeffs, radius, tol, maxit, polish):
    B = coeffs.shape[0]
    M = coeffs.shape[1] - 1
    roots = np.empty((B, M), dtype=np.complex128)
    iters = np.zeros(B, dtype=np.int64)
    last = np.zeros(B, dtype=np.float64)
    if M == 0:
        return roots, iters, last
    z0 = np.empty(M, dtype=np.complex128)
    for j in range(M):
        ang = 2.0 * np.pi * j / M + 0.3737
        z0[j] = radius * complex(np.cos(ang), np.sin(ang))
    for b in range(B):
        z = z0.copy()
        w = np.empty(M, dtype=np.complex128)
        it_used = maxit
        step = 0.0
        for it in range(1, maxit + 1):
            for j in range(M):
                zj = z[j]
                p = coeffs[b, M]
                dp = complex(0.0, 0.0)
                for idx in range(M - 1, -1, -1):
                    dp = dp * zj + p
                    p = p * zj + coeffs[b, idx]
                if p.real == 0.0 and p.imag == 0.0:
                    w[j] = complex(0.0, 0.0)
                    continue
                if dp.real == 0.0 and dp.imag == 0.0:
                    dp = complex(1e-300, 0.0)
                ratio = p / dp
                s = complex(0.0, 0.0)
                for i in range(M):
                    if i != j:
                        dz = zj - z[i]
                        if dz.real == 0.0 and dz.imag == 0.0:
                            dz = complex(1e-300, 0.0)
                        s += 1.0 / dz
                den = 1.0 - ratio * s
                if den.real == 0.0 and den.imag == 0.0:
                    den = complex(1.0, 0.0)
                w[j] = ratio / den
            step = 0.0
            for j in range(M):
                z[j] = z[j] - w[j]
                az = abs(z[j])
                if az < 1e-300:
                    az = 1e-300
                rel = abs(w[j]) / az
                if rel > step:
                    step = rel
            if step <= tol:
                it_used = it
                break
        for _ in range(polish):
            for j in range(M):
                zj = z[j]
                p = coeffs[b, M]
                dp = complex(0.0, 0.0)
                for idx in range(M - 1, -1, -1):
                    dp = dp * zj + p
                    p = p * zj + coeffs[b, idx]
                if dp.real != 0.0 or dp.imag != 0.0:
                    z[j] = zj - p / dp
        if M >= 2:
            _collapse_clusters(z, coeffs[b], M, CLUSTER_REL * radius)
        for j in range(M):
            roots[b, j] = z[j]
        iters[b] = it_used
        last[b] = step
    return roots, iters, last
