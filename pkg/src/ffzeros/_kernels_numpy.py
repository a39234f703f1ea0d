"""Pure-numpy kernel implementations.

Selected by FFZEROS_BACKEND=numpy, or automatically when numba is not
importable.  Must agree with _kernels_numba to floating-point roundoff;
the integer kernels must agree exactly.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "numpy"

# repeated inverse roots split by ~sqrt(coefficient roundoff); anything
# closer than this fraction of the start radius is one multiple root
CLUSTER_REL = 1e-5


def residue_mul_perm(q, d, g_digits, red_digits, add_t, mul_t):
    """Permutation of residue codes given by multiplication by g mod Q.

    Codes are base-q digit strings of the d residue coefficients.  Q is
    monic of degree d and red_digits holds the d coefficients of -Q mod
    T^d, so T^m reduces to sum_i red_digits[i] T^(m-d+i).  Returns
    int64[q^d] mapping code(x) -> code(x*g mod Q); 0 maps to 0.
    """
    qd = q**d
    codes = np.arange(qd, dtype=np.int64)
    digits = np.empty((qd, d), dtype=np.int64)
    tmp = codes
    for i in range(d):
        digits[:, i] = tmp % q
        tmp = tmp // q
    width = 2 * d - 1
    acc = np.zeros((qd, width), dtype=np.int64)
    for i in range(d):
        col = digits[:, i]
        for j in range(d):
            gj = int(g_digits[j])
            if gj:
                acc[:, i + j] = add_t[acc[:, i + j], mul_t[col, gj]]
    for m in range(width - 1, d - 1, -1):
        high = acc[:, m]
        for i in range(d):
            ri = int(red_digits[i])
            if ri:
                acc[:, m - d + i] = add_t[acc[:, m - d + i], mul_t[high, ri]]
    out = np.zeros(qd, dtype=np.int64)
    w = 1
    for i in range(d):
        out += acc[:, i] * w
        w *= q
    return out


def cycle_dlog(perm, one_code, order):
    """Discrete logs along the cycle of perm starting at one_code.

    perm is the multiply-by-generator permutation on codes; entry i of
    the result is the exponent t with g^t having code i, or -1 for codes
    off the cycle (the code 0).
    """
    dlog = np.full(perm.shape[0], -1, dtype=np.int64)
    permL = perm.tolist()
    x = int(one_code)
    dlog[x] = 0
    for t in range(1, order):
        x = permL[x]
        dlog[x] = t
    return dlog


def char_sums(weights, ks, omega):
    """out[t, m] = sum_j weights[m, j] * omega[(ks[t] * j) mod N].

    weights is float64 (M, N), ks int64, omega complex128 (N,) holding
    the N-th roots of unity.  numpy's pairwise matmul summation keeps
    the roundoff comparable to the compensated loop in the numba twin.
    """
    N = omega.shape[0]
    j = np.arange(N, dtype=np.int64)
    out = np.empty((ks.shape[0], weights.shape[0]), dtype=np.complex128)
    for t in range(ks.shape[0]):
        k = int(ks[t]) % N
        out[t, :] = weights @ omega[(k * j) % N]
    return out


def conv_sparse_acc(acc, x, shifts, wts):
    """acc[(j + s) mod N] += w * x[j] for each (s, w) pair, in place.

    Signed int64 throughout; subtraction is a negative weight.
    """
    N = acc.shape[0]
    for t in range(shifts.shape[0]):
        s = int(shifts[t]) % N
        w = int(wts[t])
        if w == 0:
            continue
        if s == 0:
            acc += w * x
        else:
            acc[s:] += w * x[: N - s]
            acc[:s] += w * x[N - s :]
    return acc


def _cluster_refine(a, M, m, x0, tau):
    """Sharpen an m-fold root estimate x0 of the polynomial with low-first
    coefficients a (degree M).

    A cluster of m computed roots locates each member only to the m-th
    root of the coefficient error, but the nearby simple zero of the
    (m-1)-th derivative agrees with the true multiple root to first
    order, so Newton on that derivative recovers it to full precision.
    Falls back to x0 if the iteration leaves the cluster neighbourhood.
    """
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


def _collapse_clusters(z, a, M, tau):
    """Replace every group of roots within tau of each other (transitive
    closure) by one refined multiple root, in place."""
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


def aberth_batch(coeffs, radius, tol, maxit, polish):
    """Simultaneous root finding for a batch of same-degree polynomials.

    coeffs is complex128 (B, M+1), low order first, leading column
    nonzero.  Starts from equally spaced points on the circle of the
    given radius with a fixed angular offset, applies Aberth-Ehrlich
    updates until every relative step is below tol or maxit passes, then
    takes Newton polish steps.  Root groups closer than CLUSTER_REL of
    the radius collapse to one refined multiple root.  Returns (roots
    (B, M), iterations (B,), final max relative step (B,)).
    """
    B, Mp1 = coeffs.shape
    M = Mp1 - 1
    if M == 0:
        return (
            np.empty((B, 0), dtype=np.complex128),
            np.zeros(B, dtype=np.int64),
            np.zeros(B, dtype=np.float64),
        )
    offs = 2.0 * np.pi * np.arange(M) / M + 0.3737
    z = np.broadcast_to(radius * np.exp(1j * offs), (B, M)).copy()
    iters = np.full(B, maxit, dtype=np.int64)
    laststep = np.zeros(B, dtype=np.float64)
    active = np.ones(B, dtype=bool)
    eye = np.eye(M, dtype=bool)
    for it in range(1, maxit + 1):
        za = z[active]
        p = np.zeros_like(za)
        dp = np.zeros_like(za)
        ca = coeffs[active]
        for idx in range(M, -1, -1):
            dp = dp * za + p
            p = p * za + ca[:, idx, None]
        dp = np.where(dp == 0, 1e-300, dp)
        ratio = p / dp
        diff = za[:, :, None] - za[:, None, :]
        diff = np.where(eye[None, :, :], 1.0, diff)
        diff = np.where(diff == 0, 1e-300, diff)
        recip = 1.0 / diff
        srow = recip.sum(axis=2) - 1.0
        denom = 1.0 - ratio * srow
        denom = np.where(denom == 0, 1.0, denom)
        w = ratio / denom
        za = za - w
        step = (np.abs(w) / np.maximum(np.abs(za), 1e-300)).max(axis=1)
        z[active] = za
        laststep[active] = step
        done = step <= tol
        if done.any():
            act_idx = np.flatnonzero(active)
            iters[act_idx[done]] = it
            active[act_idx[done]] = False
        if not active.any():
            break
    for _ in range(polish):
        p = np.zeros_like(z)
        dp = np.zeros_like(z)
        for idx in range(M, -1, -1):
            dp = dp * z + p
            p = p * z + coeffs[:, idx, None]
        dp = np.where(dp == 0, 1e-300, dp)
        z = z - p / dp
    if M >= 2:
        tau = CLUSTER_REL * radius
        for b in range(B):
            _collapse_clusters(z[b], coeffs[b], M, tau)
    return z, iters, laststep
