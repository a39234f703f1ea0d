"""Dirichlet L-functions over F_q(T), built exactly and unitarized.

For a nontrivial character chi mod Q (Q monic irreducible of degree d)
the L-function is a polynomial in u = q^(-s):

    L(u, chi) = sum_{n=0}^{d-1} a_n(chi) u^n,
    a_n(chi) = sum over monic f of degree n of chi(f),

computed here as exact root-of-unity sums against the class histograms
of the unit-group table (no floating summation of character values one
polynomial at a time).  Dividing out the trivial zero of even characters
gives the completed polynomial of degree d - 1 - lambda_inf whose
inverse roots alpha_j all have modulus sqrt(q); the unitarized zero data
are the eigenangles theta_j = arg(alpha_j / sqrt(q)) in [-pi, pi).

The logarithmic derivative gives the prime-side coefficients

    c_chi(n) = sum over monic f of degree n of Lambda(f) chi(f)
             = -lambda_inf - q^(n/2) Tr(Theta^n),

an exact Newton-type identity that ties the zero side to the prime side
and is enforced here as a numeric invariant.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import algebra, characters
from .backend import kernels
from .errors import NumericInvariantError

ABERTH_TOL = 1e-13
ABERTH_MAXIT = 300
ABERTH_POLISH = 2
COMPLETION_TOL = 1e-9
RH_REL_TOL = 1e-9
ROOT_NUMBER_TOL = 1e-9
CHUNK = 256


@dataclass
class LData:
    """Zero data of one L-function.

    degree is deg of the completed polynomial, d - 1 - lambda_inf.
    coeffs are the d Dirichlet coefficients a_0..a_{d-1} (a_0 = 1);
    completed_coeffs the degree+1 coefficients after removing the
    trivial zero of an even character.  inv_roots are the alpha_j and
    eigenangles their unitarized arguments, sorted ascending in
    [-pi, pi); rh_residuals[j] = | |alpha_j| - sqrt(q) | aligned with
    the sorted angles.  root_number is the sign epsilon of the
    functional equation, of modulus 1.
    """

    modulus: characters.Modulus
    chi_index: int
    lambda_inf: int
    degree: int
    coeffs: np.ndarray
    completed_coeffs: np.ndarray
    remainder: complex
    inv_roots: np.ndarray
    eigenangles: np.ndarray
    rh_residuals: np.ndarray
    root_number: complex
    aberth_iterations: int

    @property
    def gammas(self):
        """Zero ordinates gamma = theta / log q."""
        return self.eigenangles / math.log(self.modulus.field.q)


def dirichlet_coefficients(chi, Q):
    """The d coefficients a_0..a_{d-1} of L(u, chi) as exact
    root-of-unity sums; a_0 = 1."""
    table = Q.table()
    W = _monic_weight_rows(table)
    A = kernels.char_sums(W, np.array([chi.k], dtype=np.int64), table.roots_of_unity)
    out = np.empty(Q.d, dtype=np.complex128)
    out[0] = 1.0
    out[1:] = A[0]
    return out


def _monic_weight_rows(table):
    """Monic degree histograms for degrees 1..d-1 as a float64 matrix,
    memoized on the table."""
    cached = getattr(table, "_monic_weight_rows", None)
    if cached is None:
        d = table.Q.d
        rows = [table.monic_hist(n) for n in range(1, d)]
        if rows:
            cached = np.vstack(rows).astype(np.float64)
        else:
            cached = np.zeros((0, table.Q.group_order), dtype=np.float64)
        table._monic_weight_rows = cached
    return cached


def complete(coeffs, lambda_inf):
    """Divide out the trivial zero at u = 1 for an even character.

    Returns (completed_coeffs, remainder).  For lambda_inf = 0 the
    polynomial is already complete and the remainder is 0.  For
    lambda_inf = 1 synthetic division by (1 - u) turns the coefficients
    into running sums; the remainder is the full sum L(1), which must
    vanish for an even character, and is required below 1e-9.
    """
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    if lambda_inf == 0:
        return coeffs.copy(), 0j
    partial = np.cumsum(coeffs)
    remainder = complex(partial[-1])
    if abs(remainder) >= COMPLETION_TOL:
        raise NumericInvariantError(
            f"nonzero remainder {abs(remainder):.3e} dividing out the trivial zero"
        )
    return partial[:-1], remainder


def eigenangles(completed, q):
    """Inverse roots and unitarized eigenangles of a completed
    polynomial.

    Returns (inv_roots, angles, rh_residuals), each sorted by angle
    ascending in [-pi, pi).  Raises NumericInvariantError when the
    root finder fails to converge or any |alpha| strays from sqrt(q)
    by 1e-9 sqrt(q) or more.
    """
    arr = np.asarray(completed, dtype=np.complex128)[None, :]
    alpha, theta, resid, _ = _eigendata_batch(arr, q)[0]
    return alpha, theta, resid


def _eigendata_batch(completed_rows, q):
    """Aberth + unitarization for same-degree completed polynomials."""
    B, Mp1 = completed_rows.shape
    M = Mp1 - 1
    sqrtq = math.sqrt(q)
    if M == 0:
        empty_c = np.zeros(0, dtype=np.complex128)
        empty_f = np.zeros(0, dtype=np.float64)
        return [(empty_c.copy(), empty_f.copy(), empty_f.copy(), 0) for _ in range(B)]
    if np.any(np.abs(completed_rows[:, -1]) == 0.0):
        raise NumericInvariantError("completed polynomial has a vanishing top term")
    roots, iters, last = kernels.aberth_batch(
        completed_rows, 1.0 / sqrtq, ABERTH_TOL, ABERTH_MAXIT, ABERTH_POLISH
    )
    bad = (iters >= ABERTH_MAXIT) & (last > ABERTH_TOL * 100)
    if np.any(bad):
        worst = float(last[bad].max())
        raise NumericInvariantError(
            f"root finder did not converge; worst relative step {worst:.3e}"
        )
    out = []
    for b in range(B):
        alpha = 1.0 / roots[b]
        theta = np.angle(alpha / sqrtq)
        theta = np.where(theta >= np.pi, theta - 2.0 * np.pi, theta)
        order = np.argsort(theta, kind="stable")
        theta = theta[order]
        alpha = alpha[order]
        resid = np.abs(np.abs(alpha) - sqrtq)
        if resid.max() >= RH_REL_TOL * sqrtq:
            raise NumericInvariantError(
                f"inverse root modulus off the critical circle by {resid.max():.3e}"
            )
        out.append((alpha, theta, resid, int(iters[b])))
    return out


def root_number(completed, q):
    """epsilon = (top coefficient) q^(-deg/2); modulus 1 enforced."""
    arr = np.asarray(completed, dtype=np.complex128)
    M = arr.shape[0] - 1
    if M == 0:
        return 1 + 0j
    eps = complex(arr[-1]) * q ** (-M / 2.0)
    if abs(abs(eps) - 1.0) >= ROOT_NUMBER_TOL:
        raise NumericInvariantError(f"root number modulus {abs(eps):.12f} is not 1")
    return eps


def functional_equation_residual(L, Lbar):
    """Largest violation of the reflection identity on a fixed 32-point
    grid of central-line points.

    With P the completed polynomial of chi and Pbar that of its
    conjugate, the s -> 1 - s functional equation reads, in u = q^(-s),

        P(u) = eps q^(M/2) u^M Pbar(1/(q u)),

    evaluated at u = q^(-1/2) e^(-i t log q) for 32 equally spaced t in
    the half-open period window.  eps comes from the top completed
    coefficient and must lie on the unit circle.  Degree 0 returns 0.
    """
    b = L.completed_coeffs
    bbar = Lbar.completed_coeffs
    M = L.degree
    if M != Lbar.degree:
        raise ValueError("conjugate data must share the completed degree")
    if M == 0:
        return 0.0
    q = L.modulus.field.q
    eps = root_number(b, q)
    logq = math.log(q)
    t = -np.pi / logq + (2.0 * np.pi / logq) * np.arange(32) / 32.0
    u = q**-0.5 * np.exp(-1j * t * logq)
    lhs = np.zeros_like(u)
    for j in range(M, -1, -1):
        lhs = lhs * u + b[j]
    v = 1.0 / (q * u)
    rhs = np.zeros_like(v)
    for j in range(M, -1, -1):
        rhs = rhs * v + bbar[j]
    rhs = eps * q ** (M / 2.0) * u**M * rhs
    return float(np.abs(lhs - rhs).max())


def trace(L, n):
    """Tr(Theta^n) = sum_j e^(i n theta_j); n may be any integer."""
    return complex(np.exp(1j * n * L.eigenangles).sum())


def c_coefficient(chi, n, Q):
    """Prime-side coefficient sum over monic degree-n prime powers of
    Lambda(f) chi(f), exact up to the root-of-unity rounding."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    if n == 0:
        return 0j
    table = Q.table()
    w = table.prime_power_weights(n).astype(np.float64)[None, :]
    val = kernels.char_sums(w, np.array([chi.k], dtype=np.int64), table.roots_of_unity)
    return complex(val[0, 0])


def family_c_matrix(Q, n_list, ks=None):
    """c_chi(n) for every chi in the family (rows, ascending k by
    default) and each n in n_list (columns)."""
    table = Q.table()
    n_list = [int(n) for n in n_list]
    if any(n < 1 for n in n_list):
        raise ValueError("prime-side degrees must be >= 1")
    rows = np.vstack([table.prime_power_weights(n) for n in n_list]).astype(np.float64)
    if ks is None:
        ks = np.arange(1, Q.group_order, dtype=np.int64)
    else:
        ks = np.asarray(ks, dtype=np.int64)
    out = np.empty((ks.shape[0], len(n_list)), dtype=np.complex128)
    for lo in range(0, ks.shape[0], CHUNK):
        sel = ks[lo : lo + CHUNK]
        out[lo : lo + sel.shape[0]] = kernels.char_sums(
            rows, sel, table.roots_of_unity
        )
    return out


def newton_check(L, chi, n, Q):
    """|c_chi(n) + q^(n/2) Tr(Theta^n) + lambda_inf|, which is 0 in
    exact arithmetic for every n >= 1."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    q = Q.field.q
    c = c_coefficient(chi, n, Q)
    return abs(c + q ** (n / 2.0) * trace(L, n) + chi.lambda_inf)


def make_ldata(Q, chi):
    """L-data for a single character; the family path in FamilyData is
    the batched equivalent."""
    coeffs = dirichlet_coefficients(chi, Q)
    completed, rem = complete(coeffs, chi.lambda_inf)
    alpha, theta, resid, its = _eigendata_batch(
        np.asarray(completed, dtype=np.complex128)[None, :], Q.field.q
    )[0]
    eps = root_number(completed, Q.field.q)
    return LData(
        modulus=Q,
        chi_index=chi.k,
        lambda_inf=chi.lambda_inf,
        degree=completed.shape[0] - 1,
        coeffs=coeffs,
        completed_coeffs=completed,
        remainder=rem,
        inv_roots=alpha,
        eigenangles=theta,
        rh_residuals=resid,
        root_number=eps,
        aberth_iterations=its,
    )


class FamilyData:
    """All L-data for the family of nontrivial characters mod Q.

    Work proceeds in fixed-size chunks of character indices so results
    are identical for every thread count: coefficient sums per chunk,
    completion, then one root-finding batch per parity group inside the
    chunk.  The thread pool only maps over chunks; assembly order is
    always ascending k.
    """

    def __init__(self, Q, threads=1, precomputed=None):
        self.Q = Q
        self._by_k = {}
        if precomputed is not None:
            for L in precomputed:
                self._by_k[L.chi_index] = L
            return
        table = Q.table()
        N = Q.group_order
        ks_all = np.arange(1, N, dtype=np.int64)
        chunks = [ks_all[lo : lo + CHUNK] for lo in range(0, ks_all.shape[0], CHUNK)]
        if threads and threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                parts = list(pool.map(lambda c: _family_chunk(Q, table, c), chunks))
        else:
            parts = [_family_chunk(Q, table, c) for c in chunks]
        for part in parts:
            for L in part:
                self._by_k[L.chi_index] = L

    def ldata(self, k):
        return self._by_k[int(k)]

    def all_ldata(self):
        """Every LData, ascending k."""
        return [self._by_k[k] for k in sorted(self._by_k)]

    def __len__(self):
        return len(self._by_k)


def _family_chunk(Q, table, ks):
    q = Q.field.q
    d = Q.d
    W = _monic_weight_rows(table)
    A = kernels.char_sums(W, ks, table.roots_of_unity)
    qm1 = q - 1
    lam = np.array([1 if int(k) % qm1 == 0 else 0 for k in ks], dtype=np.int64)
    coeffs = np.empty((ks.shape[0], d), dtype=np.complex128)
    coeffs[:, 0] = 1.0
    if d > 1:
        coeffs[:, 1:] = A
    results = [None] * ks.shape[0]
    completed_rows = {0: [], 1: []}
    member_rows = {0: [], 1: []}
    remainders = np.zeros(ks.shape[0], dtype=np.complex128)
    for i in range(ks.shape[0]):
        comp, rem = complete(coeffs[i], int(lam[i]))
        remainders[i] = rem
        completed_rows[int(lam[i])].append(comp)
        member_rows[int(lam[i])].append(i)
    for parity in (0, 1):
        rows = completed_rows[parity]
        if not rows:
            continue
        batch = np.vstack(rows)
        eig = _eigendata_batch(batch, q)
        for (alpha, theta, resid, its), i, comp in zip(eig, member_rows[parity], rows):
            eps = root_number(comp, q)
            results[i] = LData(
                modulus=Q,
                chi_index=int(ks[i]),
                lambda_inf=parity,
                degree=comp.shape[0] - 1,
                coeffs=coeffs[i].copy(),
                completed_coeffs=comp,
                remainder=complex(remainders[i]),
                inv_roots=alpha,
                eigenangles=theta,
                rh_residuals=resid,
                root_number=eps,
                aberth_iterations=its,
            )
    return results
