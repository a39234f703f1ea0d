"""Dirichlet characters mod a monic irreducible Q in F_q[T].

The residue ring mod Q is the field F_{q^d}, so the unit group is cyclic
of order N = q^d - 1.  One discrete-log table over residue codes turns
every character evaluation into a root-of-unity lookup: chi_k(f) =
omega^(k * dlog(f mod Q)) with omega = e(1/N).

The same table powers all exact counting.  A residue class is a dlog
index j in [0, N); the class histogram of a set of monic polynomials
(its "dlog histogram") is an int64 vector over j.  Character sums over
the set are then weighted root-of-unity sums, and multiplicative
convolution of sets is cyclic index addition.  The von Mangoldt
histograms V_n (Lambda-weighted counts of monic degree-n polynomials
per class) come from an exact integer recursion rather than any large
enumeration: with B_m the plain degree-m histogram,

    V_n = n B_n - sum_{k=1}^{n-1} V_k * B_{n-k}   (cyclic convolution),

the power-sum identity for the logarithmic derivative of the zeta Euler
product restricted to classes mod Q.  For m >= d the histogram B_m is
exactly uniform, q^(m-d) in every class, which collapses those
convolution terms to a constant shift and keeps the recursion fast.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra
from .backend import kernels
from .errors import NumericInvariantError


class Modulus:
    """A monic irreducible modulus Q of degree d >= 2 over F_q.

    Carries the field, the coefficient tuple, and lazily the unit-group
    table and the family L-data so repeated use stays cheap.
    """

    def __init__(self, field, coeffs):
        self.field = field
        Q = algebra.poly_validate(field, coeffs)
        d = algebra.poly_degree(Q)
        if d is None or d < 2:
            raise ValueError("modulus degree must be >= 2")
        if Q[-1] != 1:
            raise ValueError("modulus must be monic")
        if not algebra.is_irreducible(field, Q):
            raise ValueError(
                f"modulus {algebra.poly_to_str(Q)} is reducible over F_{field.q}"
            )
        self.coeffs = Q
        self.d = d
        self.group_order = field.q**d - 1
        self._table = None
        self._family = None

    def __repr__(self):
        return f"Modulus(q={self.field.q}, Q={algebra.poly_to_str(self.coeffs)})"

    def table(self):
        if self._table is None:
            self._table = UnitGroupTable(self)
        return self._table

    def set_table(self, table):
        """Install a prebuilt unit-group table (cache layer hook)."""
        self._table = table

    def family_data(self, threads=1):
        from . import lfunction

        if self._family is None:
            self._family = lfunction.FamilyData(self, threads=threads)
        return self._family

    def set_family(self, fam):
        """Install prebuilt family L-data (cache layer hook)."""
        self._family = fam


def modulus_make(field, coeffs):
    return Modulus(field, coeffs)


def modulus_search(field, d):
    """Least monic irreducible of degree d in canonical order."""
    return Modulus(field, algebra.least_irreducible(field, d))


@dataclass(frozen=True)
class Character:
    """The character chi_k, a power of a fixed generator's dual.

    k runs over 1..N-1 for the nontrivial characters mod Q.  lambda_inf
    is 1 when chi is trivial on the scalars F_q^* (chi "even", which
    happens exactly when (q-1) | k) and 0 otherwise.
    """

    k: int
    lambda_inf: int

    @property
    def is_even(self):
        return self.lambda_inf == 1


def character_make(Q, k):
    N = Q.group_order
    k = int(k) % N
    if k == 0:
        raise ValueError("k = 0 is the principal character; not in the family")
    lam = 1 if k % (Q.field.q - 1) == 0 else 0
    return Character(k=k, lambda_inf=lam)


def conjugate(Q, chi):
    return character_make(Q, Q.group_order - chi.k)


def family(Q):
    """All nontrivial characters mod Q in ascending k order."""
    return [character_make(Q, k) for k in range(1, Q.group_order)]


class UnitGroupTable:
    """Discrete logs and exact class histograms for (F_q[T]/Q)^x.

    Attributes:
        Q: the Modulus.
        generator: coefficient tuple of a cyclic generator.
        dlog_by_code: int64[q^d]; dlog_by_code[code(f)] = t means
            f = generator^t mod Q; the zero residue holds -1.
        roots_of_unity: complex128[N] with entry t equal to e(t/N).
    """

    def __init__(self, Q, generator=None, dlog_by_code=None):
        self.Q = Q
        K = Q.field
        N = Q.group_order
        if generator is None:
            generator = self._find_generator()
        self.generator = generator
        if dlog_by_code is None:
            dlog_by_code = self._fill_dlogs(generator)
        self.dlog_by_code = dlog_by_code
        if dlog_by_code.shape[0] != K.q**Q.d:
            raise NumericInvariantError("dlog table has the wrong size")
        if dlog_by_code[0] != -1 or dlog_by_code[1] != 0:
            raise NumericInvariantError("dlog table fails identity checks")
        self.roots_of_unity = np.exp(2j * np.pi * np.arange(N) / N)
        self._monic_hists = {}
        self._vn = {}
        self._layers = {}

    def _find_generator(self):
        K = self.Q.field
        Qc = self.Q.coeffs
        N = self.Q.group_order
        prime_parts = [N // r for r in algebra._factor_int(N)]
        for code in range(1, K.q ** self.Q.d):
            g = algebra.poly_from_code(K, code)
            if all(
                algebra.poly_pow_mod(K, g, e, Qc) != (1,) for e in prime_parts
            ):
                return g
        raise NumericInvariantError("no generator found; unit group not cyclic?")

    def _fill_dlogs(self, g):
        K = self.Q.field
        d = self.Q.d
        N = self.Q.group_order
        gd = np.zeros(d, dtype=np.int64)
        for i, c in enumerate(g):
            gd[i] = c
        red = np.zeros(d, dtype=np.int64)
        for i, c in enumerate(self.Q.coeffs[:d]):
            red[i] = K.neg(c)
        perm = kernels.residue_mul_perm(K.q, d, gd, red, K.add_table, K.mul_table)
        dlog = kernels.cycle_dlog(perm, 1, N)
        if int((dlog >= 0).sum()) != N:
            raise NumericInvariantError("generator does not reach every unit")
        return dlog

    def dlog(self, f):
        """Discrete log of f mod Q; ValueError when Q divides f."""
        K = self.Q.field
        r = algebra.poly_mod(K, algebra.poly_validate(K, f), self.Q.coeffs)
        if not r:
            raise ValueError("polynomial is divisible by the modulus")
        return int(self.dlog_by_code[algebra.poly_code(K, r)])

    def chi_value(self, chi, f):
        """chi(f) as a complex number; 0 for f divisible by Q."""
        K = self.Q.field
        r = algebra.poly_mod(K, algebra.poly_validate(K, f), self.Q.coeffs)
        if not r:
            return 0j
        t = int(self.dlog_by_code[algebra.poly_code(K, r)])
        N = self.Q.group_order
        return complex(self.roots_of_unity[(chi.k * t) % N])

    # ------------------------------------------------------------------
    # exact class histograms

    def monic_hist(self, n):
        """Histogram over dlog classes of the monic polynomials of degree
        n < d.  Those polynomials are their own residues, with codes in
        [q^n, 2 q^n), so this is a pure table slice."""
        d = self.Q.d
        if not 0 <= n < d:
            raise ValueError("monic_hist needs 0 <= n < deg Q")
        if n not in self._monic_hists:
            q = self.Q.field.q
            N = self.Q.group_order
            sl = self.dlog_by_code[q**n : 2 * q**n]
            hist = np.bincount(sl, minlength=N).astype(np.int64)
            self._monic_hists[n] = hist
        return self._monic_hists[n]

    def monic_total(self, n):
        """Number of monic degree-n polynomials coprime to Q."""
        q = self.Q.field.q
        d = self.Q.d
        if n < 0:
            raise ValueError("degree must be >= 0")
        if n < d:
            return q**n
        return q**n - q ** (n - d)

    def lambda_total(self, n):
        """Total von Mangoldt mass in degree n over classes coprime to Q:
        q^n minus the mass d at each power of Q itself."""
        if n < 0:
            raise ValueError("degree must be >= 0")
        if n == 0:
            return 0
        d = self.Q.d
        q = self.Q.field.q
        return q**n - (d if n % d == 0 else 0)

    def von_mangoldt_hist(self, n):
        """V_n: exact Lambda-weighted class histogram in degree n."""
        if n < 0:
            raise ValueError("degree must be >= 0")
        N = self.Q.group_order
        if n == 0:
            return np.zeros(N, dtype=np.int64)
        if n not in self._vn:
            self._compute_vn_upto(n)
        return self._vn[n]

    def _compute_vn_upto(self, n_top):
        d = self.Q.d
        q = self.Q.field.q
        N = self.Q.group_order
        start = max(self._vn) + 1 if self._vn else 1
        for n in range(start, n_top + 1):
            if n < d:
                acc = (n * self.monic_hist(n)).astype(np.int64)
            else:
                acc = np.full(N, n * q ** (n - d), dtype=np.int64)
            # subtract V_k * B_{n-k}; uniform B collapses to a shift
            for k in range(1, n):
                m = n - k
                Vk = self._vn[k]
                if m >= d:
                    acc -= int(self.lambda_total(k)) * q ** (m - d)
                else:
                    Bm = self.monic_hist(m)
                    nz = np.flatnonzero(Bm)
                    kernels.conv_sparse_acc(acc, Vk, nz, -Bm[nz])
            self._vn[n] = acc

    def prime_layer(self, m):
        """W_m: class histogram of deg(P) over the irreducibles P != Q of
        degree m, scaled by m.  Peeled from V by removing prime powers:
        W_m = V_m - sum over proper divisors t of pushforwards of W_t
        along the power map j -> (m/t) j."""
        if m < 1:
            raise ValueError("degree must be >= 1")
        if m not in self._layers:
            N = self.Q.group_order
            acc = self.von_mangoldt_hist(m).copy()
            for t in algebra.divisors(m):
                if t == m:
                    continue
                acc -= self._push(self.prime_layer(t), m // t)
            if (acc % m).any():
                raise NumericInvariantError(
                    f"prime layer at degree {m} is not divisible by {m}"
                )
            if (acc < 0).any():
                raise NumericInvariantError(f"negative prime layer at degree {m}")
            self._layers[m] = acc
        return self._layers[m]

    def _push(self, w, r):
        """Pushforward of a class histogram along j -> r j mod N."""
        N = self.Q.group_order
        out = np.zeros(N, dtype=np.int64)
        idx = (np.arange(N, dtype=np.int64) * r) % N
        np.add.at(out, idx, w)
        return out

    def prime_power_weights(self, n):
        """Lambda-weighted class histogram of degree-n prime powers,
        assembled from the prime layers: sum over m | n of the layer W_m
        pushed along j -> (n/m) j.  Equals V_n; built independently so
        the two routes cross-check each other."""
        if n < 1:
            raise ValueError("degree must be >= 1")
        N = self.Q.group_order
        acc = np.zeros(N, dtype=np.int64)
        for m in algebra.divisors(n):
            acc += self._push(self.prime_layer(m), n // m)
        return acc
