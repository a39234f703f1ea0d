"""Exact arithmetic in F_q and F_q[T].

Field elements are integers in [0, q).  For a prime field (q = p) the
integer is the residue itself.  For an extension field F_{p^e} built as
F_p[X]/(m) the element with coordinates (x_0, ..., x_{e-1}) in the
polynomial basis is encoded as sum x_i p^i, so 0 and 1 are always the
additive and multiplicative identities.

Polynomials over F_q are tuples of element codes, lowest degree first,
with no trailing zeros.  The zero polynomial is the empty tuple () and
its degree is the sentinel None.  A polynomial known to have degree < n
has the integer code sum f[i] q^i; enumeration and canonical ordering
are by (degree, code), which makes "least" well defined and stable.

Everything here is exact integer work.  Scale is desk sized (q^d up to
about a million), so clarity wins over micro-optimization; the hot loops
of the package live in the kernel backends, not here.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _factor_int(n):
    """Prime factorization of a positive integer as {p: multiplicity}."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = {}
    for p in itertools.chain((2,), itertools.count(3, 2)):
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def mobius(n):
    if n < 1:
        raise ValueError(f"mobius undefined for {n}")
    fac = _factor_int(n)
    if any(m > 1 for m in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def divisors(n):
    """Sorted positive divisors of n."""
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    large = [n // d for d in reversed(small) if d * d != n]
    return small + large


class FieldSpec:
    """A concrete finite field with precomputed operation tables.

    Attributes:
        p, e, q: characteristic, extension degree, order q = p^e.
        ext_modulus: defining polynomial over F_p (tuple, low first) when
            e > 1, else None.
        add_table, mul_table: (q, q) int64 arrays.
        neg_table, inv_table: (q,) int64 arrays; inv_table[0] is 0 as a
            sentinel and must never be consulted for division.

    Instances are immutable in intent; the lazily filled irreducible
    cache is an idempotent memo and does not affect semantics.
    """

    def __init__(self, p, e, ext_modulus, add, mul, neg, inv):
        self.p = p
        self.e = e
        self.q = p**e
        self.ext_modulus = ext_modulus
        self.add_table = add
        self.mul_table = mul
        self.neg_table = neg
        self.inv_table = inv
        # Python lists mirror the numpy tables: plain-int indexing in the
        # polynomial helpers is much faster than ndarray scalar access.
        self._addL = add.tolist()
        self._mulL = mul.tolist()
        self._negL = neg.tolist()
        self._invL = inv.tolist()
        self._irr_cache = {}

    def __repr__(self):
        if self.e == 1:
            return f"FieldSpec(q={self.q})"
        return f"FieldSpec(q={self.q}, p={self.p}, e={self.e})"

    def add(self, a, b):
        return self._addL[a][b]

    def sub(self, a, b):
        return self._addL[a][self._negL[b]]

    def mul(self, a, b):
        return self._mulL[a][b]

    def neg(self, a):
        return self._negL[a]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        return self._invL[a]


def _fp_poly_mulmod(p, f, g, mod):
    """Product of coefficient lists f, g over F_p, reduced mod the monic
    list mod.  Used only while building extension-field tables."""
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    e = len(mod) - 1
    for k in range(len(out) - 1, e - 1, -1):
        c = out[k]
        if c:
            for j in range(e):
                out[k - e + j] = (out[k - e + j] - c * mod[j]) % p
    out = out[:e]
    while len(out) < e:
        out.append(0)
    return out


@functools.lru_cache(maxsize=None)
def _field_make_cached(p, e, ext_modulus):
    if not _is_prime(p):
        raise ValueError(f"field characteristic {p} is not prime")
    if e < 1:
        raise ValueError(f"extension degree must be >= 1, got {e}")
    q = p**e
    if e == 1:
        r = np.arange(q, dtype=np.int64)
        add = (r[:, None] + r[None, :]) % q
        mul = (r[:, None] * r[None, :]) % q
        neg = (-r) % q
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = pow(a, q - 2, q)
        return FieldSpec(p, 1, None, add, mul, neg, inv)

    if ext_modulus is None:
        Kp = field_make(p)
        ext_modulus = least_irreducible(Kp, e)
    m = tuple(int(c) % p for c in ext_modulus)
    while m and m[-1] == 0:
        m = m[:-1]
    if len(m) != e + 1:
        raise ValueError(f"extension modulus must have degree {e}")
    if m[-1] != 1:
        raise ValueError("extension modulus must be monic")
    Kp = field_make(p)
    if not is_irreducible(Kp, m):
        raise ValueError(f"extension modulus {m} is reducible over F_{p}")

    def decode(c):
        return [(c // p**i) % p for i in range(e)]

    def encode(digs):
        return sum(d * p**i for i, d in enumerate(digs))

    add = np.zeros((q, q), dtype=np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    neg = np.zeros(q, dtype=np.int64)
    inv = np.zeros(q, dtype=np.int64)
    vecs = [decode(c) for c in range(q)]
    for a in range(q):
        va = vecs[a]
        neg[a] = encode([(-x) % p for x in va])
        for b in range(a, q):
            s = encode([(x + y) % p for x, y in zip(va, vecs[b])])
            add[a, b] = s
            add[b, a] = s
            t = encode(_fp_poly_mulmod(p, va, vecs[b], list(m)))
            mul[a, b] = t
            mul[b, a] = t
    mulL = mul.tolist()
    for a in range(1, q):
        x = a
        acc = 1
        n = q - 2
        while n:
            if n & 1:
                acc = mulL[acc][x]
            x = mulL[x][x]
            n >>= 1
        inv[a] = acc
        assert mulL[a][acc] == 1
    return FieldSpec(p, e, m, add, mul, neg, inv)


def field_make(p, e=1, ext_modulus=None):
    """Build (or fetch the cached) FieldSpec for F_{p^e}.

    ext_modulus, when given, is a monic irreducible degree-e polynomial
    over F_p as a low-first coefficient tuple; when omitted for e > 1
    the least irreducible in canonical order is used.
    """
    key = None if ext_modulus is None else tuple(int(c) for c in ext_modulus)
    return _field_make_cached(int(p), int(e), key)


# ----------------------------------------------------------------------
# polynomial helpers: tuples, low degree first, no trailing zeros


def poly_trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def poly_degree(f):
    """Degree of f, or None for the zero polynomial."""
    return len(f) - 1 if f else None


def poly_validate(K, f):
    f = poly_trim(int(c) for c in f)
    for c in f:
        if not 0 <= c < K.q:
            raise ValueError(f"coefficient {c} out of range for F_{K.q}")
    return f


def poly_add(K, f, g):
    if len(f) < len(g):
        f, g = g, f
    addL = K._addL
    out = list(f)
    for i, c in enumerate(g):
        out[i] = addL[out[i]][c]
    return poly_trim(out)


def poly_neg(K, f):
    negL = K._negL
    return tuple(negL[c] for c in f)


def poly_sub(K, f, g):
    return poly_add(K, f, poly_neg(K, g))


def poly_mul(K, f, g):
    if not f or not g:
        return ()
    addL, mulL = K._addL, K._mulL
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            row = mulL[a]
            for j, b in enumerate(g):
                if b:
                    out[i + j] = addL[out[i + j]][row[b]]
    return poly_trim(out)


def poly_scale(K, f, c):
    if c == 0:
        return ()
    row = K._mulL[c]
    return poly_trim(row[x] for x in f)


def poly_divmod(K, f, g):
    """Quotient and remainder of f by nonzero g."""
    f, g = poly_trim(f), poly_trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if len(f) < len(g):
        return (), f
    addL, mulL, negL = K._addL, K._mulL, K._negL
    dg = len(g) - 1
    ilead = K.inv(g[-1])
    rem = list(f)
    quo = [0] * (len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        c = rem[i]
        if c:
            t = mulL[c][ilead]
            quo[i - dg] = t
            trow = mulL[t]
            for j in range(dg + 1):
                rem[i - dg + j] = addL[rem[i - dg + j]][negL[trow[g[j]]]]
    return poly_trim(quo), poly_trim(rem[:dg])


def poly_mod(K, f, g):
    return poly_divmod(K, f, g)[1]


def poly_monic(K, f):
    if not f:
        raise ValueError("cannot normalize the zero polynomial")
    if f[-1] == 1:
        return f
    return poly_scale(K, f, K.inv(f[-1]))


def poly_gcd(K, f, g):
    """Monic gcd; gcd(0, 0) is ()."""
    f, g = poly_trim(f), poly_trim(g)
    while g:
        f, g = g, poly_mod(K, f, g)
    return poly_monic(K, f) if f else ()


def poly_pow_mod(K, base, exp, mod):
    """base**exp reduced mod the nonzero polynomial mod, exp >= 0."""
    if exp < 0:
        raise ValueError("negative exponent")
    result = poly_mod(K, (1,), mod)
    base = poly_mod(K, base, mod)
    while exp:
        if exp & 1:
            result = poly_mod(K, poly_mul(K, result, base), mod)
        base = poly_mod(K, poly_mul(K, base, base), mod)
        exp >>= 1
    return result


def poly_eval(K, f, x):
    acc = 0
    addL, mulL = K._addL, K._mulL
    for c in reversed(f):
        acc = addL[mulL[acc][x]][c]
    return acc


def poly_code(K, f):
    """Integer code sum f[i] q^i.  Strictly increasing in canonical order
    within a fixed degree."""
    q = K.q
    code = 0
    for c in reversed(f):
        code = code * q + c
    return code


def poly_from_code(K, code, length=None):
    """Inverse of poly_code.  length, when given, bounds the digit count
    (extra high digits must be zero)."""
    if code < 0:
        raise ValueError("polynomial code must be nonnegative")
    q = K.q
    digs = []
    while code:
        digs.append(code % q)
        code //= q
    if length is not None and len(digs) > length:
        raise ValueError("polynomial code exceeds the stated length")
    return tuple(digs)


def poly_to_str(f):
    """Low-first comma form, e.g. T^2+1 over F_3 is '1,0,1'."""
    if not f:
        return "0"
    return ",".join(str(c) for c in f)


def poly_from_str(K, s):
    parts = [t.strip() for t in s.split(",")]
    try:
        coeffs = [int(t) for t in parts]
    except ValueError:
        raise ValueError(f"bad polynomial string {s!r}") from None
    return poly_validate(K, coeffs)


def enumerate_monic(K, n):
    """Yield all monic degree-n polynomials in canonical (code) order."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    if n == 0:
        yield (1,)
        return
    q = K.q
    qn = q**n
    for low in range(qn):
        digs = []
        c = low
        for _ in range(n):
            digs.append(c % q)
            c //= q
        yield tuple(digs) + (1,)


# ----------------------------------------------------------------------
# irreducibility, factorization, counting


def _irreducibles_upto(K, n):
    """Monic irreducibles of degree exactly n, canonical order, memoized."""
    cache = K._irr_cache
    if n not in cache:
        cache[n] = tuple(f for f in enumerate_monic(K, n) if is_irreducible(K, f))
    return cache[n]


def irreducibles(K, n):
    if n < 1:
        raise ValueError("degree must be >= 1")
    return _irreducibles_upto(K, n)


def least_irreducible(K, n):
    """First monic irreducible of degree n in canonical order."""
    for f in enumerate_monic(K, n):
        if is_irreducible(K, f):
            return f
    raise AssertionError("unreachable: every degree has irreducibles")


def is_irreducible(K, f):
    """Exact irreducibility test for a nonconstant polynomial.

    Degrees 2 and 3 reduce to a root scan; larger degrees trial-divide by
    the cached irreducibles of degree up to deg(f)/2.  The Frobenius gcd
    ladder below is an independent implementation used as a cross-check.
    """
    f = poly_trim(f)
    n = poly_degree(f)
    if n is None or n == 0:
        raise ValueError("irreducibility is undefined for constants")
    if n == 1:
        return True
    if poly_eval(K, f, 0) == 0:
        return False
    if n <= 3:
        return all(poly_eval(K, f, x) != 0 for x in range(1, K.q))
    for m in range(1, n // 2 + 1):
        for P in _irreducibles_upto(K, m):
            if not poly_mod(K, f, P):
                return False
    return True


def is_irreducible_frobenius(K, f):
    """Irreducibility via gcd(f, T^(q^i) - T) for i up to deg(f)/2.

    A reducible f has an irreducible factor of some degree m <= deg(f)/2,
    and that factor divides T^(q^m) - T, so the gcd at step m is proper.
    """
    f = poly_trim(f)
    n = poly_degree(f)
    if n is None or n == 0:
        raise ValueError("irreducibility is undefined for constants")
    if n == 1:
        return True
    fm = poly_monic(K, f)
    t = (0, 1)
    r = poly_mod(K, t, fm)
    for _ in range(n // 2):
        r = poly_pow_mod(K, r, K.q, fm)
        g = poly_gcd(K, fm, poly_sub(K, r, t))
        if poly_degree(g) not in (None, 0):
            return False
    return True


def factorize(K, f):
    """Factor a monic nonzero polynomial into monic irreducibles.

    Returns a list of (P, multiplicity) with P ascending in canonical
    order.  Trial division in canonical order; exact at desk scale.
    """
    f = poly_trim(f)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    if f[-1] != 1:
        raise ValueError("factorize expects a monic polynomial")
    out = []
    m = 1
    while poly_degree(f) > 0:
        if 2 * m > poly_degree(f):
            # every factor of degree < m is stripped, so what remains
            # cannot split into two pieces of degree >= m: irreducible
            out.append((f, 1))
            break
        for P in _irreducibles_upto(K, m):
            mult = 0
            while True:
                quo, rem = poly_divmod(K, f, P)
                if rem:
                    break
                mult += 1
                f = quo
            if mult:
                out.append((P, mult))
        m += 1
    out.sort(key=lambda t: (poly_degree(t[0]), poly_code(K, t[0])))
    return out


def von_mangoldt(K, f):
    """deg P if f is a power of the monic irreducible P, else 0."""
    f = poly_trim(f)
    if not f:
        raise ValueError("von Mangoldt is undefined at 0")
    if f[-1] != 1:
        f = poly_monic(K, f)
    if poly_degree(f) == 0:
        return 0
    fac = factorize(K, f)
    if len(fac) == 1:
        return poly_degree(fac[0][0])
    return 0


def count_irreducibles(K, n):
    """Number of monic irreducibles of degree n: (1/n) sum mu(m) q^(n/m)."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    q = K.q
    total = sum(mobius(m) * q ** (n // m) for m in divisors(n))
    assert total % n == 0
    return total // n


def euler_phi(K, Q):
    """Order of (F_q[T]/Q)^x for a monic nonconstant Q."""
    Q = poly_trim(Q)
    if poly_degree(Q) in (None, 0):
        raise ValueError("modulus must be nonconstant")
    if Q[-1] != 1:
        raise ValueError("modulus must be monic")
    q = K.q
    out = 1
    for P, mult in factorize(K, Q):
        dP = poly_degree(P)
        out *= q ** (dP * mult) - q ** (dP * (mult - 1))
    return out
