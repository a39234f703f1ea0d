"""Prime counting in progressions mod Q and the deviation diagnostics
that feed the Montgomery-type conjecture checks.

Everything on the prime side is exact integer arithmetic through the
von Mangoldt class histograms of the unit-group table.  The headline
quantities:

    Psi_q(n)        total von Mangoldt mass in degree n, equal to q^n;
    Psi_q(n; Q, a)  the mass in the class of a mod Q;
    D(n)            Psi_q(n;Q,1) - q^n / Phi_q(Q), an exact rational;
    theta_hat(n)    the exponent solving |D(n)| = q^(n/2 - d theta), so
                    a square-root-cancellation bound with modulus saving
                    q^(d theta) holds at this n for all theta up to
                    theta_hat(n).

For 1 <= n < d there are no prime powers at all in the class of 1, so
D(n) = -q^n / (q^d - 1) exactly; those rows are diagnostics and are
excluded from the conjecture-facing summary, which looks at n >= d.

zero_sum aggregates e^(i n theta) over all zeros of the whole family,
the quantity bounded by the zero-sum conjecture; pair_sums returns the
exact correlation sums of von Mangoldt masses between two degrees used
by the variance and 2-level cross checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import algebra


def psi_total(K, n):
    """Total von Mangoldt mass over monic degree-n polynomials, via the
    divisor sum of irreducible counts; returns q^n and asserts it."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    if n == 0:
        return 0
    total = sum(m * algebra.count_irreducibles(K, m) for m in algebra.divisors(n))
    assert total == K.q**n
    return total


def psi_progression(n, Q, a):
    """Sum of Lambda(f) over monic degree-n f congruent to a mod Q.

    Exact integer from the class histogram; a must be coprime to Q.
    """
    if n < 0:
        raise ValueError("degree must be >= 0")
    K = Q.field
    a = algebra.poly_validate(K, a)
    r = algebra.poly_mod(K, a, Q.coeffs)
    if not r:
        raise ValueError("progression class must be coprime to the modulus")
    if n == 0:
        return 0
    table = Q.table()
    j = int(table.dlog_by_code[algebra.poly_code(K, r)])
    return int(table.von_mangoldt_hist(n)[j])


@dataclass
class MontgomeryRow:
    n: int
    psi: int
    expected: Fraction
    deviation: Fraction
    theta_hat: float | None
    diagnostic: bool
    bt_ratio: Fraction


@dataclass
class MontgomeryReport:
    Q: object
    rows: list[MontgomeryRow] = field(default_factory=list)
    theta_hat_min: float | None = None
    bt_ratio_max: Fraction | None = None
    zero_sums: dict = field(default_factory=dict)


def deviation_and_theta(Q, n_range):
    """Exact deviations D(n) = Psi(n;Q,1) - q^n/Phi(Q) and the implied
    exponents theta_hat(n) = (n/2 - log_q|D(n)|)/d over the requested
    degrees.

    Rows with n < d are marked diagnostic (no prime power of degree
    below d is congruent to 1, so the deviation is forced); the summary
    theta_hat_min is the minimum over nondiagnostic rows.  Degrees must
    lie in [1, 3d].
    """
    d = Q.d
    q = Q.field.q
    ns = sorted({int(n) for n in n_range})
    if not ns:
        raise ValueError("empty degree range")
    if ns[0] < 1 or ns[-1] > 3 * d:
        raise ValueError(f"degrees must lie in [1, {3 * d}]")
    phi = Q.group_order
    report = MontgomeryReport(Q=Q)
    theta_min = None
    bt_max = None
    one = (1,)
    for n in ns:
        psi = psi_progression(n, Q, one)
        expected = Fraction(q**n, phi)
        dev = Fraction(psi) - expected
        if dev == 0:
            theta = None
        else:
            logq_dev = math.log(abs(dev)) / math.log(q)
            theta = (n / 2.0 - logq_dev) / d
        diagnostic = n < d
        # Brun-Titchmarsh normalization psi / q^(n-d), kept exact
        if n >= d:
            bt = Fraction(psi, q ** (n - d))
        else:
            bt = Fraction(psi * q ** (d - n))
        row = MontgomeryRow(
            n=n,
            psi=psi,
            expected=expected,
            deviation=dev,
            theta_hat=theta,
            diagnostic=diagnostic,
            bt_ratio=bt,
        )
        report.rows.append(row)
        if not diagnostic:
            if theta is not None and (theta_min is None or theta < theta_min):
                theta_min = theta
            if bt_max is None or bt > bt_max:
                bt_max = bt
    report.theta_hat_min = theta_min
    report.bt_ratio_max = bt_max
    return report


def zero_sum(Q, n, family=None, threads=1):
    """Sum over the family of sum_j e^(i n theta_{chi,j}), the aggregate
    bounded by the zero-sum conjecture.  Real to 1e-9 by the conjugate
    pairing of characters; the small imaginary part is kept so tests
    can see it."""
    if family is None:
        family = Q.family_data(threads=threads)
    total_re = 0.0
    total_im = 0.0
    for L in family.all_ldata():
        t = np.exp(1j * n * L.eigenangles).sum()
        total_re += t.real
        total_im += t.imag
    return complex(total_re, total_im)


def zero_sum_scale(Q, theta1=0.5, theta2=0.5):
    """Reference magnitude (d-1)^(1-theta1) q^(d(1-theta2)) against
    which zero_sum is reported."""
    return (Q.d - 1) ** (1.0 - theta1) * Q.field.q ** (Q.d * (1.0 - theta2))


def pair_sums(n1, n2, Q):
    """Exact correlation sums of von Mangoldt masses between degrees:

        C_1 = sum over classes j of V_{n1}[j] V_{n2}[j]
            = sum over pairs f1 = f2 mod Q of Lambda(f1) Lambda(f2),
        C_2 = same with the second index reflected, pairing f1 f2 = 1.

    Returned as exact Python integers.
    """
    if n1 < 0 or n2 < 0:
        raise ValueError("degrees must be >= 0")
    table = Q.table()
    N = Q.group_order
    v1 = table.von_mangoldt_hist(n1).tolist()
    v2 = table.von_mangoldt_hist(n2).tolist()
    c1 = 0
    c2 = 0
    for j in range(N):
        a = v1[j]
        if a:
            c1 += a * v2[j]
            c2 += a * v2[-j % N]
    return c1, c2
