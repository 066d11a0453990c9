"""Truncated residue series for the roots near X = infinity and X = 0.

Coefficients are Gamma ratios Gamma(a + b k) / (Gamma(c + d k + 1) k!).  They
are produced by a term-ratio recurrence (Pochhammer products over a stride
that makes every Gamma shift integral) and can be cross-checked against
direct log-gamma evaluation.  All arithmetic runs in mpmath so that large
factorials neither overflow nor lose relative accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .equation import TrinomialEquation
from .errors import OutOfRange

WORK_DPS = 30

RADIUS_EXCEEDED = "RadiusExceeded"
GAMMA_POLE = "GammaPoleHit"
BRANCH_AMBIGUITY = "BranchAmbiguity"


@dataclass(frozen=True)
class SeriesEvaluation:
    value: complex
    terms_used: int
    tail_bound_estimate: float
    domain_ok: bool
    flags: tuple = ()


@dataclass(frozen=True, order=True)
class RootLabel:
    t: int
    j: int = 0

    def index(self, m: int) -> int:
        return self.t * m + self.j


def _fr(x):
    return mpmath.mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else mpmath.mpmathify(x)


def _is_nonpositive_int(x) -> bool:
    if isinstance(x, Fraction):
        return x.denominator == 1 and x <= 0
    x = mpmath.mpmathify(x)
    return mpmath.im(x) == 0 and mpmath.isint(mpmath.re(x)) and mpmath.re(x) <= 0


def _direct_term(a, b, c, d, k):
    """Gamma(a+bk) / (Gamma(c+dk+1) k!) with 1/Gamma = 0 at poles."""
    num = a + b * k
    den = c + d * k + 1
    if _is_nonpositive_int(num):
        raise OutOfRange(f"numerator Gamma pole at k = {k}")
    if _is_nonpositive_int(den):
        return mpmath.mpf(0)
    return mpmath.gamma(_fr(num)) * mpmath.rgamma(_fr(den)) / mpmath.factorial(k)


def gamma_ratio_coefficients(a: Fraction, b: Fraction, c: Fraction, d: Fraction, K: int):
    """First K coefficients via the stride recurrence.

    Returns (coefficients, pole_indices).  The stride L is the lcm of the
    denominators of b and d, so that bL and dL are integers and each step is
    a finite product.  A term whose reciprocal Gamma vanishes is reseeded by
    direct evaluation on the next pass through its residue class.
    """
    a, b, c, d = (Fraction(v) for v in (a, b, c, d))
    L = b.denominator * d.denominator // math.gcd(b.denominator, d.denominator)
    B, D = int(b * L), int(d * L)
    out, poles = [], []
    with mpmath.workdps(WORK_DPS):
        for k in range(K):
            if _is_nonpositive_int(c + d * k + 1):
                poles.append(k)
                out.append(mpmath.mpf(0))
                continue
            prev = k - L
            if prev < 0 or out[prev] == 0:
                out.append(_direct_term(a, b, c, d, k))
                continue
            x = a + b * prev
            y = c + d * prev + 1
            ratio = mpmath.mpf(1)
            for i in range(B):
                ratio *= _fr(x + i)
            if D >= 0:
                for i in range(D):
                    ratio /= _fr(y + i)
            else:
                for i in range(1, -D + 1):
                    ratio *= _fr(y - i)
            for i in range(1, L + 1):
                ratio /= prev + i
            out.append(out[prev] * ratio)
    return out, poles


def direct_coefficients(a, b, c, d, K: int):
    with mpmath.workdps(WORK_DPS):
        return [_direct_term(Fraction(a), Fraction(b), Fraction(c), Fraction(d), k) for k in range(K)]


def _power(X: complex, expo: Fraction, arg=None):
    """X^expo on the branch given by ``arg`` (principal when None)."""
    X = mpmath.mpc(X)
    if X == 0:
        return mpmath.mpc(0)
    theta = mpmath.arg(X) if arg is None else mpmath.mpf(arg)
    ex = mpmath.mpf(expo.numerator) / expo.denominator
    return mpmath.exp(ex * (mpmath.log(abs(X)) + 1j * theta))


def _e(x) -> mpmath.mpc:
    return mpmath.expjpi(2 * mpmath.mpf(x.numerator) / x.denominator) if isinstance(x, Fraction) else mpmath.expjpi(2 * x)


def _sum(prefactor, coeffs, z, poles, domain_ok):
    total = mpmath.mpc(0)
    last = mpmath.mpf(0)
    zk = mpmath.mpc(1)
    for c in coeffs:
        last = c * zk
        total += last
        zk *= z
    flags = []
    if not domain_ok:
        flags.append(RADIUS_EXCEEDED)
    if poles:
        flags.append(GAMMA_POLE)
    return SeriesEvaluation(
        value=complex(prefactor * total),
        terms_used=len(coeffs),
        tail_bound_estimate=float(abs(prefactor * last)),
        domain_ok=domain_ok,
        flags=tuple(flags),
    )


def _ratio(eq: TrinomialEquation, X: complex) -> float:
    return abs(complex(X)) ** eq.N / float(eq.R)


def eval_inf_series(eq: TrinomialEquation, t: int, X: complex, K: int, arg=None) -> SeriesEvaluation:
    """Master root Y_t near X = infinity (valid for |X^N/R| > 1).

    The printed expansion lacks the 1/k! that the residue sum produces; it is
    included here (without it the series diverges).  ``arg`` selects the
    branch of X; passing arg(X) + 2*pi*t with t = 0 reproduces label t.
    """
    n, p, q, r, N = eq.n, eq.p, eq.q, eq.r, eq.N
    if not 0 <= t < n:
        raise OutOfRange(f"t must lie in [0, {n - 1}]")
    if K < 1:
        raise OutOfRange("K must be positive")
    coeffs, poles = gamma_ratio_coefficients(Fraction(1, n), Fraction(p, n), Fraction(1, n), Fraction(-q, n), K)
    with mpmath.workdps(WORK_DPS):
        pref = mpmath.expjpi(mpmath.mpf(1) / n) * _e(Fraction(r * t, n)) / n * _power(X, Fraction(r, n), arg)
        z = mpmath.expjpi(-mpmath.mpf(q + 2 * t * N) / n) * _power(X, Fraction(-N, n), arg)
        return _sum(pref, coeffs, z, poles, _ratio(eq, X) > 1)


def eval_p_series(eq: TrinomialEquation, t: int, X: complex, K: int, arg=None) -> SeriesEvaluation:
    """Root of the p-cluster near X = 0, leading term e((r-g)t/p) X^((r-g)/p)."""
    n, p, q, g, r, N = eq.n, eq.p, eq.q, eq.g, eq.r, eq.N
    if not 0 <= t < p:
        raise OutOfRange(f"t must lie in [0, {p - 1}]")
    if K < 1:
        raise OutOfRange("K must be positive")
    coeffs, poles = gamma_ratio_coefficients(Fraction(1, p), Fraction(n, p), Fraction(1, p), Fraction(q, p), K)
    with mpmath.workdps(WORK_DPS):
        pref = _power(X, Fraction(r - g, p), arg) * _e(Fraction((r - g) * t, p)) / p
        z = _e(Fraction(N * t, p)) * _power(X, Fraction(N, p), arg)
        return _sum(pref, coeffs, z, poles, _ratio(eq, X) < 1)


def eval_q_series(eq: TrinomialEquation, t_prime: int, X: complex, K: int,
                  arg=None, convention: str = "root") -> SeriesEvaluation:
    """Root of the q-cluster near X = 0, leading exponent g/q.

    ``convention="literal"`` applies the printed phase e((g+Nk)t'/q) with a
    positive prefactor.  That expression is a root only up to sign for odd
    q and gives equal values for distinct t' whenever q divides g and N, so
    the flag BranchAmbiguity is raised when that happens.

    ``convention="root"`` (default) uses the form a direct substitution
    verifies: with s = t' - p and zeta = e(s/q),
    Y = -zeta X^(g/q)/q * sum_k Gamma((nk-1)/q)/(Gamma((pk-1)/q+1) k!) (zeta^-p X^(N/q))^k.
    """
    n, p, q, g, N = eq.n, eq.p, eq.q, eq.g, eq.N
    if not p <= t_prime < n:
        raise OutOfRange(f"t' must lie in [{p}, {n - 1}]")
    if K < 1:
        raise OutOfRange("K must be positive")
    if convention not in ("root", "literal"):
        raise OutOfRange(f"unknown convention {convention!r}")
    coeffs, poles = gamma_ratio_coefficients(Fraction(-1, q), Fraction(n, q), Fraction(-1, q), Fraction(p, q), K)
    with mpmath.workdps(WORK_DPS):
        if convention == "root":
            s = t_prime - p
            pref = -_e(Fraction(s, q)) * _power(X, Fraction(g, q), arg) / q
            z = _e(Fraction(-p * s, q)) * _power(X, Fraction(N, q), arg)
            return _sum(pref, coeffs, z, poles, _ratio(eq, X) < 1)
        pref = _power(X, Fraction(g, q), arg) * _e(Fraction(g * t_prime, q)) / q
        z = _e(Fraction(N * t_prime, q)) * _power(X, Fraction(N, q), arg)
        res = _sum(pref, coeffs, z, poles, _ratio(eq, X) < 1)
    others = [t2 for t2 in range(p, n) if t2 != t_prime
              and Fraction(g * (t2 - t_prime), q).denominator == 1
              and Fraction(N * (t2 - t_prime), q).denominator == 1]
    if others:
        res = SeriesEvaluation(res.value, res.terms_used, res.tail_bound_estimate,
                               res.domain_ok, res.flags + (BRANCH_AMBIGUITY,))
    return res


def psi_radius(s) -> float:
    s = mpmath.mpmathify(s)
    return float(abs(s ** s / (s + 1) ** (s + 1)))


def eval_psi(alpha, s, x, K: int) -> SeriesEvaluation:
    """Partial sum of sum_k alpha Gamma(alpha+k(s+1)) / (Gamma(alpha+ks+1) k!) x^k."""
    if K < 1:
        raise OutOfRange("K must be positive")
    if s == -1:
        raise OutOfRange("s = -1 is excluded")
    rational = all(isinstance(v, (int, Fraction)) for v in (alpha, s))
    with mpmath.workdps(WORK_DPS):
        if rational:
            a, sf = Fraction(alpha), Fraction(s)
            coeffs, poles = gamma_ratio_coefficients(a, sf + 1, a, sf, K)
            coeffs = [mpmath.mpf(a.numerator) / a.denominator * c for c in coeffs]
        else:
            a, sf = mpmath.mpmathify(alpha), mpmath.mpmathify(s)
            coeffs, poles = [], []
            for k in range(K):
                if _is_nonpositive_int(a + k * sf + 1):
                    poles.append(k)
                    coeffs.append(mpmath.mpf(0))
                else:
                    coeffs.append(a * _direct_term(a, sf + 1, a, sf, k))
        inside = True if s == 0 else abs(complex(x)) < psi_radius(s if not isinstance(s, Fraction) else mpmath.mpf(s.numerator) / s.denominator)
        return _sum(mpmath.mpf(1), coeffs, mpmath.mpc(x), poles, inside)


def psi_value(alpha, s, x, dps: int = 50) -> complex:
    """The function the psi series sums to: B^alpha with B = 1 + x B^(s+1).

    B is continued from B = 1 at x = 0 along the segment [0, x] by Newton's
    method in log B, so the value is the analytic continuation of the
    series (Abel's theorem gives equality on the circle of convergence
    wherever the series converges).
    """
    with mpmath.workdps(dps):
        a = mpmath.mpmathify(alpha if not isinstance(alpha, Fraction) else mpmath.mpf(alpha.numerator) / alpha.denominator)
        s1 = mpmath.mpmathify(s if not isinstance(s, Fraction) else mpmath.mpf(s.numerator) / s.denominator) + 1
        x = mpmath.mpmathify(x)
        L = mpmath.mpc(0)
        tol = mpmath.mpf(10) ** (-(dps - 8))
        steps = 400
        for i in range(1, steps + 1):
            u = mpmath.mpf(i) / steps
            for _ in range(400):
                eL = mpmath.exp(L)
                F = eL - 1 - u * x * mpmath.exp(s1 * L)
                dF = eL - u * x * s1 * mpmath.exp(s1 * L)
                if dF == 0:
                    break
                delta = F / dF
                L -= delta
                if abs(delta) < tol:
                    break
        return complex(mpmath.exp(a * L))


def coincidence_identity(eq: TrinomialEquation, K=None, dps: int = 50) -> tuple:
    """Both sides of the realness identity behind the coincidence at omega_0.

    Returns (lhs, rhs) = (e(-1/2n) psi(-1/n, -p/n, e(-p/2n) R^(-1/n)),
    e(1/2n) psi(-1/n, -p/n, e(p/2n) R^(-1/n))).  With ``K`` the psi values are
    partial sums; without it they are the exact function values.
    """
    n, p = eq.n, eq.p
    alpha, s = Fraction(-1, n), Fraction(-p, n)
    with mpmath.workdps(dps):
        base = mpmath.root(mpmath.mpf(eq.R.numerator) / eq.R.denominator, n) ** -1
        x1 = mpmath.expjpi(-mpmath.mpf(p) / n) * base
        x2 = mpmath.conj(x1)
        if K is None:
            v1, v2 = psi_value(alpha, s, x1, dps), psi_value(alpha, s, x2, dps)
        else:
            v1, v2 = eval_psi(alpha, s, x1, K).value, eval_psi(alpha, s, x2, K).value
        lhs = mpmath.expjpi(-mpmath.mpf(1) / n) * v1
        rhs = mpmath.expjpi(mpmath.mpf(1) / n) * v2
        return complex(lhs), complex(rhs)
