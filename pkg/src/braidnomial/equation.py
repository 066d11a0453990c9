"""Trinomial equations Y^(mn) - X^g Y^(mp) + X^r = 0 and their exact data."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import (
    BadMiddleGcd,
    GcdConditionViolated,
    NoInverse,
    NonConvexNewton,
    OutOfRange,
    QTooSmall,
)

GCD_WARNING = "GcdConditionViolated"


@dataclass(frozen=True)
class TrinomialEquation:
    n_total: int
    p_total: int
    g: int
    r: int
    m: int
    n: int
    p: int
    q: int
    N: int
    R: Fraction
    warnings: tuple = field(default=(), compare=False)

    @property
    def predictor_valid(self) -> bool:
        return math.gcd(self.n, self.N) == 1 and math.gcd(self.n, self.r) == 1

    @property
    def rho(self) -> float:
        """Common modulus R^(1/N) of the branch points."""
        return float(self.R) ** (1.0 / self.N)

    @property
    def degree(self) -> int:
        return self.n_total

    def key(self) -> tuple:
        return (self.n_total, self.p_total, self.g, self.r)

    def __str__(self) -> str:
        return f"Y^{self.n_total} - X^{self.g} Y^{self.p_total} + X^{self.r}"

    # numeric helpers, shared by series checks and the tracker

    def coefficients(self, X: complex, master: bool = False) -> list:
        """Coefficients in Y, highest degree first (numpy.roots order)."""
        deg, mid = (self.n, self.p) if master else (self.n_total, self.p_total)
        c = [0j] * (deg + 1)
        c[0] = 1.0
        c[deg - mid] = -(X ** self.g)
        c[deg] = X ** self.r
        return c

    def residual(self, X: complex, Y: complex, master: bool = False) -> float:
        deg, mid = (self.n, self.p) if master else (self.n_total, self.p_total)
        return abs(Y ** deg - X ** self.g * Y ** mid + X ** self.r)

    def relative_residual(self, X: complex, Y: complex, master: bool = False) -> float:
        deg, mid = (self.n, self.p) if master else (self.n_total, self.p_total)
        a, b, c = Y ** deg, X ** self.g * Y ** mid, X ** self.r
        scale = abs(a) + abs(b) + abs(c)
        return abs(a - b + c) / scale if scale else 0.0


def build_equation(n_total: int, p_total: int, g: int, r: int, strict: bool = True) -> TrinomialEquation:
    """Validate total exponents and derive (m, n, p, q, N, R).

    With ``strict=False`` a failure of gcd(n,N) = gcd(n,r) = 1 is recorded as a
    warning instead of raising, which is what tracker-only runs need.
    """
    for name, v in (("n_total", n_total), ("p_total", p_total), ("g", g), ("r", r)):
        if not isinstance(v, int) or v < 1:
            raise OutOfRange(f"{name} must be a positive integer, got {v!r}")
    if p_total >= n_total:
        raise OutOfRange("p_total must be smaller than n_total")
    m = math.gcd(n_total, p_total)
    n, p = n_total // m, p_total // m
    q = n - p
    if q <= 1:
        raise QTooSmall(f"q = {q} must exceed 1")
    N = q * r - n * g
    if N <= 0:
        raise NonConvexNewton(f"N = q*r - n*g = {N} is not positive")
    if math.gcd(p, r - g) != 1:
        raise BadMiddleGcd(f"gcd(p, r-g) = gcd({p}, {r - g}) != 1")
    R = Fraction(p ** p * q ** q, n ** n)
    warnings = ()
    if math.gcd(n, N) != 1 or math.gcd(n, r) != 1:
        msg = f"gcd(n,N) = {math.gcd(n, N)}, gcd(n,r) = {math.gcd(n, r)}"
        if strict:
            raise GcdConditionViolated(msg)
        warnings = (f"{GCD_WARNING}: {msg}",)
    return TrinomialEquation(n_total, p_total, g, r, m, n, p, q, N, R, warnings)


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: tuple
    area_twice: int


def newton_polygon(eq: TrinomialEquation) -> NewtonPolygon:
    pts = ((0, eq.n_total), (eq.g, eq.p_total), (eq.r, 0))
    (x0, y0), (x1, y1), (x2, y2) = pts
    area2 = abs(x0 * (y1 - y2) + x1 * (y2 - y0) + x2 * (y0 - y1))
    return NewtonPolygon(pts, area2)


@dataclass(frozen=True)
class BranchingSet:
    modulus: str
    points: tuple
    base_point: complex
    precision: int

    def as_complex(self) -> list:
        return [complex(w) for w in self.points]


def default_base_point(eq: TrinomialEquation) -> complex:
    return 0.5 * eq.rho * cmath.exp(1j * math.pi / (4 * eq.N))


def branching_points(eq: TrinomialEquation, precision: int = 30) -> BranchingSet:
    """The N points R^(1/N) e(l/N); ``precision`` is in decimal digits."""
    if precision < 1:
        raise OutOfRange("precision must be positive")
    with mpmath.workdps(precision):
        rad = mpmath.root(mpmath.mpf(eq.R.numerator) / eq.R.denominator, eq.N)
        pts = tuple(rad * mpmath.expjpi(mpmath.mpf(2 * k) / eq.N) for k in range(eq.N))
    modulus = f"({eq.R})^(1/{eq.N})"
    return BranchingSet(modulus, pts, default_base_point(eq), precision)


def omega(eq: TrinomialEquation, ell: int) -> complex:
    return eq.rho * cmath.exp(2j * math.pi * ell / eq.N)


def coincidence_pair(eq: TrinomialEquation, ell_bar: int) -> tuple:
    """Master labels (t, t') whose roots coincide at omega_{ell_bar}."""
    if not 0 <= ell_bar < eq.N:
        raise OutOfRange(f"ell_bar must lie in [0, {eq.N - 1}]")
    n, p, r = eq.n, eq.p, eq.r
    if math.gcd(n, r) != 1:
        raise NoInverse(f"r = {r} is not invertible mod n = {n}")
    r_inv = pow(r, -1, n)
    # l = p(rt + 1) mod n  =>  t = (l p^-1 - 1) r^-1
    if math.gcd(p, n) != 1:
        raise NoInverse(f"p = {p} is not invertible mod n = {n}")
    t = ((ell_bar * pow(p, -1, n) - 1) * r_inv) % n
    return t, (t + r_inv) % n


def double_root_ratio(eq: TrinomialEquation, ell: int) -> float:
    """Smallest over second-smallest pairwise root distance of f(omega_l, .)."""
    import numpy as np

    roots = np.roots(eq.coefficients(omega(eq, ell), master=True))
    d = sorted(abs(a - b) for i, a in enumerate(roots) for b in roots[i + 1:])
    return float(d[0] / d[1]) if len(d) > 1 else 0.0
