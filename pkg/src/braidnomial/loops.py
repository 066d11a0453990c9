"""Loop specifications and their realization as piecewise paths in the X-plane.

All loops start and end at the base point eps = 0.5 R^(1/N) e^(i pi/4N).
Labels are anchored on the big circle |X^N/R| = 4, so the lassos around the
branch points are routed through it:

* zero:      the circle |X| = |eps| anticlockwise;
* big:       out along the ray of eps, once round the big circle, back;
* infinity:  the big loop reversed;
* sigma:     zero reversed, then big (the product with zero is big);
* omega:l:   out to the big circle, along it to arg 2 pi l/N, in to the
             delta-circle about omega_l, once round it, and back the same way.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass

import numpy as np

from .equation import TrinomialEquation, default_base_point, omega
from .errors import OutOfRange

KINDS = ("around_zero", "around_sigma", "around_infinity", "around_omega")


@dataclass(frozen=True)
class LoopSpec:
    kind: str
    ell: int | None = None
    orientation: str = "anticlockwise"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise OutOfRange(f"unknown loop kind {self.kind!r}")
        if (self.kind == "around_omega") != (self.ell is not None):
            raise OutOfRange("ell is required exactly for around_omega")

    def validate(self, eq: TrinomialEquation) -> None:
        if self.kind == "around_omega" and not 0 <= self.ell < eq.N:
            raise OutOfRange(f"ell must lie in [0, {eq.N - 1}]")

    @property
    def name(self) -> str:
        short = {"around_zero": "zero", "around_sigma": "sigma", "around_infinity": "infinity"}
        return short.get(self.kind, f"omega:{self.ell}")


def parse_loop(text: str) -> LoopSpec:
    text = text.strip()
    simple = {"zero": "around_zero", "sigma": "around_sigma", "infinity": "around_infinity"}
    if text in simple:
        return LoopSpec(simple[text])
    m = re.fullmatch(r"omega:(\d+)", text)
    if m:
        return LoopSpec("around_omega", int(m.group(1)))
    raise OutOfRange(f"cannot parse loop {text!r}")


def parse_loop_selector(text: str, eq: TrinomialEquation) -> list:
    """Expand the CLI selector into a list of loop products (lists of LoopSpec)."""
    if text == "all":
        names = ["zero", "sigma", "infinity"] + [f"omega:{l}" for l in range(eq.N)]
        out = [[parse_loop(s)] for s in names]
    elif text.startswith("composite:"):
        out = [[parse_loop(s) for s in text[len("composite:"):].split(",") if s]]
    else:
        out = [[parse_loop(text)]]
    for prod in out:
        for lp in prod:
            lp.validate(eq)
    return out


@dataclass(frozen=True)
class Segment:
    a: complex
    b: complex

    def point(self, s):
        return self.a + (self.b - self.a) * s

    def reversed(self):
        return Segment(self.b, self.a)

    @property
    def length(self) -> float:
        return abs(self.b - self.a)


@dataclass(frozen=True)
class Arc:
    center: complex
    radius: float
    theta0: float
    theta1: float

    def point(self, s):
        return self.center + self.radius * np.exp(1j * (self.theta0 + (self.theta1 - self.theta0) * s))

    def reversed(self):
        return Arc(self.center, self.radius, self.theta1, self.theta0)

    @property
    def length(self) -> float:
        return abs(self.theta1 - self.theta0) * self.radius


@dataclass(frozen=True)
class PathSpec:
    pieces: tuple
    start: complex

    @property
    def end(self) -> complex:
        return complex(self.pieces[-1].point(1.0)) if self.pieces else self.start

    def reversed(self) -> "PathSpec":
        return PathSpec(tuple(p.reversed() for p in reversed(self.pieces)), self.end)

    def __add__(self, other: "PathSpec") -> "PathSpec":
        return PathSpec(self.pieces + other.pieces, self.start)

    @property
    def closed(self) -> bool:
        return abs(self.end - self.start) <= 1e-12 * max(1.0, abs(self.start))

    def min_distance(self, points, samples: int = 2000) -> float:
        pts = np.asarray(list(points), dtype=complex)
        best = math.inf
        s = np.linspace(0, 1, samples)
        for piece in self.pieces:
            z = piece.point(s)
            best = min(best, float(np.abs(z[:, None] - pts[None, :]).min()))
        return best


def big_radius(eq: TrinomialEquation) -> float:
    """Radius where |X^N/R| = 4."""
    return (4 * float(eq.R)) ** (1.0 / eq.N)


def default_delta(eq: TrinomialEquation) -> float:
    return 1e-3 * eq.rho


def _big_loop(eq, eps):
    th, big = cmath.phase(eps), big_radius(eq)
    xb = big * cmath.exp(1j * th)
    return (Segment(eps, xb), Arc(0j, big, th, th + 2 * math.pi), Segment(xb, eps))


def omega_approach(eq: TrinomialEquation, ell: int, delta: float, eps: complex | None = None) -> PathSpec:
    """From eps to the point omega_l (1 + delta/rho) via the big circle."""
    eps = default_base_point(eq) if eps is None else eps
    th, big = cmath.phase(eps), big_radius(eq)
    th_l = 2 * math.pi * ell / eq.N
    w = omega(eq, ell)
    pieces = (
        Segment(eps, big * cmath.exp(1j * th)),
        Arc(0j, big, th, th_l),
        Segment(big * cmath.exp(1j * th_l), w * (1 + delta / eq.rho)),
    )
    return PathSpec(pieces, eps)


def omega_probe(eq: TrinomialEquation, ell: int, delta: float) -> PathSpec:
    """The anticlockwise delta-circle about omega_l, starting on its outer side."""
    th_l = 2 * math.pi * ell / eq.N
    w = omega(eq, ell)
    arc = Arc(w, delta, th_l, th_l + 2 * math.pi)
    return PathSpec((arc,), complex(arc.point(0.0)))


def loop_path(eq: TrinomialEquation, loop: LoopSpec, delta: float | None = None,
              eps: complex | None = None) -> PathSpec:
    loop.validate(eq)
    eps = default_base_point(eq) if eps is None else eps
    delta = default_delta(eq) if delta is None else delta
    th = cmath.phase(eps)
    zero = PathSpec((Arc(0j, abs(eps), th, th + 2 * math.pi),), eps)
    big = PathSpec(_big_loop(eq, eps), eps)
    if loop.kind == "around_zero":
        return zero
    if loop.kind == "around_infinity":
        return big.reversed()
    if loop.kind == "around_sigma":
        return zero.reversed() + big
    approach = omega_approach(eq, loop.ell, delta, eps)
    return approach + omega_probe(eq, loop.ell, delta) + approach.reversed()


def product_path(eq: TrinomialEquation, loops, delta=None, eps=None) -> PathSpec:
    eps = default_base_point(eq) if eps is None else eps
    path = PathSpec((), eps)
    for lp in loops:
        path = path + loop_path(eq, lp, delta, eps)
    return path
