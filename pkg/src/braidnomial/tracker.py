"""Numerical continuation of all roots of f(X, .) along paths in the X-plane.

Each step is an Euler prediction (dY/dX = -f_X/f_Y) followed by Newton
correction.  A step is accepted only if every root moved less than 0.3 of the
current minimum pairwise separation and every relative residual is within
tolerance; that guard makes nearest matching between consecutive samples
unambiguous.  On step underflow the piece is retried in mpmath at 34 digits.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import mpmath
import numpy as np

from .braids import BraidWord, inverse_perm
from .equation import TrinomialEquation, coincidence_pair, default_base_point, omega
from .errors import AmbiguousCollision, LabelAmbiguity, ResidualBlowup, StepCollapse
from .loops import PathSpec, Segment, big_radius, default_delta, omega_approach, omega_probe
from .series import eval_inf_series
from .twists import DEFAULT_DIRECTION, project_samples

LABEL_FALLBACK = "LabelAmbiguity: labels assigned by angular order at the anchor point"


@dataclass(frozen=True)
class TrackerControls:
    tol: float = 1e-10
    max_newton: int = 20
    guard: float = 0.3
    initial_step: float = 1e-2
    min_step: float = 1e-12
    max_step: float = 0.05
    max_steps: int = 200000
    mp_dps: int = 34


@dataclass
class TracedPath:
    X: np.ndarray
    roots: np.ndarray  # samples x roots, columns in label order
    max_residual: float
    min_pair_separation: float
    master: bool = False
    flags: list = field(default_factory=list)

    @property
    def samples(self):
        return list(zip(self.X, self.roots))

    def endpoint_permutation(self) -> tuple:
        """Label map: label k ends where label P[k] started."""
        start, end = self.roots[0], self.roots[-1]
        P = tuple(int(np.argmin(np.abs(start - y))) for y in end)
        if len(set(P)) != len(P):
            raise ResidualBlowup("endpoint matching is not a bijection")
        return P

    def endpoint_displacement(self) -> float:
        P = self.endpoint_permutation()
        return float(np.max(np.abs(self.roots[-1] - self.roots[0][list(P)])))


def _exponents(eq: TrinomialEquation, master: bool):
    return (eq.n, eq.p) if master else (eq.n_total, eq.p_total)


def all_roots(eq: TrinomialEquation, X: complex, master: bool = False) -> np.ndarray:
    return np.roots(eq.coefficients(X, master=master))


def _rel_residual(eq, X, Y, master):
    deg, mid = _exponents(eq, master)
    a, b, c = Y ** deg, X ** eq.g * Y ** mid, X ** eq.r
    return np.abs(a - b + c) / (np.abs(a) + np.abs(b) + abs(c))


def _newton(eq, X, Y, controls, master):
    deg, mid = _exponents(eq, master)
    Xg, Xr = X ** eq.g, X ** eq.r
    res = None
    for _ in range(controls.max_newton):
        Ym = Y ** (mid - 1)
        Yd = Y ** (deg - 1)
        f = Yd * Y - Xg * Ym * Y + Xr
        fy = deg * Yd - mid * Xg * Ym
        if np.any(fy == 0):
            return Y, math.inf
        Y = Y - f / fy
        res = _rel_residual(eq, X, Y, master).max()
        if res <= controls.tol * 1e-3:
            break
    return Y, float(res)


def _slope(eq, X, Y, master):
    deg, mid = _exponents(eq, master)
    fx = -eq.g * X ** (eq.g - 1) * Y ** mid + eq.r * X ** (eq.r - 1)
    fy = deg * Y ** (deg - 1) - mid * X ** eq.g * Y ** (mid - 1)
    return -fx / fy


def _sep(Y) -> float:
    d = np.abs(Y[:, None] - Y[None, :])
    d[np.diag_indices(len(Y))] = np.inf
    return float(d.min())


def _track_piece(eq, piece, Y, controls, master):
    Xs, Ys, resmax = [], [], 0.0
    s, h = 0.0, controls.initial_step
    X0 = complex(piece.point(0.0))
    steps = 0
    while s < 1.0:
        steps += 1
        if steps > controls.max_steps:
            raise StepCollapse("step budget exhausted")
        h = min(h, 1.0 - s)
        X1 = complex(piece.point(s + h))
        Yp = Y + _slope(eq, X0, Y, master) * (X1 - X0)
        Yn, res = _newton(eq, X1, Yp, controls, master)
        sep = _sep(Y)
        disp = float(np.max(np.abs(Yn - Y)))
        if res <= controls.tol and disp < controls.guard * sep and np.all(np.isfinite(Yn)):
            s = 1.0 if h >= 1.0 - s else s + h
            X0, Y = X1, Yn
            Xs.append(X1)
            Ys.append(Yn)
            resmax = max(resmax, res)
            h = min(h * 1.5, controls.max_step)
        else:
            h /= 2
            if h < controls.min_step:
                raise StepCollapse(f"step underflow near X = {X1}")
    return Xs, Ys, resmax


def _track_piece_mp(eq, piece, Y, controls, master):
    """Same algorithm in mpmath for the rare pieces where doubles give up."""
    deg, mid = _exponents(eq, master)
    with mpmath.workdps(controls.mp_dps):
        Y = [mpmath.mpc(y) for y in Y]
        s, h = mpmath.mpf(0), mpmath.mpf(controls.initial_step)
        X0 = mpmath.mpc(complex(piece.point(0.0)))
        Xs, Ys, resmax = [], [], 0.0
        tol = mpmath.mpf(controls.tol)

        def point(u):
            return mpmath.mpc(complex(piece.point(float(u))))

        while s < 1:
            h = min(h, 1 - s)
            X1 = point(s + h)
            Yn = []
            res = mpmath.mpf(0)
            for y in Y:
                fx = -eq.g * X0 ** (eq.g - 1) * y ** mid + eq.r * X0 ** (eq.r - 1)
                fy = deg * y ** (deg - 1) - mid * X0 ** eq.g * y ** (mid - 1)
                z = y - fx / fy * (X1 - X0)
                for _ in range(controls.max_newton):
                    f = z ** deg - X1 ** eq.g * z ** mid + X1 ** eq.r
                    fy = deg * z ** (deg - 1) - mid * X1 ** eq.g * z ** (mid - 1)
                    z -= f / fy
                a, b, c = z ** deg, X1 ** eq.g * z ** mid, X1 ** eq.r
                res = max(res, abs(a - b + c) / (abs(a) + abs(b) + abs(c)))
                Yn.append(z)
            sep = min(abs(Y[i] - Y[j]) for i in range(len(Y)) for j in range(i + 1, len(Y)))
            disp = max(abs(a - b) for a, b in zip(Yn, Y))
            if res <= tol and disp < controls.guard * sep:
                s = mpmath.mpf(1) if h >= 1 - s else s + h
                X0, Y = X1, Yn
                Xs.append(complex(X1))
                Ys.append(np.array([complex(y) for y in Y]))
                resmax = max(resmax, float(res))
                h = min(h * 1.5, controls.max_step)
            else:
                h /= 2
                if h < mpmath.mpf(10) ** (-2 * controls.mp_dps // 3):
                    raise StepCollapse("step underflow in extended precision")
        return Xs, Ys, resmax


def trace(eq: TrinomialEquation, path: PathSpec, base_roots, controls: TrackerControls = TrackerControls(),
          master: bool = False) -> TracedPath:
    """Continue ``base_roots`` (label order) from path.start along every piece."""
    Y = np.asarray(base_roots, dtype=complex)
    Xs, Ys = [complex(path.start)], [Y.copy()]
    resmax = float(_rel_residual(eq, path.start, Y, master).max()) if len(Y) else 0.0
    minsep = _sep(Y) if len(Y) > 1 else math.inf
    flags = []
    for piece in path.pieces:
        try:
            px, py, res = _track_piece(eq, piece, Y, controls, master)
        except StepCollapse:
            px, py, res = _track_piece_mp(eq, piece, Y, controls, master)
            flags.append("ExtendedPrecisionFallback")
        if py:
            Y = py[-1]
        Xs.extend(px)
        Ys.extend(py)
        resmax = max(resmax, res)
        for y in py:
            minsep = min(minsep, _sep(y))
    return TracedPath(np.array(Xs), np.array(Ys), resmax, minsep, master, flags)


# labels

def anchor_point(eq: TrinomialEquation, eps: complex | None = None) -> complex:
    eps = default_base_point(eq) if eps is None else eps
    return big_radius(eq) * cmath.exp(1j * cmath.phase(eps))


def series_values(eq: TrinomialEquation, X: complex, K: int = 60, master: bool = False) -> np.ndarray:
    """Label-ordered values at X from the infinity series (index t*m + j)."""
    T = np.array([eval_inf_series(eq, t, X, K).value for t in range(eq.n)])
    if master or eq.m == 1:
        return T
    m = eq.m
    return np.array([cmath.exp(2j * math.pi * j / m) * T[t] ** (1.0 / m) for t in range(eq.n) for j in range(m)])


def _match(values, roots, strict):
    cost = np.abs(values[:, None] - roots[None, :])
    idx = cost.argmin(axis=1)
    gap = _sep(roots)
    ok = len(set(idx.tolist())) == len(idx) and float(cost[np.arange(len(idx)), idx].max()) < 0.1 * gap
    return idx, ok


@dataclass
class LabeledBase:
    eps: complex
    anchor: complex
    roots: np.ndarray  # at eps, label order
    anchor_roots: np.ndarray
    master: bool
    flags: list = field(default_factory=list)


def label_base_roots(eq: TrinomialEquation, eps: complex | None = None, K: int = 60,
                     controls: TrackerControls = TrackerControls(), master: bool = False,
                     strict: bool = True) -> LabeledBase:
    eps = default_base_point(eq) if eps is None else eps
    xa = anchor_point(eq, eps)
    roots = all_roots(eq, xa, master)
    flags = []
    try:
        vals = series_values(eq, xa, K, master)
        idx, ok = _match(vals, roots, strict)
    except (ValueError, ZeroDivisionError):
        ok = False
    if not ok:
        if strict and eq.predictor_valid:
            raise LabelAmbiguity("series values do not match roots one-to-one")
        idx = np.argsort(np.angle(roots), kind="stable")
        flags.append(LABEL_FALLBACK)
    Ya = roots[idx]
    t = trace(eq, PathSpec((Segment(xa, eps),), xa), Ya, controls, master)
    return LabeledBase(eps, xa, t.roots[-1], Ya, master, flags + t.flags)


def trace_loop(eq, path: PathSpec, base: LabeledBase, controls: TrackerControls = TrackerControls()) -> TracedPath:
    traced = trace(eq, path, base.roots, controls, base.master)
    traced.flags = base.flags + traced.flags
    return traced


@dataclass(frozen=True)
class ExtractedBraid:
    word: BraidWord
    permutation: tuple  # label map (label k ends where label P[k] started)
    position_labels: tuple  # label at each projection position at the start
    direction: float


def extract_braid(traced: TracedPath, direction: float = DEFAULT_DIRECTION) -> ExtractedBraid:
    P = traced.endpoint_permutation()
    proj = project_samples(traced.roots, direction)
    # consistency: the word's position permutation, read through the labels
    start = proj.start_order
    label_perm_from_word = [0] * len(start)
    for k, lab in enumerate(start):
        # strand 'lab' (position k) ends at position perm[k], where label start[perm[k]] began
        label_perm_from_word[lab] = start[proj.permutation[k]]
    if tuple(label_perm_from_word) != P:
        raise ResidualBlowup("word permutation disagrees with endpoint labels")
    return ExtractedBraid(proj.word, P, start, proj.direction)


# collisions

def _pair_ratio(Y):
    d = sorted((abs(Y[i] - Y[j]), i, j) for i in range(len(Y)) for j in range(i + 1, len(Y)))
    return d[0][1:], d[0][0] / d[1][0]


def collision_pair_at(eq: TrinomialEquation, ell_bar: int, delta: float | None = None,
                      controls: TrackerControls = TrackerControls(), base: LabeledBase | None = None,
                      retries: int = 4) -> tuple:
    """Master labels of the two roots that meet at omega_l.

    Roots are continued from eps to the delta-circle about omega_l; the pair
    with the smallest distance must beat every other pair by a factor 10.
    """
    base = base or label_base_roots(eq, controls=controls, master=True)
    delta = default_delta(eq) if delta is None else delta
    for _ in range(retries + 1):
        t = trace(eq, omega_approach(eq, ell_bar, delta, base.eps), base.roots, controls, master=True)
        pair, ratio = _pair_ratio(t.roots[-1])
        if ratio <= 0.1:
            return tuple(sorted(pair)), ratio
        delta /= 2
    raise AmbiguousCollision(f"ratio {ratio:.3g} at omega_{ell_bar}")


def double_root(eq: TrinomialEquation, ell: int) -> complex:
    """The double root of the master polynomial at omega_l."""
    Y = all_roots(eq, omega(eq, ell), master=True)
    (i, j), _ = _pair_ratio(Y)
    return complex((Y[i] + Y[j]) / 2)


@dataclass
class RoofTileProbe:
    ell: int
    pair: tuple  # master labels (t, t')
    sheet_partners: dict  # sheet j of t meets sheet partners[j] of t'
    per_sheet_order_constant: bool
    single_center_order_constant: bool
    samples: int


def _cyclic_key(angles) -> tuple:
    order = list(np.argsort(angles, kind="stable"))
    k = order.index(0)
    return tuple(int(x) for x in order[k:] + order[:k])


def roof_tile_probe(eq: TrinomialEquation, ell: int, delta: float | None = None,
                    base: LabeledBase | None = None, controls: TrackerControls = TrackerControls()) -> RoofTileProbe:
    """Angular order of the m sheets of the two meeting master roots along the delta-circle.

    Sheet j of t is measured about its own meeting point c^(j) = Y_t^(j)(omega_l)
    (the per-sheet reading); the order about one fixed meeting point c^(0) is
    recorded as well.
    """
    m = eq.m
    base = base or label_base_roots(eq, controls=controls)
    delta = default_delta(eq) if delta is None else delta
    approach = trace(eq, omega_approach(eq, ell, delta, base.eps), base.roots, controls)
    fine = TrackerControls(**{**controls.__dict__, "max_step": min(controls.max_step, 0.005)})
    probe = trace(eq, omega_probe(eq, ell, delta), approach.roots[-1], fine)
    t, t2 = coincidence_pair(eq, ell)
    c = double_root(eq, ell)
    centers = np.array([abs(c) ** (1 / m) * cmath.exp(1j * (cmath.phase(c) + 2 * math.pi * k) / m) for k in range(m)])
    Y0 = probe.roots[0]
    own = [int(np.argmin(np.abs(centers - Y0[t * m + j]))) for j in range(m)]
    partners = {}
    for j in range(m):
        partners[j] = int(np.argmin([abs(Y0[t2 * m + k] - centers[own[j]]) for k in range(m)]))
    per_sheet, single = set(), set()
    for Y in probe.roots:
        for tau, mapping in ((t, own), (t2, [own[j] for j in sorted(partners, key=partners.get)])):
            rel = [cmath.phase(Y[tau * m + j] - centers[mapping[j]]) for j in range(m)]
            per_sheet.add((tau, _cyclic_key(rel)))
            single.add((tau, _cyclic_key([cmath.phase(Y[tau * m + j] - centers[0]) for j in range(m)])))
    return RoofTileProbe(ell, (t, t2), partners, len(per_sheet) == 2, len(single) == 2, len(probe.roots))
