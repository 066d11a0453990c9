"""Closed-form monodromy of the canonical loops and its geometric realization.

The exact content is the list of rational twists per loop together with the
coincidence pairs.  To project to an Artin word the loop is realized on an
idealized root configuration:

* E, at the base point: the p-cluster on the circle of radius
  |eps|^((r-g)/p), the q-cluster on the circle of radius |eps|^(g/q), at the
  leading-term phases of the local series;
* B, at the anchor on the big circle: a regular n-gon of radius
  |X_b|^(r/n), label t at angle 1/(2n) + rt/n + r arg(X_b)/(2 pi n) turns.

Going from E to B and back is a log-spiral slide.  Loops realize as
  zero      R^((r-g)/p) on the p-cluster, R^(g/q) on the q-cluster;
  big       slide to B, R^(r/n) on everything, slide back;
  infinity  as big with R^(-r/n);
  sigma     zero reversed, then big;
  omega:l   slide to B, turn with the big circle to arg omega_l, half twist
            of the coinciding (adjacent) pair, and everything back.
Everything runs on the master equation and is lifted to the m sheets by a
continuous m-th root.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .braids import BraidWord, compose, identity_perm, inverse_perm, transposition
from .equation import TrinomialEquation, coincidence_pair, default_base_point
from .errors import GcdConditionViolated
from .loops import LoopSpec, big_radius
from .twists import (
    DEFAULT_DIRECTION,
    ProjectionSetup,
    RationalTwist,
    Slide,
    TwistSequence,
    project_samples,
    simulate,
)

LABEL_MISMATCH = "PlacementDisagreement: orbit and nearest-angle placement of the p-cluster differ"


def _require(eq: TrinomialEquation) -> None:
    if not eq.predictor_valid:
        raise GcdConditionViolated(
            f"gcd(n,N) = {math.gcd(eq.n, eq.N)}, gcd(n,r) = {math.gcd(eq.n, eq.r)}; predictor needs both 1")


# closed-form permutations on master labels; P[k] is the label whose
# starting place label k occupies at the end

def shift_perm(n: int, k: int) -> tuple:
    return tuple((t + k) % n for t in range(n))


def omega_perm(eq: TrinomialEquation, ell: int) -> tuple:
    return transposition(eq.n, *coincidence_pair(eq, ell))


def omega_order(eq: TrinomialEquation) -> list:
    """Chronological order of the branch points swept by sigma: 0, N-1, ..., 1."""
    return [0] + list(range(eq.N - 1, 0, -1))


def zero_perm(eq: TrinomialEquation) -> tuple:
    """Monodromy of the small circle: big circle = omega_{N-1} ... omega_1, zero, omega_0.

    Solving that relation gives zero = omega_1 ... omega_{N-1}, big, omega_0.
    """
    b = [omega_perm(eq, l) for l in range(eq.N)]
    return compose(*b[1:], shift_perm(eq.n, 1), b[0])


def master_permutation(eq: TrinomialEquation, loop: LoopSpec) -> tuple:
    _require(eq)
    loop.validate(eq)
    if loop.kind == "around_zero":
        return zero_perm(eq)
    if loop.kind == "around_infinity":
        return shift_perm(eq.n, -1)
    if loop.kind == "around_sigma":
        return compose(inverse_perm(zero_perm(eq)), shift_perm(eq.n, 1))
    return omega_perm(eq, loop.ell)


def p_cluster_labels(eq: TrinomialEquation) -> tuple:
    """Labels of the p-cluster, listed by local series index: the orbit of 0."""
    P = zero_perm(eq)
    out, k = [], 0
    for _ in range(eq.p):
        out.append(k)
        k = P[k]
    return tuple(out)


def _circ(a: float, b: float) -> float:
    d = (a - b) % 1.0
    return min(d, 1.0 - d)


def _cyclic_match(label_angles: dict, slot_angles: list) -> dict:
    """Assign labels to slots by the best cyclic shift of the angular orders."""
    labs = sorted(label_angles, key=lambda L: label_angles[L] % 1.0)
    slots = sorted(range(len(slot_angles)), key=lambda s: slot_angles[s] % 1.0)
    k = len(labs)
    best, best_c = None, 0
    for c in range(k):
        cost = sum(_circ(label_angles[labs[i]], slot_angles[slots[(i + c) % k]]) ** 2 for i in range(k))
        if best is None or cost < best - 1e-12:
            best, best_c = cost, c
    return {labs[i]: slots[(i + best_c) % k] for i in range(k)}


@dataclass
class Placement:
    eps: complex
    anchor: complex
    eps_positions: np.ndarray  # master E configuration, label order
    eps_args: np.ndarray  # continuous arguments at E (principal at the anchor)
    big_positions: np.ndarray
    big_args: np.ndarray
    p_labels: tuple
    q_labels: tuple
    flags: list = field(default_factory=list)


def placement(eq: TrinomialEquation, eps: complex | None = None) -> Placement:
    eps = default_base_point(eq) if eps is None else eps
    n, p, q, g, r = eq.n, eq.p, eq.q, eq.g, eq.r
    th = cmath.phase(eps) / (2 * math.pi)
    xa = big_radius(eq) * cmath.exp(2j * math.pi * th)
    turns = np.array([1 / (2 * n) + r * t / n + r * th / n for t in range(n)])
    big_args = 2 * math.pi * (((turns + 0.5) % 1.0) - 0.5)
    big = abs(xa) ** (r / n) * np.exp(1j * big_args)

    p_labels = p_cluster_labels(eq)
    q_labels = tuple(t for t in range(n) if t not in p_labels)
    p_slots = [(r - g) * (s + th) / p for s in range(p)]
    q_slots = [(g * th + s) / q for s in range(q)]
    flags = []
    nearest = _cyclic_match({L: turns[L] for L in p_labels}, p_slots)
    if any(nearest[L] != s for s, L in enumerate(p_labels)):
        flags.append(LABEL_MISMATCH)
    q_assign = _cyclic_match({L: turns[L] for L in q_labels}, q_slots)

    rad_p, rad_q = abs(eps) ** ((r - g) / p), abs(eps) ** (g / q)
    E = np.zeros(n, dtype=complex)
    for s, L in enumerate(p_labels):
        E[L] = rad_p * cmath.exp(2j * math.pi * p_slots[s])
    for L, s in q_assign.items():
        E[L] = rad_q * cmath.exp(2j * math.pi * q_slots[s])
    # arguments at E continue the principal ones at B along the shortest turn
    dE = np.angle(E) - big_args
    eps_args = big_args + (dE + math.pi) % (2 * math.pi) - math.pi
    return Placement(eps, xa, E, eps_args, big, big_args, p_labels, q_labels, flags)


class _Morph:
    """Slide between two configurations, resolved on the current positions.

    A strand sitting at the place of label L in ``src`` moves to the place of
    L in ``dst``, so earlier twists that permuted places are respected.
    """

    def __init__(self, src: np.ndarray, dst: np.ndarray):
        self.src, self.dst = src, dst

    def resolve(self, pos: np.ndarray) -> Slide:
        targets = []
        for k, z in enumerate(pos):
            L = int(np.argmin(np.abs(self.src - z)))
            targets.append((k, complex(self.dst[L])))
        return Slide(tuple(targets))


def master_moves(eq: TrinomialEquation, loop: LoopSpec, pl: Placement) -> list:
    n, p, q, g, r = eq.n, eq.p, eq.q, eq.g, eq.r
    P, Q = pl.p_labels, pl.q_labels
    zero = [RationalTwist(Fraction(r - g, p), P), RationalTwist(Fraction(g, q), Q)]
    to_big = _Morph(pl.eps_positions, pl.big_positions)
    back = _Morph(pl.big_positions, pl.eps_positions)
    everyone = tuple(range(n))
    if loop.kind == "around_zero":
        return zero
    if loop.kind == "around_infinity":
        return [to_big, RationalTwist(Fraction(-r, n), everyone), back]
    big = [to_big, RationalTwist(Fraction(r, n), everyone), back]
    if loop.kind == "around_sigma":
        return [RationalTwist(-tw.alpha, tw.members) for tw in reversed(zero)] + big
    t, t2 = coincidence_pair(eq, loop.ell)
    th = cmath.phase(pl.eps)
    beta = Fraction(r, n) * (Fraction(loop.ell, eq.N) - Fraction(th / (2 * math.pi)).limit_denominator(10 ** 12))
    turned = pl.big_positions * cmath.exp(2j * math.pi * float(beta))
    near = _near_center(eq, loop.ell, turned, t, t2)
    return [to_big, RationalTwist(beta, everyone), _Morph(turned, near),
            RationalTwist(Fraction(1, 2), (t, t2), None), _Morph(near, turned),
            RationalTwist(-beta, everyone), back]


def _near_center(eq, ell, turned, t, t2):
    """Copy of ``turned`` with the pair t, t' moved close to their meeting point.

    The half twist then happens in a small disc about the double root, which
    keeps the origin (a branch point of the m-th root) outside it.
    """
    from .tracker import double_root

    c = double_root(eq, ell)
    u = turned[t] - turned[t2]
    u /= abs(u)
    others = [abs(c - z) for k, z in enumerate(turned) if k not in (t, t2)]
    eta = 0.25 * min([abs(c)] + others)
    near = turned.copy()
    near[t], near[t2] = c + eta * u / 2, c - eta * u / 2
    return near


def _resolve(moves, pos):
    out = []
    for mv in moves:
        out.append(mv.resolve(pos) if isinstance(mv, _Morph) else mv)
        seq = TwistSequence(pos, [out[-1]])
        pos = simulate(seq)[-1]
    return out


def realize_master(eq: TrinomialEquation, loops, pl: Placement) -> np.ndarray:
    """Master sample matrix for a product of loops, starting at E."""
    pos = pl.eps_positions
    chunks = [pos[None, :]]
    for lp in loops:
        # each loop starts on the places of E; twist members name places, not strands
        at = {int(np.argmin(np.abs(pl.eps_positions - z))): k for k, z in enumerate(pos)}
        moves = [RationalTwist(mv.alpha, tuple(at[L] for L in mv.members), mv.center)
                 if isinstance(mv, RationalTwist) else mv for mv in master_moves(eq, lp, pl)]
        moves = _resolve(moves, pos)
        samp = simulate(TwistSequence(pos, moves))
        chunks.append(samp[1:])
        pos = samp[-1]
    return np.concatenate(chunks, axis=0)


def lift(samples: np.ndarray, args0: np.ndarray, m: int) -> np.ndarray:
    """Continuous m-th roots of master samples; column t*m + j is sheet j of t."""
    if m == 1:
        return samples
    ang = np.angle(samples)
    d = np.diff(ang, axis=0)
    d = (d + math.pi) % (2 * math.pi) - math.pi
    args = args0[None, :] + np.concatenate([np.zeros((1, samples.shape[1])), np.cumsum(d, axis=0)])
    mod = np.abs(samples) ** (1.0 / m)
    cols = [mod[:, t] * np.exp(1j * (args[:, t] + 2 * math.pi * j) / m)
            for t in range(samples.shape[1]) for j in range(m)]
    return np.stack(cols, axis=1)


def label_permutation(samples: np.ndarray) -> tuple:
    start, end = samples[0], samples[-1]
    return tuple(int(np.argmin(np.abs(start - y))) for y in end)


def full_labels(eq: TrinomialEquation, ts) -> tuple:
    return tuple(t * eq.m + j for t in ts for j in range(eq.m))


@dataclass
class MonodromyPrediction:
    loops: tuple
    twists: list  # reported RationalTwist entries, in chronological order
    notes: list  # per twist: loop name and role
    permutation: tuple  # full labels t*m + j
    master_permutation: tuple
    coincidences: list  # (ell, t, t')
    artin: BraidWord
    position_labels: tuple
    samples: np.ndarray
    flags: list = field(default_factory=list)


def reported_twists(eq: TrinomialEquation, loop: LoopSpec, pl: Placement, centers: dict) -> list:
    """Exact twists of one loop on full labels, with a role string each."""
    m, n, p, q, g, r, N = eq.m, eq.n, eq.p, eq.q, eq.g, eq.r, eq.N
    Pf, Qf = full_labels(eq, pl.p_labels), full_labels(eq, pl.q_labels)
    allf = tuple(range(m * n))
    if loop.kind == "around_zero":
        return [(RationalTwist(Fraction(r - g, m * p), Pf), "p-cluster about 0"),
                (RationalTwist(Fraction(g, m * q), Qf), "q-cluster about 0")]
    if loop.kind == "around_infinity":
        return [(RationalTwist(Fraction(-r, m * n), allf), "all strands about 0")]
    if loop.kind == "around_omega":
        return _half_twists(eq, loop.ell, centers)
    out = [(RationalTwist(Fraction(-N, m * n * p), Pf), "p-cluster about 0"),
           (RationalTwist(Fraction(N, m * n * q), Qf), "q-cluster about 0")]
    for ell in omega_order(eq):
        out.extend(_half_twists(eq, ell, centers))
    return out


def _half_twists(eq, ell, centers):
    t, t2 = coincidence_pair(eq, ell)
    out = []
    for j in range(eq.m):
        c = centers.get((ell, j))
        mem = (t * eq.m + j, t2 * eq.m + centers.get(("partner", ell, j), j))
        out.append((RationalTwist(Fraction(1, 2), mem, c), f"half twist at omega_{ell}"))
    return out


def collision_centers(eq: TrinomialEquation) -> dict:
    """Double roots at each omega_l, lifted to the m sheets (by nearest sheet)."""
    from .tracker import double_root

    out = {}
    for ell in range(eq.N):
        c = double_root(eq, ell)
        for j in range(eq.m):
            out[(ell, j)] = complex(abs(c) ** (1 / eq.m) * cmath.exp(1j * (cmath.phase(c) + 2 * math.pi * j) / eq.m))
    return out


def predict(eq: TrinomialEquation, loop, setup: ProjectionSetup = ProjectionSetup(),
            eps: complex | None = None) -> MonodromyPrediction:
    """Prediction for one loop or a product of loops (a sequence of LoopSpec)."""
    _require(eq)
    loops = (loop,) if isinstance(loop, LoopSpec) else tuple(loop)
    for lp in loops:
        lp.validate(eq)
    pl = placement(eq, eps)
    samples = lift(realize_master(eq, loops, pl), pl.eps_args, eq.m)
    centers = collision_centers(eq)
    twists, notes, coinc = [], [], []
    for lp in loops:
        for tw, role in reported_twists(eq, lp, pl, centers):
            twists.append(tw)
            notes.append(f"{lp.name}: {role}")
        if lp.kind == "around_omega":
            coinc.append((lp.ell, *coincidence_pair(eq, lp.ell)))
        elif lp.kind == "around_sigma":
            coinc.extend((l, *coincidence_pair(eq, l)) for l in omega_order(eq))
    mperm = identity_perm(eq.n)
    for lp in loops:
        mperm = compose(mperm, master_permutation(eq, lp))
    perm = label_permutation(samples)
    if tuple(perm[k] // eq.m for k in range(0, eq.m * eq.n, eq.m)) != mperm:
        raise AssertionError("realized permutation disagrees with the closed form")
    proj = project_samples(samples, setup.direction)
    return MonodromyPrediction(loops, twists, notes, perm, mperm, coinc, proj.word, proj.start_order,
                               samples, list(pl.flags))


def predicted_artin(eq: TrinomialEquation, loops, setup: ProjectionSetup = ProjectionSetup()) -> BraidWord:
    loops = (loops,) if isinstance(loops, LoopSpec) else tuple(loops)
    if not loops:
        return BraidWord(eq.n_total)
    return predict(eq, loops, setup).artin


def eps_configuration(eq: TrinomialEquation, eps: complex | None = None) -> np.ndarray:
    """The idealized root configuration at the base point, full labels."""
    pl = placement(eq, eps)
    return lift(pl.eps_positions[None, :], pl.eps_args, eq.m)[0]
