"""Rational twists, their simulation, and projection of sampled strand
motions to Artin words.

Projection: strands are ordered by their coordinate along the axis
u = e^(i*direction); position 0 has the smallest coordinate.  When the
strands at positions k-1 and k exchange, the letter is +k if the strand
that was at position k passes with the larger coordinate along i*u, so
an anticlockwise exchange of two points is positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .braids import BraidWord, inverse_perm
from .errors import DegenerateProjection, OutOfRange, SnapCollision, UnresolvedCrossing

DEFAULT_DIRECTION = 2 * math.pi / 137
MAX_PERTURBATIONS = 8
STEP_FRACTION = 0.25


@dataclass(frozen=True)
class RationalTwist:
    """Rigid rotation by alpha full turns of ``members`` about ``center``.

    ``center=None`` means the barycenter of the members when the twist starts.
    """

    alpha: Fraction
    members: tuple
    center: complex | None = 0j

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "members", tuple(sorted(int(k) for k in self.members)))
        if not self.members:
            raise OutOfRange("a twist needs at least one member")

    def resolve_center(self, pos: np.ndarray) -> complex:
        if self.center is None:
            return complex(np.mean(pos[list(self.members)]))
        return complex(self.center)

    def positions(self, pos: np.ndarray, s: np.ndarray) -> np.ndarray:
        c = self.resolve_center(pos)
        out = np.repeat(pos[None, :], len(s), axis=0).astype(complex)
        idx = list(self.members)
        rot = np.exp(2j * math.pi * float(self.alpha) * s)[:, None]
        out[:, idx] = (pos[idx][None, :] - c) * rot + c
        return out

    def initial_count(self, pos: np.ndarray) -> int:
        if self.alpha == 0:
            return 1
        c = self.resolve_center(pos)
        rad = max(abs(pos[k] - c) for k in self.members)
        sep = min_separation(pos)
        if rad == 0:
            return 1
        step = min(2 * math.pi / 64, STEP_FRACTION * sep / rad)
        return max(1, math.ceil(2 * math.pi * abs(float(self.alpha)) / step))


@dataclass(frozen=True)
class Slide:
    """Move the given strands to target points.

    ``mode="spiral"`` interpolates log z (shortest turn about the origin),
    ``mode="line"`` moves along straight segments.
    """

    targets: tuple  # ((strand, complex), ...)
    mode: str = "spiral"

    def positions(self, pos: np.ndarray, s: np.ndarray) -> np.ndarray:
        out = np.repeat(pos[None, :], len(s), axis=0).astype(complex)
        for k, z1 in self.targets:
            z0 = pos[k]
            if self.mode == "line" or z0 == 0 or z1 == 0:
                out[:, k] = z0 + (z1 - z0) * s
            else:
                l0, l1 = np.log(z0), np.log(z1)
                d = (l1.imag - l0.imag + math.pi) % (2 * math.pi) - math.pi
                out[:, k] = np.exp(l0 + s * (math.log(abs(z1)) - l0.real + 1j * d))
        return out

    def initial_count(self, pos: np.ndarray) -> int:
        return 64


@dataclass
class TwistSequence:
    initial: np.ndarray
    moves: list = field(default_factory=list)

    def __post_init__(self):
        self.initial = np.asarray(self.initial, dtype=complex)
        if min_separation(self.initial) <= 0:
            raise OutOfRange("initial positions must be pairwise distinct")
        n = len(self.initial)
        for mv in self.moves:
            idx = mv.members if isinstance(mv, RationalTwist) else [k for k, _ in mv.targets]
            if any(not 0 <= k < n for k in idx):
                raise OutOfRange("member index outside strand range")

    @property
    def strand_count(self) -> int:
        return len(self.initial)


@dataclass(frozen=True)
class ProjectionSetup:
    direction: float = DEFAULT_DIRECTION
    endpoint_policy: str = "exact"
    time_resolution: int = 1

    def __post_init__(self):
        if self.endpoint_policy not in ("exact", "snap"):
            raise OutOfRange(f"unknown endpoint policy {self.endpoint_policy!r}")
        if self.time_resolution < 1:
            raise OutOfRange("time_resolution must be positive")


def min_separation(pos) -> float:
    pos = np.asarray(pos)
    if len(pos) < 2:
        return math.inf
    d = np.abs(pos[:, None] - pos[None, :])
    d[np.diag_indices(len(pos))] = np.inf
    return float(d.min())


def _motion_samples(mv, pos: np.ndarray, resolution: int) -> np.ndarray:
    count = mv.initial_count(pos) * resolution
    for _ in range(20):
        s = np.linspace(0.0, 1.0, count + 1)
        samp = mv.positions(pos, s)
        step = np.abs(np.diff(samp, axis=0)).max(axis=1) if count else np.zeros(0)
        seps = np.array([min_separation(row) for row in samp])
        if seps.min() < 1e-13:
            raise DegenerateProjection("strands collide during a motion")
        if np.all(step < STEP_FRACTION * np.minimum(seps[:-1], seps[1:])):
            return samp
        count *= 2
    raise UnresolvedCrossing("could not refine motion sampling")


def simulate(seq: TwistSequence, resolution: int = 1) -> np.ndarray:
    """Sample matrix (samples x strands) for the consecutive moves."""
    rows = [seq.initial[None, :]]
    pos = seq.initial
    for mv in seq.moves:
        samp = _motion_samples(mv, pos, resolution)
        rows.append(samp[1:])
        pos = samp[-1]
    return np.concatenate(rows, axis=0)


@dataclass(frozen=True)
class Projection:
    word: BraidWord
    permutation: tuple  # position permutation of the word
    start_order: tuple  # strand index at each position initially
    end_order: tuple
    direction: float


def _project_once(samples: np.ndarray, direction: float) -> Projection:
    u = np.exp(-1j * direction)
    Z = samples * u
    X, Y = Z.real, Z.imag
    n = samples.shape[1]
    order = list(np.argsort(X[0], kind="stable"))
    if n > 1 and np.min(np.diff(X[0][order])) == 0:
        raise DegenerateProjection("coincident projections at start")
    where = [0] * n
    for k, s in enumerate(order):
        where[s] = k
    start = tuple(int(s) for s in order)
    letters = []
    iu = np.triu_indices(n, 1)
    for a in range(len(samples) - 1):
        d0 = (X[a][:, None] - X[a][None, :])[iu]
        d1 = (X[a + 1][:, None] - X[a + 1][None, :])[iu]
        if np.any(d1 == 0):
            raise DegenerateProjection("coincident projections at a sample")
        hits = np.nonzero(np.sign(d0) != np.sign(d1))[0]
        if not len(hits):
            continue
        events = []
        for h in hits:
            i, j = int(iu[0][h]), int(iu[1][h])
            tau = d0[h] / (d0[h] - d1[h])
            yi = Y[a][i] + tau * (Y[a + 1][i] - Y[a][i])
            yj = Y[a][j] + tau * (Y[a + 1][j] - Y[a][j])
            events.append((float(tau), i, j, float(yi), float(yj)))
        events.sort()
        for e1, e2 in zip(events, events[1:]):
            if e2[0] - e1[0] < 1e-12 and {e1[1], e1[2]} & {e2[1], e2[2]}:
                raise DegenerateProjection("simultaneous crossings sharing a strand")
        for tau, i, j, yi, yj in events:
            pi_, pj = where[i], where[j]
            if abs(pi_ - pj) != 1:
                raise DegenerateProjection("non-adjacent exchange")
            if yi == yj:
                raise DegenerateProjection("strands meet in the plane")
            k = max(pi_, pj)
            right = i if pi_ > pj else j
            y_right, y_left = (yi, yj) if right == i else (yj, yi)
            letters.append(k if y_right > y_left else -k)
            order[pi_], order[pj] = order[pj], order[pi_]
            where[i], where[j] = pj, pi_
    end = tuple(int(s) for s in order)
    word = BraidWord(n, tuple(letters))
    # strand starting at position k sits at position where[start[k]] at the end
    perm = tuple(where[start[k]] for k in range(n))
    return Projection(word, perm, start, end, direction)


def project_samples(samples, direction: float = DEFAULT_DIRECTION) -> Projection:
    """Artin word of a sampled motion, perturbing the axis on degeneracy."""
    samples = np.asarray(samples, dtype=complex)
    d = direction
    last = None
    for _ in range(MAX_PERTURBATIONS):
        try:
            return _project_once(samples, d)
        except DegenerateProjection as exc:
            last = exc
            d = 2 * d if d else DEFAULT_DIRECTION
    raise DegenerateProjection(f"no generic projection direction found ({last})")


def _snap_samples(final: np.ndarray, marks: np.ndarray) -> np.ndarray:
    n = len(final)
    dist = np.abs(final[:, None] - marks[None, :])
    choice = dist.argmin(axis=1)
    if len(set(choice.tolist())) != n:
        raise SnapCollision("nearest marked positions are not distinct")
    target = marks[choice]
    count = 64
    s = np.linspace(0, 1, count + 1)[:, None]
    return final[None, :] + (target - final)[None, :] * s


def project_twists(seq: TwistSequence, setup: ProjectionSetup = ProjectionSetup()) -> BraidWord:
    return project_sequence(seq, setup).word


def project_sequence(seq: TwistSequence, setup: ProjectionSetup = ProjectionSetup()) -> Projection:
    samples = simulate(seq, setup.time_resolution)
    proj = project_samples(samples, setup.direction)
    if setup.endpoint_policy == "snap":
        tail = _snap_samples(samples[-1], seq.initial)
        tail_proj = project_samples(tail, proj.direction)
        if tail_proj.word.letters or tail_proj.direction != proj.direction:
            raise SnapCollision("snap isotopy would create a crossing")
        full = np.concatenate([samples, tail[1:]], axis=0)
        proj = project_samples(full, proj.direction)
    return proj


def regular_polygon(n: int, radius: float = 1.0, phase: float = 0.0, center: complex = 0j) -> np.ndarray:
    k = np.arange(n)
    return center + radius * np.exp(1j * (phase + 2 * math.pi * k / n))


def twist_word(n: int, alpha, setup: ProjectionSetup = ProjectionSetup()) -> BraidWord:
    """Projection of R^alpha applied to a regular n-gon about its center."""
    seq = TwistSequence(regular_polygon(n), [RationalTwist(Fraction(alpha), tuple(range(n)))])
    return project_twists(seq, setup)


def full_turn_word(n: int) -> BraidWord:
    if n < 2:
        raise OutOfRange("n must be at least 2")
    return twist_word(n, 1)
