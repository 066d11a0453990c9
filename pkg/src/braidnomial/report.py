"""Report assembly for the CLI and the versioned trace cache."""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .braids import invariants_of
from .equation import TrinomialEquation, branching_points, build_equation, coincidence_pair
from .galois import check_corollaries
from .loops import LoopSpec, PathSpec, default_delta, parse_loop_selector, product_path
from .predictor import MonodromyPrediction, predict
from .tracker import (
    TracedPath,
    TrackerControls,
    collision_pair_at,
    label_base_roots,
    trace_loop,
)
from .verify import MISMATCH, compare

SCHEMA = "braidnomial-report/1"
TRACE_VERSION = "braidnomial-trace/1"


@dataclass
class RunConfig:
    equation: tuple
    loop: str = "all"
    terms: int = 60
    delta: float | None = None
    tol: float = 1e-10
    direction: float | None = None
    tracker_only: bool = False
    report: str | None = None
    svg: str | None = None
    cache: str | None = None
    mode: str = "predict"
    word: list | None = None
    strands: int | None = None

    def __post_init__(self):
        for name in ("terms", "delta", "tol"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise ValueError(f"{name} must be positive")

    def controls(self) -> TrackerControls:
        return TrackerControls(tol=self.tol)


class Warnings:
    """Ordered set: each flag appears once."""

    def __init__(self):
        self._items = []

    def add(self, *flags):
        for f in flags:
            if f and f not in self._items:
                self._items.append(f)

    def to_json(self):
        return list(self._items)


def _c(z) -> list:
    z = complex(z)
    return [round(z.real, 14), round(z.imag, 14)]


def _frac(x: Fraction) -> str:
    return str(Fraction(x))


def equation_json(eq: TrinomialEquation) -> dict:
    bs = branching_points(eq, 20)
    return {
        "input": list(eq.key()),
        "m": eq.m, "n": eq.n, "p": eq.p, "q": eq.q, "g": eq.g, "r": eq.r, "N": eq.N,
        "R": _frac(eq.R),
        "branch_modulus": bs.modulus,
        "branch_points": [_c(w) for w in bs.as_complex()],
        "base_point": _c(bs.base_point),
    }


def prediction_json(pred: MonodromyPrediction) -> dict:
    inv = invariants_of(pred.artin)
    return {
        "loops": [lp.name for lp in pred.loops],
        "twists": [
            {"alpha": _frac(tw.alpha), "center": None if tw.center is None else _c(tw.center),
             "members": list(tw.members), "role": note}
            for tw, note in zip(pred.twists, pred.notes)
        ],
        "permutation": list(pred.permutation),
        "master_permutation": list(pred.master_permutation),
        "coincidences": [{"ell": l, "t": t, "t_prime": u} for l, t, u in pred.coincidences],
        "artin": pred.artin.to_list(),
        "exponent_sum": inv.exponent_sum,
        "position_labels": list(pred.position_labels),
    }


def _loop_products(cfg: RunConfig, eq: TrinomialEquation) -> list:
    return parse_loop_selector(cfg.loop, eq)


def _name(prod) -> str:
    return ",".join(lp.name for lp in prod)


def cmd_predict(cfg: RunConfig) -> tuple:
    eq = build_equation(*cfg.equation)
    warnings = Warnings()
    loops = {}
    for prod in _loop_products(cfg, eq):
        pred = predict(eq, prod)
        warnings.add(*pred.flags)
        loops[_name(prod)] = {"prediction": prediction_json(pred)}
    return {"schema": SCHEMA, "mode": "predict", "equation": equation_json(eq),
            "loops": loops, "warnings": warnings.to_json()}, 0


class TraceCache:
    """Directory of JSON-lines traces keyed by a hash of equation, path, controls and start."""

    def __init__(self, directory: str):
        self.directory = directory
        os.makedirs(directory, exist_ok=True)

    @staticmethod
    def key(eq: TrinomialEquation, path: PathSpec, controls: TrackerControls, start) -> str:
        blob = json.dumps({
            "eq": list(eq.key()),
            "path": [repr(p) for p in path.pieces],
            "controls": sorted(controls.__dict__.items()),
            "start": [_c(z) for z in start],
        }, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:32]

    def _file(self, key: str) -> str:
        return os.path.join(self.directory, f"{key}.jsonl")

    def load(self, key: str) -> TracedPath | None:
        fn = self._file(key)
        if not os.path.exists(fn):
            return None
        with open(fn) as fh:
            header = json.loads(fh.readline())
            if header.get("version") != TRACE_VERSION or header.get("key") != key:
                return None
            X, roots = [], []
            for line in fh:
                rec = json.loads(line)
                X.append(complex(*rec["X"]))
                roots.append([complex(*z) for z in rec["roots"]])
        return TracedPath(np.array(X), np.array(roots), header["max_residual"],
                          header["min_pair_separation"], header["master"], header["flags"])

    def store(self, key: str, traced: TracedPath) -> None:
        with open(self._file(key), "w") as fh:
            fh.write(json.dumps({"version": TRACE_VERSION, "key": key, "max_residual": traced.max_residual,
                                 "min_pair_separation": traced.min_pair_separation,
                                 "master": traced.master, "flags": traced.flags}) + "\n")
            for i, (X, Y) in enumerate(zip(traced.X, traced.roots)):
                fh.write(json.dumps({"i": i, "X": [X.real, X.imag],
                                     "roots": [[z.real, z.imag] for z in Y]}) + "\n")


def _traced(eq, prod, base, cfg, cache):
    path = product_path(eq, prod, cfg.delta, base.eps)
    controls = cfg.controls()
    if cache is None:
        return trace_loop(eq, path, base, controls)
    key = TraceCache.key(eq, path, controls, base.roots)
    hit = cache.load(key)
    if hit is not None:
        return hit
    traced = trace_loop(eq, path, base, controls)
    cache.store(key, traced)
    return traced


def _empirical_json(traced: TracedPath, emp) -> dict:
    inv = invariants_of(emp.word)
    return {
        "word": emp.word.to_list(),
        "exponent_sum": inv.exponent_sum,
        "permutation": list(emp.permutation),
        "samples": int(len(traced.X)),
        "max_residual": float(traced.max_residual),
        "min_pair_separation": float(traced.min_pair_separation),
        "endpoint_displacement": float(traced.endpoint_displacement()),
        "projection_direction": float(emp.direction),
    }


def cmd_verify(cfg: RunConfig) -> tuple:
    from .tracker import extract_braid

    eq = build_equation(*cfg.equation, strict=not cfg.tracker_only)
    warnings = Warnings()
    warnings.add(*eq.warnings)
    tracker_only = cfg.tracker_only or not eq.predictor_valid
    controls = cfg.controls()
    cache = TraceCache(cfg.cache) if cfg.cache else None
    base = label_base_roots(eq, K=cfg.terms, controls=controls, strict=not tracker_only)
    warnings.add(*base.flags)
    loops, worst = {}, 0
    for prod in _loop_products(cfg, eq):
        entry = {}
        if tracker_only:
            traced = _traced(eq, prod, base, cfg, cache)
            entry["empirical"] = _empirical_json(traced, extract_braid(traced, _dir(cfg)))
        else:
            cmp_ = compare(eq, prod, base, controls, cfg.delta, _dir(cfg))
            warnings.add(*cmp_.prediction.flags, *cmp_.traced.flags)
            entry["prediction"] = prediction_json(cmp_.prediction)
            entry["empirical"] = _empirical_json(cmp_.traced, cmp_.empirical)
            entry["comparison"] = {
                "permutation": "match" if cmp_.permutation_ok else MISMATCH,
                "word": cmp_.word_verdict,
                "verdict": cmp_.verdict,
                "predicted_word_at_base": cmp_.predicted_word.to_list(),
            }
            if cmp_.verdict == MISMATCH:
                worst = 4
        loops[_name(prod)] = entry
    out = {"schema": SCHEMA, "mode": "verify", "equation": equation_json(eq), "loops": loops}
    if not tracker_only:
        table = []
        master_base = label_base_roots(eq, K=cfg.terms, controls=controls, master=True)
        for l in range(eq.N):
            pair, ratio = collision_pair_at(eq, l, cfg.delta, controls, master_base)
            pred = coincidence_pair(eq, l)
            ok = set(pair) == set(pred)
            table.append({"ell": l, "predicted": sorted(pred), "empirical": list(pair),
                          "ratio": round(float(ratio), 12), "verdict": "match" if ok else MISMATCH})
            if not ok:
                worst = 4
        out["collision_table"] = table
        out["galois"] = galois_json(eq, base, controls)
    else:
        out["prediction"] = None
    out["warnings"] = warnings.to_json()
    return out, worst


def _dir(cfg):
    from .twists import DEFAULT_DIRECTION

    return DEFAULT_DIRECTION if cfg.direction is None else cfg.direction


def generator_loops(eq: TrinomialEquation) -> list:
    return [LoopSpec("around_omega", l) for l in range(eq.N)] + [LoopSpec("around_infinity")]


def galois_json(eq: TrinomialEquation, base=None, controls=TrackerControls()) -> dict:
    from .tracker import extract_braid

    loops = generator_loops(eq)
    predicted = [predict(eq, lp).permutation for lp in loops]
    out = {"generators": [lp.name for lp in loops], "predicted": check_corollaries(eq, predicted).to_json()}
    if base is not None:
        emp = []
        for lp in loops:
            traced = trace_loop(eq, product_path(eq, [lp], None, base.eps), base, controls)
            emp.append(traced.endpoint_permutation())
        rep = check_corollaries(eq, emp)
        out["empirical"] = rep.to_json()
        out["orders_agree"] = rep.order == int(out["predicted"]["order"])
    return out


def cmd_galois(cfg: RunConfig) -> tuple:
    eq = build_equation(*cfg.equation)
    base = label_base_roots(eq, K=cfg.terms, controls=cfg.controls())
    g = galois_json(eq, base, cfg.controls())
    code = 0 if g["orders_agree"] else 4
    return {"schema": SCHEMA, "mode": "galois", "equation": equation_json(eq), "galois": g,
            "warnings": []}, code


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
